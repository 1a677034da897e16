/*
 * Copyright 2026 The doomsday authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "doomsday/io.hpp"

#include <charconv>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "doomsday/error.hpp"

namespace doomsday {

namespace {

std::vector<std::string>
tokenize(std::string_view line)
{
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> out;
    std::istringstream in{std::string(line)};
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

std::optional<long long>
to_int(std::string_view s)
{
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

struct PendingObjective
{
    std::size_t line;
    ObjectiveClass kind;
    std::vector<std::string> args;
};

} // namespace

ObjectiveClass
parse_class(std::string_view kw)
{
    if (kw == "reach" || kw == "reachability") return ObjectiveClass::Reachability;
    if (kw == "safety") return ObjectiveClass::Safety;
    if (kw == "buchi") return ObjectiveClass::Buchi;
    if (kw == "cobuchi") return ObjectiveClass::CoBuchi;
    if (kw == "parity") return ObjectiveClass::Parity;
    throw Error(ErrorKind::BadParams, "unknown objective class '" + std::string(kw) + "'");
}

Game
parse_game_file(std::string_view text)
{
    Game game;
    RawArena raw;
    raw.player_count = 0;
    std::optional<std::size_t> init_line;
    std::map<int, PendingObjective> objectives;

    std::size_t lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(pos, end - pos);
        pos = end + 1;
        ++lineno;

        auto tok = tokenize(line);
        if (tok.empty()) continue;
        auto fail = [&](const std::string &why) {
            return Error(ErrorKind::SyntaxError, "line " + std::to_string(lineno) + ": " + why);
        };
        const std::string &cmd = tok[0];

        if (cmd == "game") {
            if (tok.size() != 2) throw fail("expected 'game <name>'");
            game.name = tok[1];
        } else if (cmd == "players") {
            auto n = tok.size() == 2 ? to_int(tok[1]) : std::nullopt;
            if (!n || *n < 1) throw fail("expected 'players <n>' with n >= 1");
            if (raw.player_count != 0) throw fail("duplicate players line");
            raw.player_count = static_cast<int>(*n);
        } else if (cmd == "state") {
            if (tok.size() != 3 || tok[2].rfind("owner=", 0) != 0) {
                throw fail("expected 'state <id> owner=<k>'");
            }
            auto owner = to_int(std::string_view(tok[2]).substr(6));
            if (!owner) throw fail("bad owner '" + tok[2] + "'");
            raw.states.push_back({tok[1], static_cast<int>(*owner)});
        } else if (cmd == "edge") {
            if (tok.size() < 3) throw fail("expected 'edge <from> <to> ...'");
            for (std::size_t k = 2; k < tok.size(); ++k) raw.edges.emplace_back(tok[1], tok[k]);
        } else if (cmd == "init") {
            if (tok.size() != 2) throw fail("expected 'init <id>'");
            if (init_line) throw fail("duplicate init line");
            raw.initial = tok[1];
            init_line = lineno;
        } else if (cmd == "objective") {
            if (tok.size() < 3) throw fail("expected 'objective <k> <class> ...'");
            auto who = to_int(tok[1]);
            if (!who) throw fail("bad player '" + tok[1] + "'");
            ObjectiveClass kind;
            try {
                kind = parse_class(tok[2]);
            } catch (const Error &) {
                throw fail("unknown objective class '" + tok[2] + "'");
            }
            PendingObjective p{lineno, kind, std::vector<std::string>(tok.begin() + 3, tok.end())};
            if (!objectives.emplace(static_cast<int>(*who), std::move(p)).second) {
                throw Error(ErrorKind::DuplicateObjective, "player " + tok[1]);
            }
        } else {
            throw fail("unknown directive '" + cmd + "'");
        }
    }

    if (raw.player_count == 0) throw Error(ErrorKind::SyntaxError, "missing 'players' line");
    if (!init_line) throw Error(ErrorKind::SyntaxError, "missing 'init' line");
    for (const auto &[who, p] : objectives) {
        if (who < 1 || who > raw.player_count) {
            throw Error(ErrorKind::SyntaxError, "line " + std::to_string(p.line) + ": player " +
                                                    std::to_string(who) + " out of range");
        }
    }
    for (int who = 1; who <= raw.player_count; ++who) {
        if (!objectives.count(who)) throw Error(ErrorKind::MissingObjective, "player " + std::to_string(who));
    }

    game.arena = validate_arena(std::move(raw));
    const Arena &arena = game.arena;
    for (const auto &[who, p] : objectives) {
        auto fail = [&](const std::string &why) {
            return Error(ErrorKind::SyntaxError, "line " + std::to_string(p.line) + ": " + why);
        };
        if (p.kind != ObjectiveClass::Parity) {
            std::vector<StateIndex> set;
            for (const auto &id : p.args) set.push_back(arena.index_of(id));
            Objective o;
            switch (p.kind) {
                case ObjectiveClass::Reachability: o = Objective::reachability(std::move(set)); break;
                case ObjectiveClass::Safety: o = Objective::safety(std::move(set)); break;
                case ObjectiveClass::Buchi: o = Objective::buchi(std::move(set)); break;
                default: o = Objective::cobuchi(std::move(set)); break;
            }
            game.profile.objectives.push_back(std::move(o));
            continue;
        }
        std::vector<std::optional<Priority>> prio(arena.size());
        for (const auto &arg : p.args) {
            auto colon = arg.rfind(':');
            if (colon == std::string::npos) throw fail("expected <id>:<priority>, got '" + arg + "'");
            StateIndex s = arena.index_of(arg.substr(0, colon));
            auto v = to_int(std::string_view(arg).substr(colon + 1));
            if (!v || *v < 0) throw fail("bad priority in '" + arg + "'");
            if (prio[s]) throw fail("state " + arena.id(s) + " has two priorities");
            prio[s] = static_cast<Priority>(*v);
        }
        std::vector<Priority> full;
        for (StateIndex s = 0; s < arena.size(); ++s) {
            if (!prio[s]) throw fail("parity objective must map every state; " + arena.id(s) + " missing");
            full.push_back(*prio[s]);
        }
        game.profile.objectives.push_back(Objective::parity(std::move(full)));
    }
    try {
        validate_profile(arena, game.profile);
    } catch (const Error &e) {
        throw Error(ErrorKind::SyntaxError, e.what());
    }
    return game;
}

std::string
serialize_game(const Game &game)
{
    const Arena &a = game.arena;
    std::ostringstream out;
    if (!game.name.empty()) out << "game " << game.name << "\n";
    out << "players " << a.player_count() << "\n";
    for (StateIndex s = 0; s < a.size(); ++s) out << "state " << a.id(s) << " owner=" << a.owner(s) << "\n";
    for (StateIndex s = 0; s < a.size(); ++s) {
        for (StateIndex t : a.successors(s)) out << "edge " << a.id(s) << " " << a.id(t) << "\n";
    }
    out << "init " << a.id(a.initial()) << "\n";
    for (std::size_t k = 0; k < game.profile.size(); ++k) {
        const Objective &o = game.profile.objectives[k];
        out << "objective " << k + 1 << " " << keyword(o.kind);
        if (o.kind == ObjectiveClass::Parity) {
            for (StateIndex s = 0; s < a.size(); ++s) out << " " << a.id(s) << ":" << o.priority[s];
        } else {
            for (StateIndex s : o.states) out << " " << a.id(s);
        }
        out << "\n";
    }
    return out.str();
}

std::string
serialize_result(const Arena &arena, const DoomsdayResult &result)
{
    nlohmann::ordered_json doc;
    doc["verdict"] = result.exists ? "exists" : "not_exists";
    doc["players"] = arena.player_count();
    if (result.exists && result.certificate) {
        const Certificate &c = *result.certificate;
        nlohmann::ordered_json cert;
        auto ids = [&](const std::vector<StateIndex> &states) {
            auto arr = nlohmann::ordered_json::array();
            for (StateIndex s : states) arr.push_back(arena.id(s));
            return arr;
        };
        cert["stem"] = ids(c.stem);
        cert["cycle"] = ids(c.cycle);
        nlohmann::ordered_json retal = nlohmann::ordered_json::object();
        for (const auto &plan : c.retaliation) {
            auto entries = nlohmann::ordered_json::array();
            for (const auto &[key, to] : plan.choices) {
                nlohmann::ordered_json e;
                e["state"] = arena.id(key.first);
                e["memory"] = key.second;
                e["choice"] = arena.id(to);
                entries.push_back(std::move(e));
            }
            retal[std::to_string(plan.player.value)] = std::move(entries);
        }
        cert["retaliation"] = std::move(retal);
        doc["certificate"] = std::move(cert);
    }
    return doc.dump();
}

Certificate
parse_certificate_json(std::string_view json, const Arena &arena, const ObjectiveProfile &profile)
{
    auto malformed = [](const std::string &why) { return Error(ErrorKind::MalformedCertificate, why); };
    validate_profile(arena, profile);

    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json);
    } catch (const nlohmann::json::exception &e) {
        throw malformed(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (doc.contains("players") && doc.at("players").get<int>() != arena.player_count()) {
            throw malformed("player count does not match the game");
        }
        const auto &cert = doc.contains("certificate") ? doc.at("certificate") : doc;
        auto states = [&](const nlohmann::json &arr) {
            std::vector<StateIndex> out;
            for (const auto &id : arr) {
                auto s = arena.find(id.get<std::string>());
                if (!s) throw malformed("unknown state '" + id.get<std::string>() + "'");
                out.push_back(*s);
            }
            return out;
        };

        Certificate c;
        c.player_count = arena.player_count();
        for (const auto &o : profile.objectives) c.classes.push_back(o.kind);
        c.stem = states(cert.at("stem"));
        c.cycle = states(cert.at("cycle"));
        const auto &retal = cert.at("retaliation");
        for (int i = 1; i <= arena.player_count(); ++i) {
            RetaliationPlan plan;
            plan.player = PlayerId{i};
            plan.automaton = std::make_shared<const Dpa>(
                compile_expr(arena, profile, retaliation_objective(plan.player, arena.player_count())));
            auto key = std::to_string(i);
            if (!retal.contains(key)) throw malformed("no retaliation entries for player " + key);
            for (const auto &e : retal.at(key)) {
                auto s = arena.find(e.at("state").get<std::string>());
                auto to = arena.find(e.at("choice").get<std::string>());
                auto mem = e.at("memory").get<long long>();
                if (!s || !to || mem < 0 || mem >= plan.automaton->size()) {
                    throw malformed("bad retaliation entry " + e.dump());
                }
                plan.choices[{*s, static_cast<DpaState>(mem)}] = *to;
            }
            c.retaliation.push_back(std::move(plan));
        }
        return c;
    } catch (const nlohmann::json::exception &e) {
        throw malformed(e.what());
    }
}

namespace {

std::string
quoted(const std::string &s)
{
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"' || ch == '\\') out += '\\';
        out += ch;
    }
    return out + "\"";
}

const char *
owner_shape(int owner)
{
    static const char *shapes[] = {"circle", "box", "diamond", "hexagon", "triangle", "octagon"};
    return shapes[(owner - 1) % 6];
}

} // namespace

std::string
export_dot(const Arena &arena, const ObjectiveProfile &profile, const Certificate *certificate)
{
    std::set<std::pair<StateIndex, StateIndex>> bold;
    if (certificate && !certificate->cycle.empty()) {
        std::vector<StateIndex> lasso = certificate->stem;
        lasso.insert(lasso.end(), certificate->cycle.begin(), certificate->cycle.end());
        for (std::size_t k = 0; k + 1 < lasso.size(); ++k) bold.insert({lasso[k], lasso[k + 1]});
        bold.insert({certificate->cycle.back(), certificate->cycle.front()});
    }

    std::ostringstream out;
    out << "digraph game {\n";
    for (std::size_t k = 0; k < profile.size(); ++k) {
        const Objective &o = profile.objectives[k];
        out << "  // objective " << k + 1 << ": " << keyword(o.kind);
        if (o.kind == ObjectiveClass::Parity) {
            for (StateIndex s = 0; s < arena.size(); ++s) out << " " << arena.id(s) << ":" << o.priority[s];
        } else {
            for (StateIndex s : o.states) out << " " << arena.id(s);
        }
        out << "\n";
    }
    out << "  __init [shape=point];\n";
    for (StateIndex s = 0; s < arena.size(); ++s) {
        out << "  " << quoted(arena.id(s)) << " [label="
            << quoted(arena.id(s) + " (P" + std::to_string(arena.owner(s)) + ")")
            << ", shape=" << owner_shape(arena.owner(s)) << "];\n";
    }
    out << "  __init -> " << quoted(arena.id(arena.initial())) << ";\n";
    for (StateIndex s = 0; s < arena.size(); ++s) {
        for (StateIndex t : arena.successors(s)) {
            out << "  " << quoted(arena.id(s)) << " -> " << quoted(arena.id(t));
            if (bold.count({s, t})) out << " [style=bold]";
            out << ";\n";
        }
    }
    out << "}\n";
    return out.str();
}

std::string
gen_random(const GenParams &p)
{
    if (p.states < 1 || p.states > 10000 || p.players < 1 || p.players > 64 ||
        !(p.edge_density >= 0.0 && p.edge_density <= 1.0) ||
        !(p.empty_rate >= 0.0 && p.empty_rate <= 1.0)) {
        throw Error(ErrorKind::BadParams, "generator parameters out of range");
    }
    std::mt19937_64 rng(p.seed);
    auto below = [&](std::uint64_t bound) { return rng() % bound; };
    auto chance = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    const std::size_t n = p.states;
    const std::size_t width = std::to_string(n - 1).size();
    std::vector<std::string> ids;
    for (std::size_t k = 0; k < n; ++k) {
        std::string num = std::to_string(k);
        ids.push_back("s" + std::string(width - num.size(), '0') + num);
    }

    std::ostringstream out;
    out << "game random-" << keyword(p.objective_class) << "-" << p.seed << "\n";
    out << "players " << p.players << "\n";
    for (std::size_t k = 0; k < n; ++k) {
        out << "state " << ids[k] << " owner=" << 1 + below(static_cast<std::uint64_t>(p.players)) << "\n";
    }
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t first = below(n);
        out << "edge " << ids[k] << " " << ids[first];
        for (std::size_t t = 0; t < n; ++t) {
            if (t != first && chance() < p.edge_density) out << " " << ids[t];
        }
        out << "\n";
    }
    out << "init " << ids[0] << "\n";
    const std::uint64_t max_prio = std::min<std::uint64_t>(3, 2 * n);
    for (int who = 1; who <= p.players; ++who) {
        out << "objective " << who << " " << keyword(p.objective_class);
        if (p.objective_class == ObjectiveClass::Parity) {
            for (std::size_t k = 0; k < n; ++k) out << " " << ids[k] << ":" << below(max_prio + 1);
        } else if (chance() >= p.empty_rate) {
            std::vector<bool> in(n);
            bool any = false;
            for (std::size_t k = 0; k < n; ++k) any |= (in[k] = chance() < 0.5);
            if (!any) in[below(n)] = true;
            for (std::size_t k = 0; k < n; ++k) {
                if (in[k]) out << " " << ids[k];
            }
        }
        out << "\n";
    }
    return out.str();
}

} // namespace doomsday
