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

#include "doomsday/objectives.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "doomsday/error.hpp"

namespace doomsday {

const char *
keyword(ObjectiveClass c)
{
    switch (c) {
        case ObjectiveClass::Reachability: return "reach";
        case ObjectiveClass::Safety: return "safety";
        case ObjectiveClass::Buchi: return "buchi";
        case ObjectiveClass::CoBuchi: return "cobuchi";
        case ObjectiveClass::Parity: return "parity";
    }
    return "?";
}

namespace {

Objective
set_objective(ObjectiveClass kind, std::vector<StateIndex> states)
{
    std::sort(states.begin(), states.end());
    states.erase(std::unique(states.begin(), states.end()), states.end());
    Objective o;
    o.kind = kind;
    o.states = std::move(states);
    return o;
}

} // namespace

Objective Objective::reachability(std::vector<StateIndex> t) { return set_objective(ObjectiveClass::Reachability, std::move(t)); }
Objective Objective::safety(std::vector<StateIndex> s) { return set_objective(ObjectiveClass::Safety, std::move(s)); }
Objective Objective::buchi(std::vector<StateIndex> r) { return set_objective(ObjectiveClass::Buchi, std::move(r)); }
Objective Objective::cobuchi(std::vector<StateIndex> t) { return set_objective(ObjectiveClass::CoBuchi, std::move(t)); }

Objective
Objective::parity(std::vector<Priority> priority)
{
    Objective o;
    o.kind = ObjectiveClass::Parity;
    o.priority = std::move(priority);
    return o;
}

bool
Objective::contains(StateIndex s) const
{
    return std::binary_search(states.begin(), states.end(), s);
}

void
validate_objective(const Arena &arena, const Objective &obj)
{
    if (obj.kind == ObjectiveClass::Parity) {
        if (obj.priority.size() != arena.size()) {
            throw Error(ErrorKind::BadObjective, "parity objective must map every state");
        }
        for (StateIndex s = 0; s < arena.size(); ++s) {
            if (obj.priority[s] > 2 * arena.size()) {
                throw Error(ErrorKind::BadObjective,
                            "priority of " + arena.id(s) + " exceeds 2*|states|");
            }
        }
        return;
    }
    if (!std::is_sorted(obj.states.begin(), obj.states.end())) {
        throw Error(ErrorKind::BadObjective, "state set not normalized");
    }
    for (StateIndex s : obj.states) {
        if (s >= arena.size()) throw Error(ErrorKind::BadObjective, "state index out of range");
    }
}

void
validate_profile(const Arena &arena, const ObjectiveProfile &profile)
{
    if (profile.size() != static_cast<std::size_t>(arena.player_count())) {
        throw Error(ErrorKind::BadParams, "objective count " + std::to_string(profile.size()) +
                                              " != player count " +
                                              std::to_string(arena.player_count()));
    }
    for (const auto &o : profile.objectives) validate_objective(arena, o);
}

bool
play_satisfies(const Arena &arena, const Objective &obj, std::span<const StateIndex> stem,
               std::span<const StateIndex> cycle)
{
    if (cycle.empty()) throw Error(ErrorKind::BadParams, "lasso cycle must be nonempty");
    std::vector<StateIndex> play(stem.begin(), stem.end());
    play.insert(play.end(), cycle.begin(), cycle.end());
    play.push_back(cycle.front());
    for (std::size_t k = 0; k < play.size(); ++k) {
        if (play[k] >= arena.size()) throw Error(ErrorKind::UnknownState, std::to_string(play[k]));
        if (k > 0 && !arena.has_edge(play[k - 1], play[k])) {
            throw Error(ErrorKind::BrokenPath, arena.id(play[k - 1]) + " -> " + arena.id(play[k]));
        }
    }

    auto in_set = [&](StateIndex s) { return obj.contains(s); };
    switch (obj.kind) {
        case ObjectiveClass::Reachability:
            return std::any_of(stem.begin(), stem.end(), in_set) ||
                   std::any_of(cycle.begin(), cycle.end(), in_set);
        case ObjectiveClass::Safety:
            return std::all_of(stem.begin(), stem.end(), in_set) &&
                   std::all_of(cycle.begin(), cycle.end(), in_set);
        case ObjectiveClass::Buchi:
            return std::any_of(cycle.begin(), cycle.end(), in_set);
        case ObjectiveClass::CoBuchi:
            return std::all_of(cycle.begin(), cycle.end(), in_set);
        case ObjectiveClass::Parity: {
            Priority lo = obj.priority.at(cycle.front());
            for (StateIndex s : cycle) lo = std::min(lo, obj.priority.at(s));
            return lo % 2 == 0;
        }
    }
    return false;
}

Dpa
compile_objective_to_dpa(const Arena &arena, const Objective &obj)
{
    validate_objective(arena, obj);
    const auto n = static_cast<std::uint32_t>(arena.size());

    if (obj.kind == ObjectiveClass::Parity) {
        // one state per distinct priority value, ordered by value
        std::set<Priority> values(obj.priority.begin(), obj.priority.end());
        std::map<Priority, DpaState> state_of;
        std::vector<Priority> prio;
        for (Priority p : values) {
            state_of[p] = static_cast<DpaState>(prio.size());
            prio.push_back(p);
        }
        const auto size = static_cast<std::uint32_t>(prio.size());
        std::vector<DpaState> delta(static_cast<std::size_t>(size) * n);
        for (DpaState q = 0; q < size; ++q) {
            for (Letter l = 0; l < n; ++l) delta[q * n + l] = state_of[obj.priority[l]];
        }
        return Dpa(n, 0, std::move(delta), std::move(prio));
    }

    // Two states: 0 and 1. For Reachability 0 = pending, 1 = done; for
    // Safety 0 = ok, 1 = bad; for Buchi/CoBuchi 0 = last letter outside the
    // set, 1 = last letter inside.
    std::vector<DpaState> delta(2 * static_cast<std::size_t>(n));
    std::vector<Priority> prio;
    switch (obj.kind) {
        case ObjectiveClass::Reachability:
            prio = {1, 0};
            for (Letter l = 0; l < n; ++l) {
                delta[l] = obj.contains(l) ? 1 : 0;
                delta[n + l] = 1;
            }
            break;
        case ObjectiveClass::Safety:
            prio = {0, 1};
            for (Letter l = 0; l < n; ++l) {
                delta[l] = obj.contains(l) ? 0 : 1;
                delta[n + l] = 1;
            }
            break;
        case ObjectiveClass::Buchi:
        case ObjectiveClass::CoBuchi:
            prio = obj.kind == ObjectiveClass::Buchi ? std::vector<Priority>{1, 0}
                                                     : std::vector<Priority>{1, 2};
            for (Letter l = 0; l < n; ++l) {
                delta[l] = delta[n + l] = obj.contains(l) ? 1 : 0;
            }
            break;
        case ObjectiveClass::Parity:
            break;
    }
    return Dpa(n, 0, std::move(delta), std::move(prio));
}

ObjectiveExpr
ObjectiveExpr::atom(PlayerId p)
{
    ObjectiveExpr e;
    e.op = Op::Atom;
    e.player = p;
    return e;
}

ObjectiveExpr
ObjectiveExpr::negate(ObjectiveExpr inner)
{
    ObjectiveExpr e;
    e.op = Op::Not;
    e.children.push_back(std::move(inner));
    return e;
}

ObjectiveExpr
ObjectiveExpr::all_of(std::vector<ObjectiveExpr> es)
{
    ObjectiveExpr e;
    e.op = Op::And;
    e.children = std::move(es);
    return e;
}

ObjectiveExpr
ObjectiveExpr::any_of(std::vector<ObjectiveExpr> es)
{
    ObjectiveExpr e;
    e.op = Op::Or;
    e.children = std::move(es);
    return e;
}

std::string
ObjectiveExpr::to_string() const
{
    auto join = [&](const char *sep) {
        std::string out = "(";
        for (std::size_t k = 0; k < children.size(); ++k) {
            if (k > 0) out += sep;
            out += children[k].to_string();
        }
        return out + ")";
    };
    switch (op) {
        case Op::Atom: return "phi" + std::to_string(player.value);
        case Op::Not: return "!" + children.at(0).to_string();
        case Op::And: return join(" & ");
        case Op::Or: return join(" | ");
    }
    return "?";
}

ObjectiveExpr
retaliation_objective(PlayerId i, int player_count)
{
    if (i.value < 1 || i.value > player_count) {
        throw Error(ErrorKind::BadParams, "player " + std::to_string(i.value) + " out of range");
    }
    std::vector<ObjectiveExpr> violated;
    for (int j = 1; j <= player_count; ++j) {
        violated.push_back(ObjectiveExpr::negate(ObjectiveExpr::atom(PlayerId{j})));
    }
    return ObjectiveExpr::any_of(
        {ObjectiveExpr::atom(i), ObjectiveExpr::all_of(std::move(violated))});
}

Dpa
compile_expr(const Arena &arena, const ObjectiveProfile &profile, const ObjectiveExpr &expr)
{
    using Op = ObjectiveExpr::Op;
    if (expr.op == Op::Atom) return compile_objective_to_dpa(arena, profile[expr.player]);
    if (expr.op == Op::Not) return dpa_complement(compile_expr(arena, profile, expr.children.at(0)));

    std::vector<Dpa> parts;
    parts.reserve(expr.children.size());
    for (const auto &c : expr.children) parts.push_back(compile_expr(arena, profile, c));
    return expr.op == Op::And ? dpa_conj(parts) : dpa_disj(parts);
}

} // namespace doomsday
