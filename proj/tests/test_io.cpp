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

#include <catch2/catch_amalgamated.hpp>

#include "doomsday/equilibrium.hpp"
#include "doomsday/io.hpp"
#include "support/games.hpp"

using namespace doomsday;
using fixtures::thrown_kind;

namespace {

const char *kG1 = "players 1\nstate a owner=1\nedge a a\ninit a\nobjective 1 buchi a\n";

bool
contains(const std::string &hay, const std::string &needle)
{
    return hay.find(needle) != std::string::npos;
}

std::optional<ErrorKind>
parse_error(const std::string &text)
{
    return thrown_kind([&] { parse_game_file(text); });
}

} // namespace

TEST_CASE("parse G1 and G2")
{
    Game g1 = parse_game_file(kG1);
    CHECK(g1.arena.size() == 1);
    CHECK(g1.profile.objectives[0] == Objective::buchi({0}));

    Game g2 = fixtures::load_game(fixtures::game_text("g02_reach_prefix_trap"));
    CHECK(g2.name == "g2");
    CHECK(g2.arena.player_count() == 2);
    CHECK(g2.profile.objectives[0] == Objective::reachability({g2.arena.index_of("t")}));
    CHECK(g2.profile.objectives[1] == Objective::reachability({g2.arena.index_of("v")}));
}

TEST_CASE("parity objectives must cover every state")
{
    const std::string base = "players 1\nstate a owner=1\nstate b owner=1\nedge a b\nedge b a\ninit a\n";
    CHECK(parse_error(base + "objective 1 parity a:0\n") == ErrorKind::SyntaxError);
    Game ok = parse_game_file(base + "objective 1 parity a:0 b:3\n");
    CHECK(ok.profile.objectives[0] == Objective::parity({0, 3}));
}

TEST_CASE("syntax errors name the line")
{
    try {
        parse_game_file("players 1\nstate a owner=1\nfrobnicate\n");
        FAIL("no throw");
    } catch (const Error &e) {
        CHECK(e.kind() == ErrorKind::SyntaxError);
        CHECK(contains(e.what(), "line 3"));
    }
    CHECK(parse_error("players x\n") == ErrorKind::SyntaxError);
    CHECK(parse_error("players 1\nstate a owner=z\nedge a a\ninit a\nobjective 1 buchi a\n") == ErrorKind::SyntaxError);
    CHECK(parse_error("players 1\nstate a owner=1\nedge a a\nobjective 1 buchi a\n") == ErrorKind::SyntaxError);
    CHECK(parse_error("players 1\nstate a owner=1\nedge a a\ninit a\nobjective 1 muller a\n") == ErrorKind::SyntaxError);
}

TEST_CASE("objective lines per player")
{
    CHECK(parse_error("players 2\nstate a owner=1\nedge a a\ninit a\nobjective 1 buchi a\n") ==
          ErrorKind::MissingObjective);
    CHECK(parse_error(std::string(kG1) + "objective 1 reach a\n") == ErrorKind::DuplicateObjective);
}

TEST_CASE("arena errors propagate from validation")
{
    CHECK(parse_error("players 1\nstate a owner=1\ninit a\nobjective 1 buchi a\n") == ErrorKind::DeadlockState);
    CHECK(parse_error("players 1\nstate a owner=2\nedge a a\ninit a\nobjective 1 buchi a\n") == ErrorKind::BadOwner);
    CHECK(parse_error("players 1\nstate a owner=1\nedge a b\ninit a\nobjective 1 buchi a\n") == ErrorKind::UnknownState);
    CHECK(parse_error("players 1\nstate a owner=1\nedge a a\ninit a\nobjective 1 buchi q\n") == ErrorKind::UnknownState);
    CHECK(parse_error("players 1\nstate a owner=1\nstate a owner=1\nedge a a\ninit a\nobjective 1 buchi a\n") ==
          ErrorKind::DuplicateState);
}

TEST_CASE("comments and blank lines are ignored")
{
    Game g = parse_game_file("# header\n\nplayers 1   # one\nstate a owner=1\n  edge a a\ninit a\nobjective 1 buchi a # tail\n");
    CHECK(g.arena == parse_game_file(kG1).arena);
}

TEST_CASE("game text round trip")
{
    for (const auto &h : fixtures::handcrafted_games()) {
        Game g = fixtures::load_game(h.text);
        Game back = parse_game_file(serialize_game(g));
        REQUIRE(back.name == g.name);
        REQUIRE(back.arena == g.arena);
        REQUIRE(back.profile == g.profile);
        REQUIRE(serialize_game(back) == serialize_game(g));
    }
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        GenParams p;
        p.states = 1 + seed % 7;
        p.players = 1 + static_cast<int>(seed % 3);
        p.objective_class = static_cast<ObjectiveClass>(seed % 5);
        p.seed = seed;
        Game g = fixtures::random_game(p);
        Game back = parse_game_file(serialize_game(g));
        REQUIRE(back.arena == g.arena);
        REQUIRE(back.profile == g.profile);
    }
}

TEST_CASE("class keywords")
{
    for (auto c : {ObjectiveClass::Reachability, ObjectiveClass::Safety, ObjectiveClass::Buchi,
                   ObjectiveClass::CoBuchi, ObjectiveClass::Parity}) {
        CHECK(parse_class(keyword(c)) == c);
    }
    CHECK(thrown_kind([] { parse_class("streett"); }) == ErrorKind::BadParams);
}

TEST_CASE("result JSON")
{
    Game g1 = parse_game_file(kG1);
    std::string j1 = serialize_result(g1.arena, decide_doomsday(g1.arena, g1.profile));
    CHECK(j1.rfind(R"({"verdict":"exists","players":1,"certificate":{"stem":["a"],"cycle":["a"],)", 0) == 0);

    Game g2 = fixtures::load_game(fixtures::game_text("g02_reach_prefix_trap"));
    CHECK(serialize_result(g2.arena, decide_doomsday(g2.arena, g2.profile)) == R"({"verdict":"not_exists","players":2})");
}

TEST_CASE("certificate JSON round trip")
{
    for (const auto &h : fixtures::handcrafted_games()) {
        if (!h.expect_exists) continue;
        Game g = fixtures::load_game(h.text);
        auto r = decide_doomsday(g.arena, g.profile);
        std::string json = serialize_result(g.arena, r);
        Certificate back = parse_certificate_json(json, g.arena, g.profile);
        const Certificate &c = *r.certificate;
        REQUIRE(back.player_count == c.player_count);
        REQUIRE(back.classes == c.classes);
        REQUIRE(back.stem == c.stem);
        REQUIRE(back.cycle == c.cycle);
        REQUIRE(back.retaliation == c.retaliation);
        DoomsdayResult again{true, back, 0};
        REQUIRE(serialize_result(g.arena, again) == json);
        REQUIRE(serialize_result(g.arena, decide_doomsday(g.arena, g.profile)) == json);
    }
}

TEST_CASE("malformed certificate JSON")
{
    Game g = fixtures::load_game(fixtures::game_text("g03_reach_shared_target"));
    auto bad = [&](const std::string &json) {
        return thrown_kind([&] { parse_certificate_json(json, g.arena, g.profile); });
    };
    CHECK(bad("{") == ErrorKind::MalformedCertificate);
    CHECK(bad(R"({"verdict":"not_exists","players":2})") == ErrorKind::MalformedCertificate);
    CHECK(bad(R"({"verdict":"exists","players":3,"certificate":{"stem":["v"],"cycle":["t"],"retaliation":{}}})") ==
          ErrorKind::MalformedCertificate);
    CHECK(bad(R"({"verdict":"exists","players":2,"certificate":{"stem":["q"],"cycle":["t"],"retaliation":{"1":[],"2":[]}}})") ==
          ErrorKind::MalformedCertificate);
    CHECK(bad(R"({"verdict":"exists","players":2,"certificate":{"stem":["v"],"cycle":["t"],"retaliation":{"1":[]}}})") ==
          ErrorKind::MalformedCertificate);
}

TEST_CASE("DOT export")
{
    Game g1 = parse_game_file(kG1);
    CHECK(export_dot(g1.arena, g1.profile) ==
          "digraph game {\n"
          "  // objective 1: buchi a\n"
          "  __init [shape=point];\n"
          "  \"a\" [label=\"a (P1)\", shape=circle];\n"
          "  __init -> \"a\";\n"
          "  \"a\" -> \"a\";\n"
          "}\n");

    Game g3 = fixtures::load_game(fixtures::game_text("g03_reach_shared_target"));
    auto r = decide_doomsday(g3.arena, g3.profile);
    std::string dot = export_dot(g3.arena, g3.profile, &*r.certificate);
    CHECK(contains(dot, "\"v\" -> \"t\" [style=bold];"));
    CHECK(contains(dot, "\"v\" -> \"d\";\n"));
    CHECK(contains(dot, "\"v\" [label=\"v (P2)\", shape=box];"));
    CHECK(export_dot(g3.arena, g3.profile, &*r.certificate) == dot);
}

TEST_CASE("generator determinism")
{
    GenParams p;
    p.states = 5;
    p.players = 2;
    p.seed = 1;
    std::string a = gen_random(p);
    CHECK(a == gen_random(p));
    Game g = parse_game_file(a);
    CHECK(g.arena.size() == 5);
    p.seed = 2;
    CHECK(gen_random(p) != a);
}

TEST_CASE("generated games are always valid")
{
    for (std::uint64_t seed = 1; seed <= 1000; ++seed) {
        GenParams p;
        p.states = 1 + seed % 8;
        p.players = 1 + static_cast<int>(seed % 3);
        p.objective_class = static_cast<ObjectiveClass>(seed % 5);
        p.edge_density = static_cast<double>(seed % 11) / 10.0;
        p.seed = seed;
        INFO("seed " << seed);
        REQUIRE_FALSE(thrown_kind([&] { parse_game_file(gen_random(p)); }));
    }
}

TEST_CASE("empty objective sets follow the configured rate")
{
    GenParams p;
    p.states = 4;
    p.players = 3;
    p.objective_class = ObjectiveClass::Buchi;
    p.empty_rate = 1.0;
    Game all_empty = parse_game_file(gen_random(p));
    for (const auto &o : all_empty.profile.objectives) CHECK(o.states.empty());
    p.empty_rate = 0.0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        p.seed = seed;
        for (const auto &o : parse_game_file(gen_random(p)).profile.objectives) REQUIRE_FALSE(o.states.empty());
    }
}

TEST_CASE("generator parameter checks")
{
    GenParams p;
    p.states = 0;
    CHECK(thrown_kind([&] { gen_random(p); }) == ErrorKind::BadParams);
    p.states = 3;
    p.players = 0;
    CHECK(thrown_kind([&] { gen_random(p); }) == ErrorKind::BadParams);
    p.players = 2;
    p.edge_density = 1.5;
    CHECK(thrown_kind([&] { gen_random(p); }) == ErrorKind::BadParams);
}
