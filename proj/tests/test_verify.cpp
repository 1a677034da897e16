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
#include "doomsday/verify.hpp"
#include "support/games.hpp"

using namespace doomsday;
using fixtures::thrown_kind;

namespace {

Game
named(const std::string &name)
{
    return fixtures::load_game(fixtures::game_text(name));
}

/// Memoryless machine for `player` following `moves` (state id -> successor id).
StrategyMachine
positional(const Arena &a, int player, const std::map<std::string, std::string> &moves)
{
    StrategyMachine m;
    m.player = PlayerId{player};
    m.state_count = a.size();
    m.update.assign(a.size(), 0);
    m.choice.assign(a.size(), kNoMove);
    for (StateIndex s = 0; s < a.size(); ++s) {
        if (a.owner(s) != player) continue;
        auto it = moves.find(a.id(s));
        m.choice[s] = it != moves.end() ? a.index_of(it->second) : a.successors(s).front();
    }
    return m;
}

StrategyProfile
assembled(const Game &g)
{
    auto r = decide_doomsday(g.arena, g.profile);
    REQUIRE(r.exists);
    return assemble_profile(*r.certificate, g.arena, g.profile);
}

} // namespace

TEST_CASE("G1 trivial profile")
{
    Game g = named("g01_single_player");
    StrategyProfile p{{positional(g.arena, 1, {})}};
    auto res = check_profile(g.arena, g.profile, p);
    CHECK(res.is_de);
    CHECK_FALSE(res.violation.has_value());

    StrategyProfile a = assembled(g);
    REQUIRE(a.machines.size() == 1);
    CHECK(outcome(g.arena, a).cycle == std::vector<StateIndex>{0});
    CHECK(check_profile(g.arena, g.profile, a).is_de);
}

TEST_CASE("G2 profile through t is broken by a deviation to d")
{
    Game g = named("g02_reach_prefix_trap");
    StrategyProfile p{{positional(g.arena, 1, {}), positional(g.arena, 2, {{"v", "t"}})}};
    auto l = outcome(g.arena, p);
    CHECK(fixtures::same_play(l.stem, l.cycle, {g.arena.index_of("v")}, {g.arena.index_of("t")}));

    auto res = check_profile(g.arena, g.profile, p);
    CHECK_FALSE(res.is_de);
    REQUIRE(res.violation.has_value());
    CHECK(res.violation->condition == 2);
    CHECK(res.violation->victim == PlayerId{1});
    CHECK(res.violation->other == PlayerId{2});
    const auto &w = res.violation->witness;
    CHECK(std::find(w.cycle.begin(), w.cycle.end(), g.arena.index_of("d")) != w.cycle.end());
    CHECK_FALSE(play_satisfies(g.arena, g.profile.objectives[0], w.stem, w.cycle));
    CHECK(play_satisfies(g.arena, g.profile.objectives[1], w.stem, w.cycle));
}

TEST_CASE("condition 1 failure is reported")
{
    Game g = named("g02_reach_prefix_trap");
    StrategyProfile p{{positional(g.arena, 1, {}), positional(g.arena, 2, {{"v", "d"}})}};
    auto res = check_profile(g.arena, g.profile, p);
    CHECK_FALSE(res.is_de);
    REQUIRE(res.violation.has_value());
    CHECK(res.violation->condition == 1);
    CHECK(res.violation->victim == PlayerId{1});
}

TEST_CASE("G3 assembled certificate")
{
    Game g = named("g03_reach_shared_target");
    auto r = decide_doomsday(g.arena, g.profile);
    REQUIRE(r.exists);
    const Certificate &c = *r.certificate;
    StrategyProfile p = assemble_profile(c, g.arena, g.profile);
    REQUIRE(p.machines.size() == 2);
    CHECK(check_profile(g.arena, g.profile, p).is_de);

    // player 1 on the agreed play, then parked in the d-sink after a deviation
    const StrategyMachine &m1 = p.machines[0];
    StateIndex v = g.arena.index_of("v"), t = g.arena.index_of("t"), d = g.arena.index_of("d");
    std::uint32_t mem = m1.next_memory(m1.initial_memory, v);
    std::uint32_t on = m1.next_memory(mem, t);
    CHECK(m1.move(on, t) == t);
    std::uint32_t off = m1.next_memory(mem, d);
    CHECK(m1.move(off, d) == d);

    auto l = outcome(g.arena, p);
    CHECK(fixtures::same_play(l.stem, l.cycle, c.stem, c.cycle));
}

TEST_CASE("assembled profiles follow the certificate and pass the checker")
{
    for (const auto &h : fixtures::handcrafted_games()) {
        if (!h.expect_exists) continue;
        INFO(h.name);
        Game g = fixtures::load_game(h.text);
        auto r = decide_doomsday(g.arena, g.profile);
        REQUIRE(r.exists);
        StrategyProfile p = assemble_profile(*r.certificate, g.arena, g.profile);
        for (const auto &m : p.machines) validate_machine(g.arena, m);
        auto l = outcome(g.arena, p);
        REQUIRE(fixtures::same_play(l.stem, l.cycle, r.certificate->stem, r.certificate->cycle));
        auto res = check_profile(g.arena, g.profile, p);
        INFO((res.violation ? res.violation->description : std::string()));
        REQUIRE(res.is_de);
    }
}

TEST_CASE("random certificates pass the checker")
{
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        GenParams p;
        p.states = 3 + seed % 4;
        p.players = 2 + static_cast<int>(seed % 2);
        p.objective_class = static_cast<ObjectiveClass>(seed % 5);
        p.seed = 1000 + seed;
        Game g = fixtures::random_game(p);
        auto r = decide_doomsday(g.arena, g.profile);
        if (!r.exists) continue;
        auto res = check_profile(g.arena, g.profile, assemble_profile(*r.certificate, g.arena, g.profile));
        INFO("seed " << p.seed << " " << (res.violation ? res.violation->description : std::string()));
        REQUIRE(res.is_de);
    }
}

TEST_CASE("malformed certificates")
{
    Game g = named("g03_reach_shared_target");
    Certificate c = *decide_doomsday(g.arena, g.profile).certificate;

    Certificate broken = c;
    broken.stem = {g.arena.index_of("t")};
    CHECK(thrown_kind([&] { assemble_profile(broken, g.arena, g.profile); }) == ErrorKind::MalformedCertificate);
    broken = c;
    broken.cycle = {g.arena.index_of("t"), g.arena.index_of("d")};
    CHECK(thrown_kind([&] { assemble_profile(broken, g.arena, g.profile); }) == ErrorKind::MalformedCertificate);
    broken = c;
    broken.cycle.clear();
    CHECK(thrown_kind([&] { assemble_profile(broken, g.arena, g.profile); }) == ErrorKind::MalformedCertificate);
    broken = c;
    broken.retaliation.pop_back();
    CHECK(thrown_kind([&] { assemble_profile(broken, g.arena, g.profile); }) == ErrorKind::MalformedCertificate);
    broken = c;
    broken.player_count = 3;
    CHECK(thrown_kind([&] { assemble_profile(broken, g.arena, g.profile); }) == ErrorKind::MalformedCertificate);
}

TEST_CASE("machine validation")
{
    Game g = named("g03_reach_shared_target");
    StrategyMachine m = positional(g.arena, 2, {{"v", "t"}});
    CHECK_FALSE(thrown_kind([&] { validate_machine(g.arena, m); }));
    StrategyMachine bad = m;
    bad.choice[g.arena.index_of("v")] = g.arena.index_of("v");
    CHECK(thrown_kind([&] { validate_machine(g.arena, bad); }) == ErrorKind::BadParams);
    bad = m;
    bad.update[0] = 4;
    CHECK(thrown_kind([&] { validate_machine(g.arena, bad); }) == ErrorKind::BadParams);
    bad = m;
    bad.update.pop_back();
    CHECK(thrown_kind([&] { validate_machine(g.arena, bad); }) == ErrorKind::BadParams);
}

TEST_CASE("bounded oracle on the reference games")
{
    Game g1 = named("g01_single_player");
    CHECK(oracle_decide_bounded(g1.arena, g1.profile, {1}).found);
    Game g2 = named("g02_reach_prefix_trap");
    CHECK_FALSE(oracle_decide_bounded(g2.arena, g2.profile, {2}).found);
    Game g3 = named("g03_reach_shared_target");
    auto r3 = oracle_decide_bounded(g3.arena, g3.profile, {1});
    REQUIRE(r3.found);
    CHECK(check_profile(g3.arena, g3.profile, *r3.profile).is_de);
}

TEST_CASE("oracle agrees with the handcrafted verdicts")
{
    for (const auto &h : fixtures::handcrafted_games()) {
        INFO(h.name);
        Game g = fixtures::load_game(h.text);
        auto r = oracle_decide_bounded(g.arena, g.profile, {2});
        if (r.found) {
            REQUIRE(check_profile(g.arena, g.profile, *r.profile).is_de);
            REQUIRE(h.expect_exists);
        } else {
            REQUIRE_FALSE(h.expect_exists);
        }
    }
}

TEST_CASE("oracle limits")
{
    Game g3 = named("g03_reach_shared_target");
    CHECK(thrown_kind([&] { oracle_decide_bounded(g3.arena, g3.profile, {3}); }) == ErrorKind::BadParams);
    CHECK(thrown_kind([&] { oracle_decide_bounded(g3.arena, g3.profile, {0}); }) == ErrorKind::BadParams);
    OracleOptions tiny;
    tiny.budget = 1;
    CHECK(thrown_kind([&] { oracle_decide_bounded(g3.arena, g3.profile, tiny); }) == ErrorKind::BudgetExceeded);

    GenParams p;
    p.states = 9;
    p.players = 2;
    Game big = fixtures::random_game(p);
    CHECK(thrown_kind([&] { oracle_decide_bounded(big.arena, big.profile); }) == ErrorKind::BadParams);
}
