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

#include "doomsday/objectives.hpp"
#include "doomsday/zerosum.hpp"
#include "support/games.hpp"
#include "support/oracles.hpp"

using namespace doomsday;
using fixtures::thrown_kind;

namespace {

ParityGame
single(Role r, Priority p)
{
    ParityGame pg;
    pg.add_node(r, p);
    pg.add_edge(0, 0);
    return pg;
}

std::size_t
count(const NodeSet &s)
{
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), true));
}

} // namespace

TEST_CASE("attractor fixpoints")
{
    oracle::Rng rng(41);
    ParityGame pg = oracle::random_parity_game(rng, 6, 3, 4);
    CHECK(count(attractor(pg, Role::Protagonist, NodeSet(6, false))) == 0);
    CHECK(count(attractor(pg, Role::Protagonist, NodeSet(6, true))) == 6);

    ParityGame chain;
    for (int k = 0; k < 3; ++k) chain.add_node(Role::Antagonist, 0);
    chain.add_edge(0, 1);
    chain.add_edge(1, 2);
    chain.add_edge(2, 2);
    NodeSet c{false, false, true};
    CHECK(attractor(chain, Role::Protagonist, c) == NodeSet{true, true, true});
}

TEST_CASE("attractor owner semantics")
{
    // 0 has successors 1 and 2; only 1 is in the target
    for (Role r : {Role::Protagonist, Role::Antagonist}) {
        ParityGame pg;
        pg.add_node(r, 0);
        pg.add_node(Role::Protagonist, 0);
        pg.add_node(Role::Protagonist, 0);
        pg.add_edge(0, 1);
        pg.add_edge(0, 2);
        pg.add_edge(1, 1);
        pg.add_edge(2, 2);
        NodeSet t{false, true, false};
        CHECK(attractor(pg, Role::Protagonist, t)[0] == (r == Role::Protagonist));
    }
}

TEST_CASE("attractor is monotone")
{
    oracle::Rng rng(42);
    for (int it = 0; it < 200; ++it) {
        auto pg = oracle::random_parity_game(rng, 8, 3, 4);
        NodeSet a(8), b(8);
        for (std::size_t k = 0; k < 8; ++k) {
            a[k] = oracle::below(rng, 4) == 0;
            b[k] = a[k] || oracle::below(rng, 3) == 0;
        }
        Role who = oracle::below(rng, 2) ? Role::Protagonist : Role::Antagonist;
        auto aa = attractor(pg, who, a), ab = attractor(pg, who, b);
        for (std::size_t k = 0; k < 8; ++k) {
            REQUIRE(aa[k] >= a[k]);
            REQUIRE(aa[k] <= ab[k]);
        }
    }
}

TEST_CASE("single node games")
{
    auto even = zielonka_solve(single(Role::Protagonist, 0));
    CHECK(even.win_protagonist == NodeSet{true});
    CHECK(even.strategy_protagonist[0] == 0);
    auto odd = zielonka_solve(single(Role::Protagonist, 1));
    CHECK(odd.win_antagonist == NodeSet{true});
    CHECK(odd.strategy_protagonist[0] == kNoMove);
}

TEST_CASE("solver matches positional enumeration")
{
    oracle::Rng rng(43);
    for (int it = 0; it < 500; ++it) {
        auto n = static_cast<std::size_t>(1 + oracle::below(rng, 8));
        auto pg = oracle::random_parity_game(rng, n, 3, 5);
        REQUIRE(pg.well_formed());
        auto sol = zielonka_solve(pg);
        auto ref = oracle::positional_enumeration(pg);
        for (NodeId v = 0; v < n; ++v) {
            REQUIRE(sol.win_protagonist[v] != sol.win_antagonist[v]);
            REQUIRE(ref.protagonist[v] != ref.antagonist[v]);
            REQUIRE(sol.win_protagonist[v] == ref.protagonist[v]);
        }
        REQUIRE(oracle::strategy_wins(pg, Role::Protagonist, sol.win_protagonist, sol.strategy_protagonist));
        REQUIRE(oracle::strategy_wins(pg, Role::Antagonist, sol.win_antagonist, sol.strategy_antagonist));
        for (NodeId v = 0; v < n; ++v) {
            bool own_p = pg.owner[v] == Role::Protagonist && sol.win_protagonist[v];
            bool own_a = pg.owner[v] == Role::Antagonist && sol.win_antagonist[v];
            REQUIRE((sol.strategy_protagonist[v] != kNoMove) == own_p);
            REQUIRE((sol.strategy_antagonist[v] != kNoMove) == own_a);
        }
    }
}

TEST_CASE("recursion guard")
{
    oracle::Rng rng(44);
    auto pg = oracle::random_parity_game(rng, 8, 3, 6);
    SolverLimits tight;
    tight.max_recursion_depth = 0;
    CHECK(thrown_kind([&] { zielonka_solve(pg, tight); }) == ErrorKind::RecursionLimit);
}

TEST_CASE("product game structure")
{
    Game g1 = fixtures::load_game(fixtures::game_text("g01_single_player"));
    Dpa reach = compile_objective_to_dpa(g1.arena, Objective::reachability({0}));
    auto pg = build_parity_game(g1.arena, PlayerId{1}, reach);
    CHECK(pg.game.size() == 2);
    CHECK(pg.game.well_formed());
    CHECK(pg.node(0, 1) == 1);

    Game g2 = fixtures::load_game(fixtures::game_text("g02_reach_prefix_trap"));
    Dpa r = compile_objective_to_dpa(g2.arena, Objective::reachability({0}));
    auto p2 = build_parity_game(g2.arena, PlayerId{2}, r);
    CHECK(p2.game.size() == g2.arena.size() * r.size());
    StateIndex v = g2.arena.index_of("v");
    CHECK(p2.game.owner[p2.node(v, 0)] == Role::Protagonist);
    CHECK(p2.game.owner[p2.node(g2.arena.index_of("t"), 0)] == Role::Antagonist);
    for (NodeId n = 0; n < p2.game.size(); ++n) {
        CHECK(p2.game.priority[n] == r.priority(p2.dpa_state(n)));
        for (NodeId m : p2.game.succ[n]) CHECK(p2.dpa_state(m) == r.next(p2.dpa_state(n), p2.arena_state(m)));
    }

    Dpa wrong(7, 0, std::vector<DpaState>(7, 0), {0});
    CHECK(thrown_kind([&] { build_parity_game(g2.arena, PlayerId{1}, wrong); }) == ErrorKind::AlphabetMismatch);
}

TEST_CASE("G2 sink after the opponent target is losing for player 1")
{
    Game g = fixtures::load_game(fixtures::game_text("g02_reach_prefix_trap"));
    auto w1 = retaliation_region(g.arena, g.profile, PlayerId{1});
    StateIndex v = g.arena.index_of("v"), d = g.arena.index_of("d");
    std::vector<Letter> hist{v, d};
    DpaState q = w1.automaton->run(w1.automaton->initial(), hist);
    CHECK_FALSE(w1.contains(d, q));

    auto ref = oracle::positional_enumeration(w1.product.game);
    CHECK(ref.protagonist == w1.winning);
}

TEST_CASE("G3 sink with no target visited is winning for player 1")
{
    Game g = fixtures::load_game(fixtures::game_text("g03_reach_shared_target"));
    auto w1 = retaliation_region(g.arena, g.profile, PlayerId{1});
    StateIndex v = g.arena.index_of("v"), d = g.arena.index_of("d");
    std::vector<Letter> hist{v, d};
    DpaState q = w1.automaton->run(w1.automaton->initial(), hist);
    CHECK(w1.contains(d, q));
    CHECK(w1.start_state(v) == w1.automaton->next(w1.automaton->initial(), v));

    auto ref = oracle::positional_enumeration(w1.product.game);
    CHECK(ref.protagonist == w1.winning);
}

TEST_CASE("region strategies stay inside the region")
{
    for (const auto &h : fixtures::handcrafted_games()) {
        Game g = fixtures::load_game(h.text);
        for (int i = 1; i <= g.arena.player_count(); ++i) {
            auto w = retaliation_region(g.arena, g.profile, PlayerId{i});
            const auto &pg = w.product.game;
            for (NodeId n = 0; n < pg.size(); ++n) {
                bool own = pg.owner[n] == Role::Protagonist && w.winning[n];
                REQUIRE((w.strategy[n] != kNoMove) == own);
                if (own) REQUIRE(w.winning[static_cast<NodeId>(w.strategy[n])]);
                auto c = w.choice(w.product.arena_state(n), w.product.dpa_state(n));
                REQUIRE(c.has_value() == own);
            }
            REQUIRE(oracle::strategy_wins(pg, Role::Protagonist, w.winning, w.strategy));
        }
    }
}

TEST_CASE("single-player region is everything")
{
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        GenParams p;
        p.players = 1;
        p.states = 2 + seed % 5;
        p.objective_class = static_cast<ObjectiveClass>(seed % 5);
        p.seed = seed;
        Game g = fixtures::random_game(p);
        auto w = retaliation_region(g.arena, g.profile, PlayerId{1});
        REQUIRE(count(w.winning) == w.winning.size());
    }
}
