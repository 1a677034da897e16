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

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "doomsday/arena.hpp"
#include "doomsday/automata.hpp"
#include "doomsday/objectives.hpp"
#include "doomsday/zerosum.hpp"

namespace doomsday {

/// (v, q_all, r_1 .. r_n): arena state plus the state of the conjunction
/// automaton and of every retaliation automaton after reading the history.
struct TrackedNode
{
    StateIndex v = 0;
    DpaState all = 0;
    std::vector<DpaState> retaliation;

    friend bool operator==(const TrackedNode &, const TrackedNode &) = default;
    friend auto operator<=>(const TrackedNode &, const TrackedNode &) = default;
};

struct TrackedEdge
{
    NodeId to = 0;
    bool permitted = false;
};

/// Reachable part of arena x D_all x D_R1 x ... x D_Rn. Node 0 is initial.
struct TrackedProduct
{
    std::shared_ptr<const Dpa> all;
    std::vector<TrackedNode> nodes;
    /// Parallel to the arena successor list of each node's state.
    std::vector<std::vector<TrackedEdge>> succ;

    std::size_t size() const noexcept { return nodes.size(); }
    Priority priority(NodeId n) const { return all->priority(nodes[n].all); }
};

inline constexpr std::size_t kDefaultNodeBudget = 1'000'000;

/// Player i's retaliation strategy as (arena state, automaton state) ->
/// arena successor, over the winning nodes the player owns.
struct RetaliationPlan
{
    PlayerId player;
    std::shared_ptr<const Dpa> automaton;
    std::map<std::pair<StateIndex, DpaState>, StateIndex> choices;

    friend bool operator==(const RetaliationPlan &a, const RetaliationPlan &b)
    {
        return a.player == b.player && a.choices == b.choices;
    }
};

/// Finite presentation of a doomsday equilibrium: the agreed play
/// stem.cycle^omega and the punishment each player switches to when the
/// play leaves it.
struct Certificate
{
    int player_count = 0;
    std::vector<ObjectiveClass> classes;
    /// Shortest presentation of the agreed play; stem starts at the
    /// initial state.
    std::vector<StateIndex> stem;
    std::vector<StateIndex> cycle;
    /// Tracked-product lasso the play was found on. It projects onto the
    /// same play, possibly unrolled further. Empty for certificates read
    /// back from JSON.
    std::vector<NodeId> stem_nodes;
    std::vector<NodeId> cycle_nodes;
    std::vector<RetaliationPlan> retaliation;
};

struct DoomsdayResult
{
    bool exists = false;
    std::optional<Certificate> certificate;
    std::size_t product_nodes = 0;
};

struct SolveOptions
{
    std::size_t node_budget = kDefaultNodeBudget;
    SolverLimits limits;
};

std::vector<RetaliationRegion> retaliation_regions(const Arena &arena,
                                                   const ObjectiveProfile &profile,
                                                   SolverLimits limits = {});

/// Moving from `p` to `next` is permitted iff every other successor of
/// p.v, reached by a player other than the owner of p.v, lands inside that
/// player's retaliation region. `next` itself is exempt.
bool permitted_edge(const Arena &arena, const TrackedNode &p, StateIndex next,
                    std::span<const RetaliationRegion> regions);

/// Throws SizeLimit once more than `node_budget` nodes are reachable.
TrackedProduct tracked_product(const Arena &arena, const ObjectiveProfile &profile,
                               std::span<const RetaliationRegion> regions,
                               std::size_t node_budget = kDefaultNodeBudget);

/// Lasso over permitted edges whose minimum D_all priority on the cycle is
/// even, or nothing. The stem is a shortest path (successors explored in
/// id order) to the first-discovered node that starts such a cycle.
std::optional<Certificate> witness_search(const Arena &arena, const ObjectiveProfile &profile,
                                          const TrackedProduct &tp,
                                          std::span<const RetaliationRegion> regions);

DoomsdayResult decide_doomsday(const Arena &arena, const ObjectiveProfile &profile,
                               SolveOptions options = {});

} // namespace doomsday
