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

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "doomsday/arena.hpp"
#include "doomsday/automata.hpp"
#include "doomsday/objectives.hpp"

namespace doomsday {

using NodeId = std::uint32_t;
inline constexpr std::int64_t kNoMove = -1;

/// Protagonist wins plays whose minimum recurring priority is even.
enum class Role : std::uint8_t { Protagonist, Antagonist };

inline Role opponent(Role r) { return r == Role::Protagonist ? Role::Antagonist : Role::Protagonist; }

struct ParityGame
{
    std::vector<Role> owner;
    std::vector<Priority> priority;
    std::vector<std::vector<NodeId>> succ;

    std::size_t size() const noexcept { return owner.size(); }
    NodeId add_node(Role r, Priority p);
    void add_edge(NodeId from, NodeId to) { succ.at(from).push_back(to); }

    /// Every node has a successor and every edge target exists.
    bool well_formed() const noexcept;
};

using NodeSet = std::vector<bool>;

/// Least set containing `target`, every `who` node with a successor in the
/// set and every opponent node whose successors all lie in the set.
NodeSet attractor(const ParityGame &pg, Role who, const NodeSet &target);

struct ParitySolution
{
    NodeSet win_protagonist;
    NodeSet win_antagonist;
    /// Successor chosen at each node by its owner inside its own winning
    /// region; kNoMove elsewhere.
    std::vector<std::int64_t> strategy_protagonist;
    std::vector<std::int64_t> strategy_antagonist;
};

struct SolverLimits
{
    std::size_t max_recursion_depth = 1u << 14;
};

/// Recursive (Zielonka) solver. Throws RecursionLimit past the depth guard.
ParitySolution zielonka_solve(const ParityGame &pg, SolverLimits limits = {});

/// Arena x automaton game: node (v, q) is v * |dpa| + q, with q the
/// automaton state after reading v.
struct ProductGame
{
    ParityGame game;
    std::uint32_t dpa_size = 0;

    NodeId node(StateIndex v, DpaState q) const { return v * dpa_size + q; }
    StateIndex arena_state(NodeId n) const { return n / dpa_size; }
    DpaState dpa_state(NodeId n) const { return n % dpa_size; }
};

/// Nodes owned by `protagonist` belong to the Protagonist, all others to
/// the merged Antagonist. Throws AlphabetMismatch.
ProductGame build_parity_game(const Arena &arena, PlayerId protagonist, const Dpa &d);

/// Where player i can enforce its retaliation objective alone.
struct RetaliationRegion
{
    PlayerId player;
    std::shared_ptr<const Dpa> automaton;
    ProductGame product;
    NodeSet winning;
    /// Protagonist-owned winning node -> chosen successor node.
    std::vector<std::int64_t> strategy;

    bool contains(StateIndex v, DpaState q) const { return winning[product.node(v, q)]; }

    /// Arena successor chosen at (v, q), if (v, q) is a winning node of the
    /// player.
    std::optional<StateIndex> choice(StateIndex v, DpaState q) const;

    /// Automaton state after reading `v` first.
    DpaState start_state(StateIndex v) const { return automaton->next(automaton->initial(), v); }
};

RetaliationRegion retaliation_region(const Arena &arena, const ObjectiveProfile &profile,
                                     PlayerId i, SolverLimits limits = {});

} // namespace doomsday
