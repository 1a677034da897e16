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

#include <span>
#include <string>
#include <vector>

#include "doomsday/arena.hpp"
#include "doomsday/automata.hpp"

namespace doomsday {

enum class ObjectiveClass { Reachability, Safety, Buchi, CoBuchi, Parity };

/// Keyword used in game files: reach, safety, buchi, cobuchi, parity.
const char *keyword(ObjectiveClass c);

/**
 * One player's state-based objective. For the set classes `states` holds
 * the target / safe / recurrent / tail set as sorted arena indices; for
 * Parity `priority` maps every arena state to its priority.
 *
 *  - Reachability: some visited state is in the set.
 *  - Safety: every visited state is in the set.
 *  - Buchi: some state of the set is visited infinitely often.
 *  - CoBuchi: eventually only states of the set are visited.
 *  - Parity: the minimum priority visited infinitely often is even.
 */
struct Objective
{
    ObjectiveClass kind = ObjectiveClass::Reachability;
    std::vector<StateIndex> states;
    std::vector<Priority> priority;

    static Objective reachability(std::vector<StateIndex> target);
    static Objective safety(std::vector<StateIndex> safe);
    static Objective buchi(std::vector<StateIndex> recurrent);
    static Objective cobuchi(std::vector<StateIndex> tail);
    static Objective parity(std::vector<Priority> priority);

    bool contains(StateIndex s) const;

    friend bool operator==(const Objective &, const Objective &) = default;
};

/// objectives[i] belongs to player i+1.
struct ObjectiveProfile
{
    std::vector<Objective> objectives;

    std::size_t size() const noexcept { return objectives.size(); }
    const Objective &operator[](PlayerId p) const { return objectives.at(p.index()); }

    friend bool operator==(const ObjectiveProfile &, const ObjectiveProfile &) = default;
};

/// Throws BadObjective when a state index is out of range, a parity map is
/// partial or a priority exceeds 2 * |states|, and BadParams when the
/// profile length differs from the player count.
void validate_objective(const Arena &arena, const Objective &obj);
void validate_profile(const Arena &arena, const ObjectiveProfile &profile);

/// Does stem.cycle^omega satisfy `obj`? Throws BrokenPath when consecutive
/// states are not connected in the arena (including the wrap-around from
/// the last cycle state to the first) and BadParams for an empty cycle.
bool play_satisfies(const Arena &arena, const Objective &obj, std::span<const StateIndex> stem,
                    std::span<const StateIndex> cycle);

/// Two-state automata for the set classes and one state per priority value
/// for Parity; the automaton language is exactly the set of plays
/// satisfying `obj`.
Dpa compile_objective_to_dpa(const Arena &arena, const Objective &obj);

/// Boolean combination of player objectives.
struct ObjectiveExpr
{
    enum class Op { Atom, Not, And, Or };

    Op op = Op::Atom;
    PlayerId player{};
    std::vector<ObjectiveExpr> children;

    static ObjectiveExpr atom(PlayerId p);
    static ObjectiveExpr negate(ObjectiveExpr e);
    static ObjectiveExpr all_of(std::vector<ObjectiveExpr> es);
    static ObjectiveExpr any_of(std::vector<ObjectiveExpr> es);

    std::string to_string() const;

    friend bool operator==(const ObjectiveExpr &, const ObjectiveExpr &) = default;
};

/// phi_i or (not phi_1 and ... and not phi_n): what player i must be able
/// to enforce alone once the others leave the agreed play.
ObjectiveExpr retaliation_objective(PlayerId i, int player_count);

Dpa compile_expr(const Arena &arena, const ObjectiveProfile &profile, const ObjectiveExpr &expr);

} // namespace doomsday
