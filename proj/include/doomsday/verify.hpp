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
#include <optional>
#include <string>
#include <vector>

#include "doomsday/arena.hpp"
#include "doomsday/equilibrium.hpp"
#include "doomsday/objectives.hpp"

// Ground truth for doomsday equilibria, checked against the definition
// itself. Nothing in here uses the parity game solver.

namespace doomsday {

/**
 * Moore-style strategy with finite memory. The memory after a history
 * h.s is update(memory(h), s), starting from `initial_memory` before the
 * first state. At a state it owns the player moves to choice(m, s) where m
 * already accounts for s.
 */
struct StrategyMachine
{
    PlayerId player;
    std::uint32_t memory_size = 1;
    std::uint32_t initial_memory = 0;
    std::size_t state_count = 0;
    /// update[m * state_count + s]
    std::vector<std::uint32_t> update;
    /// choice[m * state_count + s]; kNoMove at states the player does not own.
    std::vector<std::int64_t> choice;

    std::uint32_t next_memory(std::uint32_t m, StateIndex s) const
    {
        return update[m * state_count + s];
    }
    StateIndex move(std::uint32_t m, StateIndex s) const
    {
        return static_cast<StateIndex>(choice[m * state_count + s]);
    }
};

struct StrategyProfile
{
    std::vector<StrategyMachine> machines;
};

struct Lasso
{
    std::vector<StateIndex> stem;
    std::vector<StateIndex> cycle;

    friend bool operator==(const Lasso &, const Lasso &) = default;
};

/// Throws BadParams when a machine is not total or picks a non-successor.
void validate_machine(const Arena &arena, const StrategyMachine &m);

/// The play produced when every player follows its machine.
Lasso outcome(const Arena &arena, const StrategyProfile &profile);

struct Violation
{
    /// 1: the agreed play misses `victim`'s objective.
    /// 2: deviating against `victim` hurts `victim` yet satisfies `other`.
    int condition = 1;
    PlayerId victim;
    PlayerId other;
    Lasso witness;
    std::string description;
};

struct CheckResult
{
    bool is_de = false;
    std::optional<Violation> violation;
};

/// Second condition for the machine's owner: no play consistent with the
/// machine violates its owner's objective while satisfying another's.
std::optional<Violation> check_retaliation(const Arena &arena, const ObjectiveProfile &profile,
                                           const StrategyMachine &machine);

CheckResult check_profile(const Arena &arena, const ObjectiveProfile &profile,
                          const StrategyProfile &strategies);

/// Turns a certificate into one machine per player: follow the lasso until
/// the observed state differs from the prescribed one, then play the
/// retaliation strategy seeded with the current automaton state. Throws
/// MalformedCertificate.
StrategyProfile assemble_profile(const Certificate &cert, const Arena &arena,
                                 const ObjectiveProfile &profile);

struct OracleOptions
{
    std::uint32_t memory_bound = 2;
    /// Cap on the number of enumerated machines over all players.
    std::size_t budget = 5'000'000;
};

struct OracleResult
{
    bool found = false;
    std::optional<StrategyProfile> profile;
    std::size_t machines_enumerated = 0;
};

/// Exhaustive search over all profiles whose machines use at most
/// `memory_bound` memory states. Not finding one bounds memory, it does not
/// prove absence. Throws BadParams outside desk scale (more than 8 states,
/// 3 players, or a bound outside 1..2) and BudgetExceeded.
OracleResult oracle_decide_bounded(const Arena &arena, const ObjectiveProfile &profile,
                                   OracleOptions options = {});

} // namespace doomsday
