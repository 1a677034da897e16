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
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace doomsday {

/// Dense index of a state inside a validated arena. Indices follow the
/// lexicographic order of state ids.
using StateIndex = std::uint32_t;

/// 1-based player number.
struct PlayerId
{
    int value = 1;

    constexpr int index() const noexcept { return value - 1; }
    friend constexpr bool operator==(PlayerId, PlayerId) = default;
    friend constexpr auto operator<=>(PlayerId, PlayerId) = default;
};

struct StateRecord
{
    std::string id;
    int owner = 1;

    friend bool operator==(const StateRecord &, const StateRecord &) = default;
};

/// Arena as read from a file, before any checking.
struct RawArena
{
    int player_count = 1;
    std::vector<StateRecord> states;
    std::vector<std::pair<std::string, std::string>> edges;
    std::string initial;

    friend bool operator==(const RawArena &, const RawArena &) = default;
};

/// Turn-based game graph. Immutable once built; every state has at least
/// one successor and successor lists are sorted by state id.
class Arena
{
public:
    std::size_t size() const noexcept { return states_.size(); }
    int player_count() const noexcept { return player_count_; }
    StateIndex initial() const noexcept { return initial_; }

    const std::string &id(StateIndex s) const { return states_.at(s).id; }
    int owner(StateIndex s) const { return states_.at(s).owner; }
    PlayerId owner_id(StateIndex s) const { return PlayerId{owner(s)}; }

    std::span<const StateIndex> successors(StateIndex s) const
    {
        return succ_.at(s);
    }

    /// Throws UnknownState when `id` is not a state of this arena.
    std::span<const StateIndex> successors(std::string_view id) const;

    std::optional<StateIndex> find(std::string_view id) const;

    /// Throws UnknownState.
    StateIndex index_of(std::string_view id) const;

    bool has_edge(StateIndex from, StateIndex to) const;

    /// Inverse of validate_arena up to state and edge ordering.
    RawArena to_raw() const;

    friend bool operator==(const Arena &, const Arena &) = default;

private:
    friend Arena validate_arena(RawArena raw);

    int player_count_ = 1;
    std::vector<StateRecord> states_;
    std::vector<std::vector<StateIndex>> succ_;
    StateIndex initial_ = 0;
};

/// Checks every arena invariant and returns the normalized arena: states
/// ordered by id and successor lists sorted. Throws DeadlockState,
/// UnknownState, BadOwner, DuplicateState or DuplicateEdge.
Arena validate_arena(RawArena raw);

} // namespace doomsday
