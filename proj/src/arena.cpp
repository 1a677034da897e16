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

#include "doomsday/arena.hpp"

#include <algorithm>

#include "doomsday/error.hpp"

namespace doomsday {

const char *
to_string(ErrorKind kind)
{
    switch (kind) {
        case ErrorKind::DeadlockState: return "DeadlockState";
        case ErrorKind::UnknownState: return "UnknownState";
        case ErrorKind::BadOwner: return "BadOwner";
        case ErrorKind::DuplicateState: return "DuplicateState";
        case ErrorKind::DuplicateEdge: return "DuplicateEdge";
        case ErrorKind::BadObjective: return "BadObjective";
        case ErrorKind::BrokenPath: return "BrokenPath";
        case ErrorKind::UnknownLetter: return "UnknownLetter";
        case ErrorKind::AlphabetMismatch: return "AlphabetMismatch";
        case ErrorKind::RecursionLimit: return "RecursionLimit";
        case ErrorKind::SizeLimit: return "SizeLimit";
        case ErrorKind::MalformedCertificate: return "MalformedCertificate";
        case ErrorKind::BudgetExceeded: return "BudgetExceeded";
        case ErrorKind::SyntaxError: return "SyntaxError";
        case ErrorKind::MissingObjective: return "MissingObjective";
        case ErrorKind::DuplicateObjective: return "DuplicateObjective";
        case ErrorKind::BadParams: return "BadParams";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string &detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind)
{
}

bool
Error::is_resource_limit() const noexcept
{
    return kind_ == ErrorKind::SizeLimit || kind_ == ErrorKind::BudgetExceeded ||
           kind_ == ErrorKind::RecursionLimit;
}

std::span<const StateIndex>
Arena::successors(std::string_view id) const
{
    return succ_[index_of(id)];
}

std::optional<StateIndex>
Arena::find(std::string_view id) const
{
    auto it = std::lower_bound(states_.begin(), states_.end(), id,
                               [](const StateRecord &r, std::string_view key) { return r.id < key; });
    if (it == states_.end() || it->id != id) return std::nullopt;
    return static_cast<StateIndex>(it - states_.begin());
}

StateIndex
Arena::index_of(std::string_view id) const
{
    auto s = find(id);
    if (!s) throw Error(ErrorKind::UnknownState, std::string(id));
    return *s;
}

bool
Arena::has_edge(StateIndex from, StateIndex to) const
{
    if (from >= succ_.size()) return false;
    const auto &succ = succ_[from];
    return std::binary_search(succ.begin(), succ.end(), to);
}

RawArena
Arena::to_raw() const
{
    RawArena raw;
    raw.player_count = player_count_;
    raw.states = states_;
    for (StateIndex s = 0; s < states_.size(); ++s) {
        for (StateIndex t : succ_[s]) raw.edges.emplace_back(states_[s].id, states_[t].id);
    }
    raw.initial = states_.at(initial_).id;
    return raw;
}

Arena
validate_arena(RawArena raw)
{
    if (raw.player_count < 1) {
        throw Error(ErrorKind::BadParams, "player count must be at least 1");
    }

    Arena arena;
    arena.player_count_ = raw.player_count;
    arena.states_ = std::move(raw.states);
    std::stable_sort(arena.states_.begin(), arena.states_.end(),
                     [](const StateRecord &a, const StateRecord &b) { return a.id < b.id; });

    for (std::size_t k = 0; k < arena.states_.size(); ++k) {
        const auto &rec = arena.states_[k];
        if (k > 0 && arena.states_[k - 1].id == rec.id) {
            throw Error(ErrorKind::DuplicateState, rec.id);
        }
        if (rec.owner < 1 || rec.owner > raw.player_count) {
            throw Error(ErrorKind::BadOwner, rec.id + " owner=" + std::to_string(rec.owner));
        }
    }

    arena.succ_.assign(arena.states_.size(), {});
    for (const auto &[from, to] : raw.edges) {
        StateIndex s = arena.index_of(from);
        StateIndex t = arena.index_of(to);
        arena.succ_[s].push_back(t);
    }
    for (StateIndex s = 0; s < arena.succ_.size(); ++s) {
        auto &succ = arena.succ_[s];
        if (succ.empty()) throw Error(ErrorKind::DeadlockState, arena.states_[s].id);
        std::sort(succ.begin(), succ.end());
        auto dup = std::adjacent_find(succ.begin(), succ.end());
        if (dup != succ.end()) {
            throw Error(ErrorKind::DuplicateEdge,
                        arena.states_[s].id + " -> " + arena.states_[*dup].id);
        }
    }

    arena.initial_ = arena.index_of(raw.initial);
    return arena;
}

} // namespace doomsday
