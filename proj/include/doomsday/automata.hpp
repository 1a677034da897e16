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
#include <span>
#include <vector>

namespace doomsday {

using DpaState = std::uint32_t;
using Letter = std::uint32_t;
using Priority = std::uint32_t;

/**
 * Deterministic parity automaton with state-based priorities over the
 * letters 0..alphabet_size-1 (arena state indices). A run accepts iff the
 * minimum priority among the states it visits infinitely often is even.
 * The first letter read is the arena's initial state.
 */
class Dpa
{
public:
    Dpa() = default;

    /// `delta` is row-major: delta[q * alphabet_size + letter].
    Dpa(std::uint32_t alphabet_size, DpaState initial, std::vector<DpaState> delta,
        std::vector<Priority> priority);

    std::uint32_t alphabet_size() const noexcept { return alphabet_; }
    std::uint32_t size() const noexcept { return static_cast<std::uint32_t>(priority_.size()); }
    DpaState initial() const noexcept { return initial_; }

    DpaState next(DpaState q, Letter letter) const noexcept
    {
        return delta_[static_cast<std::size_t>(q) * alphabet_ + letter];
    }

    Priority priority(DpaState q) const noexcept { return priority_[q]; }
    std::span<const Priority> priorities() const noexcept { return priority_; }

    /// Throws UnknownLetter when any letter is outside the alphabet.
    DpaState run(DpaState from, std::span<const Letter> word) const;

    /// Structural check: delta total and in range, initial valid.
    bool well_formed() const noexcept;

    friend bool operator==(const Dpa &, const Dpa &) = default;

private:
    std::uint32_t alphabet_ = 0;
    DpaState initial_ = 0;
    std::vector<DpaState> delta_;
    std::vector<Priority> priority_;
};

/// Acceptance of the ultimately periodic word stem.cycle^omega. The cycle
/// must be nonempty (BadParams otherwise); letters outside the alphabet
/// raise UnknownLetter.
bool dpa_accepts_lasso(const Dpa &d, std::span<const Letter> stem, std::span<const Letter> cycle);

/// Same transition structure, every priority shifted by one.
Dpa dpa_complement(const Dpa &d);

/// Intersection of the languages. Product of the components with an index
/// appearance record; only reachable states are built and the output
/// priorities are compacted. Throws AlphabetMismatch, BadParams on an
/// empty list.
Dpa dpa_conj(std::span<const Dpa> ds);

/// Union of the languages, as complement(conj(complement of each)).
Dpa dpa_disj(std::span<const Dpa> ds);

} // namespace doomsday
