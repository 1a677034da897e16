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

#include "doomsday/automata.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "doomsday/error.hpp"

namespace doomsday {

Dpa::Dpa(std::uint32_t alphabet_size, DpaState initial, std::vector<DpaState> delta,
         std::vector<Priority> priority)
    : alphabet_(alphabet_size), initial_(initial), delta_(std::move(delta)),
      priority_(std::move(priority))
{
}

DpaState
Dpa::run(DpaState from, std::span<const Letter> word) const
{
    DpaState q = from;
    for (Letter l : word) {
        if (l >= alphabet_) throw Error(ErrorKind::UnknownLetter, std::to_string(l));
        q = next(q, l);
    }
    return q;
}

bool
Dpa::well_formed() const noexcept
{
    if (priority_.empty() || initial_ >= size()) return false;
    if (delta_.size() != static_cast<std::size_t>(size()) * alphabet_) return false;
    return std::all_of(delta_.begin(), delta_.end(), [&](DpaState q) { return q < size(); });
}

bool
dpa_accepts_lasso(const Dpa &d, std::span<const Letter> stem, std::span<const Letter> cycle)
{
    if (cycle.empty()) throw Error(ErrorKind::BadParams, "lasso cycle must be nonempty");
    for (Letter l : cycle) {
        if (l >= d.alphabet_size()) throw Error(ErrorKind::UnknownLetter, std::to_string(l));
    }
    DpaState q = d.run(d.initial(), stem);

    // (state before reading cycle[pos], pos) -> step at which it was seen
    std::map<std::pair<DpaState, std::size_t>, std::size_t> seen;
    std::vector<Priority> visited;
    std::size_t pos = 0;
    for (;;) {
        auto [it, fresh] = seen.emplace(std::make_pair(q, pos), visited.size());
        if (!fresh) {
            Priority lo = *std::min_element(visited.begin() + it->second, visited.end());
            return lo % 2 == 0;
        }
        q = d.next(q, cycle[pos]);
        visited.push_back(d.priority(q));
        pos = (pos + 1) % cycle.size();
    }
}

Dpa
dpa_complement(const Dpa &d)
{
    std::vector<DpaState> delta;
    delta.reserve(static_cast<std::size_t>(d.size()) * d.alphabet_size());
    for (DpaState q = 0; q < d.size(); ++q) {
        for (Letter l = 0; l < d.alphabet_size(); ++l) delta.push_back(d.next(q, l));
    }
    std::vector<Priority> prio(d.priorities().begin(), d.priorities().end());
    for (auto &p : prio) ++p;
    return Dpa(d.alphabet_size(), d.initial(), std::move(delta), std::move(prio));
}

namespace {

// Maps priorities onto a gap-free range starting at 0 or 1 while keeping
// the parity and relative order of every pair of differing parity.
std::vector<Priority>
compact_priorities(const std::vector<Priority> &prio)
{
    std::set<Priority> distinct(prio.begin(), prio.end());
    std::map<Priority, Priority> remap;
    Priority cur = 0;
    bool first = true;
    Priority last = 0;
    for (Priority p : distinct) {
        if (first) {
            cur = p % 2;
            first = false;
        } else if (p % 2 != last % 2) {
            ++cur;
        }
        remap[p] = cur;
        last = p;
    }
    std::vector<Priority> out;
    out.reserve(prio.size());
    for (Priority p : prio) out.push_back(remap[p]);
    return out;
}

// Rabin pair for the complement of the conjunction: component `comp`
// rejects with odd priority `odd` iff `odd` recurs and nothing smaller does.
struct RejectPair
{
    std::uint32_t comp;
    Priority odd;
};

} // namespace

/*
 * The conjunction rejects iff some component sees an odd minimum, which is
 * a Rabin condition over pairs (comp, odd) with
 *   E = "component priority < odd" (must be finite),
 *   F = "component priority == odd" (must recur).
 * The record keeps a permutation of the pairs; pairs whose E fires move to
 * the front, so pairs with finite E settle in a stable suffix. With e the
 * rightmost position whose E fired and f the rightmost position whose F
 * fired, the Rabin priority is 2(h-f) when f > e, 2(h-1-e)+1 when e is
 * set, and 2h+1 otherwise. Adding one yields the conjunction.
 *
 * Pairs of one component are nested (E of a smaller odd implies E of a
 * larger one), so they are kept in descending order and the record only
 * ranges over interleavings of those chains.
 */
Dpa
dpa_conj(std::span<const Dpa> ds)
{
    if (ds.empty()) throw Error(ErrorKind::BadParams, "conjunction of zero automata");
    const std::uint32_t alphabet = ds.front().alphabet_size();
    for (const auto &d : ds) {
        if (d.alphabet_size() != alphabet) {
            throw Error(ErrorKind::AlphabetMismatch,
                        std::to_string(d.alphabet_size()) + " vs " + std::to_string(alphabet));
        }
    }

    const auto k = static_cast<std::uint32_t>(ds.size());
    std::vector<RejectPair> pairs;
    for (std::uint32_t c = 0; c < k; ++c) {
        std::set<Priority> odds;
        for (Priority p : ds[c].priorities()) {
            if (p % 2 == 1) odds.insert(p);
        }
        for (auto it = odds.rbegin(); it != odds.rend(); ++it) pairs.push_back({c, *it});
    }
    const auto h = static_cast<std::uint32_t>(pairs.size());

    // key layout: [q_0 .. q_{k-1}, perm_0 .. perm_{h-1}, priority]
    using Key = std::vector<std::uint32_t>;
    std::map<Key, DpaState> index;
    std::vector<Key> keys;
    std::deque<DpaState> work;

    auto intern = [&](Key key) {
        auto [it, fresh] = index.emplace(key, static_cast<DpaState>(keys.size()));
        if (fresh) {
            keys.push_back(std::move(key));
            work.push_back(it->second);
        }
        return it->second;
    };

    Key init;
    for (const auto &d : ds) init.push_back(d.initial());
    for (std::uint32_t j = 0; j < h; ++j) init.push_back(j);
    init.push_back(2 * h + 2);
    intern(std::move(init));

    std::vector<DpaState> delta;
    std::vector<Priority> comp_prio(k);
    std::vector<std::uint32_t> hit, rest;
    while (!work.empty()) {
        DpaState src = work.front();
        work.pop_front();
        if (delta.size() < static_cast<std::size_t>(keys.size()) * alphabet) {
            delta.resize(static_cast<std::size_t>(keys.size()) * alphabet);
        }
        for (Letter l = 0; l < alphabet; ++l) {
            const Key &cur = keys[src];
            Key next(cur.size());
            for (std::uint32_t c = 0; c < k; ++c) {
                next[c] = ds[c].next(cur[c], l);
                comp_prio[c] = ds[c].priority(next[c]);
            }
            int e = -1;
            int f = -1;
            hit.clear();
            rest.clear();
            for (std::uint32_t pos = 0; pos < h; ++pos) {
                std::uint32_t pair_id = cur[k + pos];
                const auto &pair = pairs[pair_id];
                Priority p = comp_prio[pair.comp];
                if (p < pair.odd) {
                    e = static_cast<int>(pos);
                    hit.push_back(pair_id);
                } else {
                    if (p == pair.odd) f = static_cast<int>(pos);
                    rest.push_back(pair_id);
                }
            }
            std::uint32_t pos = k;
            for (auto id : hit) next[pos++] = id;
            for (auto id : rest) next[pos++] = id;

            Priority rabin;
            if (f > e) {
                rabin = 2 * (h - static_cast<Priority>(f));
            } else if (e >= 0) {
                rabin = 2 * (h - 1 - static_cast<Priority>(e)) + 1;
            } else {
                rabin = 2 * h + 1;
            }
            next[k + h] = rabin + 1;
            DpaState dst = intern(std::move(next));
            if (delta.size() < static_cast<std::size_t>(keys.size()) * alphabet) {
                delta.resize(static_cast<std::size_t>(keys.size()) * alphabet);
            }
            delta[static_cast<std::size_t>(src) * alphabet + l] = dst;
        }
    }

    std::vector<Priority> prio;
    prio.reserve(keys.size());
    for (const auto &key : keys) prio.push_back(key[k + h]);
    return Dpa(alphabet, 0, std::move(delta), compact_priorities(prio));
}

Dpa
dpa_disj(std::span<const Dpa> ds)
{
    std::vector<Dpa> complemented;
    complemented.reserve(ds.size());
    for (const auto &d : ds) complemented.push_back(dpa_complement(d));
    return dpa_complement(dpa_conj(complemented));
}

} // namespace doomsday
