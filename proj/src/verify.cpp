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

#include "doomsday/verify.hpp"

#include <algorithm>
#include <array>
#include <deque>
#include <map>
#include <set>

#include "doomsday/error.hpp"

namespace doomsday {

void
validate_machine(const Arena &arena, const StrategyMachine &m)
{
    const std::size_t cells = static_cast<std::size_t>(m.memory_size) * arena.size();
    if (m.memory_size == 0 || m.initial_memory >= m.memory_size || m.state_count != arena.size() ||
        m.update.size() != cells || m.choice.size() != cells) {
        throw Error(ErrorKind::BadParams, "strategy machine tables do not match the arena");
    }
    for (std::uint32_t mem = 0; mem < m.memory_size; ++mem) {
        for (StateIndex s = 0; s < arena.size(); ++s) {
            if (m.next_memory(mem, s) >= m.memory_size) {
                throw Error(ErrorKind::BadParams, "memory update out of range");
            }
            if (arena.owner(s) != m.player.value) continue;
            auto c = m.choice[mem * m.state_count + s];
            if (c < 0 || !arena.has_edge(s, static_cast<StateIndex>(c))) {
                throw Error(ErrorKind::BadParams, "player " + std::to_string(m.player.value) +
                                                      " picks a non-successor at " + arena.id(s));
            }
        }
    }
}

Lasso
outcome(const Arena &arena, const StrategyProfile &profile)
{
    const auto n = profile.machines.size();
    std::vector<std::uint32_t> mem(n);
    StateIndex s = arena.initial();
    for (std::size_t p = 0; p < n; ++p) {
        const auto &m = profile.machines[p];
        mem[p] = m.next_memory(m.initial_memory, s);
    }

    std::map<std::pair<StateIndex, std::vector<std::uint32_t>>, std::size_t> seen;
    std::vector<StateIndex> play;
    for (;;) {
        auto [it, fresh] = seen.emplace(std::make_pair(s, mem), play.size());
        if (!fresh) {
            Lasso out;
            out.stem.assign(play.begin(), play.begin() + static_cast<std::ptrdiff_t>(it->second));
            out.cycle.assign(play.begin() + static_cast<std::ptrdiff_t>(it->second), play.end());
            return out;
        }
        play.push_back(s);
        const auto &owner = profile.machines.at(arena.owner(s) - 1);
        StateIndex t = owner.move(mem[arena.owner(s) - 1], s);
        for (std::size_t p = 0; p < n; ++p) mem[p] = profile.machines[p].next_memory(mem[p], t);
        s = t;
    }
}

namespace {

// Plays consistent with one machine, tracked through two objective
// automata: node = (state, memory, q_victim, q_other).
struct ConsistentPlays
{
    std::vector<StateIndex> state;
    std::vector<Priority> prio_victim;
    std::vector<Priority> prio_other;
    std::vector<std::vector<std::uint32_t>> succ;

    std::size_t size() const { return state.size(); }
};

ConsistentPlays
consistent_plays(const Arena &arena, const StrategyMachine &machine, const Dpa &victim,
                 const Dpa &other)
{
    ConsistentPlays g;
    std::map<std::array<std::uint32_t, 4>, std::uint32_t> index;
    std::deque<std::array<std::uint32_t, 4>> work;
    auto intern = [&](const std::array<std::uint32_t, 4> &key) {
        auto [it, fresh] = index.emplace(key, static_cast<std::uint32_t>(g.size()));
        if (fresh) {
            g.state.push_back(key[0]);
            g.prio_victim.push_back(victim.priority(key[2]));
            g.prio_other.push_back(other.priority(key[3]));
            g.succ.emplace_back();
            work.push_back(key);
        }
        return it->second;
    };

    const StateIndex s0 = arena.initial();
    intern({s0, machine.next_memory(machine.initial_memory, s0), victim.next(victim.initial(), s0),
            other.next(other.initial(), s0)});
    while (!work.empty()) {
        auto key = work.front();
        work.pop_front();
        const std::uint32_t src = index.at(key);
        const StateIndex s = key[0];
        auto step = [&](StateIndex t) {
            std::uint32_t dst = intern({t, machine.next_memory(key[1], t), victim.next(key[2], t),
                                        other.next(key[3], t)});
            g.succ[src].push_back(dst);
        };
        if (arena.owner(s) == machine.player.value) {
            step(machine.move(key[1], s));
        } else {
            for (StateIndex t : arena.successors(s)) step(t);
        }
    }
    return g;
}

// Tarjan over the nodes in `keep`; returns component ids (-1 outside) and
// whether each component carries a cycle.
std::pair<std::vector<int>, std::vector<bool>>
components(const std::vector<std::vector<std::uint32_t>> &succ, const std::vector<bool> &keep)
{
    const std::size_t n = succ.size();
    std::vector<int> comp(n, -1);
    std::vector<bool> cyclic;
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<std::uint32_t> stack;
    int time = 0;
    for (std::uint32_t root = 0; root < n; ++root) {
        if (!keep[root] || disc[root] >= 0) continue;
        std::vector<std::pair<std::uint32_t, std::size_t>> frames{{root, 0}};
        disc[root] = low[root] = time++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            auto &[v, k] = frames.back();
            if (k < succ[v].size()) {
                std::uint32_t w = succ[v][k++];
                if (!keep[w]) continue;
                if (disc[w] < 0) {
                    disc[w] = low[w] = time++;
                    stack.push_back(w);
                    on_stack[w] = true;
                    frames.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[v] = std::min(low[v], disc[w]);
                }
                continue;
            }
            std::uint32_t done = v;
            frames.pop_back();
            if (!frames.empty()) {
                auto parent = frames.back().first;
                low[parent] = std::min(low[parent], low[done]);
            }
            if (low[done] != disc[done]) continue;
            int id = static_cast<int>(cyclic.size());
            std::size_t members = 0;
            std::uint32_t w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                comp[w] = id;
                ++members;
            } while (w != done);
            bool loop = std::find(succ[done].begin(), succ[done].end(), done) != succ[done].end();
            cyclic.push_back(members > 1 || loop);
        }
    }
    return {comp, cyclic};
}

// Breadth-first path from `from` to `to` (inclusive) inside `keep`. With
// from == to the path is a nonempty cycle [from, ..., last].
std::vector<std::uint32_t>
bfs_path(const ConsistentPlays &g, std::uint32_t from, std::uint32_t to, const std::vector<bool> &keep)
{
    std::vector<std::int64_t> parent(g.size(), -1);
    std::vector<bool> seen(g.size(), false);
    std::deque<std::uint32_t> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        std::uint32_t u = queue.front();
        queue.pop_front();
        for (std::uint32_t w : g.succ[u]) {
            if (!keep[w]) continue;
            if (w == to) {
                std::vector<std::uint32_t> path{w};
                for (std::int64_t x = u; x >= 0; x = parent[x]) path.push_back(static_cast<std::uint32_t>(x));
                std::reverse(path.begin(), path.end());
                if (from == to) path.pop_back();
                return path;
            }
            if (!seen[w]) {
                seen[w] = true;
                parent[w] = u;
                queue.push_back(w);
            }
        }
    }
    return {};
}

// Reachable cycle whose minimum victim priority is odd and whose minimum
// other priority is even, projected to arena states.
std::optional<Lasso>
find_harmful_play(const ConsistentPlays &g)
{
    const std::size_t n = g.size();
    std::set<Priority> odd_victim, even_other;
    for (std::size_t v = 0; v < n; ++v) {
        if (g.prio_victim[v] % 2 == 1) odd_victim.insert(g.prio_victim[v]);
        if (g.prio_other[v] % 2 == 0) even_other.insert(g.prio_other[v]);
    }
    std::vector<bool> all(n, true);
    for (Priority a : odd_victim) {
        for (Priority b : even_other) {
            std::vector<bool> keep(n);
            for (std::size_t v = 0; v < n; ++v) keep[v] = g.prio_victim[v] >= a && g.prio_other[v] >= b;
            auto [comp, cyclic] = components(g.succ, keep);
            // first node of each component hitting a, resp. b
            std::map<int, std::uint32_t> hit_a, hit_b;
            for (std::uint32_t v = 0; v < n; ++v) {
                if (comp[v] < 0 || !cyclic[comp[v]]) continue;
                if (g.prio_victim[v] == a) hit_a.emplace(comp[v], v);
                if (g.prio_other[v] == b) hit_b.emplace(comp[v], v);
            }
            for (auto [c, x] : hit_a) {
                auto yb = hit_b.find(c);
                if (yb == hit_b.end()) continue;
                const std::uint32_t y = yb->second;
                auto stem = x == 0 ? std::vector<std::uint32_t>{0} : bfs_path(g, 0, x, all);
                stem.pop_back();
                std::vector<std::uint32_t> cycle;
                if (x == y) {
                    cycle = bfs_path(g, x, x, keep);
                } else {
                    cycle = bfs_path(g, x, y, keep);
                    auto back = bfs_path(g, y, x, keep);
                    cycle.insert(cycle.end(), back.begin() + 1, back.end() - 1);
                }
                Lasso out;
                for (auto v : stem) out.stem.push_back(g.state[v]);
                for (auto v : cycle) out.cycle.push_back(g.state[v]);
                return out;
            }
        }
    }
    return std::nullopt;
}

std::string
render(const Arena &arena, const Lasso &l)
{
    std::string out;
    for (StateIndex s : l.stem) out += arena.id(s) + " ";
    out += "(";
    for (std::size_t k = 0; k < l.cycle.size(); ++k) {
        if (k > 0) out += " ";
        out += arena.id(l.cycle[k]);
    }
    return out + ")^w";
}

std::optional<Violation>
check_retaliation_with(const Arena &arena, const std::vector<Dpa> &dpas, const StrategyMachine &machine)
{
    const PlayerId i = machine.player;
    for (int j = 1; j <= static_cast<int>(dpas.size()); ++j) {
        if (j == i.value) continue;
        ConsistentPlays g = consistent_plays(arena, machine, dpas[i.index()], dpas[j - 1]);
        if (auto witness = find_harmful_play(g)) {
            Violation v;
            v.condition = 2;
            v.victim = i;
            v.other = PlayerId{j};
            v.description = "deviation " + render(arena, *witness) + " violates player " +
                            std::to_string(i.value) + " but satisfies player " + std::to_string(j);
            v.witness = std::move(*witness);
            return v;
        }
    }
    return std::nullopt;
}

// Nodes (s, q_1 .. q_n) of the arena crossed with every objective automaton
// from which some play satisfies all objectives at once: they reach a cycle
// on which each automaton's minimum priority is even.
class JointAcceptance
{
public:
    JointAcceptance(const Arena &arena, const std::vector<Dpa> &dpas) : dpas_(dpas)
    {
        std::vector<std::uint32_t> init{arena.initial()};
        for (const auto &d : dpas) init.push_back(d.next(d.initial(), arena.initial()));
        std::deque<std::vector<std::uint32_t>> work;
        auto intern = [&](const std::vector<std::uint32_t> &key) {
            auto [it, fresh] = index_.emplace(key, static_cast<std::uint32_t>(keys_.size()));
            if (fresh) {
                keys_.push_back(key);
                succ_.emplace_back();
                work.push_back(key);
            }
            return it->second;
        };
        intern(init);
        while (!work.empty()) {
            auto key = work.front();
            work.pop_front();
            const std::uint32_t src = index_.at(key);
            for (StateIndex t : arena.successors(key[0])) {
                std::vector<std::uint32_t> next{t};
                for (std::size_t j = 0; j < dpas.size(); ++j) next.push_back(dpas[j].next(key[j + 1], t));
                const std::uint32_t dst = intern(next);
                succ_[src].push_back(dst);
            }
        }

        const std::size_t n = keys_.size();
        std::vector<bool> good(n, false);
        mark_good(std::vector<bool>(n, true), good);
        // backward closure of the good cycles
        std::vector<std::vector<std::uint32_t>> pred(n);
        for (std::uint32_t v = 0; v < n; ++v) {
            for (auto w : succ_[v]) pred[w].push_back(v);
        }
        live_ = good;
        std::deque<std::uint32_t> queue;
        for (std::uint32_t v = 0; v < n; ++v) {
            if (good[v]) queue.push_back(v);
        }
        while (!queue.empty()) {
            auto w = queue.front();
            queue.pop_front();
            for (auto v : pred[w]) {
                if (!live_[v]) {
                    live_[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }

    std::vector<std::uint32_t> start() const { return keys_.front(); }

    std::vector<std::uint32_t> advance(const std::vector<std::uint32_t> &key, StateIndex t) const
    {
        std::vector<std::uint32_t> next{t};
        for (std::size_t j = 0; j < dpas_.size(); ++j) next.push_back(dpas_[j].next(key[j + 1], t));
        return next;
    }

    bool live(const std::vector<std::uint32_t> &key) const { return live_[index_.at(key)]; }

private:
    Priority prio(std::uint32_t v, std::size_t j) const { return dpas_[j].priority(keys_[v][j + 1]); }

    void mark_good(const std::vector<bool> &keep, std::vector<bool> &good) const
    {
        auto [comp, cyclic] = components(succ_, keep);
        std::map<int, std::vector<std::uint32_t>> members;
        for (std::uint32_t v = 0; v < comp.size(); ++v) {
            if (comp[v] >= 0 && cyclic[comp[v]]) members[comp[v]].push_back(v);
        }
        for (const auto &[c, nodes] : members) {
            std::optional<std::pair<std::size_t, Priority>> odd;
            for (std::size_t j = 0; j < dpas_.size() && !odd; ++j) {
                Priority lo = prio(nodes.front(), j);
                for (auto v : nodes) lo = std::min(lo, prio(v, j));
                if (lo % 2 == 1) odd = std::make_pair(j, lo);
            }
            if (!odd) {
                for (auto v : nodes) good[v] = true;
                continue;
            }
            std::vector<bool> sub(keep.size(), false);
            for (auto v : nodes) sub[v] = prio(v, odd->first) != odd->second;
            mark_good(sub, good);
        }
    }

    const std::vector<Dpa> &dpas_;
    std::map<std::vector<std::uint32_t>, std::uint32_t> index_;
    std::vector<std::vector<std::uint32_t>> keys_;
    std::vector<std::vector<std::uint32_t>> succ_;
    std::vector<bool> live_;
};

std::vector<Dpa>
objective_automata(const Arena &arena, const ObjectiveProfile &profile)
{
    std::vector<Dpa> out;
    for (const auto &o : profile.objectives) out.push_back(compile_objective_to_dpa(arena, o));
    return out;
}

} // namespace

std::optional<Violation>
check_retaliation(const Arena &arena, const ObjectiveProfile &profile, const StrategyMachine &machine)
{
    validate_profile(arena, profile);
    validate_machine(arena, machine);
    return check_retaliation_with(arena, objective_automata(arena, profile), machine);
}

CheckResult
check_profile(const Arena &arena, const ObjectiveProfile &profile, const StrategyProfile &strategies)
{
    validate_profile(arena, profile);
    if (strategies.machines.size() != profile.size()) {
        throw Error(ErrorKind::BadParams, "need one strategy machine per player");
    }
    for (std::size_t p = 0; p < strategies.machines.size(); ++p) {
        const auto &m = strategies.machines[p];
        if (m.player.value != static_cast<int>(p) + 1) {
            throw Error(ErrorKind::BadParams, "strategy machines out of player order");
        }
        validate_machine(arena, m);
    }

    CheckResult result;
    Lasso play = outcome(arena, strategies);
    for (int i = 1; i <= arena.player_count(); ++i) {
        if (!play_satisfies(arena, profile[PlayerId{i}], play.stem, play.cycle)) {
            Violation v;
            v.condition = 1;
            v.victim = PlayerId{i};
            v.other = PlayerId{i};
            v.description = "outcome " + render(arena, play) + " violates player " + std::to_string(i);
            v.witness = std::move(play);
            result.violation = std::move(v);
            return result;
        }
    }

    auto dpas = objective_automata(arena, profile);
    for (const auto &m : strategies.machines) {
        if (auto v = check_retaliation_with(arena, dpas, m)) {
            result.violation = std::move(v);
            return result;
        }
    }
    result.is_de = true;
    return result;
}

StrategyProfile
assemble_profile(const Certificate &cert, const Arena &arena, const ObjectiveProfile &profile)
{
    validate_profile(arena, profile);
    auto malformed = [](const std::string &why) { return Error(ErrorKind::MalformedCertificate, why); };

    if (cert.stem.empty() || cert.cycle.empty()) throw malformed("empty stem or cycle");
    if (cert.player_count != arena.player_count() ||
        cert.retaliation.size() != static_cast<std::size_t>(arena.player_count())) {
        throw malformed("player count mismatch");
    }
    std::vector<StateIndex> lasso = cert.stem;
    lasso.insert(lasso.end(), cert.cycle.begin(), cert.cycle.end());
    for (StateIndex s : lasso) {
        if (s >= arena.size()) throw malformed("unknown state in lasso");
    }
    if (lasso.front() != arena.initial()) throw malformed("lasso does not start at the initial state");
    const std::size_t len = lasso.size();
    const std::size_t loop_start = cert.stem.size();
    auto next_pos = [&](std::size_t k) { return k + 1 < len ? k + 1 : loop_start; };
    for (std::size_t k = 0; k < len; ++k) {
        if (!arena.has_edge(lasso[k], lasso[next_pos(k)])) {
            throw malformed("lasso is not a path: " + arena.id(lasso[k]) + " -> " +
                            arena.id(lasso[next_pos(k)]));
        }
    }

    StrategyProfile out;
    for (int i = 1; i <= arena.player_count(); ++i) {
        const RetaliationPlan &plan = cert.retaliation[i - 1];
        if (plan.player.value != i || !plan.automaton || plan.automaton->alphabet_size() != arena.size()) {
            throw malformed("retaliation plan for player " + std::to_string(i) + " missing");
        }
        const Dpa &d = *plan.automaton;
        for (const auto &[key, to] : plan.choices) {
            auto [s, q] = key;
            if (s >= arena.size() || q >= d.size() || arena.owner(s) != i || !arena.has_edge(s, to)) {
                throw malformed("bad retaliation entry for player " + std::to_string(i));
            }
        }

        // main-mode memories: (lasso position, automaton state), in play order
        std::map<std::pair<std::size_t, DpaState>, std::uint32_t> main_id;
        std::vector<std::pair<std::size_t, DpaState>> mains;
        {
            std::size_t k = 0;
            DpaState r = d.next(d.initial(), lasso[0]);
            while (main_id.emplace(std::make_pair(k, r), static_cast<std::uint32_t>(mains.size() + 1)).second) {
                mains.emplace_back(k, r);
                k = next_pos(k);
                r = d.next(r, lasso[k]);
            }
        }
        const auto retal_base = static_cast<std::uint32_t>(mains.size() + 1);
        const std::size_t S = arena.size();

        StrategyMachine m;
        m.player = PlayerId{i};
        m.memory_size = retal_base + d.size();
        m.initial_memory = 0;
        m.state_count = S;
        m.update.assign(m.memory_size * S, 0);
        m.choice.assign(m.memory_size * S, kNoMove);

        auto fallback = [&](StateIndex s) { return static_cast<std::int64_t>(arena.successors(s).front()); };
        for (StateIndex s = 0; s < S; ++s) {
            // before the first state
            m.update[s] = s == lasso[0] ? main_id.at({0, d.next(d.initial(), s)})
                                        : retal_base + d.next(d.initial(), s);
            for (std::uint32_t a = 0; a < mains.size(); ++a) {
                auto [k, r] = mains[a];
                std::size_t k2 = next_pos(k);
                DpaState r2 = d.next(r, s);
                auto cell = (a + 1) * S + s;
                m.update[cell] = s == lasso[k2] ? main_id.at({k2, r2}) : retal_base + r2;
            }
            for (DpaState r = 0; r < d.size(); ++r) m.update[(retal_base + r) * S + s] = retal_base + d.next(r, s);

            if (arena.owner(s) != i) continue;
            m.choice[s] = fallback(s);
            for (std::uint32_t a = 0; a < mains.size(); ++a) {
                auto k = mains[a].first;
                m.choice[(a + 1) * S + s] = s == lasso[k] ? static_cast<std::int64_t>(lasso[next_pos(k)]) : fallback(s);
            }
            for (DpaState r = 0; r < d.size(); ++r) {
                auto it = plan.choices.find({s, r});
                m.choice[(retal_base + r) * S + s] = it != plan.choices.end() ? it->second : fallback(s);
            }
        }
        out.machines.push_back(std::move(m));
    }
    return out;
}

namespace {

// Enumerates, for one player, every memory-bounded machine up to the
// entries that no consistent history ever consults, keeping those that
// pass the second condition.
class MachineEnumerator
{
public:
    MachineEnumerator(const Arena &arena, const std::vector<Dpa> &dpas, PlayerId player,
                      std::uint32_t memory, std::size_t &budget_left)
        : arena_(arena), dpas_(dpas), player_(player), memory_(memory), budget_left_(budget_left),
          S_(arena.size()), update_(memory * S_, -1), choice_(memory * S_, -1),
          seen_(memory * S_, false)
    {
    }

    std::vector<StrategyMachine> run()
    {
        const StateIndex s0 = arena_.initial();
        for (std::uint32_t m0 = 0; m0 < memory_; ++m0) {
            initial_ = m0;
            update_[m0 * S_ + s0] = 0;
            push(s0, 0);
            expand(0);
            pop();
            update_[m0 * S_ + s0] = -1;
        }
        return std::move(good_);
    }

private:
    void push(StateIndex s, std::uint32_t m)
    {
        seen_[m * S_ + s] = true;
        nodes_.emplace_back(s, m);
    }
    void pop()
    {
        auto [s, m] = nodes_.back();
        seen_[m * S_ + s] = false;
        nodes_.pop_back();
    }

    void expand(std::size_t k)
    {
        if (k == nodes_.size()) {
            emit();
            return;
        }
        auto [s, m] = nodes_[k];
        if (arena_.owner(s) != player_.value) {
            auto succ = arena_.successors(s);
            targets(k, std::vector<StateIndex>(succ.begin(), succ.end()), 0);
            return;
        }
        auto &c = choice_[m * S_ + s];
        if (c >= 0) {
            targets(k, {static_cast<StateIndex>(c)}, 0);
            return;
        }
        for (StateIndex t : arena_.successors(s)) {
            c = t;
            targets(k, {t}, 0);
        }
        c = -1;
    }

    void targets(std::size_t k, const std::vector<StateIndex> &ts, std::size_t idx)
    {
        if (idx == ts.size()) {
            expand(k + 1);
            return;
        }
        const std::uint32_t m = nodes_[k].second;
        const StateIndex t = ts[idx];
        auto &u = update_[m * S_ + t];
        auto visit = [&](std::uint32_t m2) {
            bool fresh = !seen_[m2 * S_ + t];
            if (fresh) push(t, m2);
            targets(k, ts, idx + 1);
            if (fresh) pop();
        };
        if (u >= 0) {
            visit(static_cast<std::uint32_t>(u));
            return;
        }
        for (std::uint32_t m2 = 0; m2 < memory_; ++m2) {
            u = m2;
            visit(m2);
        }
        u = -1;
    }

    void emit()
    {
        if (budget_left_ == 0) {
            throw Error(ErrorKind::BudgetExceeded, "strategy enumeration budget exhausted");
        }
        --budget_left_;
        ++enumerated_;
        StrategyMachine m;
        m.player = player_;
        m.memory_size = memory_;
        m.initial_memory = initial_;
        m.state_count = S_;
        m.update.resize(update_.size());
        m.choice.assign(choice_.size(), kNoMove);
        for (std::size_t cell = 0; cell < update_.size(); ++cell) {
            m.update[cell] = update_[cell] >= 0 ? static_cast<std::uint32_t>(update_[cell]) : 0;
            auto s = static_cast<StateIndex>(cell % S_);
            if (arena_.owner(s) == player_.value) {
                m.choice[cell] = choice_[cell] >= 0 ? choice_[cell] : arena_.successors(s).front();
            }
        }
        if (!check_retaliation_with(arena_, dpas_, m)) good_.push_back(std::move(m));
    }

public:
    std::size_t enumerated_ = 0;

private:
    const Arena &arena_;
    const std::vector<Dpa> &dpas_;
    PlayerId player_;
    std::uint32_t memory_;
    std::size_t &budget_left_;
    std::size_t S_;
    std::vector<std::int64_t> update_;
    std::vector<std::int64_t> choice_;
    std::vector<bool> seen_;
    std::vector<std::pair<StateIndex, std::uint32_t>> nodes_;
    std::uint32_t initial_ = 0;
    std::vector<StrategyMachine> good_;
};

// Joint simulation over candidate sets: every candidate left in a set agrees
// with the play and memory values produced so far.
class ProfileSearch
{
public:
    ProfileSearch(const Arena &arena, const ObjectiveProfile &profile,
                  const std::vector<std::vector<StrategyMachine>> &good, const JointAcceptance &joint)
        : arena_(arena), profile_(profile), good_(good), joint_(joint)
    {
    }

    std::optional<StrategyProfile> run()
    {
        std::vector<std::vector<std::uint32_t>> sets(good_.size());
        for (std::size_t p = 0; p < good_.size(); ++p) {
            for (std::uint32_t k = 0; k < good_[p].size(); ++k) sets[p].push_back(k);
        }
        // every enumerated machine has memory 0 after the initial state
        std::vector<std::uint32_t> mem(good_.size(), 0);
        if (step(arena_.initial(), joint_.start(), mem, sets)) return found_;
        return std::nullopt;
    }

private:
    using Sets = std::vector<std::vector<std::uint32_t>>;

    bool step(StateIndex s, const std::vector<std::uint32_t> &q, const std::vector<std::uint32_t> &mem,
              const Sets &sets)
    {
        if (!joint_.live(q)) return false;
        auto key = std::make_pair(s, mem);
        auto it = visited_.find(key);
        if (it != visited_.end()) {
            std::vector<StateIndex> stem(path_.begin(), path_.begin() + static_cast<std::ptrdiff_t>(it->second));
            std::vector<StateIndex> cycle(path_.begin() + static_cast<std::ptrdiff_t>(it->second), path_.end());
            for (int i = 1; i <= arena_.player_count(); ++i) {
                if (!play_satisfies(arena_, profile_[PlayerId{i}], stem, cycle)) return false;
            }
            StrategyProfile prof;
            for (std::size_t p = 0; p < sets.size(); ++p) prof.machines.push_back(good_[p][sets[p].front()]);
            found_ = std::move(prof);
            return true;
        }
        visited_.emplace(key, path_.size());
        path_.push_back(s);

        const std::size_t owner = arena_.owner(s) - 1;
        std::map<StateIndex, std::vector<std::uint32_t>> by_move;
        for (auto k : sets[owner]) by_move[good_[owner][k].move(mem[owner], s)].push_back(k);
        bool ok = false;
        for (auto &[t, group] : by_move) {
            Sets next = sets;
            next[owner] = group;
            if (branch_memory(t, joint_.advance(q, t), mem, next, 0, std::vector<std::uint32_t>(mem.size()))) {
                ok = true;
                break;
            }
        }
        path_.pop_back();
        visited_.erase(key);
        return ok;
    }

    bool branch_memory(StateIndex t, const std::vector<std::uint32_t> &q, const std::vector<std::uint32_t> &mem,
                       const Sets &sets, std::size_t p, std::vector<std::uint32_t> next_mem)
    {
        if (p == sets.size()) return step(t, q, next_mem, sets);
        std::map<std::uint32_t, std::vector<std::uint32_t>> by_mem;
        for (auto k : sets[p]) by_mem[good_[p][k].next_memory(mem[p], t)].push_back(k);
        for (auto &[m2, group] : by_mem) {
            Sets next = sets;
            next[p] = std::move(group);
            next_mem[p] = m2;
            if (branch_memory(t, q, mem, next, p + 1, next_mem)) return true;
        }
        return false;
    }

    const Arena &arena_;
    const ObjectiveProfile &profile_;
    const std::vector<std::vector<StrategyMachine>> &good_;
    const JointAcceptance &joint_;
    std::map<std::pair<StateIndex, std::vector<std::uint32_t>>, std::size_t> visited_;
    std::vector<StateIndex> path_;
    std::optional<StrategyProfile> found_;
};

} // namespace

OracleResult
oracle_decide_bounded(const Arena &arena, const ObjectiveProfile &profile, OracleOptions options)
{
    validate_profile(arena, profile);
    if (options.memory_bound < 1 || options.memory_bound > 2 || arena.player_count() > 3 ||
        arena.size() > 8) {
        throw Error(ErrorKind::BadParams, "oracle limited to 8 states, 3 players, memory 1..2");
    }
    const auto dpas = objective_automata(arena, profile);
    const JointAcceptance joint(arena, dpas);

    OracleResult result;
    if (!joint.live(joint.start())) return result;
    std::size_t budget_left = options.budget;
    std::vector<std::vector<StrategyMachine>> good;
    for (int i = 1; i <= arena.player_count(); ++i) {
        MachineEnumerator e(arena, dpas, PlayerId{i}, options.memory_bound, budget_left);
        good.push_back(e.run());
        result.machines_enumerated += e.enumerated_;
        if (good.back().empty()) return result;
    }

    ProfileSearch search(arena, profile, good, joint);
    if (auto prof = search.run()) {
        result.found = true;
        result.profile = std::move(prof);
    }
    return result;
}

} // namespace doomsday
