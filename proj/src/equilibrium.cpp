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

#include "doomsday/equilibrium.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <set>
#include <string>

#include "doomsday/error.hpp"

namespace doomsday {

std::vector<RetaliationRegion>
retaliation_regions(const Arena &arena, const ObjectiveProfile &profile, SolverLimits limits)
{
    validate_profile(arena, profile);
    std::vector<RetaliationRegion> out;
    out.reserve(profile.size());
    for (int i = 1; i <= arena.player_count(); ++i) {
        out.push_back(retaliation_region(arena, profile, PlayerId{i}, limits));
    }
    return out;
}

bool
permitted_edge(const Arena &arena, const TrackedNode &p, StateIndex next,
               std::span<const RetaliationRegion> regions)
{
    const int mover = arena.owner(p.v);
    for (const auto &region : regions) {
        const int i = region.player.value;
        if (i == mover) continue;
        const Dpa &d = *region.automaton;
        const DpaState r = p.retaliation.at(region.player.index());
        for (StateIndex w : arena.successors(p.v)) {
            if (w == next) continue;
            if (!region.contains(w, d.next(r, w))) return false;
        }
    }
    return true;
}

TrackedProduct
tracked_product(const Arena &arena, const ObjectiveProfile &profile,
                std::span<const RetaliationRegion> regions, std::size_t node_budget)
{
    validate_profile(arena, profile);
    if (regions.size() != profile.size()) {
        throw Error(ErrorKind::BadParams, "need one retaliation region per player");
    }

    std::vector<Dpa> parts;
    for (const auto &obj : profile.objectives) parts.push_back(compile_objective_to_dpa(arena, obj));

    TrackedProduct tp;
    tp.all = std::make_shared<const Dpa>(dpa_conj(parts));

    std::map<TrackedNode, NodeId> index;
    std::deque<NodeId> work;
    auto intern = [&](TrackedNode node) {
        auto [it, fresh] = index.emplace(node, static_cast<NodeId>(tp.nodes.size()));
        if (fresh) {
            if (tp.nodes.size() >= node_budget) {
                throw Error(ErrorKind::SizeLimit,
                            "tracked product exceeds " + std::to_string(node_budget) + " nodes");
            }
            tp.nodes.push_back(std::move(node));
            tp.succ.emplace_back();
            work.push_back(it->second);
        }
        return it->second;
    };

    const StateIndex v0 = arena.initial();
    TrackedNode init;
    init.v = v0;
    init.all = tp.all->next(tp.all->initial(), v0);
    for (const auto &region : regions) init.retaliation.push_back(region.start_state(v0));
    intern(std::move(init));

    while (!work.empty()) {
        NodeId src = work.front();
        work.pop_front();
        const TrackedNode cur = tp.nodes[src];
        std::vector<TrackedEdge> edges;
        for (StateIndex w : arena.successors(cur.v)) {
            TrackedNode next;
            next.v = w;
            next.all = tp.all->next(cur.all, w);
            for (std::size_t k = 0; k < regions.size(); ++k) {
                next.retaliation.push_back(regions[k].automaton->next(cur.retaliation[k], w));
            }
            TrackedEdge e;
            e.permitted = permitted_edge(arena, cur, w, regions);
            e.to = intern(std::move(next));
            edges.push_back(e);
        }
        tp.succ[src] = std::move(edges);
    }
    return tp;
}

namespace {

// Strongly connected components of the subgraph induced by `keep` over
// permitted edges. Returns a component id per node (-1 outside `keep`) and,
// per component, whether it contains a cycle.
struct Components
{
    std::vector<std::int64_t> id;
    std::vector<bool> cyclic;
};

Components
permitted_sccs(const TrackedProduct &tp, const std::vector<bool> &keep)
{
    const std::size_t n = tp.size();
    Components out;
    out.id.assign(n, -1);
    std::vector<std::int64_t> low(n, 0), disc(n, -1);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    std::int64_t time = 0;

    struct Frame
    {
        NodeId v;
        std::size_t edge;
    };
    for (NodeId root = 0; root < n; ++root) {
        if (!keep[root] || disc[root] >= 0) continue;
        std::vector<Frame> frames{{root, 0}};
        disc[root] = low[root] = time++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame &f = frames.back();
            const auto &edges = tp.succ[f.v];
            if (f.edge < edges.size()) {
                const TrackedEdge &e = edges[f.edge++];
                if (!e.permitted || !keep[e.to]) continue;
                if (disc[e.to] < 0) {
                    disc[e.to] = low[e.to] = time++;
                    stack.push_back(e.to);
                    on_stack[e.to] = true;
                    frames.push_back({e.to, 0});
                } else if (on_stack[e.to]) {
                    low[f.v] = std::min(low[f.v], disc[e.to]);
                }
                continue;
            }
            NodeId v = f.v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
            if (low[v] != disc[v]) continue;
            const auto comp = static_cast<std::int64_t>(out.cyclic.size());
            std::size_t members = 0;
            NodeId w;
            do {
                w = stack.back();
                stack.pop_back();
                on_stack[w] = false;
                out.id[w] = comp;
                ++members;
            } while (w != v);
            bool self_loop = false;
            for (const auto &e : tp.succ[v]) self_loop |= e.permitted && e.to == v;
            out.cyclic.push_back(members > 1 || self_loop);
        }
    }
    return out;
}

// Shortest path from `from` back to itself through permitted edges inside
// `keep`. Returns [from, ..., last] where last -> from closes the cycle.
std::vector<NodeId>
shortest_cycle(const TrackedProduct &tp, NodeId from, const std::vector<bool> &keep)
{
    std::vector<std::int64_t> parent(tp.size(), -1);
    std::vector<bool> seen(tp.size(), false);
    std::deque<NodeId> queue{from};
    seen[from] = true;
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (const auto &e : tp.succ[u]) {
            if (!e.permitted || !keep[e.to]) continue;
            if (e.to == from) {
                std::vector<NodeId> path;
                for (std::int64_t x = u; x >= 0; x = parent[x]) path.push_back(static_cast<NodeId>(x));
                std::reverse(path.begin(), path.end());
                return path;
            }
            if (!seen[e.to]) {
                seen[e.to] = true;
                parent[e.to] = u;
                queue.push_back(e.to);
            }
        }
    }
    return {};
}

// Shortest presentation of the same play: primitive cycle, then the stem
// trimmed while its tail repeats the end of the cycle. The stem keeps the
// initial state.
void
normalize_lasso(std::vector<StateIndex> &stem, std::vector<StateIndex> &cycle)
{
    const std::size_t n = cycle.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool periodic = true;
        for (std::size_t k = p; k < n && periodic; ++k) periodic = cycle[k] == cycle[k - p];
        if (periodic) {
            cycle.resize(p);
            break;
        }
    }
    while (stem.size() > 1 && stem.back() == cycle.back()) {
        stem.pop_back();
        std::rotate(cycle.rbegin(), cycle.rbegin() + 1, cycle.rend());
    }
}

} // namespace

std::optional<Certificate>
witness_search(const Arena &arena, const ObjectiveProfile &profile, const TrackedProduct &tp,
               std::span<const RetaliationRegion> regions)
{
    const std::size_t n = tp.size();
    if (n == 0) return std::nullopt;

    // breadth-first discovery over permitted edges
    std::vector<std::int64_t> parent(n, -1);
    std::vector<std::int64_t> order(n, -1);
    std::vector<bool> reachable(n, false);
    std::deque<NodeId> queue{0};
    reachable[0] = true;
    std::int64_t next_order = 0;
    order[0] = next_order++;
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (const auto &e : tp.succ[u]) {
            if (!e.permitted || reachable[e.to]) continue;
            reachable[e.to] = true;
            parent[e.to] = u;
            order[e.to] = next_order++;
            queue.push_back(e.to);
        }
    }

    std::set<Priority> evens;
    for (NodeId v = 0; v < n; ++v) {
        if (reachable[v] && tp.priority(v) % 2 == 0) evens.insert(tp.priority(v));
    }

    std::int64_t best = -1;
    for (Priority d : evens) {
        std::vector<bool> keep(n, false);
        for (NodeId v = 0; v < n; ++v) keep[v] = reachable[v] && tp.priority(v) >= d;
        Components sccs = permitted_sccs(tp, keep);
        for (NodeId v = 0; v < n; ++v) {
            if (!keep[v] || tp.priority(v) != d || !sccs.cyclic[sccs.id[v]]) continue;
            if (best < 0 || order[v] < order[best]) best = v;
        }
    }
    if (best < 0) return std::nullopt;

    const auto anchor = static_cast<NodeId>(best);
    std::vector<bool> keep(n, false);
    for (NodeId v = 0; v < n; ++v) keep[v] = reachable[v] && tp.priority(v) >= tp.priority(anchor);

    Certificate cert;
    cert.player_count = arena.player_count();
    for (const auto &obj : profile.objectives) cert.classes.push_back(obj.kind);
    for (std::int64_t x = parent[anchor]; x >= 0; x = parent[x]) {
        cert.stem_nodes.push_back(static_cast<NodeId>(x));
    }
    std::reverse(cert.stem_nodes.begin(), cert.stem_nodes.end());
    cert.cycle_nodes = shortest_cycle(tp, anchor, keep);
    if (cert.stem_nodes.empty()) {
        // keep the stem nonempty: x.(c1 .. ck x)^omega
        cert.stem_nodes.push_back(anchor);
        std::rotate(cert.cycle_nodes.begin(), cert.cycle_nodes.begin() + 1, cert.cycle_nodes.end());
    }
    for (NodeId x : cert.stem_nodes) cert.stem.push_back(tp.nodes[x].v);
    for (NodeId x : cert.cycle_nodes) cert.cycle.push_back(tp.nodes[x].v);
    normalize_lasso(cert.stem, cert.cycle);

    for (const auto &region : regions) {
        RetaliationPlan plan;
        plan.player = region.player;
        plan.automaton = region.automaton;
        for (StateIndex v = 0; v < arena.size(); ++v) {
            if (arena.owner(v) != region.player.value) continue;
            for (DpaState q = 0; q < region.automaton->size(); ++q) {
                if (auto c = region.choice(v, q)) plan.choices[{v, q}] = *c;
            }
        }
        cert.retaliation.push_back(std::move(plan));
    }
    return cert;
}

DoomsdayResult
decide_doomsday(const Arena &arena, const ObjectiveProfile &profile, SolveOptions options)
{
    auto regions = retaliation_regions(arena, profile, options.limits);
    TrackedProduct tp = tracked_product(arena, profile, regions, options.node_budget);
    DoomsdayResult out;
    out.product_nodes = tp.size();
    out.certificate = witness_search(arena, profile, tp, regions);
    out.exists = out.certificate.has_value();
    return out;
}

} // namespace doomsday
