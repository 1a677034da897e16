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

#include "doomsday/zerosum.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <string>

#include "doomsday/error.hpp"

namespace doomsday {

NodeId
ParityGame::add_node(Role r, Priority p)
{
    owner.push_back(r);
    priority.push_back(p);
    succ.emplace_back();
    return static_cast<NodeId>(owner.size() - 1);
}

bool
ParityGame::well_formed() const noexcept
{
    if (priority.size() != owner.size() || succ.size() != owner.size()) return false;
    for (const auto &s : succ) {
        if (s.empty()) return false;
        for (NodeId t : s) {
            if (t >= owner.size()) return false;
        }
    }
    return true;
}

namespace {

using Strategy = std::vector<std::int64_t>;

std::vector<std::vector<NodeId>>
predecessors(const ParityGame &pg)
{
    std::vector<std::vector<NodeId>> pred(pg.size());
    for (NodeId n = 0; n < pg.size(); ++n) {
        for (NodeId t : pg.succ[n]) pred[t].push_back(n);
    }
    return pred;
}

// Attractor inside the subgame `mask`. When `strategy` is given, records
// the attracting move of every `who` node added outside the target.
NodeSet
attract(const ParityGame &pg, const std::vector<std::vector<NodeId>> &pred, Role who,
        const NodeSet &target, const NodeSet &mask, Strategy *strategy)
{
    const std::size_t n = pg.size();
    NodeSet in(n, false);
    std::vector<std::uint32_t> escapes(n, 0);
    std::deque<NodeId> queue;
    for (NodeId v = 0; v < n; ++v) {
        if (!mask[v]) continue;
        if (target[v]) {
            in[v] = true;
            queue.push_back(v);
        } else {
            for (NodeId t : pg.succ[v]) escapes[v] += mask[t] ? 1 : 0;
        }
    }
    while (!queue.empty()) {
        NodeId t = queue.front();
        queue.pop_front();
        for (NodeId p : pred[t]) {
            if (!mask[p] || in[p]) continue;
            if (pg.owner[p] == who) {
                in[p] = true;
                if (strategy) (*strategy)[p] = t;
                queue.push_back(p);
            } else if (--escapes[p] == 0) {
                in[p] = true;
                queue.push_back(p);
            }
        }
    }
    return in;
}

struct SubSolution
{
    NodeSet win[2];
    Strategy strategy[2];
};

int slot(Role r) { return r == Role::Protagonist ? 0 : 1; }

class Zielonka
{
public:
    Zielonka(const ParityGame &pg, SolverLimits limits)
        : pg_(pg), pred_(predecessors(pg)), limits_(limits)
    {
    }

    SubSolution solve(const NodeSet &mask, std::size_t depth)
    {
        if (depth > limits_.max_recursion_depth) {
            throw Error(ErrorKind::RecursionLimit,
                        "depth " + std::to_string(depth) + " on " + std::to_string(pg_.size()) +
                            " nodes");
        }
        const std::size_t n = pg_.size();
        SubSolution out;
        for (auto &w : out.win) w.assign(n, false);
        for (auto &s : out.strategy) s.assign(n, kNoMove);

        Priority d = std::numeric_limits<Priority>::max();
        bool any = false;
        for (NodeId v = 0; v < n; ++v) {
            if (mask[v]) {
                any = true;
                d = std::min(d, pg_.priority[v]);
            }
        }
        if (!any) return out;

        const Role alpha = d % 2 == 0 ? Role::Protagonist : Role::Antagonist;
        const Role beta = opponent(alpha);
        const int a = slot(alpha);
        const int b = slot(beta);

        NodeSet top(n, false);
        for (NodeId v = 0; v < n; ++v) top[v] = mask[v] && pg_.priority[v] == d;
        Strategy attr_a(n, kNoMove);
        NodeSet attr = attract(pg_, pred_, alpha, top, mask, &attr_a);

        SubSolution sub = solve(minus(mask, attr), depth + 1);
        bool beta_wins_somewhere = std::find(sub.win[b].begin(), sub.win[b].end(), true) != sub.win[b].end();

        if (!beta_wins_somewhere) {
            out.win[a] = mask;
            for (NodeId v = 0; v < n; ++v) {
                if (!mask[v] || pg_.owner[v] != alpha) continue;
                if (sub.win[a][v]) {
                    out.strategy[a][v] = sub.strategy[a][v];
                } else if (top[v]) {
                    for (NodeId t : pg_.succ[v]) {
                        if (mask[t]) {
                            out.strategy[a][v] = t;
                            break;
                        }
                    }
                } else {
                    out.strategy[a][v] = attr_a[v];
                }
            }
            return out;
        }

        Strategy attr_b(n, kNoMove);
        NodeSet lost = attract(pg_, pred_, beta, sub.win[b], mask, &attr_b);
        SubSolution rest = solve(minus(mask, lost), depth + 1);
        for (NodeId v = 0; v < n; ++v) {
            if (!mask[v]) continue;
            if (lost[v]) {
                out.win[b][v] = true;
                if (pg_.owner[v] == beta) {
                    out.strategy[b][v] = sub.win[b][v] ? sub.strategy[b][v] : attr_b[v];
                }
            } else {
                out.win[a][v] = rest.win[a][v];
                out.win[b][v] = rest.win[b][v];
                out.strategy[a][v] = rest.strategy[a][v];
                out.strategy[b][v] = rest.strategy[b][v];
            }
        }
        return out;
    }

private:
    static NodeSet minus(const NodeSet &x, const NodeSet &y)
    {
        NodeSet out(x.size());
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] && !y[k];
        return out;
    }

    const ParityGame &pg_;
    std::vector<std::vector<NodeId>> pred_;
    SolverLimits limits_;
};

} // namespace

NodeSet
attractor(const ParityGame &pg, Role who, const NodeSet &target)
{
    NodeSet all(pg.size(), true);
    return attract(pg, predecessors(pg), who, target, all, nullptr);
}

ParitySolution
zielonka_solve(const ParityGame &pg, SolverLimits limits)
{
    if (!pg.well_formed()) throw Error(ErrorKind::BadParams, "parity game has a dead end");
    Zielonka solver(pg, limits);
    SubSolution s = solver.solve(NodeSet(pg.size(), true), 0);
    ParitySolution out;
    out.win_protagonist = std::move(s.win[0]);
    out.win_antagonist = std::move(s.win[1]);
    out.strategy_protagonist = std::move(s.strategy[0]);
    out.strategy_antagonist = std::move(s.strategy[1]);
    return out;
}

ProductGame
build_parity_game(const Arena &arena, PlayerId protagonist, const Dpa &d)
{
    if (d.alphabet_size() != arena.size()) {
        throw Error(ErrorKind::AlphabetMismatch, "automaton alphabet " +
                                                     std::to_string(d.alphabet_size()) +
                                                     " vs arena " + std::to_string(arena.size()));
    }
    ProductGame out;
    out.dpa_size = d.size();
    for (StateIndex v = 0; v < arena.size(); ++v) {
        Role r = arena.owner(v) == protagonist.value ? Role::Protagonist : Role::Antagonist;
        for (DpaState q = 0; q < d.size(); ++q) out.game.add_node(r, d.priority(q));
    }
    for (StateIndex v = 0; v < arena.size(); ++v) {
        for (DpaState q = 0; q < d.size(); ++q) {
            for (StateIndex w : arena.successors(v)) {
                out.game.add_edge(out.node(v, q), out.node(w, d.next(q, w)));
            }
        }
    }
    return out;
}

std::optional<StateIndex>
RetaliationRegion::choice(StateIndex v, DpaState q) const
{
    NodeId n = product.node(v, q);
    if (!winning[n] || strategy[n] == kNoMove) return std::nullopt;
    return product.arena_state(static_cast<NodeId>(strategy[n]));
}

RetaliationRegion
retaliation_region(const Arena &arena, const ObjectiveProfile &profile, PlayerId i,
                   SolverLimits limits)
{
    RetaliationRegion out;
    out.player = i;
    out.automaton = std::make_shared<const Dpa>(
        compile_expr(arena, profile, retaliation_objective(i, arena.player_count())));
    out.product = build_parity_game(arena, i, *out.automaton);
    ParitySolution sol = zielonka_solve(out.product.game, limits);
    out.winning = std::move(sol.win_protagonist);
    out.strategy = std::move(sol.strategy_protagonist);
    return out;
}

} // namespace doomsday
