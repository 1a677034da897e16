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
#include <string>
#include <string_view>

#include "doomsday/arena.hpp"
#include "doomsday/equilibrium.hpp"
#include "doomsday/objectives.hpp"

namespace doomsday {

struct Game
{
    std::string name;
    Arena arena;
    ObjectiveProfile profile;
};

/**
 * Line-oriented game format. `#` starts a comment, tokens are separated by
 * whitespace:
 *
 *     game <name>                    (optional)
 *     players <n>
 *     state <id> owner=<k>
 *     edge <from> <to> [<to> ...]
 *     init <id>
 *     objective <k> reach|safety|buchi|cobuchi [<id> ...]
 *     objective <k> parity <id>:<priority> ...   (every state exactly once)
 *
 * Throws SyntaxError("line N: ..."), MissingObjective, DuplicateObjective
 * and whatever validate_arena raises.
 */
Game parse_game_file(std::string_view text);

/// Canonical text form; parse_game_file(serialize_game(g)) reproduces g.
std::string serialize_game(const Game &game);

/// Throws BadParams for an unknown keyword.
ObjectiveClass parse_class(std::string_view keyword);

/// {"verdict":...,"players":n,"certificate":{"stem":[...],"cycle":[...],
/// "retaliation":{"<k>":[{"state":..,"memory":..,"choice":..}]}}} with
/// keys in exactly this order and no whitespace.
std::string serialize_result(const Arena &arena, const DoomsdayResult &result);

/// Reads the certificate part of serialize_result output. The retaliation
/// automata are recompiled from the profile. Throws MalformedCertificate.
Certificate parse_certificate_json(std::string_view json, const Arena &arena,
                                   const ObjectiveProfile &profile);

/// Graphviz digraph: one node per state labeled "id (Pk)" with a shape per
/// owner; certificate edges are drawn bold.
std::string export_dot(const Arena &arena, const ObjectiveProfile &profile,
                       const Certificate *certificate = nullptr);

struct GenParams
{
    std::size_t states = 5;
    int players = 2;
    ObjectiveClass objective_class = ObjectiveClass::Reachability;
    double edge_density = 0.3;
    double empty_rate = 0.1;
    std::uint64_t seed = 1;
};

/**
 * Random game in file format, reproducible from the seed. Randomness comes
 * from std::mt19937_64 seeded with `seed`; integers are drawn as
 * `next() % bound` and probabilities as `(next() >> 11) * 2^-53`, so the
 * output is identical on every platform.
 *
 * Each state gets one uniformly chosen successor, then every other state is
 * added as a successor with probability edge_density. Set objectives are
 * empty with probability empty_rate, otherwise each state joins with
 * probability 1/2 (at least one state is kept). Parity priorities are
 * uniform in 0..min(3, 2 * states). Throws BadParams.
 */
std::string gen_random(const GenParams &params);

} // namespace doomsday
