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

// doomsday: decide, certify and check doomsday equilibria.
//
// Exit codes: 0 equilibrium exists (solve) / certificate valid (check) /
// success (gen, dot); 3 no equilibrium / certificate rejected; 1 input or
// usage error; 2 resource limit hit.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "doomsday/equilibrium.hpp"
#include "doomsday/error.hpp"
#include "doomsday/io.hpp"
#include "doomsday/verify.hpp"

using namespace doomsday;

namespace {

constexpr int kExists = 0;
constexpr int kInputError = 1;
constexpr int kResourceLimit = 2;
constexpr int kNotExists = 3;

std::string
read_file(const std::string &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::BadParams, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void
write_file(const std::string &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorKind::BadParams, "cannot write " + path);
    out << text;
}

std::string
render_states(const Arena &arena, const std::vector<StateIndex> &states)
{
    std::string out;
    for (std::size_t k = 0; k < states.size(); ++k) {
        if (k > 0) out += " ";
        out += arena.id(states[k]);
    }
    return out;
}

} // namespace

int
main(int argc, char **argv)
{
    CLI::App app{"Doomsday equilibria for multi-player games on graphs"};
    app.require_subcommand(1);

    std::string game_path, cert_path, dot_path;
    bool json = false;
    std::size_t node_budget = kDefaultNodeBudget;

    auto *solve = app.add_subcommand("solve", "decide whether a doomsday equilibrium exists");
    solve->add_option("file", game_path, "game file")->required();
    solve->add_flag("--json", json, "print the result as JSON");
    solve->add_option("--dot", dot_path, "write the arena with the certificate highlighted");
    solve->add_option("--node-budget", node_budget, "tracked product size limit");

    auto *check = app.add_subcommand("check", "check a certificate against the definition");
    check->add_option("file", game_path, "game file")->required();
    check->add_option("certificate", cert_path, "certificate JSON (solve --json output)")->required();

    GenParams gen_params;
    std::string class_name = "reach";
    auto *gen = app.add_subcommand("gen", "print a random game");
    gen->add_option("--states", gen_params.states, "number of states")->required();
    gen->add_option("--players", gen_params.players, "number of players")->required();
    gen->add_option("--class", class_name, "reach, safety, buchi, cobuchi or parity")->required();
    gen->add_option("--seed", gen_params.seed, "64-bit seed")->required();
    gen->add_option("--density", gen_params.edge_density, "probability of each extra edge");
    gen->add_option("--empty-rate", gen_params.empty_rate, "probability of an empty objective set");

    auto *dot = app.add_subcommand("dot", "print the arena as a Graphviz digraph");
    dot->add_option("file", game_path, "game file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kInputError;
    }

    try {
        if (*gen) {
            gen_params.objective_class = parse_class(class_name);
            std::cout << gen_random(gen_params);
            return 0;
        }

        Game game = parse_game_file(read_file(game_path));
        if (*dot) {
            std::cout << export_dot(game.arena, game.profile);
            return 0;
        }

        if (*check) {
            Certificate cert = parse_certificate_json(read_file(cert_path), game.arena, game.profile);
            StrategyProfile strategies = assemble_profile(cert, game.arena, game.profile);
            CheckResult r = check_profile(game.arena, game.profile, strategies);
            if (r.is_de) {
                std::cout << "valid: certificate is a doomsday equilibrium\n";
                return kExists;
            }
            std::cout << "invalid: " << r.violation->description << "\n";
            return kNotExists;
        }

        SolveOptions options;
        options.node_budget = node_budget;
        DoomsdayResult result = decide_doomsday(game.arena, game.profile, options);
        if (!dot_path.empty()) {
            write_file(dot_path, export_dot(game.arena, game.profile,
                                            result.certificate ? &*result.certificate : nullptr));
        }
        if (json) {
            std::cout << serialize_result(game.arena, result) << "\n";
        } else if (result.exists) {
            std::cout << "verdict: exists\n"
                      << "stem: " << render_states(game.arena, result.certificate->stem) << "\n"
                      << "cycle: " << render_states(game.arena, result.certificate->cycle) << "\n";
        } else {
            std::cout << "verdict: not_exists\n";
        }
        return result.exists ? kExists : kNotExists;
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.is_resource_limit() ? kResourceLimit : kInputError;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
}
