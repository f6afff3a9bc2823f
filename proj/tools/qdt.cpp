// Copyright 2026 The qdt Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qdt/commands.hpp"
#include "qdt/scenario.hpp"

namespace {

struct Flags {
    std::string scenario_path;
    std::string builtin;
    std::uint64_t seed = 0;
    double mu = 0.0;
    double mu_c = 1.0;
    double tolerance = 0.0;
    std::string format = "both";
};

void add_flags(CLI::App &sub, Flags &flags) {
    auto *path = sub.add_option("--scenario", flags.scenario_path,
                                "scenario file (JSON)");
    auto *builtin =
        sub.add_option("--builtin", flags.builtin, "builtin scenario name")
            ->check(CLI::IsMember(qdt::builtin_scenario_names()));
    path->excludes(builtin);
    sub.add_option("--seed", flags.seed, "random seed (default 0)");
    sub.add_option("--mu", flags.mu, "information measure (default 0)");
    sub.add_option("--mu-c", flags.mu_c, "critical information (default 1)");
    sub.add_option("--format", flags.format, "machine, human or both")
        ->check(CLI::IsMember({"machine", "human", "both"}));
    sub.add_option("--tolerance", flags.tolerance,
                   "equality tolerance (default 1e-10)");
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum decision theory toolkit"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<CLI::App *, qdt::Command>> commands;
    const std::pair<const char *, const char *> descriptions[] = {
        {"predict", "score a prospect lattice"},
        {"eval-quantum", "evaluate prospects on a composite quantum state"},
        {"pipeline", "run and audit the five-step measurement pipeline"},
        {"logic-demo", "spin-1/2 non-distributivity table"},
        {"verify", "run the invariant suite"},
    };
    for (const auto &[name, help] : descriptions) {
        CLI::App *sub = app.add_subcommand(name, help);
        add_flags(*sub, flags);
        commands.emplace_back(sub, *qdt::parse_command(name));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : qdt::exit_validation;
    }

    qdt::Command command = qdt::Command::verify;
    CLI::App *active = nullptr;
    for (const auto &[sub, cmd] : commands) {
        if (sub->parsed()) {
            command = cmd;
            active = sub;
        }
    }

    qdt::CommandOptions options;
    if (active->count("--seed") > 0) {
        options.seed = flags.seed;
    }
    if (active->count("--mu") > 0) {
        options.mu = flags.mu;
    }
    if (active->count("--mu-c") > 0) {
        options.mu_c = flags.mu_c;
    }
    if (active->count("--tolerance") > 0) {
        options.tolerance.eps_equality = flags.tolerance;
    }

    std::optional<std::string> text;
    try {
        if (!flags.builtin.empty()) {
            text = qdt::builtin_scenario_text(flags.builtin);
        } else if (!flags.scenario_path.empty()) {
            std::ifstream in(flags.scenario_path, std::ios::binary);
            if (!in) {
                std::cerr << "error: cannot read " << flags.scenario_path << "\n";
                return qdt::exit_validation;
            }
            std::ostringstream buffer;
            buffer << in.rdbuf();
            text = buffer.str();
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return qdt::exit_validation;
    }

    const qdt::ReportDocument doc = qdt::run_command_on_text(command, text, options);
    std::cout << qdt::render(doc, qdt::parse_output_format(flags.format));
    if (doc.exit_code != qdt::exit_success) {
        for (const auto &[key, value] : doc.machine) {
            if (key == "error.message") {
                std::cerr << "error: " << value << "\n";
            }
        }
    }
    return doc.exit_code;
}
