// Copyright 2026 The cvswap Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <new>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "commands.h"
#include "cvswap/cli.h"
#include "cvswap/sampling.h"

namespace cvswap {

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string format;
    std::string shots_csv;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

int execute(const cli::Command &cmd, const Flags &flags, std::ostream &out, std::ostream &err) {
    using cli::json;
    json config;
    {
        std::ifstream in(flags.config);
        if (!in) {
            err << "error: cannot read config '" << flags.config << "'\n";
            return kExitConfig;
        }
        try {
            config = json::parse(in);
        } catch (const json::parse_error &e) {
            err << "error: config is not valid JSON: " << e.what() << '\n';
            return kExitConfig;
        }
    }
    if (!config.is_object()) {
        err << "error: config must be a JSON object\n";
        return kExitConfig;
    }
    if (flags.threads > 0) {
        set_thread_count(flags.threads);
    }

    cli::CommandContext ctx;
    ctx.seed_override = flags.seed;
    ctx.shots_csv = flags.shots_csv;
    json result;
    try {
        result = cmd.run(config, ctx);
    } catch (const NumericalContractError &e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const cli::ConfigError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const json::exception &e) {
        err << "error: malformed config: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::out_of_range &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::bad_alloc &) {
        err << "error: the truncated state does not fit in memory; lower the cutoff\n";
        return kExitNumerical;
    }
    for (const std::string &w : ctx.warnings) {
        err << "warning: " << w << '\n';
    }

    const std::string format = flags.format.empty() ? (cmd.name == "fig2" ? "csv" : "json") : flags.format;
    std::string text;
    if (format == "csv") {
        text = cmd.csv(result);
    } else {
        const json doc = {{"tool", kToolVersion},
                          {"command", cmd.name},
                          {"config", config},
                          {"result", result},
                          {"warnings", ctx.warnings}};
        text = doc.dump(2) + "\n";
    }
    if (flags.out.empty()) {
        out << text;
    } else {
        std::ofstream file(flags.out, std::ios::binary);
        if (!file || !(file << text)) {
            err << "error: cannot write '" << flags.out << "'\n";
            return kExitConfig;
        }
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Ancilla-free SWAP tests on truncated Fock space", "cvswap"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    Flags flags;
    std::uint64_t seed = 0;
    for (const cli::Command &cmd : cli::commands()) {
        CLI::App *sub = app.add_subcommand(cmd.name);
        sub->add_option("--config", flags.config, "JSON config file")->required();
        sub->add_option("--out", flags.out, "Write the document here instead of stdout");
        sub->add_option("--format", flags.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--seed", seed, "Root seed; overrides the config");
        sub->add_option("--threads", flags.threads, "Worker threads (does not change results)")
            ->check(CLI::PositiveNumber);
        if (cmd.name == "overlap") {
            sub->add_option("--shots-csv", flags.shots_csv, "Dump the first run's photon patterns as CSV");
        }
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) {
        reversed.pop_back();
    }
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForVersion &) {
        out << kToolVersion << '\n';
        return kExitOk;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        return kExitConfig;
    }

    for (const cli::Command &cmd : cli::commands()) {
        CLI::App *sub = app.get_subcommand(cmd.name);
        if (sub->parsed()) {
            if (sub->count("--seed") > 0) {
                flags.seed = seed;
            }
            return execute(cmd, flags, out, err);
        }
    }
    return kExitConfig;
}

}  // namespace cvswap
