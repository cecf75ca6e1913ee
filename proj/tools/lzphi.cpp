// Copyright 2026 The lzphi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "lzphi/cli.hpp"

namespace {

void add_common(CLI::App &cmd, std::string &format, lzphi::cli::Options &opts, std::optional<double> &tolerance,
                std::optional<int> &nodes, std::string &output) {
    cmd.add_option("--format", format, "report format")->check(CLI::IsMember({"json", "csv"}));
    cmd.add_option("--tolerance", tolerance, "absolute verdict tolerance");
    cmd.add_option("--quad-nodes", nodes, "phi quadrature nodes (theta and Hermite get half)");
    cmd.add_flag("--normalize", opts.normalize, "rescale coefficients to unit norm");
    cmd.add_option("--output", output, "write the report to this file");
}

void finish(lzphi::cli::Options &opts, const std::string &format, const std::optional<double> &tolerance,
            const std::optional<int> &nodes, const std::string &output) {
    opts.format = format == "csv" ? lzphi::ReportFormat::Csv : lzphi::ReportFormat::Json;
    opts.tolerance = tolerance;
    opts.quad_nodes = nodes;
    if (!output.empty()) opts.output = output;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Lz-phi uncertainty relation evaluator"};
    app.require_subcommand(1);

    lzphi::cli::Options opts;
    std::string format = "json";
    std::string output;
    std::optional<double> tolerance;
    std::optional<int> nodes;
    std::string spec;

    auto *eval = app.add_subcommand("eval", "evaluate every (state, relation) pair of a spec file");
    eval->add_option("spec", spec, "spec file")->required();
    add_common(*eval, format, opts, tolerance, nodes, output);

    app.add_subcommand("catalog", "list the supported relations");

    lzphi::cli::Sweep sweep;
    std::string state;
    auto *scan = app.add_subcommand("scan", "evaluate a spec file over a parameter sweep");
    scan->add_option("spec", spec, "spec file")->required();
    scan->add_option("--param", sweep.param, "alpha, n, N, N1, mix:<m1>:<m2>, phase:<m> or abs:<m>")->required();
    scan->add_option("--from", sweep.from, "first sweep value")->required();
    scan->add_option("--to", sweep.to, "last sweep value")->required();
    scan->add_option("--steps", sweep.steps, "number of sweep points")->required();
    scan->add_option("--state", state, "restrict the sweep to one named state");
    add_common(*scan, format, opts, tolerance, nodes, output);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : lzphi::cli::InputError;
    }

    finish(opts, format, tolerance, nodes, output);
    if (app.got_subcommand("catalog")) {
        std::cout << lzphi::cli::cmd_catalog();
        return 0;
    }
    if (app.got_subcommand("eval")) return lzphi::cli::cmd_eval(spec, opts);
    if (!state.empty()) sweep.state = state;
    return lzphi::cli::cmd_scan(spec, sweep, opts);
}
