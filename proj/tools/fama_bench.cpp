// SPDX-License-Identifier: Apache-2.0
//
// fama-bench: link-level simulator for fluid antenna multiple access
// Copyright (C) 2026 The fama-bench authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// fama-bench: SER experiments, sweeps, dataset export and plotting.

#include "fama/fama.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct ExperimentOptions
{
    std::string scheme = "turbo";
    std::string spacing = "sdm";
    fama::ExperimentConfig config;
    std::int64_t max_trials = -1;
};

void add_experiment_options(CLI::App& app, ExperimentOptions& opt)
{
    auto& c = opt.config;
    app.add_option("--scheme", opt.scheme, "Receiver: turbo, allport or fastfama")
        ->check(CLI::IsMember({"turbo", "allport", "fastfama"}))
        ->capture_default_str();
    app.add_option("--users", c.users, "Number of users U")->capture_default_str();
    app.add_option("--ports", c.ports, "Number of FAS ports K")->capture_default_str();
    app.add_option("--aperture", c.aperture, "Normalised FAS length W in wavelengths")->capture_default_str();
    app.add_option("--ksel", c.selection.k_sel, "Ports kept by the shortlist")->capture_default_str();
    app.add_option("--gamma-th", c.selection.gamma_th, "Desired-gain filter threshold")->capture_default_str();
    app.add_option("--spacing", opt.spacing, "sdm, none or fixed:D")->capture_default_str();
    app.add_option("--snr-db", c.snr_db, "Average per-port SNR in dB")->capture_default_str();
    app.add_option("--trials", c.num_trials, "Channel drops (minimum)")->capture_default_str();
    app.add_option("--max-trials", opt.max_trials, "Trial cap when extending to --min-errors (default 10x trials)");
    app.add_option("--min-errors", c.min_errors, "Extend trials until this many errors")->capture_default_str();
    app.add_option("--symbols", c.symbols_per_drop, "Symbols per drop")->capture_default_str();
    app.add_option("--seed", c.seed, "Base seed")->capture_default_str();
    app.add_option("--cbr", c.cbr, "Channel bandwidth ratio recorded with the results")->capture_default_str();
    app.add_option("--cross-power", c.cross_power, "Average interferer channel gain")->capture_default_str();
    app.add_option("--workers", c.workers, "Worker threads (0 = all cores)")->capture_default_str();
}

fama::ExperimentConfig finish(ExperimentOptions& opt)
{
    fama::ExperimentConfig c = opt.config;
    c.scheme = fama::parse_scheme(opt.scheme);
    c.selection.spacing = fama::parse_spacing(opt.spacing);
    c.max_trials = opt.max_trials >= 0 ? opt.max_trials : 10 * c.num_trials;
    return c;
}

std::vector<double> parse_values(const std::string& text)
{
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        if (item.empty())
            continue;
        std::size_t used = 0;
        const double v = std::stod(item, &used);
        if (used != item.size())
            throw std::invalid_argument("bad sweep value '" + item + "'");
        out.push_back(v);
    }
    return out;
}

void print_record(const fama::SerRecord& r)
{
    std::printf("%-8s U=%-5d K=%-5d W=%-6g ser=%.4e [%.3e, %.3e] errors=%lld symbols=%lld (%.1fs)\n",
                std::string(fama::to_string(r.config.scheme)).c_str(), r.config.users, r.config.ports,
                r.config.aperture, r.ser, r.ci_lo, r.ci_hi, static_cast<long long>(r.symbol_errors),
                static_cast<long long>(r.symbols_total), r.wall_time_s);
    std::fflush(stdout);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fluid antenna multiple access link-level benchmark"};
    app.require_subcommand(1);

    ExperimentOptions run_opt;
    std::string run_out = "results.csv";
    auto* run = app.add_subcommand("run", "Run one SER experiment");
    add_experiment_options(*run, run_opt);
    run->add_option("--out", run_out, "Results CSV (appended)")->capture_default_str();

    ExperimentOptions sweep_opt;
    std::string sweep_out = "sweep.csv";
    std::string axis = "users";
    std::string values;
    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter");
    add_experiment_options(*sweep, sweep_opt);
    sweep->add_option("--axis", axis, "users, ports, aperture, spacing-d, cbr or blocklength")
        ->check(CLI::IsMember({"users", "ports", "aperture", "spacing-d", "d", "cbr", "blocklength"}))
        ->capture_default_str();
    sweep->add_option("--values", values, "Comma separated values")->required();
    sweep->add_option("--out", sweep_out, "Results CSV")->capture_default_str();

    ExperimentOptions export_opt;
    std::uint32_t records = 64;
    std::uint32_t block = 1024;
    std::string export_out = "data.fama";
    auto* exp = app.add_subcommand("export", "Write a FAMA-TX v1 dataset of post-combining blocks");
    add_experiment_options(*exp, export_opt);
    exp->add_option("--records", records, "Number of records (drops)")->capture_default_str();
    exp->add_option("--block", block, "Block length n")->capture_default_str();
    exp->add_option("--out", export_out, "Output file")->capture_default_str();

    std::string plot_in;
    std::string plot_out = "fig.svg";
    std::string plot_x;
    std::string plot_title;
    auto* plot = app.add_subcommand("plot", "Render a results CSV as an SVG line plot");
    plot->add_option("--in", plot_in, "Results CSV")->required();
    plot->add_option("--out", plot_out, "SVG file")->capture_default_str();
    plot->add_option("--x", plot_x, "x column: U, K, W, d, cbr, blocklength, snr_db (auto when omitted)");
    plot->add_option("--title", plot_title, "Plot title");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (*run)
        {
            const fama::ExperimentConfig config = finish(run_opt);
            const fama::SerRecord record = fama::run_experiment(config);
            fama::CsvWriter(run_out, false).write(record);
            print_record(record);
        }
        else if (*sweep)
        {
            const fama::ExperimentConfig config = finish(sweep_opt);
            fama::run_sweep(config, fama::parse_axis(axis), parse_values(values), sweep_out, print_record);
        }
        else if (*exp)
        {
            const fama::ExperimentConfig config = finish(export_opt);
            fama::export_dataset(config, records, block, export_out);
            std::printf("wrote %u records of %u symbols to %s (%zu bytes)\n", records, block, export_out.c_str(),
                        fama::dataset_file_size(records, block));
        }
        else if (*plot)
        {
            const auto rows = fama::read_csv(plot_in);
            const std::string column = plot_x.empty() ? fama::detect_sweep_column(rows) : plot_x;
            fama::PlotOptions options;
            options.title = plot_title;
            options.x_label = column;
            std::ofstream out(plot_out);
            if (!out)
                throw std::runtime_error("cannot open '" + plot_out + "'");
            out << fama::render_svg(fama::series_from_csv(rows, column), options);
            std::printf("wrote %s (%zu rows, x = %s)\n", plot_out.c_str(), rows.size(), column.c_str());
        }
    }
    catch (const std::exception& e)
    {
        std::fprintf(stderr, "fama-bench: %s\n", e.what());
        return 1;
    }
    return 0;
}
