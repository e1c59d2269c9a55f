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

#ifndef FAMA_HARNESS_HPP
#define FAMA_HARNESS_HPP

#include "fama/fas_channel.hpp"
#include "fama/phy_signal.hpp"
#include "fama/port_select.hpp"
#include "fama/rng.hpp"
#include "fama/schemes.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

namespace fama {

enum class SchemeKind
{
    Turbo,
    AllPort,
    FastFama,
};

inline std::string_view to_string(SchemeKind kind)
{
    switch (kind)
    {
    case SchemeKind::Turbo:
        return "turbo";
    case SchemeKind::AllPort:
        return "allport";
    case SchemeKind::FastFama:
        return "fastfama";
    }
    return "unknown";
}

inline SchemeKind parse_scheme(std::string_view name)
{
    if (name == "turbo")
        return SchemeKind::Turbo;
    if (name == "allport")
        return SchemeKind::AllPort;
    if (name == "fastfama")
        return SchemeKind::FastFama;
    throw std::invalid_argument("unknown scheme '" + std::string(name) + "' (expected turbo, allport or fastfama)");
}

inline std::string_view to_string(SpacingMode::Kind kind)
{
    switch (kind)
    {
    case SpacingMode::Kind::Sdm:
        return "sdm";
    case SpacingMode::Kind::Fixed:
        return "fixed";
    case SpacingMode::Kind::None:
        return "none";
    }
    return "unknown";
}

/// Accepts "sdm", "none" or "fixed:D".
inline SpacingMode parse_spacing(std::string_view text)
{
    if (text == "sdm")
        return SpacingMode::sdm();
    if (text == "none")
        return SpacingMode::none();
    if (text.starts_with("fixed:"))
    {
        const std::string value(text.substr(6));
        std::size_t used = 0;
        double d = 0.0;
        try
        {
            d = std::stod(value, &used);
        }
        catch (const std::exception&)
        {
            used = 0;
        }
        if (used == 0 || used != value.size())
            throw std::invalid_argument("bad spacing value in '" + std::string(text) + "'");
        return SpacingMode::fixed(d);
    }
    throw std::invalid_argument("unknown spacing '" + std::string(text) + "' (expected sdm, none or fixed:D)");
}

/// One Monte-Carlo cell.
struct ExperimentConfig
{
    SchemeKind scheme = SchemeKind::Turbo;
    int users = 1;
    int ports = 200;
    double aperture = 20.0;
    SelectionConfig selection;
    double snr_db = 10.0;
    std::int64_t num_trials = 10000; ///< channel drops, at least
    int symbols_per_drop = 16;
    std::uint64_t seed = 1;
    double symbol_power = 1.0;
    double desired_power = 1.0;
    double cross_power = 1.0;
    double cbr = 1.0; ///< metadata for the learned codec, no effect on the PHY
    /// Trials are doubled until min_errors errors are seen or max_trials is
    /// reached. max_trials <= num_trials disables the extension.
    std::int64_t min_errors = 100;
    std::int64_t max_trials = 0;
    int workers = 0; ///< 0 selects std::thread::hardware_concurrency()
    std::string output_path;

    FasGeometry geometry() const { return {ports, aperture}; }

    ReceiverScheme receiver() const
    {
        switch (scheme)
        {
        case SchemeKind::Turbo:
            return TurboFrontEnd{selection};
        case SchemeKind::AllPort:
            return AllPortMrc{};
        case SchemeKind::FastFama:
            return FastFamaOracle{};
        }
        return AllPortMrc{};
    }

    double noise_power() const { return noise_power_for_snr(snr_db, desired_power, symbol_power); }

    void validate() const
    {
        geometry().validate();
        if (users < 1)
            throw std::invalid_argument("ExperimentConfig: users must be >= 1");
        if (num_trials < 1)
            throw std::invalid_argument("ExperimentConfig: num_trials must be >= 1");
        if (symbols_per_drop < 1)
            throw std::invalid_argument("ExperimentConfig: symbols_per_drop must be >= 1");
        if (!std::isfinite(snr_db))
            throw std::invalid_argument("ExperimentConfig: snr_db must be finite");
        if (!(symbol_power >= 0.0) || !(desired_power > 0.0) || !(cross_power >= 0.0))
            throw std::invalid_argument("ExperimentConfig: invalid power setting");
        if (scheme == SchemeKind::Turbo)
            selection.validate(ports);
    }
};

/// Result of one cell. ser = symbol_errors / symbols_total.
struct SerRecord
{
    ExperimentConfig config;
    std::int64_t trials = 0;
    std::int64_t symbol_errors = 0;
    std::int64_t symbols_total = 0;
    double ser = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    double wall_time_s = 0.0;

    /// Binomial standard error of the SER estimate.
    double standard_error() const
    {
        if (symbols_total == 0)
            return 0.0;
        return std::sqrt(std::max(ser * (1.0 - ser), 0.0) / static_cast<double>(symbols_total));
    }
};

/// Wilson score interval for errors out of total at ~95% confidence.
inline std::pair<double, double> wilson_interval(std::int64_t errors, std::int64_t total, double z = 1.959963984540054)
{
    if (total <= 0)
        return {0.0, 1.0};
    const double n = static_cast<double>(total);
    const double p = static_cast<double>(errors) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    const double centre = (p + z2 / (2.0 * n)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n));
    return {std::max(0.0, centre - half), std::min(1.0, centre + half)};
}

/// Symbol errors of one channel drop. Channel rows, symbols and noise use
/// separate substreams keyed by (seed, trial), so every scheme run with the
/// same seed sees the same realisations.
inline std::int64_t run_trial(const ExperimentConfig& config, const CorrelationModel& model,
                              const ReceiverScheme& scheme, std::int64_t trial)
{
    const auto t = static_cast<std::uint64_t>(trial);
    const DropSpec spec{config.users, 0, config.desired_power, config.cross_power};
    const ChannelDrop drop =
        sample_drop(model, spec, [&](int v) { return substream(config.seed, t, StreamKind::Channel, v); });
    Rng symbol_rng = substream(config.seed, t, StreamKind::Symbols);
    Rng noise_rng = substream(config.seed, t, StreamKind::Noise);
    const double noise_power = config.noise_power();

    std::int64_t errors = 0;
    for (int i = 0; i < config.symbols_per_drop; ++i)
    {
        const SymbolBlock block = draw_symbols(config.users, config.symbol_power, symbol_rng);
        const SymbolOutcome out = run_symbol(scheme, drop, block, noise_power, model.geometry(), noise_rng);
        if (!(out.bits == block.bits[static_cast<std::size_t>(drop.user)]))
            ++errors;
    }
    return errors;
}

/// Runs body(i) for i in [begin, end) on a pool of workers and returns the
/// per-index results in index order.
template <class Body>
std::vector<std::int64_t> parallel_map(std::int64_t begin, std::int64_t end, int workers, Body&& body)
{
    std::vector<std::int64_t> out(static_cast<std::size_t>(std::max<std::int64_t>(end - begin, 0)));
    if (out.empty())
        return out;
    if (workers <= 0)
        workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::int64_t>(workers, end - begin));

    std::atomic<std::int64_t> next{begin};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto work = [&] {
        for (;;)
        {
            const std::int64_t i = next.fetch_add(1);
            if (i >= end)
                return;
            try
            {
                out[static_cast<std::size_t>(i - begin)] = body(i);
            }
            catch (...)
            {
                const std::lock_guard lock(failure_mutex);
                if (!failure)
                    failure = std::current_exception();
                next.store(end);
                return;
            }
        }
    };
    if (workers == 1)
    {
        work();
    }
    else
    {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w)
            pool.emplace_back(work);
    }
    if (failure)
        std::rethrow_exception(failure);
    return out;
}

/// Runs the Monte-Carlo cell against a prebuilt correlation model.
inline SerRecord run_experiment(const ExperimentConfig& config, const CorrelationModel& model)
{
    config.validate();
    if (model.num_ports() != config.ports || model.geometry().aperture != config.aperture)
        throw std::invalid_argument("run_experiment: correlation model does not match the configuration");

    const auto start = std::chrono::steady_clock::now();
    const ReceiverScheme scheme = config.receiver();
    const auto body = [&](std::int64_t trial) { return run_trial(config, model, scheme, trial); };

    std::int64_t done = 0;
    std::int64_t errors = 0;
    std::int64_t target = config.num_trials;
    for (;;)
    {
        for (std::int64_t e : parallel_map(done, target, config.workers, body))
            errors += e;
        done = target;
        if (errors >= config.min_errors || done >= config.max_trials)
            break;
        target = std::min(config.max_trials, 2 * done);
    }

    SerRecord record;
    record.config = config;
    record.trials = done;
    record.symbol_errors = errors;
    record.symbols_total = done * config.symbols_per_drop;
    record.ser = static_cast<double>(errors) / static_cast<double>(record.symbols_total);
    std::tie(record.ci_lo, record.ci_hi) = wilson_interval(errors, record.symbols_total);
    record.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return record;
}

inline SerRecord run_experiment(const ExperimentConfig& config)
{
    config.validate();
    const CorrelationModel model(config.geometry());
    return run_experiment(config, model);
}

// ---------------------------------------------------------------------------
// CSV

inline constexpr std::string_view kCsvHeader =
    "scheme,U,K,W,ksel,gamma_th,spacing,d,cbr,snr_db,trials,symbols,errors,ser,ci_lo,ci_hi,seed,wall_time_s";

inline std::string format_number(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

inline std::string csv_row(const SerRecord& r)
{
    const ExperimentConfig& c = r.config;
    const bool fixed = c.selection.spacing.kind == SpacingMode::Kind::Fixed;
    std::ostringstream os;
    os << to_string(c.scheme) << ',' << c.users << ',' << c.ports << ',' << format_number(c.aperture) << ','
       << c.selection.k_sel << ',' << format_number(c.selection.gamma_th) << ','
       << to_string(c.selection.spacing.kind) << ',' << format_number(fixed ? c.selection.spacing.d : 0.0) << ','
       << format_number(c.cbr) << ',' << format_number(c.snr_db) << ',' << r.trials << ',' << r.symbols_total << ','
       << r.symbol_errors << ',' << format_number(r.ser) << ',' << format_number(r.ci_lo) << ','
       << format_number(r.ci_hi) << ',' << c.seed << ',' << format_number(r.wall_time_s);
    return os.str();
}

/// Appends records to a CSV file, writing the header when the file is new.
class CsvWriter
{
public:
    explicit CsvWriter(const std::string& path, bool truncate = true) : path_(path)
    {
        bool fresh = truncate;
        if (!truncate)
        {
            std::ifstream probe(path, std::ios::binary | std::ios::ate);
            fresh = !probe || probe.tellg() == 0;
        }
        out_.open(path, truncate ? std::ios::trunc : std::ios::app);
        if (!out_)
            throw std::runtime_error("cannot open '" + path + "' for writing");
        if (fresh)
            out_ << kCsvHeader << '\n';
        out_.flush();
    }

    void write(const SerRecord& record)
    {
        out_ << csv_row(record) << '\n';
        out_.flush();
        if (!out_)
            throw std::runtime_error("write to '" + path_ + "' failed");
    }

private:
    std::string path_;
    std::ofstream out_;
};

/// One parsed CSV row. The scheme column is free text so rows written by
/// other tools (for example learned-codec evaluations) load as well.
struct CsvRecord
{
    std::string scheme;
    int users = 0;
    int ports = 0;
    double aperture = 0.0;
    int k_sel = 0;
    double gamma_th = 0.0;
    std::string spacing;
    double d = 0.0;
    double cbr = 0.0;
    double snr_db = 0.0;
    std::int64_t trials = 0;
    std::int64_t symbols = 0;
    std::int64_t errors = 0;
    double ser = 0.0;
    double ci_lo = 0.0;
    double ci_hi = 0.0;
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

namespace detail {

inline std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> out;
    std::string field;
    std::istringstream is(line);
    while (std::getline(is, field, ','))
        out.push_back(field);
    if (!line.empty() && line.back() == ',')
        out.emplace_back();
    return out;
}

template <class T>
T parse_field(const std::string& text, std::string_view column)
{
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc() || res.ptr != text.data() + text.size())
        throw std::runtime_error("CSV: cannot parse column " + std::string(column) + " value '" + text + "'");
    return value;
}

} // namespace detail

inline std::vector<CsvRecord> read_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("CSV: missing header");
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != kCsvHeader)
        throw std::runtime_error("CSV: unexpected header '" + line + "'");

    std::vector<CsvRecord> rows;
    while (std::getline(in, line))
    {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        const auto f = detail::split_csv_line(line);
        if (f.size() != 18)
            throw std::runtime_error("CSV: expected 18 columns, got " + std::to_string(f.size()));
        using detail::parse_field;
        CsvRecord r;
        r.scheme = f[0];
        r.users = parse_field<int>(f[1], "U");
        r.ports = parse_field<int>(f[2], "K");
        r.aperture = parse_field<double>(f[3], "W");
        r.k_sel = parse_field<int>(f[4], "ksel");
        r.gamma_th = parse_field<double>(f[5], "gamma_th");
        r.spacing = f[6];
        r.d = parse_field<double>(f[7], "d");
        r.cbr = parse_field<double>(f[8], "cbr");
        r.snr_db = parse_field<double>(f[9], "snr_db");
        r.trials = parse_field<std::int64_t>(f[10], "trials");
        r.symbols = parse_field<std::int64_t>(f[11], "symbols");
        r.errors = parse_field<std::int64_t>(f[12], "errors");
        r.ser = parse_field<double>(f[13], "ser");
        r.ci_lo = parse_field<double>(f[14], "ci_lo");
        r.ci_hi = parse_field<double>(f[15], "ci_hi");
        r.seed = parse_field<std::uint64_t>(f[16], "seed");
        r.wall_time_s = parse_field<double>(f[17], "wall_time_s");
        rows.push_back(std::move(r));
    }
    return rows;
}

inline std::vector<CsvRecord> read_csv(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    return read_csv(in);
}

// ---------------------------------------------------------------------------
// Sweeps

enum class SweepAxis
{
    Users,
    Ports,
    Aperture,
    SpacingD,
    Cbr,
    Blocklength,
};

inline SweepAxis parse_axis(std::string_view name)
{
    if (name == "users")
        return SweepAxis::Users;
    if (name == "ports")
        return SweepAxis::Ports;
    if (name == "aperture")
        return SweepAxis::Aperture;
    if (name == "spacing-d" || name == "d")
        return SweepAxis::SpacingD;
    if (name == "cbr")
        return SweepAxis::Cbr;
    if (name == "blocklength")
        return SweepAxis::Blocklength;
    throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

/// Copy of base with the axis set to value.
inline ExperimentConfig apply_axis(ExperimentConfig config, SweepAxis axis, double value)
{
    const auto as_int = [&](std::string_view what) {
        if (value != std::floor(value) || value < 1.0)
            throw std::invalid_argument(std::string(what) + " sweep values must be positive integers");
        return static_cast<int>(value);
    };
    switch (axis)
    {
    case SweepAxis::Users:
        config.users = as_int("users");
        break;
    case SweepAxis::Ports:
        config.ports = as_int("ports");
        break;
    case SweepAxis::Aperture:
        config.aperture = value;
        break;
    case SweepAxis::SpacingD:
        config.selection.spacing = SpacingMode::fixed(value);
        break;
    case SweepAxis::Cbr:
        config.cbr = value;
        break;
    case SweepAxis::Blocklength:
        config.symbols_per_drop = as_int("blocklength");
        break;
    }
    return config;
}

/// One record per value, appended to csv_path as it completes when given.
/// Correlation models are reused between cells that share (K, W).
inline std::vector<SerRecord> run_sweep(const ExperimentConfig& base, SweepAxis axis, const std::vector<double>& values,
                                        const std::string& csv_path = {},
                                        const std::function<void(const SerRecord&)>& on_record = {})
{
    if (values.empty())
        throw std::invalid_argument("run_sweep: no sweep values");
    std::optional<CsvWriter> writer;
    if (!csv_path.empty())
        writer.emplace(csv_path);

    std::map<std::pair<int, double>, std::shared_ptr<const CorrelationModel>> models;
    std::vector<SerRecord> out;
    for (double value : values)
    {
        const ExperimentConfig cell = apply_axis(base, axis, value);
        cell.validate();
        auto& model = models[{cell.ports, cell.aperture}];
        if (!model)
            model = std::make_shared<const CorrelationModel>(cell.geometry());
        out.push_back(run_experiment(cell, *model));
        if (writer)
            writer->write(out.back());
        if (on_record)
            on_record(out.back());
    }
    return out;
}

} // namespace fama

#endif // FAMA_HARNESS_HPP
