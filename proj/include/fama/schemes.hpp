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

#ifndef FAMA_SCHEMES_HPP
#define FAMA_SCHEMES_HPP

#include "fama/fas_channel.hpp"
#include "fama/phy_signal.hpp"
#include "fama/port_select.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string_view>
#include <type_traits>
#include <variant>
#include <vector>

namespace fama {

/// Port shortlisting followed by MRC over the shortlisted ports.
struct TurboFrontEnd
{
    SelectionConfig selection;
};

/// MRC over every port.
struct AllPortMrc
{
};

/// Genie-aided single port with the highest instantaneous SINR per symbol.
struct FastFamaOracle
{
};

using ReceiverScheme = std::variant<TurboFrontEnd, AllPortMrc, FastFamaOracle>;

inline std::string_view scheme_name(const ReceiverScheme& scheme)
{
    return std::visit(
        [](const auto& s) -> std::string_view {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, TurboFrontEnd>)
                return "turbo";
            else if constexpr (std::is_same_v<T, AllPortMrc>)
                return "allport";
            else
                return "fastfama";
        },
        scheme);
}

/// y = sum_k conj(g_k) / sqrt(Omega) r_k. Ports are summed in ascending index
/// order so that equal port sets give bit-identical outputs.
inline std::complex<double> mrc_combine(const Eigen::Ref<const Eigen::VectorXcd>& received,
                                        const Eigen::Ref<const Eigen::VectorXcd>& desired_gains,
                                        std::span<const int> ports, double desired_power)
{
    if (ports.empty())
        throw std::invalid_argument("mrc_combine: empty port set");
    if (!(desired_power > 0.0))
        throw std::invalid_argument("mrc_combine: desired power must be positive");
    std::vector<int> sorted(ports.begin(), ports.end());
    std::sort(sorted.begin(), sorted.end());
    const double inv = 1.0 / std::sqrt(desired_power);
    std::complex<double> y = 0.0;
    for (int k : sorted)
    {
        if (k < 0 || k >= received.size())
            throw std::out_of_range("mrc_combine: port index out of range");
        y += std::conj(desired_gains(k)) * inv * received(k);
    }
    return y;
}

/// Index of the largest entry, lowest index on ties.
inline int argmax_lowest(const Eigen::Ref<const Eigen::VectorXd>& values)
{
    int best = 0;
    for (Eigen::Index k = 1; k < values.size(); ++k)
        if (values(k) > values(best))
            best = static_cast<int>(k);
    return best;
}

/// k* = argmax_k gamma_k.
inline int fast_fama_select(const ChannelDrop& drop, const SymbolBlock& block, const Eigen::VectorXcd& noise)
{
    return argmax_lowest(instantaneous_sinr(drop, block, noise));
}

/// Same selection from |g_k|^2 / |I_k + eta_k|^2, without the |s_u|^2 factor.
inline int fast_fama_select_ratio(const ChannelDrop& drop, const SymbolBlock& block, const Eigen::VectorXcd& noise)
{
    const int K = drop.num_ports();
    Eigen::VectorXd ratio(K);
    for (int k = 0; k < K; ++k)
    {
        std::complex<double> disturbance = noise(k);
        for (int v = 0; v < drop.num_users(); ++v)
            if (v != drop.user)
                disturbance += drop.gains(k, v) * block.symbols(v);
        const double denom = std::norm(disturbance);
        ratio(k) = denom > 0.0 ? std::norm(drop.gains(k, drop.user)) / denom : kSinrSentinel;
    }
    return argmax_lowest(ratio);
}

/// Nearest QPSK point after derotating y by the reference phase.
inline BitPair detect_qpsk(std::complex<double> y, std::complex<double> reference = 1.0)
{
    return demodulate_qpsk(y * std::conj(reference));
}

/// What a scheme produced for one symbol.
struct SymbolOutcome
{
    BitPair bits;
    std::complex<double> combined;  ///< y before detection
    std::complex<double> equalized; ///< y divided by the effective desired gain
    std::vector<int> ports;         ///< ports used, ascending
};

/// Applies the scheme's selection and combining to given observations.
inline SymbolOutcome apply_scheme(const ReceiverScheme& scheme, const ChannelDrop& drop, const SymbolBlock& block,
                                  const PortObservations& obs, const FasGeometry& geometry)
{
    const auto g = drop.desired();
    SymbolOutcome out;

    const auto combine = [&](std::vector<int> ports) {
        std::sort(ports.begin(), ports.end());
        out.combined = mrc_combine(obs.received, g, ports, drop.desired_power);
        double gain = 0.0;
        for (int k : ports)
            gain += std::norm(g(k));
        gain /= std::sqrt(drop.desired_power);
        out.equalized = gain > 0.0 ? out.combined / gain : std::complex<double>(0.0);
        out.bits = detect_qpsk(out.combined);
        out.ports = std::move(ports);
    };

    if (const auto* turbo = std::get_if<TurboFrontEnd>(&scheme))
    {
        const Shortlist picked = shortlist(obs.received, g, block.symbol_power, turbo->selection, geometry);
        combine(picked.ports);
    }
    else if (std::holds_alternative<AllPortMrc>(scheme))
    {
        std::vector<int> all(static_cast<std::size_t>(drop.num_ports()));
        std::iota(all.begin(), all.end(), 0);
        combine(std::move(all));
    }
    else
    {
        const int best = fast_fama_select(drop, block, obs.noise);
        out.combined = obs.received(best);
        out.equalized = g(best) != 0.0 ? out.combined / g(best) : std::complex<double>(0.0);
        out.bits = detect_qpsk(out.combined, g(best));
        out.ports = {best};
    }
    return out;
}

/// Receive one symbol instant for the tagged user, then select, combine and detect.
template <class Gen>
SymbolOutcome run_symbol(const ReceiverScheme& scheme, const ChannelDrop& drop, const SymbolBlock& block,
                         double noise_power, const FasGeometry& geometry, Gen& gen)
{
    const PortObservations obs = receive(drop, block, noise_power, gen);
    return apply_scheme(scheme, drop, block, obs, geometry);
}

} // namespace fama

#endif // FAMA_SCHEMES_HPP
