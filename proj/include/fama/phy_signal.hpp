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

#ifndef FAMA_PHY_SIGNAL_HPP
#define FAMA_PHY_SIGNAL_HPP

#include "fama/fas_channel.hpp"
#include "fama/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

namespace fama {

/// Gray-coded bit pair carried by one QPSK symbol.
struct BitPair
{
    std::uint8_t first = 0;
    std::uint8_t second = 0;

    friend bool operator==(const BitPair&, const BitPair&) = default;
};

/// Saturating stand-in for an infinite SINR; keeps argmax well defined.
inline constexpr double kSinrSentinel = std::numeric_limits<double>::max();

/// First bit selects the sign of the imaginary part, second bit the real part:
/// 00 -> +1+j, 01 -> -1+j, 11 -> -1-j, 10 -> +1-j, scaled to |s|^2 = symbol_power.
inline std::complex<double> qpsk_point(BitPair bits, double symbol_power)
{
    const double a = std::sqrt(symbol_power / 2.0);
    return {bits.second ? -a : a, bits.first ? -a : a};
}

inline std::vector<std::complex<double>> modulate_qpsk(std::span<const std::uint8_t> bits, double symbol_power)
{
    if (bits.size() % 2 != 0)
        throw std::invalid_argument("modulate_qpsk: bit count must be even");
    if (!(symbol_power > 0.0))
        throw std::invalid_argument("modulate_qpsk: symbol power must be positive");
    std::vector<std::complex<double>> out;
    out.reserve(bits.size() / 2);
    for (std::size_t i = 0; i < bits.size(); i += 2)
        out.push_back(qpsk_point({static_cast<std::uint8_t>(bits[i] & 1u), static_cast<std::uint8_t>(bits[i + 1] & 1u)},
                                 symbol_power));
    return out;
}

/// Hard decision by sign; a zero component resolves to the positive side.
inline BitPair demodulate_qpsk(std::complex<double> y)
{
    return {static_cast<std::uint8_t>(y.imag() < 0.0), static_cast<std::uint8_t>(y.real() < 0.0)};
}

/// One symbol instant: s_1..s_U and the bits behind them.
struct SymbolBlock
{
    Eigen::VectorXcd symbols;
    std::vector<BitPair> bits;
    double symbol_power = 1.0;

    int num_users() const { return static_cast<int>(symbols.size()); }
};

/// Independent uniform QPSK symbols for every user.
template <class Gen>
SymbolBlock draw_symbols(int num_users, double symbol_power, Gen& gen)
{
    SymbolBlock block;
    block.symbol_power = symbol_power;
    block.symbols.resize(num_users);
    block.bits.resize(static_cast<std::size_t>(num_users));
    for (int v = 0; v < num_users; ++v)
    {
        const auto word = gen();
        const BitPair bits{static_cast<std::uint8_t>((word >> 62) & 1u), static_cast<std::uint8_t>((word >> 63) & 1u)};
        block.bits[static_cast<std::size_t>(v)] = bits;
        block.symbols(v) = qpsk_point(bits, symbol_power);
    }
    return block;
}

/// Received samples at all K ports for the tagged user, with the
/// interference and noise components kept for SINR bookkeeping.
struct PortObservations
{
    Eigen::VectorXcd received;
    Eigen::VectorXcd interference;
    Eigen::VectorXcd noise;
    double noise_power = 0.0;

    int num_ports() const { return static_cast<int>(received.size()); }
};

/// r_k = g^{(u,u)}_k s_u + I_k + eta_k for a given noise realisation.
inline PortObservations receive(const ChannelDrop& drop, const SymbolBlock& block, const Eigen::VectorXcd& noise,
                                double noise_power)
{
    if (block.num_users() != drop.num_users())
        throw std::invalid_argument("receive: symbol block does not match the number of users");
    if (noise.size() != drop.gains.rows())
        throw std::invalid_argument("receive: noise length does not match the number of ports");

    Eigen::VectorXcd others = block.symbols;
    others(drop.user) = 0.0;

    PortObservations obs;
    obs.noise_power = noise_power;
    obs.noise = noise;
    obs.interference = drop.gains * others;
    obs.received = drop.desired() * block.symbols(drop.user) + obs.interference + noise;
    return obs;
}

/// Same as above with eta_k ~ CN(0, noise_power) drawn i.i.d. per port.
template <class Gen>
PortObservations receive(const ChannelDrop& drop, const SymbolBlock& block, double noise_power, Gen& gen)
{
    if (!(noise_power >= 0.0))
        throw std::invalid_argument("receive: noise power must be nonnegative");
    const int K = drop.num_ports();
    Eigen::VectorXcd noise(K);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double s = std::sqrt(noise_power / 2.0);
    for (int k = 0; k < K; ++k)
    {
        const double re = normal(gen);
        const double im = normal(gen);
        noise(k) = {s * re, s * im};
    }
    return receive(drop, block, noise, noise_power);
}

/// Per-port instantaneous SINR using the realised interference and noise.
inline Eigen::VectorXd instantaneous_sinr(const ChannelDrop& drop, const SymbolBlock& block,
                                          const Eigen::VectorXcd& noise)
{
    if (block.num_users() != drop.num_users() || noise.size() != drop.gains.rows())
        throw std::invalid_argument("instantaneous_sinr: inconsistent dimensions");
    const int K = drop.num_ports();
    const int U = drop.num_users();
    const double signal = std::norm(block.symbols(drop.user));
    Eigen::VectorXd sinr(K);
    for (int k = 0; k < K; ++k)
    {
        std::complex<double> disturbance = noise(k);
        for (int v = 0; v < U; ++v)
            if (v != drop.user)
                disturbance += drop.gains(k, v) * block.symbols(v);
        const double denom = std::norm(disturbance);
        sinr(k) = denom > 0.0 ? std::norm(drop.gains(k, drop.user)) * signal / denom : kSinrSentinel;
    }
    return sinr;
}

/// Average per-port SNR Omega sigma_s^2 / sigma_eta^2 (linear).
inline double average_snr(double desired_power, double symbol_power, double noise_power)
{
    if (!(noise_power > 0.0))
        throw std::invalid_argument("average_snr: noise power must be positive");
    return desired_power * symbol_power / noise_power;
}

/// Noise power that realises the requested average SNR in dB.
inline double noise_power_for_snr(double snr_db, double desired_power, double symbol_power)
{
    return desired_power * symbol_power / std::pow(10.0, snr_db / 10.0);
}

} // namespace fama

#endif // FAMA_PHY_SIGNAL_HPP
