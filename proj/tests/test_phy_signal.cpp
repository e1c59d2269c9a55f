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

#include "catch_amalgamated.hpp"

#include "fama/phy_signal.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using cd = std::complex<double>;

namespace {

fama::SymbolBlock block_of(std::vector<cd> symbols, double power = 2.0)
{
    fama::SymbolBlock b;
    b.symbol_power = power;
    b.symbols = Eigen::Map<Eigen::VectorXcd>(symbols.data(), static_cast<Eigen::Index>(symbols.size()));
    b.bits.resize(symbols.size());
    return b;
}

} // namespace

TEST_CASE("QPSK Gray mapping", "[phy_signal]")
{
    const std::vector<std::uint8_t> bits{0, 0, 0, 1, 1, 1, 1, 0};
    const auto s = fama::modulate_qpsk(bits, 2.0);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == cd(1, 1));
    CHECK(s[1] == cd(-1, 1));
    CHECK(s[2] == cd(-1, -1));
    CHECK(s[3] == cd(1, -1));

    for (const auto& z : fama::modulate_qpsk(bits, 3.7))
        CHECK_THAT(std::norm(z), WithinRel(3.7, 1e-15));
}

TEST_CASE("QPSK rejects odd bit counts and nonpositive power", "[phy_signal]")
{
    const std::vector<std::uint8_t> odd{0, 1, 1};
    CHECK_THROWS_AS(fama::modulate_qpsk(odd, 1.0), std::invalid_argument);
    const std::vector<std::uint8_t> even{0, 1};
    CHECK_THROWS_AS(fama::modulate_qpsk(even, 0.0), std::invalid_argument);
}

TEST_CASE("QPSK demodulation inverts modulation", "[phy_signal]")
{
    for (std::uint8_t a = 0; a < 2; ++a)
        for (std::uint8_t b = 0; b < 2; ++b)
        {
            const fama::BitPair bits{a, b};
            CHECK(fama::demodulate_qpsk(fama::qpsk_point(bits, 0.3)) == bits);
        }
}

TEST_CASE("receive without interference or noise", "[phy_signal]")
{
    fama::ChannelDrop drop;
    drop.gains.resize(3, 1);
    drop.gains << cd(0.5, 1), cd(-2, 0.25), cd(0, 0);
    const auto block = block_of({cd(1, -1)});
    const auto obs = fama::receive(drop, block, Eigen::VectorXcd::Zero(3), 0.0);
    for (int k = 0; k < 3; ++k)
        CHECK(obs.received(k) == drop.gains(k, 0) * cd(1, -1));
}

TEST_CASE("receive sums every user through unit gains", "[phy_signal]")
{
    fama::ChannelDrop drop;
    drop.gains = Eigen::MatrixXcd::Ones(4, 3);
    const cd a(1, 1), b(-1, 1), c(1, -1);
    const auto obs = fama::receive(drop, block_of({a, b, c}), Eigen::VectorXcd::Zero(4), 0.0);
    for (int k = 0; k < 4; ++k)
    {
        CHECK(obs.received(k) == a + b + c);
        CHECK(obs.interference(k) == b + c);
    }
}

TEST_CASE("receive matches a direct evaluation of the port signal", "[phy_signal]")
{
    fama::Rng gen(21);
    const fama::CorrelationModel model({12, 3.0});
    for (int trial = 0; trial < 50; ++trial)
    {
        auto drop = fama::sample_drop(model, {4, 0, 1.0, 1.0}, gen);
        drop.user = trial % 4;
        const auto block = fama::draw_symbols(4, 1.0, gen);
        const auto obs = fama::receive(drop, block, 0.3, gen);
        for (int k = 0; k < 12; ++k)
        {
            cd expected = drop.gains(k, drop.user) * block.symbols(drop.user);
            for (int v = 0; v < 4; ++v)
                if (v != drop.user)
                    expected += drop.gains(k, v) * block.symbols(v);
            expected += obs.noise(k);
            CHECK(std::abs(obs.received(k) - expected) < 1e-12);
        }
    }
}

TEST_CASE("receive rejects mismatched dimensions", "[phy_signal]")
{
    fama::ChannelDrop drop;
    drop.gains = Eigen::MatrixXcd::Ones(4, 2);
    CHECK_THROWS_AS(fama::receive(drop, block_of({cd(1, 1)}), Eigen::VectorXcd::Zero(4), 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS(fama::receive(drop, block_of({cd(1, 1), cd(1, 1)}), Eigen::VectorXcd::Zero(3), 0.0),
                    std::invalid_argument);
}

TEST_CASE("instantaneous SINR", "[phy_signal]")
{
    SECTION("single user: signal over noise")
    {
        fama::ChannelDrop drop;
        drop.gains.resize(2, 1);
        drop.gains << cd(1, 1), cd(0, -3);
        Eigen::VectorXcd noise(2);
        noise << cd(0.5, 0), cd(0.1, 0.2);
        const auto sinr = fama::instantaneous_sinr(drop, block_of({cd(1, 1)}), noise);
        CHECK_THAT(sinr(0), WithinRel(2.0 * 2.0 / 0.25, 1e-14));
        CHECK_THAT(sinr(1), WithinRel(9.0 * 2.0 / 0.05, 1e-14));
    }
    SECTION("interference cancelling exactly gives the sentinel")
    {
        fama::ChannelDrop drop;
        drop.gains.resize(1, 3);
        drop.gains << cd(1, 0), cd(1, 0), cd(1, 0);
        const auto sinr = fama::instantaneous_sinr(drop, block_of({cd(1, 1), cd(1, 1), cd(-1, -1)}),
                                                   Eigen::VectorXcd::Zero(1));
        CHECK(sinr(0) == fama::kSinrSentinel);
        CHECK(std::isfinite(sinr(0)));
    }
    SECTION("random three-user instances match a direct evaluation")
    {
        fama::Rng gen(8);
        const fama::CorrelationModel model({9, 2.0});
        for (int t = 0; t < 30; ++t)
        {
            const auto drop = fama::sample_drop(model, {3, 0, 1.0, 1.0}, gen);
            const auto block = fama::draw_symbols(3, 1.0, gen);
            const auto obs = fama::receive(drop, block, 0.1, gen);
            const auto sinr = fama::instantaneous_sinr(drop, block, obs.noise);
            for (int k = 0; k < 9; ++k)
            {
                const cd rest = drop.gains(k, 1) * block.symbols(1) + drop.gains(k, 2) * block.symbols(2) + obs.noise(k);
                const double expected = std::norm(drop.gains(k, 0)) * std::norm(block.symbols(0)) / std::norm(rest);
                CHECK_THAT(sinr(k), WithinRel(expected, 1e-12));
            }
        }
    }
}

TEST_CASE("instantaneous SINR ignores a common phase rotation of the symbols", "[phy_signal]")
{
    fama::Rng gen(13);
    const fama::CorrelationModel model({10, 2.0});
    const auto drop = fama::sample_drop(model, {5, 0, 1.0, 1.0}, gen);
    for (int t = 0; t < 20; ++t)
    {
        const auto block = fama::draw_symbols(5, 1.0, gen);
        const auto obs = fama::receive(drop, block, 0.2, gen);
        const cd rot = std::polar(1.0, 0.37 * (t + 1));
        fama::SymbolBlock rotated = block;
        rotated.symbols *= rot;
        const Eigen::VectorXcd noise = obs.noise * rot;
        const auto a = fama::instantaneous_sinr(drop, block, obs.noise);
        const auto b = fama::instantaneous_sinr(drop, rotated, noise);
        for (int k = 0; k < 10; ++k)
            CHECK_THAT(b(k), WithinRel(a(k), 1e-10));
    }
}

TEST_CASE("average SNR", "[phy_signal]")
{
    CHECK(fama::average_snr(1.0, 10.0, 1.0) == 10.0);
    CHECK(fama::average_snr(2.0, 5.0, 1.0) == 10.0);
    CHECK_THAT(fama::average_snr(1.0, 1.0, 10.0), WithinRel(0.1, 1e-15));
    CHECK_THROWS_AS(fama::average_snr(1.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(fama::average_snr(1.0, 1.0, -1.0), std::invalid_argument);
    CHECK_THAT(fama::noise_power_for_snr(10.0, 1.0, 1.0), WithinRel(0.1, 1e-14));
}

TEST_CASE("single-user received power is signal plus noise", "[phy_signal]")
{
    const fama::CorrelationModel model({4, 1.0});
    const int n = 100000;
    double acc = 0.0;
    double acc_sq = 0.0;
    for (int t = 0; t < n; ++t)
    {
        auto gen = fama::substream(3, t, fama::StreamKind::Auxiliary);
        const auto drop = fama::sample_drop(model, {1, 0, 1.0, 1.0}, gen);
        const auto block = fama::draw_symbols(1, 2.0, gen);
        const double p = std::norm(fama::receive(drop, block, 0.5, gen).received(2));
        acc += p;
        acc_sq += p * p;
    }
    const double mean = acc / n;
    const double se = std::sqrt((acc_sq / n - mean * mean) / n);
    CHECK(std::abs(mean - 2.5) < 4.0 * se);
}

TEST_CASE("aggregate interference of many users looks Gaussian", "[phy_signal]")
{
    const fama::CorrelationModel model({2, 1.0});
    const int U = 64;
    const int n = 100000;
    std::vector<double> samples;
    samples.reserve(2 * n);
    for (int t = 0; t < n; ++t)
    {
        auto gen = fama::substream(17, t, fama::StreamKind::Auxiliary);
        const auto drop = fama::sample_drop(model, {U, 0, 1.0, 1.0}, gen);
        const auto block = fama::draw_symbols(U, 1.0, gen);
        const auto obs = fama::receive(drop, block, Eigen::VectorXcd::Zero(2), 0.0);
        samples.push_back(obs.interference(0).real());
        samples.push_back(obs.interference(0).imag());
    }
    double m = 0.0;
    for (double x : samples)
        m += x;
    m /= static_cast<double>(samples.size());
    double m2 = 0.0, m3 = 0.0, m4 = 0.0;
    for (double x : samples)
    {
        const double d = x - m;
        m2 += d * d;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    const double N = static_cast<double>(samples.size());
    m2 /= N;
    m3 /= N;
    m4 /= N;
    const double skew = m3 / std::pow(m2, 1.5);
    const double excess = m4 / (m2 * m2) - 3.0;
    CHECK(std::abs(skew) < 0.1);
    CHECK(std::abs(excess) < 0.2);
    CHECK_THAT(2.0 * m2, WithinRel(static_cast<double>(U - 1), 0.02));
}
