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

#ifndef FAMA_RNG_HPP
#define FAMA_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace fama {

using Rng = std::mt19937_64;

/// Purpose tags that keep the substreams of one trial disjoint.
enum class StreamKind : std::uint32_t
{
    Channel = 1,
    Symbols = 2,
    Noise = 3,
    Auxiliary = 4,
};

/// Independent generator keyed by (seed, trial, kind, index).
///
/// The key is fed through std::seed_seq, so the stream a trial sees depends
/// only on its key and never on which worker runs it.
inline Rng substream(std::uint64_t seed, std::uint64_t trial, StreamKind kind, std::uint64_t index = 0)
{
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32),
                      static_cast<std::uint32_t>(kind), static_cast<std::uint32_t>(index),
                      static_cast<std::uint32_t>(index >> 32)};
    return Rng(seq);
}

/// Circularly symmetric complex Gaussian sample with E|z|^2 = variance.
template <class Gen>
std::complex<double> complex_normal(Gen& gen, double variance = 1.0)
{
    std::normal_distribution<double> normal(0.0, 1.0);
    const double scale = std::sqrt(variance / 2.0);
    const double re = normal(gen);
    const double im = normal(gen);
    return {scale * re, scale * im};
}

} // namespace fama

#endif // FAMA_RNG_HPP
