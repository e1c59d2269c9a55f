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

#ifndef FAMA_DATASET_HPP
#define FAMA_DATASET_HPP

#include "fama/harness.hpp"

#include <array>
#include <bit>
#include <complex>
#include <cstdint>
#include <fstream>
#include <iterator>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fama {

// "FAMA-TX v1" tensor exchange file:
//   "FAMA" | u8 version | u32 num_records, block_n, users, ports_used |
//   f32 aperture, snr_db | records...
// Each record holds the clean block then the received block, n complex values
// each stored as interleaved (re, im) f32. Everything is little-endian.

inline constexpr std::array<char, 4> kDatasetMagic{'F', 'A', 'M', 'A'};
inline constexpr std::uint8_t kDatasetVersion = 1;
inline constexpr std::size_t kDatasetHeaderBytes = 4 + 1 + 4 * 4 + 2 * 4;

struct DatasetHeader
{
    std::uint32_t num_records = 0;
    std::uint32_t block_n = 0;
    std::uint32_t users = 0;
    std::uint32_t ports_used = 0;
    float aperture = 0.0f;
    float snr_db = 0.0f;

    friend bool operator==(const DatasetHeader&, const DatasetHeader&) = default;
};

/// Record r occupies [r * block_n, (r + 1) * block_n) of clean and received.
struct Dataset
{
    DatasetHeader header;
    std::vector<std::complex<float>> clean;
    std::vector<std::complex<float>> received;

    std::size_t expected_values() const
    {
        return static_cast<std::size_t>(header.num_records) * header.block_n;
    }
};

inline std::size_t dataset_file_size(std::uint32_t num_records, std::uint32_t block_n)
{
    return kDatasetHeaderBytes + static_cast<std::size_t>(num_records) * 2 * (2 * std::size_t{block_n} * 4);
}

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v)
{
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

inline void put_f32(std::vector<std::uint8_t>& out, float v)
{
    put_u32(out, std::bit_cast<std::uint32_t>(v));
}

inline std::uint32_t get_u32(std::span<const std::uint8_t> in, std::size_t& pos)
{
    if (pos + 4 > in.size())
        throw std::runtime_error("FAMA-TX: truncated input");
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
        v |= static_cast<std::uint32_t>(in[pos + static_cast<std::size_t>(i)]) << (8 * i);
    pos += 4;
    return v;
}

inline float get_f32(std::span<const std::uint8_t> in, std::size_t& pos)
{
    return std::bit_cast<float>(get_u32(in, pos));
}

} // namespace detail

inline std::vector<std::uint8_t> encode_dataset(const Dataset& data)
{
    if (data.clean.size() != data.expected_values() || data.received.size() != data.expected_values())
        throw std::invalid_argument("FAMA-TX: payload size does not match header");
    const std::uint32_t n = data.header.block_n;

    std::vector<std::uint8_t> out;
    out.reserve(dataset_file_size(data.header.num_records, n));
    out.insert(out.end(), kDatasetMagic.begin(), kDatasetMagic.end());
    out.push_back(kDatasetVersion);
    detail::put_u32(out, data.header.num_records);
    detail::put_u32(out, n);
    detail::put_u32(out, data.header.users);
    detail::put_u32(out, data.header.ports_used);
    detail::put_f32(out, data.header.aperture);
    detail::put_f32(out, data.header.snr_db);
    for (std::size_t r = 0; r < data.header.num_records; ++r)
    {
        for (const auto* block : {&data.clean, &data.received})
            for (std::size_t i = 0; i < n; ++i)
            {
                const std::complex<float> z = (*block)[r * n + i];
                detail::put_f32(out, z.real());
                detail::put_f32(out, z.imag());
            }
    }
    return out;
}

inline Dataset decode_dataset(std::span<const std::uint8_t> in)
{
    if (in.size() < kDatasetHeaderBytes || !std::equal(kDatasetMagic.begin(), kDatasetMagic.end(), in.begin()))
        throw std::runtime_error("FAMA-TX: bad magic");
    if (in[4] != kDatasetVersion)
        throw std::runtime_error("FAMA-TX: unsupported version " + std::to_string(in[4]));
    std::size_t pos = 5;
    Dataset data;
    data.header.num_records = detail::get_u32(in, pos);
    data.header.block_n = detail::get_u32(in, pos);
    data.header.users = detail::get_u32(in, pos);
    data.header.ports_used = detail::get_u32(in, pos);
    data.header.aperture = detail::get_f32(in, pos);
    data.header.snr_db = detail::get_f32(in, pos);
    if (in.size() != dataset_file_size(data.header.num_records, data.header.block_n))
        throw std::runtime_error("FAMA-TX: payload size does not match header");

    const std::size_t n = data.header.block_n;
    data.clean.resize(data.expected_values());
    data.received.resize(data.expected_values());
    for (std::size_t r = 0; r < data.header.num_records; ++r)
        for (auto* block : {&data.clean, &data.received})
            for (std::size_t i = 0; i < n; ++i)
            {
                const float re = detail::get_f32(in, pos);
                const float im = detail::get_f32(in, pos);
                (*block)[r * n + i] = {re, im};
            }
    return data;
}

inline void write_dataset(const std::string& path, const Dataset& data)
{
    const std::vector<std::uint8_t> bytes = encode_dataset(data);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open '" + path + "' for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw std::runtime_error("write to '" + path + "' failed");
}

inline Dataset read_dataset(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path + "'");
    const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_dataset(bytes);
}

/// Number of ports the scheme combines, as recorded in the header.
inline std::uint32_t ports_used(const ExperimentConfig& config)
{
    switch (config.scheme)
    {
    case SchemeKind::Turbo:
        return static_cast<std::uint32_t>(config.selection.k_sel);
    case SchemeKind::AllPort:
        return static_cast<std::uint32_t>(config.ports);
    case SchemeKind::FastFama:
        return 1;
    }
    return 0;
}

/// One drop per record with block_n symbols of the tagged user. The received
/// block is the combiner output divided by its effective desired gain, so it
/// equals the clean block plus residual interference and noise.
inline Dataset generate_dataset(const ExperimentConfig& config, std::uint32_t num_records, std::uint32_t block_n)
{
    config.validate();
    if (block_n == 0)
        throw std::invalid_argument("generate_dataset: block length must be positive");
    const CorrelationModel model(config.geometry());
    const ReceiverScheme scheme = config.receiver();
    const double noise_power = config.noise_power();

    Dataset data;
    data.header = {num_records,
                   block_n,
                   static_cast<std::uint32_t>(config.users),
                   ports_used(config),
                   static_cast<float>(config.aperture),
                   static_cast<float>(config.snr_db)};
    data.clean.resize(data.expected_values());
    data.received.resize(data.expected_values());

    parallel_map(0, num_records, config.workers, [&](std::int64_t record) -> std::int64_t {
        const auto t = static_cast<std::uint64_t>(record);
        const ChannelDrop drop =
            sample_drop(model, DropSpec{config.users, 0, config.desired_power, config.cross_power},
                        [&](int v) { return substream(config.seed, t, StreamKind::Channel, v); });
        Rng symbol_rng = substream(config.seed, t, StreamKind::Symbols);
        Rng noise_rng = substream(config.seed, t, StreamKind::Noise);
        const std::size_t base = static_cast<std::size_t>(record) * block_n;
        for (std::size_t i = 0; i < block_n; ++i)
        {
            const SymbolBlock block = draw_symbols(config.users, config.symbol_power, symbol_rng);
            const SymbolOutcome out = run_symbol(scheme, drop, block, noise_power, model.geometry(), noise_rng);
            data.clean[base + i] = std::complex<float>(block.symbols(drop.user));
            data.received[base + i] = std::complex<float>(out.equalized);
        }
        return 0;
    });
    return data;
}

inline void export_dataset(const ExperimentConfig& config, std::uint32_t num_records, std::uint32_t block_n,
                           const std::string& path)
{
    write_dataset(path, generate_dataset(config, num_records, block_n));
}

} // namespace fama

#endif // FAMA_DATASET_HPP
