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

#ifndef FAMA_PORT_SELECT_HPP
#define FAMA_PORT_SELECT_HPP

#include "fama/fas_channel.hpp"
#include "fama/phy_signal.hpp"

#include <Eigen/Dense>
#include <boost/math/distributions/non_central_chi_squared.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fama {

/// How the final K_sel ports are picked from the filtered, ranked list.
struct SpacingMode
{
    enum class Kind
    {
        Sdm,   ///< max-min spatial separation
        Fixed, ///< greedy walk with a minimum index gap of ceil(d K)
        None,  ///< first K_sel ports of the ranked list
    };

    Kind kind = Kind::Sdm;
    double d = 0.0;

    static SpacingMode sdm() { return {Kind::Sdm, 0.0}; }
    static SpacingMode fixed(double d) { return {Kind::Fixed, d}; }
    static SpacingMode none() { return {Kind::None, 0.0}; }
};

struct SelectionConfig
{
    int k_sel = 20;
    double gamma_th = 0.6;
    SpacingMode spacing = SpacingMode::sdm();
    /// Exhaustive max-min search is used while |candidates| and K_sel stay
    /// within these bounds; larger instances use greedy farthest-point.
    int exact_max_candidates = 20;
    int exact_max_ksel = 5;

    void validate(int num_ports) const
    {
        if (k_sel < 1 || k_sel > num_ports)
            throw std::invalid_argument("SelectionConfig: k_sel must lie in [1, K]");
        if (!(gamma_th > 0.0 && gamma_th < 1.0))
            throw std::invalid_argument("SelectionConfig: gamma_th must lie in (0, 1)");
        if (spacing.kind == SpacingMode::Kind::Fixed && !(spacing.d > 0.0 && spacing.d < 1.0))
            throw std::invalid_argument("SelectionConfig: spacing d must lie in (0, 1)");
    }
};

/// Selected ports (0-based) with their deviation metric, in deviation order.
struct Shortlist
{
    std::vector<int> ports;
    std::vector<double> deviations;

    std::size_t size() const { return ports.size(); }
    bool empty() const { return ports.empty(); }
    void push_back(int port, double deviation)
    {
        ports.push_back(port);
        deviations.push_back(deviation);
    }
};

/// P_k = |g_k|^2 sigma_s^2.
inline Eigen::VectorXd predicted_desired_power(const Eigen::Ref<const Eigen::VectorXcd>& desired_gains,
                                               double symbol_power)
{
    return desired_gains.cwiseAbs2() * symbol_power;
}

/// Relative deviation | |r_k|^2 - P_k | / P_k; +inf where P_k = 0.
inline Eigen::VectorXd normalized_deviation(const Eigen::Ref<const Eigen::VectorXcd>& received,
                                            const Eigen::Ref<const Eigen::VectorXcd>& desired_gains,
                                            double symbol_power)
{
    if (received.size() != desired_gains.size())
        throw std::invalid_argument("normalized_deviation: length mismatch");
    const Eigen::VectorXd predicted = predicted_desired_power(desired_gains, symbol_power);
    Eigen::VectorXd out(received.size());
    for (Eigen::Index k = 0; k < out.size(); ++k)
    {
        const double p = predicted(k);
        out(k) = p > 0.0 ? std::abs(std::norm(received(k)) - p) / p : std::numeric_limits<double>::infinity();
    }
    return out;
}

/// CLT variance (U - 1) sigma_s^2 Omega_cross of the aggregate interference.
inline double clt_interference_power(int num_users, double symbol_power, double cross_power)
{
    return static_cast<double>(num_users - 1) * symbol_power * cross_power;
}

namespace detail {

// CDF of |a + n|^2 with |a|^2 = desired_power and n ~ CN(0, disturbance_power).
// 2|a + n|^2 / sigma^2 is noncentral chi-squared, 2 DoF, noncentrality 2|a|^2 / sigma^2.
inline double received_power_cdf(double x, double desired_power, double disturbance_power)
{
    if (x <= 0.0)
        return 0.0;
    if (!std::isfinite(x))
        return 1.0;
    const boost::math::non_central_chi_squared dist(2.0, 2.0 * desired_power / disturbance_power);
    return boost::math::cdf(dist, 2.0 * x / disturbance_power);
}

} // namespace detail

/// Probability that the absolute deviation | |r_k|^2 - P | falls below delta
/// when r_k is the desired term plus CN(0, interference_plus_noise_power).
///
/// Evaluated as the two-sided CDF difference F(P + delta) - F(max(P - delta, 0)).
/// The single-tail form 1 - F(delta / sigma^2; 2, P / sigma^2) is available as
/// chi2_upper_tail_bound(); it decreases in delta and is not a probability of
/// this event.
inline double deviation_probability(double delta, double desired_power, double interference_plus_noise_power)
{
    if (!(desired_power > 0.0) || !(interference_plus_noise_power > 0.0))
        throw std::invalid_argument("deviation_probability: powers must be positive");
    if (!(delta >= 0.0))
        throw std::invalid_argument("deviation_probability: delta must be nonnegative");
    if (delta == 0.0)
        return 0.0;
    const double hi = detail::received_power_cdf(desired_power + delta, desired_power, interference_plus_noise_power);
    const double lo =
        detail::received_power_cdf(std::max(desired_power - delta, 0.0), desired_power, interference_plus_noise_power);
    return std::clamp(hi - lo, 0.0, 1.0);
}

/// 1 - F_chi2(delta / sigma^2; 2 DoF, noncentrality P / sigma^2).
inline double chi2_upper_tail_bound(double delta, double desired_power, double interference_plus_noise_power)
{
    if (!(desired_power > 0.0) || !(interference_plus_noise_power > 0.0))
        throw std::invalid_argument("chi2_upper_tail_bound: powers must be positive");
    if (!(delta >= 0.0))
        throw std::invalid_argument("chi2_upper_tail_bound: delta must be nonnegative");
    if (delta == 0.0)
        return 1.0;
    const boost::math::non_central_chi_squared dist(2.0, desired_power / interference_plus_noise_power);
    return boost::math::cdf(boost::math::complement(dist, delta / interference_plus_noise_power));
}

/// {k : |g_k|^2 >= gamma_th max_k |g_k|^2}, returned in ascending port order.
inline std::vector<int> candidate_set(const Eigen::Ref<const Eigen::VectorXcd>& desired_gains, double gamma_th)
{
    if (desired_gains.size() == 0)
        throw std::invalid_argument("candidate_set: empty channel vector");
    if (!(gamma_th > 0.0 && gamma_th < 1.0))
        throw std::invalid_argument("candidate_set: gamma_th must lie in (0, 1)");
    const Eigen::VectorXd power = desired_gains.cwiseAbs2();
    const double threshold = gamma_th * power.maxCoeff();
    std::vector<int> out;
    for (Eigen::Index k = 0; k < power.size(); ++k)
        if (power(k) >= threshold)
            out.push_back(static_cast<int>(k));
    return out;
}

/// Ports ordered by ascending deviation, ties by lower index.
inline Shortlist rank_by_deviation(const Eigen::VectorXd& deviations)
{
    std::vector<int> order(static_cast<std::size_t>(deviations.size()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return deviations(a) < deviations(b); });
    Shortlist ranked;
    ranked.ports.reserve(order.size());
    ranked.deviations.reserve(order.size());
    for (int k : order)
        ranked.push_back(k, deviations(k));
    return ranked;
}

namespace detail {

// Smallest separation among the chosen positions of ranked.ports.
inline double min_separation(const Shortlist& ranked, const std::vector<int>& chosen, const FasGeometry& geometry)
{
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < chosen.size(); ++i)
        for (std::size_t j = i + 1; j < chosen.size(); ++j)
            best = std::min(best, geometry.separation(ranked.ports[static_cast<std::size_t>(chosen[i])],
                                                      ranked.ports[static_cast<std::size_t>(chosen[j])]));
    return best;
}

inline Shortlist gather(const Shortlist& ranked, std::vector<int> positions)
{
    std::sort(positions.begin(), positions.end());
    Shortlist out;
    for (int p : positions)
        out.push_back(ranked.ports[static_cast<std::size_t>(p)], ranked.deviations[static_cast<std::size_t>(p)]);
    return out;
}

} // namespace detail

/// Exhaustive max-min search. Among optimal subsets the one whose rank
/// positions are lexicographically smallest wins, which favours low deviation.
inline Shortlist sdm_select_exact(const Shortlist& ranked, int k_sel, const FasGeometry& geometry)
{
    const int n = static_cast<int>(ranked.size());
    if (n == 0)
        throw std::invalid_argument("sdm_select: empty candidate set");
    if (k_sel < 1)
        throw std::invalid_argument("sdm_select: k_sel must be positive");
    if (n <= k_sel)
        return ranked;

    std::vector<int> combo(static_cast<std::size_t>(k_sel));
    std::iota(combo.begin(), combo.end(), 0);
    std::vector<int> best = combo;
    double best_value = detail::min_separation(ranked, combo, geometry);
    for (;;)
    {
        int i = k_sel - 1;
        while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - k_sel + i)
            --i;
        if (i < 0)
            break;
        ++combo[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k_sel; ++j)
            combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
        const double value = detail::min_separation(ranked, combo, geometry);
        if (value > best_value)
        {
            best_value = value;
            best = combo;
        }
    }
    return detail::gather(ranked, best);
}

/// Greedy farthest-point insertion seeded with the two extreme port indices;
/// ties go to the lower rank position.
inline Shortlist sdm_select_greedy(const Shortlist& ranked, int k_sel, const FasGeometry& geometry)
{
    const int n = static_cast<int>(ranked.size());
    if (n == 0)
        throw std::invalid_argument("sdm_select: empty candidate set");
    if (k_sel < 1)
        throw std::invalid_argument("sdm_select: k_sel must be positive");
    if (n <= k_sel)
        return ranked;
    if (k_sel == 1)
        return detail::gather(ranked, {0});

    const auto port_at = [&](int p) { return ranked.ports[static_cast<std::size_t>(p)]; };
    int lo = 0;
    int hi = 0;
    for (int p = 1; p < n; ++p)
    {
        if (port_at(p) < port_at(lo))
            lo = p;
        if (port_at(p) > port_at(hi))
            hi = p;
    }
    std::vector<int> chosen{lo, hi};
    std::vector<double> nearest(static_cast<std::size_t>(n));
    std::vector<char> taken(static_cast<std::size_t>(n), 0);
    taken[static_cast<std::size_t>(lo)] = taken[static_cast<std::size_t>(hi)] = 1;
    for (int p = 0; p < n; ++p)
        nearest[static_cast<std::size_t>(p)] =
            std::min(geometry.separation(port_at(p), port_at(lo)), geometry.separation(port_at(p), port_at(hi)));

    while (static_cast<int>(chosen.size()) < k_sel)
    {
        int pick = -1;
        for (int p = 0; p < n; ++p)
            if (!taken[static_cast<std::size_t>(p)] &&
                (pick < 0 || nearest[static_cast<std::size_t>(p)] > nearest[static_cast<std::size_t>(pick)]))
                pick = p;
        taken[static_cast<std::size_t>(pick)] = 1;
        chosen.push_back(pick);
        for (int p = 0; p < n; ++p)
            nearest[static_cast<std::size_t>(p)] =
                std::min(nearest[static_cast<std::size_t>(p)], geometry.separation(port_at(p), port_at(pick)));
    }
    return detail::gather(ranked, chosen);
}

/// Max-min separation subset of the ranked candidates. Exhaustive on small
/// instances, greedy otherwise. Fewer than k_sel candidates are all returned.
inline Shortlist sdm_select(const Shortlist& ranked, int k_sel, const FasGeometry& geometry,
                            int exact_max_candidates = 20, int exact_max_ksel = 5)
{
    if (static_cast<int>(ranked.size()) <= exact_max_candidates && k_sel <= exact_max_ksel)
        return sdm_select_exact(ranked, k_sel, geometry);
    return sdm_select_greedy(ranked, k_sel, geometry);
}

/// Minimum index gap ceil(d K). A small slack absorbs products such as
/// 0.07 * 100 = 7.000000000000001.
inline int fixed_spacing_gap(double d, int num_ports)
{
    return static_cast<int>(std::ceil(d * static_cast<double>(num_ports) - 1e-9));
}

/// Walks the ranked list, keeping a port only if it is at least ceil(d K)
/// indices from every port kept so far. May return fewer than k_sel ports.
inline Shortlist fixed_spacing_select(const Shortlist& ranked, int k_sel, double d, const FasGeometry& geometry)
{
    if (!(d > 0.0 && d < 1.0))
        throw std::invalid_argument("fixed_spacing_select: d must lie in (0, 1)");
    const int gap = fixed_spacing_gap(d, geometry.num_ports);
    Shortlist out;
    for (std::size_t i = 0; i < ranked.size() && static_cast<int>(out.size()) < k_sel; ++i)
    {
        const int port = ranked.ports[i];
        const bool clear =
            std::all_of(out.ports.begin(), out.ports.end(), [&](int kept) { return std::abs(kept - port) >= gap; });
        if (clear)
            out.push_back(port, ranked.deviations[i]);
    }
    return out;
}

/// Full shortlisting pipeline: predicted power, normalised deviation, ascending
/// rank, gamma_th filter, then SDM / fixed spacing / truncation to k_sel.
inline Shortlist shortlist(const Eigen::Ref<const Eigen::VectorXcd>& received,
                           const Eigen::Ref<const Eigen::VectorXcd>& desired_gains, double symbol_power,
                           const SelectionConfig& config, const FasGeometry& geometry)
{
    const int K = static_cast<int>(desired_gains.size());
    if (K != geometry.num_ports)
        throw std::invalid_argument("shortlist: channel length does not match the geometry");
    config.validate(K);

    const Shortlist ranked_all = rank_by_deviation(normalized_deviation(received, desired_gains, symbol_power));

    std::vector<char> keep(static_cast<std::size_t>(K), 0);
    for (int k : candidate_set(desired_gains, config.gamma_th))
        keep[static_cast<std::size_t>(k)] = 1;
    Shortlist filtered;
    for (std::size_t i = 0; i < ranked_all.size(); ++i)
        if (keep[static_cast<std::size_t>(ranked_all.ports[i])])
            filtered.push_back(ranked_all.ports[i], ranked_all.deviations[i]);

    switch (config.spacing.kind)
    {
    case SpacingMode::Kind::Sdm:
        return sdm_select(filtered, config.k_sel, geometry, config.exact_max_candidates, config.exact_max_ksel);
    case SpacingMode::Kind::Fixed:
        return fixed_spacing_select(filtered, config.k_sel, config.spacing.d, geometry);
    case SpacingMode::Kind::None:
        break;
    }
    if (static_cast<int>(filtered.size()) > config.k_sel)
    {
        filtered.ports.resize(static_cast<std::size_t>(config.k_sel));
        filtered.deviations.resize(static_cast<std::size_t>(config.k_sel));
    }
    return filtered;
}

inline Shortlist shortlist(const PortObservations& observations, const Eigen::Ref<const Eigen::VectorXcd>& desired_gains,
                           double symbol_power, const SelectionConfig& config, const FasGeometry& geometry)
{
    return shortlist(observations.received, desired_gains, symbol_power, config, geometry);
}

} // namespace fama

#endif // FAMA_PORT_SELECT_HPP
