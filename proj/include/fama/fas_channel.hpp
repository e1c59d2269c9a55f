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

#ifndef FAMA_FAS_CHANNEL_HPP
#define FAMA_FAS_CHANNEL_HPP

#include "fama/bessel.hpp"
#include "fama/rng.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace fama {

/// Linear fluid antenna: K ports spread evenly over an aperture of W wavelengths.
struct FasGeometry
{
    int num_ports = 2;
    double aperture = 1.0;

    void validate() const
    {
        if (num_ports < 2)
            throw std::invalid_argument("FasGeometry: need at least 2 ports, got " + std::to_string(num_ports));
        if (!(aperture >= 0.0) || !std::isfinite(aperture))
            throw std::invalid_argument("FasGeometry: aperture must be finite and nonnegative");
    }

    /// Normalised separation |k - l| W / (K - 1) in wavelengths.
    double separation(int k, int l) const
    {
        return static_cast<double>(std::abs(k - l)) * aperture / static_cast<double>(num_ports - 1);
    }
};

/// Jakes correlation across the ports together with its eigendecomposition.
///
/// Immutable once built; share it read-only between trial workers.
class CorrelationModel
{
public:
    explicit CorrelationModel(const FasGeometry& geometry) : geometry_(geometry)
    {
        geometry_.validate();
        const int K = geometry_.num_ports;

        std::vector<double> by_lag(static_cast<std::size_t>(K));
        for (int lag = 0; lag < K; ++lag)
        {
            const double x = 2.0 * std::numbers::pi * static_cast<double>(lag) / static_cast<double>(K - 1) *
                             geometry_.aperture;
            by_lag[static_cast<std::size_t>(lag)] = bessel_j0(x);
        }
        matrix_.resize(K, K);
        for (int m = 0; m < K; ++m)
            for (int n = 0; n < K; ++n)
                matrix_(n, m) = by_lag[static_cast<std::size_t>(std::abs(n - m))];

        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrix_);
        if (solver.info() != Eigen::Success)
            throw std::runtime_error("CorrelationModel: eigendecomposition failed");

        // Eigen returns ascending order; a stable sort keeps equal eigenvalues
        // in their original index order.
        std::vector<int> order(static_cast<std::size_t>(K));
        std::iota(order.begin(), order.end(), 0);
        const Eigen::VectorXd& raw = solver.eigenvalues();
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return raw(a) > raw(b); });

        // Eigenvalues at round-off level (|lambda| <= K eps lambda_max) are
        // numerically zero; clamping them also keeps Lambda^{1/2} real.
        const double floor = static_cast<double>(K) * std::numeric_limits<double>::epsilon() *
                             std::max(raw(order.front()), 0.0);
        eigenvalues_.resize(K);
        eigenvectors_.resize(K, K);
        for (int i = 0; i < K; ++i)
        {
            const double value = raw(order[static_cast<std::size_t>(i)]);
            eigenvalues_(i) = value > floor ? value : 0.0;
            eigenvectors_.col(i) = solver.eigenvectors().col(order[static_cast<std::size_t>(i)]);
        }

        // Q * Lambda^{1/2}, with columns of clamped-zero eigenvalues dropped.
        rank_ = static_cast<int>((eigenvalues_.array() > 0.0).count());
        coloring_.resize(K, rank_);
        for (int i = 0; i < rank_; ++i)
            coloring_.col(i) = eigenvectors_.col(i) * std::sqrt(eigenvalues_(i));
    }

    const FasGeometry& geometry() const { return geometry_; }
    int num_ports() const { return geometry_.num_ports; }

    /// K x K correlation matrix J.
    const Eigen::MatrixXd& matrix() const { return matrix_; }
    /// Orthonormal eigenvectors, column i paired with eigenvalues()(i).
    const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
    /// Eigenvalues sorted descending; round-off level and negative values are 0.
    const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }
    /// Q Lambda^{1/2} restricted to the strictly positive eigenvalues.
    const Eigen::MatrixXd& coloring() const { return coloring_; }
    int rank() const { return rank_; }

    /// Relative Frobenius error of Q Lambda Q^T against J.
    double reconstruction_error() const
    {
        const Eigen::MatrixXd rebuilt = eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
        return (rebuilt - matrix_).norm() / matrix_.norm();
    }

    /// One draw of sqrt(power) Q Lambda^{1/2} w with w ~ CN(0, I_K).
    template <class Gen>
    Eigen::VectorXcd sample_row(double power, Gen& gen) const
    {
        if (!(power >= 0.0))
            throw std::invalid_argument("sample_row: power must be nonnegative");
        const Eigen::VectorXcd w = draw_white(gen);
        return colour(w, power);
    }

    /// White CN(0, I_K) vector. All K entries are always drawn so the stream
    /// layout does not depend on the numerical rank.
    template <class Gen>
    Eigen::VectorXcd draw_white(Gen& gen) const
    {
        const int K = geometry_.num_ports;
        Eigen::VectorXcd w(K);
        std::normal_distribution<double> normal(0.0, 1.0);
        const double s = std::sqrt(0.5);
        for (int k = 0; k < K; ++k)
        {
            const double re = normal(gen);
            const double im = normal(gen);
            w(k) = {s * re, s * im};
        }
        return w;
    }

    Eigen::VectorXcd colour(const Eigen::VectorXcd& white, double power) const
    {
        const Eigen::VectorXd re = coloring_ * white.head(rank_).real();
        const Eigen::VectorXd im = coloring_ * white.head(rank_).imag();
        Eigen::VectorXcd out(re.size());
        const double amp = std::sqrt(power);
        for (Eigen::Index k = 0; k < out.size(); ++k)
            out(k) = {amp * re(k), amp * im(k)};
        return out;
    }

private:
    FasGeometry geometry_;
    Eigen::MatrixXd matrix_;
    Eigen::MatrixXd eigenvectors_;
    Eigen::VectorXd eigenvalues_;
    Eigen::MatrixXd coloring_;
    int rank_ = 0;
};

inline CorrelationModel build_correlation(const FasGeometry& geometry)
{
    return CorrelationModel(geometry);
}

/// Powers and user indices for one block-fading drop.
struct DropSpec
{
    int num_users = 1;
    int user = 0;              ///< tagged (receiving) user, 0-based
    double desired_power = 1.0; ///< Omega_{u,u}
    double cross_power = 1.0;   ///< Omega_cross

    void validate() const
    {
        if (num_users < 1)
            throw std::invalid_argument("DropSpec: need at least one user");
        if (user < 0 || user >= num_users)
            throw std::invalid_argument("DropSpec: tagged user out of range");
        if (!(desired_power >= 0.0) || !(cross_power >= 0.0))
            throw std::invalid_argument("DropSpec: powers must be nonnegative");
    }
};

/// Channel realisation seen by the tagged user.
///
/// gains is K x U: column v holds g^{(v,u)}_k, the gains from BS antenna v to
/// the K ports of the tagged user u.
struct ChannelDrop
{
    Eigen::MatrixXcd gains;
    int user = 0;
    double desired_power = 1.0;
    double cross_power = 1.0;

    int num_ports() const { return static_cast<int>(gains.rows()); }
    int num_users() const { return static_cast<int>(gains.cols()); }
    auto desired() const { return gains.col(user); }
};

/// Draws every row from its own stream: row_stream(v) must return a generator.
template <class StreamSource>
    requires std::invocable<StreamSource&, int>
ChannelDrop sample_drop(const CorrelationModel& model, const DropSpec& spec, StreamSource&& row_stream)
{
    spec.validate();
    const int K = model.num_ports();
    const int U = spec.num_users;
    const int r = model.rank();

    Eigen::MatrixXd white_re(r, U);
    Eigen::MatrixXd white_im(r, U);
    for (int v = 0; v < U; ++v)
    {
        decltype(auto) gen = row_stream(v);
        const Eigen::VectorXcd w = model.draw_white(gen);
        white_re.col(v) = w.head(r).real();
        white_im.col(v) = w.head(r).imag();
    }
    const Eigen::MatrixXd re = model.coloring() * white_re;
    const Eigen::MatrixXd im = model.coloring() * white_im;

    ChannelDrop drop;
    drop.user = spec.user;
    drop.desired_power = spec.desired_power;
    drop.cross_power = spec.cross_power;
    drop.gains.resize(K, U);
    for (int v = 0; v < U; ++v)
    {
        const double amp = std::sqrt(v == spec.user ? spec.desired_power : spec.cross_power);
        for (int k = 0; k < K; ++k)
            drop.gains(k, v) = {amp * re(k, v), amp * im(k, v)};
    }
    return drop;
}

/// Single-generator overload: rows are drawn sequentially from gen.
template <class Gen>
    requires std::uniform_random_bit_generator<std::remove_cvref_t<Gen>>
ChannelDrop sample_drop(const CorrelationModel& model, const DropSpec& spec, Gen& gen)
{
    return sample_drop(model, spec, [&gen](int) -> Gen& { return gen; });
}

} // namespace fama

#endif // FAMA_FAS_CHANNEL_HPP
