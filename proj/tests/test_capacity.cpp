// SPDX-License-Identifier: Apache-2.0
//
// hmimo - plane-wave channel modelling for holographic MIMO arrays
// Copyright (C) 2026 The hmimo authors
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

#include "hmimo/capacity.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hmimo;

namespace
{
    // Fixed channel H = I_n.
    class IdentityModel : public ChannelModel
    {
    public:
        explicit IdentityModel(std::size_t n) : n_(n) {}
        std::size_t receive_antennas() const override { return n_; }
        std::size_t transmit_antennas() const override { return n_; }
        std::string name() const override { return "identity"; }
        Realization realize(std::uint64_t seed, std::uint64_t trial) const override
        {
            return {Eigen::MatrixXcd::Identity(static_cast<Eigen::Index>(n_), static_cast<Eigen::Index>(n_)), trial, seed};
        }
        CoreSample core(std::uint64_t seed, std::uint64_t trial) const override { return realize(seed, trial).H; }

    private:
        std::size_t n_;
    };

    // int_0^inf log2(1 + x) e^{-x} dx = e E1(1) / ln 2, from scipy.
    constexpr double siso_oracle = 0.8603473822708857;
}

TEST_CASE("zero snr gives zero capacity")
{
    const IidEnsemble g(4, 4);
    const auto r = ergodic_capacity(g, 0.0, 10, 1);
    CHECK(r.capacity == 0.0);
    CHECK(r.std_error == 0.0);
    CHECK(r.Ns == 4);
    CHECK_THROWS_AS(ergodic_capacity(g, -1.0, 10, 1), std::invalid_argument);
    CHECK_THROWS_AS(ergodic_capacity(g, 1.0, 0, 1), std::invalid_argument);
}

TEST_CASE("identity channel closed form")
{
    for (std::size_t n : {1u, 3u, 8u})
    {
        const IdentityModel h(n);
        const double snr = 10.0;
        const auto r = ergodic_capacity(h, snr, 3, 0);
        CHECK(r.capacity == doctest::Approx(n * std::log2(1.0 + snr / n)).epsilon(1e-13));
        CHECK(r.std_error == 0.0);
    }
}

TEST_CASE("single antenna i.i.d. capacity at 0 dB")
{
    const IidEnsemble g(1, 1);
    const auto r = ergodic_capacity(g, 1.0, 100000, 2026);
    CHECK(std::abs(r.capacity - siso_oracle) < 3 * r.std_error);
    const auto d = ergodic_capacity(g, 1.0, 100000, 2026, {.dense = true});
    CHECK(std::abs(d.capacity - siso_oracle) < 3 * d.std_error);
}

TEST_CASE("bidiagonal and dense i.i.d. paths agree in distribution")
{
    const IidEnsemble g(12, 7);
    const auto a = ergodic_capacity(g, 3.0, 4000, 5);
    const auto b = ergodic_capacity(g, 3.0, 4000, 5, {.dense = true});
    CHECK(std::abs(a.capacity - b.capacity) < 4 * std::hypot(a.std_error, b.std_error));
}

TEST_CASE("log-determinant forms")
{
    Eigen::MatrixXcd K = Eigen::MatrixXcd::Random(3, 5);
    const double c = 0.7;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Identity(3, 3) + c * K * K.adjoint();
    const double ref = std::log2(A.determinant().real());
    CHECK(log2det_gram(K, c) == doctest::Approx(ref).epsilon(1e-12));
    CHECK(log2det_gram(Eigen::MatrixXcd(K.adjoint()), c) == doctest::Approx(ref).epsilon(1e-12));

    Bidiagonal B;
    B.diag = Eigen::Vector4d(1.5, 0.3, 2.0, 0.9);
    B.sub = Eigen::Vector3d(0.4, 1.1, 0.7);
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < 4; ++i)
        D(i, i) = B.diag(i);
    for (int i = 0; i < 3; ++i)
        D(i + 1, i) = B.sub(i);
    CHECK(log2det_gram(B, c) == doctest::Approx(log2det_gram(D, c)).epsilon(1e-12));
}

TEST_CASE("capacity is reproducible across thread counts and nondecreasing in snr")
{
    const IidEnsemble g(6, 6);
    const auto a = ergodic_capacity(g, 2.0, 200, 9, {.threads = 1});
    const auto b = ergodic_capacity(g, 2.0, 200, 9, {.threads = 4});
    CHECK(a.capacity == b.capacity);
    CHECK(a.std_error == b.std_error);
    double prev = -1.0;
    for (double snr_db : {-10.0, 0.0, 10.0, 20.0, 30.0})
    {
        const double c = ergodic_capacity(g, std::pow(10.0, snr_db / 10), 200, 9).capacity;
        CHECK(c >= prev);
        prev = c;
    }
}

TEST_CASE("degrees of freedom")
{
    const Medium m(0.1);
    const auto iso = isotropic_spectrum();
    // non-integer L / lambda: no lattice point on the circle, every cell carries power
    const auto map = variance_map(*iso, *iso, 0.35, 0.35, 0.25, 0.25, m);
    CHECK(dof(map) == std::min(lattice_ellipse(0.35, 0.35, m).size(), lattice_ellipse(0.25, 0.25, m).size()));
    // integer L / lambda: corner-on-circle cells are empty
    const auto map10 = variance_map(*iso, *iso, 1, 1, 1, 1, m);
    CHECK(dof(map10) == 313);

    SideVariances z;
    z.indices = {{0, 0}, {1, 0}};
    z.raw = z.variance = {0.0, 0.0};
    CHECK(dof(VarianceMap::separable(z, z)) == 0);
    CHECK(dof(VarianceMap::joint(z, z, Eigen::MatrixXd::Zero(2, 2))) == 0);
    Eigen::MatrixXd t(2, 2);
    t << 0.5, 0.0, 0.5, 0.0;
    CHECK(dof(VarianceMap::joint(z, z, t)) == 1);
}

TEST_CASE("degrees of freedom below the lattice count for a narrow lobe")
{
    const Medium m(0.1);
    const VmfSpectrum v({solve_concentration(0.1), 0.3, 0.5});
    const auto map = variance_map(v, v, 0.4, 0.4, 0.4, 0.4, m);
    const auto &var = map.receive().variance;
    const double top = *std::max_element(var.begin(), var.end());
    std::size_t direct = 0;
    for (double x : var)
        direct += x > 1e-12 * top;
    CHECK(direct < 49);
    CHECK(dof(map) == direct);
}

TEST_CASE("numerical rank")
{
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(5, 4);
    CHECK(numerical_rank(A) == 0);
    A(0, 0) = 1.0;
    A(1, 1) = 1e-3;
    A(2, 2) = 1e-12;
    CHECK(numerical_rank(A) == 2);
}
