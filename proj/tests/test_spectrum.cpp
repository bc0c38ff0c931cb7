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

#include "hmimo/quadrature.hpp"
#include "hmimo/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace hmimo;

namespace
{
    constexpr double pi = std::numbers::pi;
    constexpr double deg = pi / 180.0;

    // Frozen values from an independent scipy quadrature (dblquad over the cell preimage).
    constexpr double iso10_c00 = 0.0015968920766023722;
    constexpr double iso10_3m5 = 0.001941319608888372;
    constexpr double iso10_m10_0 = 0.007122937741576664;
    constexpr double iso10_9_4 = 0.0007336695642019704;
    constexpr double iso2_c00 = 0.04386991402295545;
    constexpr double iso2_c10 = 0.08113008597704456;

    constexpr double alpha30 = 7.806524602737266;
    constexpr double vmf_mass = 0.9954221082643551;
    constexpr double vmf2_00 = 0.26009545814048124;
    constexpr double vmf2_10 = 0.2214551760256895;
    constexpr double vmf2_m1m1 = 0.02477973156780184;
    constexpr double vmf2_m20 = 0.0028873676510733945;
    constexpr double vmf10_52 = 0.01447312474756292;
    constexpr double vmf10_42 = 0.014449882060342386;
    constexpr double vmf10_00 = 0.0056455303235397655;
    constexpr double vmf10_m73 = 0.0001617359653455224;
    constexpr double vmf10_9m4 = 0.0004547838792355609;

    VmfParams fig_params() { return {solve_concentration(30 * deg), 30 * deg, 30 * deg}; }
}

TEST_CASE("adaptive Gauss-Kronrod integrates smooth and endpoint-singular functions")
{
    auto r = integrate<double>([](double x) { return std::exp(x); }, 0.0, 1.0, {1e-13, 100});
    CHECK(r.converged);
    CHECK(r.value == doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
    auto s = integrate<double>([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, {1e-9, 2000});
    CHECK(s.value == doctest::Approx(2.0).epsilon(1e-8));
    auto c = integrate<std::complex<double>>([](double x) { return std::exp(std::complex<double>(0, x)); }, 0.0, pi);
    CHECK(std::abs(c.value - std::complex<double>(0, 2)) < 1e-12);
    auto bad = integrate<double>([](double x) { return 1.0 / x; }, 0.0, 1.0, {1e-10, 20});
    CHECK_FALSE(bad.converged);
}

TEST_CASE("isotropic density integrates to one over the hemisphere")
{
    const auto iso = isotropic_spectrum();
    auto r = integrate<double>([&](double t) { return 2 * pi * iso->density(t, 0.3); }, 0.0, pi / 2, {1e-13, 100});
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("concentration solver")
{
    CHECK(solve_concentration(30 * deg) == doctest::Approx(alpha30).epsilon(1e-9));
    CHECK(solve_concentration(0.1) == doctest::Approx(200.5004).epsilon(1e-6));
    CHECK(solve_concentration(0.5) == doctest::Approx(8.5104).epsilon(1e-4));
    // round trip through the residual
    const double a = solve_concentration(0.7);
    CHECK(std::sqrt(-2 * std::log(mean_resultant_length(a))) == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(mean_resultant_length(1e-4) == doctest::Approx(1e-4 / 3).epsilon(1e-6));
    CHECK_THROWS_AS(solve_concentration(0.0), std::invalid_argument);
    CHECK_THROWS_AS(solve_concentration(pi / 2), std::invalid_argument);
}

TEST_CASE("vmf lobe normalization and peak")
{
    const VmfSpectrum v(fig_params());
    CHECK(v.hemisphere_mass() == doctest::Approx(vmf_mass).epsilon(1e-12));
    CHECK_THROWS_AS(VmfSpectrum({0.0, 0.1, 0.2}), std::invalid_argument);
    // density at the mean direction exceeds its neighbours (sin(theta) factor included)
    const double c = v.density(30 * deg, 30 * deg);
    CHECK(c > v.density(20 * deg, 30 * deg));
    CHECK(c > v.density(30 * deg, 45 * deg));
}

TEST_CASE("isotropic cell variances at L = 10 lambda")
{
    const Medium m(0.1);
    const auto iso = isotropic_spectrum();
    CHECK(cell_variance(*iso, {0, 0}, 1, 1, m) == doctest::Approx(iso10_c00).epsilon(1e-8));
    CHECK(cell_variance(*iso, {3, -5}, 1, 1, m) == doctest::Approx(iso10_3m5).epsilon(1e-7));
    CHECK(cell_variance(*iso, {-10, 0}, 1, 1, m) == doctest::Approx(iso10_m10_0).epsilon(1e-7));
    CHECK(cell_variance(*iso, {9, 4}, 1, 1, m) == doctest::Approx(iso10_9_4).epsilon(1e-7));
    // lower-left corner on the circle: the cell meets the disk in a single point
    CHECK(cell_variance(*iso, {6, 8}, 1, 1, m) == 0.0);
    // inadmissible: no quadrature, exactly zero
    CHECK(cell_variance(*iso, {20, 0}, 1, 1, m) == 0.0);
}

TEST_CASE("isotropic cell variances at L = 2 lambda")
{
    const Medium m(0.1);
    const auto iso = isotropic_spectrum();
    CHECK(cell_variance(*iso, {0, 0}, 0.2, 0.2, m) == doctest::Approx(iso2_c00).epsilon(1e-8));
    CHECK(cell_variance(*iso, {1, 0}, 0.2, 0.2, m) == doctest::Approx(iso2_c10).epsilon(1e-8));
    CHECK(cell_variance(*iso, {-2, 0}, 0.2, 0.2, m) == doctest::Approx(iso2_c10).epsilon(1e-8));
}

TEST_CASE("isotropic mirror symmetry under half-open tiling")
{
    const Medium m(0.1);
    const auto s = side_variances(*isotropic_spectrum(), 1, 1, m);
    int checked = 0;
    for (const auto &c : s.indices)
    {
        const CellIndex mx{-c.ix - 1, c.iy}, my{c.ix, -c.iy - 1};
        if (!is_admissible(mx, 1, 1, m) || !is_admissible(my, 1, 1, m))
            continue;
        CHECK(std::abs(s.at(c) - s.at(mx)) < 1e-8);
        CHECK(std::abs(s.at(c) - s.at(my)) < 1e-8);
        ++checked;
    }
    CHECK(checked > 250);
}

TEST_CASE("side variances renormalize and report the raw total")
{
    const Medium m(0.1);
    const auto s = side_variances(*isotropic_spectrum(), 1, 1, m);
    CHECK(s.indices.size() == 317);
    double sum = 0.0;
    for (double v : s.variance)
        sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-14));
    // half-open cells anchored at admissible lower-left corners do not cover the whole disk
    CHECK(s.raw_total == doctest::Approx(0.869179529342489).epsilon(1e-8));
    CHECK(s.at({7, 9}) == 0.0);
}

TEST_CASE("vmf cell variances against the frozen oracle")
{
    const Medium m(0.1);
    const VmfSpectrum v(fig_params());
    CHECK(cell_variance(v, {0, 0}, 0.2, 0.2, m) == doctest::Approx(vmf2_00).epsilon(1e-8));
    CHECK(cell_variance(v, {1, 0}, 0.2, 0.2, m) == doctest::Approx(vmf2_10).epsilon(1e-8));
    CHECK(cell_variance(v, {-1, -1}, 0.2, 0.2, m) == doctest::Approx(vmf2_m1m1).epsilon(1e-7));
    CHECK(cell_variance(v, {-2, 0}, 0.2, 0.2, m) == doctest::Approx(vmf2_m20).epsilon(1e-6));
    CHECK(cell_variance(v, {5, 2}, 1, 1, m) == doctest::Approx(vmf10_52).epsilon(1e-7));
    CHECK(cell_variance(v, {4, 2}, 1, 1, m) == doctest::Approx(vmf10_42).epsilon(1e-7));
    CHECK(cell_variance(v, {0, 0}, 1, 1, m) == doctest::Approx(vmf10_00).epsilon(1e-7));
    CHECK(cell_variance(v, {-7, 3}, 1, 1, m) == doctest::Approx(vmf10_m73).epsilon(1e-5));
    CHECK(cell_variance(v, {9, -4}, 1, 1, m) == doctest::Approx(vmf10_9m4).epsilon(1e-5));
}

TEST_CASE("vmf lobe sits at the image of the mean direction")
{
    const Medium m(0.1);
    const VmfSpectrum v(fig_params());
    const auto s = side_variances(v, 1, 1, m);
    // image of (30 deg, 30 deg): (kx, ky) / (2 pi / L) = 10 sin(30) (cos 30, sin 30) = (4.33, 2.5)
    const CellIndex image{4, 2};
    std::size_t best = 0, second = 0;
    for (std::size_t i = 0; i < s.variance.size(); ++i)
        if (s.variance[i] > s.variance[best])
            best = i;
    for (std::size_t i = 0; i < s.variance.size(); ++i)
        if (i != best && (second == best || s.variance[i] > s.variance[second]))
            second = i;
    CHECK(s.indices[best] == CellIndex{5, 2});
    CHECK(s.indices[second] == image);
    CHECK(std::abs(s.indices[best].ix - image.ix) + std::abs(s.indices[best].iy - image.iy) == 1);
}

TEST_CASE("halving the tolerance moves no cell by more than the coarse tolerance")
{
    const Medium m(0.1);
    const VmfSpectrum v(fig_params());
    VarianceOptions coarse{.tol = 1e-6}, fine{.tol = 5e-7};
    const auto a = side_variances(v, 0.4, 0.4, m, coarse);
    const auto b = side_variances(v, 0.4, 0.4, m, fine);
    for (std::size_t i = 0; i < a.raw.size(); ++i)
        CHECK(std::abs(a.raw[i] - b.raw[i]) <= 1e-6);
}

TEST_CASE("quadrature failure names the cell")
{
    const Medium m(0.1);
    VarianceOptions o{.tol = 1e-300, .max_intervals = 8};
    try
    {
        (void)cell_variance(*isotropic_spectrum(), {3, -4}, 1, 1, m, o);
        FAIL("expected a quadrature error");
    }
    catch (const QuadratureError &e)
    {
        CHECK(std::string(e.what()).find("(3,-4)") != std::string::npos);
    }
}

TEST_CASE("separable variance map and csv")
{
    const Medium m(0.1);
    const auto iso = isotropic_spectrum();
    const auto map = variance_map(*iso, *iso, 0.2, 0.2, 0.4, 0.4, m);
    CHECK(map.is_separable());
    const auto M = map.matrix();
    CHECK(M.rows() == 13);
    CHECK(M.cols() == 49);
    CHECK(M.sum() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(map.sigma2({0, 0}, {1, 1}) == doctest::Approx(map.receive().at({0, 0}) * map.source().at({1, 1})));
    CHECK(map.sigma2({5, 5}, {0, 0}) == 0.0);

    std::ostringstream os;
    write_csv(map, os);
    const std::string s = os.str();
    CHECK(s.rfind("side,ix,iy,variance\n", 0) == 0);
    CHECK(std::count(s.begin(), s.end(), '\n') == 1 + 13 + 49);
}

TEST_CASE("joint map of a product density matches the separable map")
{
    const Medium m(0.1);
    const auto iso = isotropic_spectrum();
    const auto joint = product_spectrum(iso, iso);
    const auto jm = joint_variance_map(*joint, 0.1, 0.1, 0.1, 0.1, m);
    const auto sm = variance_map(*iso, *iso, 0.1, 0.1, 0.1, 0.1, m);
    CHECK_FALSE(jm.is_separable());
    const auto J = jm.matrix(), S = sm.matrix();
    REQUIRE(J.rows() == S.rows());
    CHECK((J - S).cwiseAbs().maxCoeff() < 1e-5);
}
