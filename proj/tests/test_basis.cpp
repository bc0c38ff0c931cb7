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

#include "hmimo/basis.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace hmimo;

TEST_CASE("aperture grids from the spacing")
{
    CHECK(make_aperture(1, 1, 0, 0.05).size() == 400);
    CHECK(make_aperture(1, 1, 0, 0.0125).size() == 6400);
    const auto one = make_aperture(0.1, 0.1, 0, 0.1);
    CHECK(one.size() == 1);
    CHECK(one.position(0).isApprox(Eigen::Vector3d(0.05, 0.05, 0.0)));
    const auto vol = make_aperture(0.4, 0.4, 0.2, 0.1);
    CHECK(vol.Nz == 3);
    CHECK(vol.position(vol.size() - 1).z() == doctest::Approx(0.2));
    CHECK_THROWS_AS(make_aperture(1, 1, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(make_aperture(1, 1, 0, -0.1), std::invalid_argument);
    CHECK_THROWS_AS(make_aperture(1, 1, 0, 2.0), std::invalid_argument);
}

TEST_CASE("positions stay inside the aperture box")
{
    const auto a = make_aperture_counts(0.3, 0.5, 0.2, 4, 7, 3);
    const auto P = a.positions();
    CHECK(P.cols() == 84);
    CHECK(P.row(0).minCoeff() >= 0.0);
    CHECK(P.row(0).maxCoeff() <= 0.3);
    CHECK(P.row(1).maxCoeff() <= 0.5);
    CHECK(P.row(2).maxCoeff() <= 0.2 + 1e-15);
}

TEST_CASE("single antenna, single mode")
{
    const Medium m(0.1);
    const auto b = build_basis(make_aperture(0.05, 0.05, 0, 0.05), m, Side::receive);
    REQUIRE(b.U.rows() == 1);
    REQUIRE(b.U.cols() == 1);
    CHECK(std::abs(b.U(0, 0) - std::complex<double>(1.0, 0.0)) < 1e-15);
}

TEST_CASE("entries have magnitude 1/sqrt(N)")
{
    const Medium m(0.1);
    const auto b = build_basis(make_aperture_counts(1, 1, 0, 10, 10), m, Side::source);
    CHECK(b.U.cols() == 317);
    CHECK((b.U.cwiseAbs().array() - 0.1).abs().maxCoeff() < 1e-15);
    CHECK(b.overcomplete());
}

TEST_CASE("critically sampled planar basis is semi-unitary")
{
    const Medium m(0.1);
    const auto b = build_basis(make_aperture_counts(1, 1, 0, 21, 21), m, Side::receive);
    CHECK(gram_deviation(b.U) < 1e-10);
}

TEST_CASE("distinct columns are orthogonal by direct dot product")
{
    const Medium m(0.1);
    const auto b = build_basis(make_aperture(0.4, 0.4, 0, 0.025), m, Side::receive);
    const auto i = find_index(b.indices, {3, -1}), j = find_index(b.indices, {-3, 1});
    REQUIRE(i >= 0);
    REQUIRE(j >= 0);
    std::complex<double> dot = 0.0;
    for (Eigen::Index r = 0; r < b.U.rows(); ++r)
        dot += std::conj(b.U(r, i)) * b.U(r, j);
    CHECK(std::abs(dot) < 1e-10);
}

TEST_CASE("receive and source columns carry the same phase")
{
    const Medium m(0.1);
    const auto a = make_aperture(0.2, 0.2, 0, 0.025);
    const auto r = build_basis(a, m, Side::receive), s = build_basis(a, m, Side::source);
    CHECK((r.U - s.U).cwiseAbs().maxCoeff() == 0.0);
    // a_r(l, x) = exp(i 2 pi l . x / L) at x = position(i)
    const auto c = find_index(r.indices, {1, -1});
    const auto p = a.position(5);
    const double ph = 2 * std::numbers::pi * (p.x() - p.y()) / 0.2;
    CHECK(std::abs(r.U(5, c) - std::polar(1.0 / 8.0, ph)) < 1e-13);
}

TEST_CASE("volumetric bases are only approximately orthogonal")
{
    const Medium m(0.1);
    const auto b = build_basis(make_aperture(0.2, 0.2, 0.1, 0.05), m, Side::receive);
    CHECK(b.aperture.Nz == 3);
    CHECK((b.U.colwise().norm().array() - 1.0).abs().maxCoeff() < 1e-12);
    CHECK(gram_deviation(b.U) > 1e-3);
}

TEST_CASE("Frobenius norm is preserved by semi-unitary factors")
{
    const Medium m(0.1);
    const auto a = make_aperture(0.4, 0.4, 0, 0.025);
    const auto Ur = build_basis(a, m, Side::receive).U, Us = build_basis(a, m, Side::source).U;
    Eigen::MatrixXcd A = Eigen::MatrixXcd::Random(Ur.cols(), Us.cols());
    CHECK(std::abs((Ur * A * Us.adjoint()).norm() - A.norm()) / A.norm() < 1e-12);
}
