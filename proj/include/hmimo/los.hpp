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


#ifndef HMIMO_LOS_HPP
#define HMIMO_LOS_HPP

#include "hmimo/geometry.hpp"
#include "hmimo/quadrature.hpp"

#include <Eigen/Dense>

#include <complex>

namespace hmimo
{
    using cplx = std::complex<double>;

    // exp(i kappa R) / (4 pi R). Throws std::invalid_argument for coincident points.
    cplx green(const Eigen::Vector3d &r, const Eigen::Vector3d &s, const Medium &medium);

    // -i kappa eta g(r, s)
    cplx los_impulse(const Eigen::Vector3d &r, const Eigen::Vector3d &s, const Medium &medium);

    struct WeylOptions
    {
        double cutoff = 3.0;    // evanescent annulus kappa < rho <= cutoff kappa; 1 keeps only the propagating disk
        double tol = 1e-10;     // absolute, relative to kappa-scaled integrand units
        std::size_t max_intervals = 4000;
    };

    struct WeylResult
    {
        cplx value;       // propagating + evanescent
        cplx propagating; // |k| <= kappa
        cplx evanescent;  // kappa < |k| <= cutoff kappa
        double error = 0.0;
    };

    // (i / 2 pi) Int exp(i (kx x + ky y + kz z)) / kz dkx dky over |k| <= cutoff kappa, which tends
    // to exp(i kappa R) / R. The azimuthal integral is done in closed form (J0); the propagating
    // disk uses rho = kappa sin(theta) and the annulus rho = kappa cosh(u), so neither part has
    // the 1/kz edge singularity. Requires z > 0; throws QuadratureError on non-convergence.
    WeylResult weyl_integral(double x, double y, double z, const Medium &medium, const WeylOptions &opt = {});

    // h(r, s) rebuilt from plane waves: (kappa eta / 2) / (2 pi)^2 Int a_r(k, r) a_s(k, s) / kz dk
    // with a_r = exp(i (kx rx + ky ry + kz rz)), a_s = exp(-i (kx sx + ky sy + kz sz)) and the
    // LoS angular response concentrated on matched directions. Full 2D quadrature in
    // (theta, phi) and (u, phi); independent of weyl_integral's Bessel reduction. Requires rz > sz.
    cplx plane_wave_los_impulse(const Eigen::Vector3d &r, const Eigen::Vector3d &s, const Medium &medium,
                                const WeylOptions &opt = {});
}

#endif
