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

#ifndef HMIMO_BASIS_HPP
#define HMIMO_BASIS_HPP

#include "hmimo/geometry.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace hmimo
{
    // Rectangular volume sampled on a uniform grid. x and y samples sit at cell centers
    // ((i + 1/2) L / N); z samples are stacked planes from 0 to Lz. Antenna i has grid
    // coordinates (i % Nx, (i / Nx) % Ny, i / (Nx Ny)).
    struct ApertureSpec
    {
        double Lx = 0.0, Ly = 0.0, Lz = 0.0;
        int Nx = 1, Ny = 1, Nz = 1;

        std::size_t size() const { return static_cast<std::size_t>(Nx) * Ny * Nz; }
        bool planar() const { return Nz == 1; }
        Eigen::Vector3d position(std::size_t i) const;
        Eigen::Matrix3Xd positions() const;
    };

    // Grid counts from the spacing: Nx = round(Lx / spacing), Ny likewise, Nz = 1 for Lz = 0,
    // else round(Lz / spacing) + 1. Requires 0 < spacing <= min(Lx, Ly).
    ApertureSpec make_aperture(double Lx, double Ly, double Lz, double spacing);

    ApertureSpec make_aperture_counts(double Lx, double Ly, double Lz, int Nx, int Ny, int Nz = 1);

    enum class Side
    {
        source,
        receive
    };

    struct PlaneWaveBasis
    {
        ApertureSpec aperture;
        Side side = Side::receive;
        std::vector<CellIndex> indices; // lattice_ellipse order, one column each
        Eigen::MatrixXcd U;             // N x n

        bool overcomplete() const { return U.rows() < U.cols(); }
    };

    // Discretized plane-wave harmonics divided by sqrt(N). Receive columns hold
    // a_r(l, r_i) = exp(i (2 pi lx x / Lx + 2 pi ly y / Ly + gamma z)); source columns hold the
    // conjugate of a_s(m, s_j) = exp(-i (...)), i.e. the same expression.
    PlaneWaveBasis build_basis(const ApertureSpec &aperture, const Medium &medium, Side side);

    // max |U^H U - I| over the given columns (all columns when `columns` is empty).
    double gram_deviation(const Eigen::MatrixXcd &U, const std::vector<Eigen::Index> &columns = {});
}

#endif
