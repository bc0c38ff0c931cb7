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

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hmimo
{
    Eigen::Vector3d ApertureSpec::position(std::size_t i) const
    {
        const std::size_t ix = i % static_cast<std::size_t>(Nx);
        const std::size_t iy = (i / static_cast<std::size_t>(Nx)) % static_cast<std::size_t>(Ny);
        const std::size_t iz = i / (static_cast<std::size_t>(Nx) * static_cast<std::size_t>(Ny));
        const double dz = Nz > 1 ? Lz / (Nz - 1) : 0.0;
        return {(static_cast<double>(ix) + 0.5) * Lx / Nx, (static_cast<double>(iy) + 0.5) * Ly / Ny,
                static_cast<double>(iz) * dz};
    }

    Eigen::Matrix3Xd ApertureSpec::positions() const
    {
        Eigen::Matrix3Xd p(3, static_cast<Eigen::Index>(size()));
        for (std::size_t i = 0; i < size(); ++i)
            p.col(static_cast<Eigen::Index>(i)) = position(i);
        return p;
    }

    ApertureSpec make_aperture_counts(double Lx, double Ly, double Lz, int Nx, int Ny, int Nz)
    {
        if (!(Lx > 0.0) || !(Ly > 0.0) || !(Lz >= 0.0))
            throw std::invalid_argument("aperture: Lx, Ly must be positive and Lz non-negative");
        if (Nx < 1 || Ny < 1 || Nz < 1)
            throw std::invalid_argument("aperture: antenna counts must be positive");
        if (Lz == 0.0 && Nz != 1)
            throw std::invalid_argument("aperture: a planar aperture has a single z layer");
        return {Lx, Ly, Lz, Nx, Ny, Nz};
    }

    ApertureSpec make_aperture(double Lx, double Ly, double Lz, double spacing)
    {
        if (!(spacing > 0.0))
            throw std::invalid_argument("aperture: spacing must be positive");
        if (spacing > std::min(Lx, Ly) * (1.0 + 1e-12))
            throw std::invalid_argument("aperture: spacing exceeds the aperture side");
        const int nx = static_cast<int>(std::lround(Lx / spacing));
        const int ny = static_cast<int>(std::lround(Ly / spacing));
        const int nz = Lz == 0.0 ? 1 : static_cast<int>(std::lround(Lz / spacing)) + 1;
        return make_aperture_counts(Lx, Ly, Lz, std::max(nx, 1), std::max(ny, 1), nz);
    }

    PlaneWaveBasis build_basis(const ApertureSpec &a, const Medium &medium, Side side)
    {
        PlaneWaveBasis b;
        b.aperture = a;
        b.side = side;
        b.indices = lattice_ellipse(a.Lx, a.Ly, medium);

        const auto N = static_cast<Eigen::Index>(a.size());
        const auto n = static_cast<Eigen::Index>(b.indices.size());
        const double amp = 1.0 / std::sqrt(static_cast<double>(N));
        constexpr double two_pi = 2.0 * std::numbers::pi;
        const double k = medium.wavenumber();
        const double dz = a.Nz > 1 ? a.Lz / (a.Nz - 1) : 0.0;

        b.U.resize(N, n);
        for (Eigen::Index c = 0; c < n; ++c)
        {
            const CellIndex idx = b.indices[static_cast<std::size_t>(c)];
            const double kx = two_pi * idx.ix / a.Lx, ky = two_pi * idx.iy / a.Ly;
            // admissible indices keep gamma real (clamped at the ellipse boundary)
            const double gz = std::sqrt(std::max(k * k - kx * kx - ky * ky, 0.0));
            for (Eigen::Index i = 0; i < N; ++i)
            {
                const auto ii = static_cast<std::size_t>(i);
                const auto gx = static_cast<double>(ii % static_cast<std::size_t>(a.Nx));
                const auto gy = static_cast<double>((ii / static_cast<std::size_t>(a.Nx)) % static_cast<std::size_t>(a.Ny));
                const auto gzi = static_cast<double>(ii / (static_cast<std::size_t>(a.Nx) * static_cast<std::size_t>(a.Ny)));
                // 2 pi m x / L with x = (g + 1/2) L / N, written without L to keep the phase exact
                const double phase = two_pi * idx.ix * (gx + 0.5) / a.Nx + two_pi * idx.iy * (gy + 0.5) / a.Ny +
                                     gz * gzi * dz;
                b.U(i, c) = std::polar(amp, phase);
            }
        }
        return b;
    }

    double gram_deviation(const Eigen::MatrixXcd &U, const std::vector<Eigen::Index> &columns)
    {
        Eigen::MatrixXcd sub;
        if (columns.empty())
            sub = U;
        else
        {
            sub.resize(U.rows(), static_cast<Eigen::Index>(columns.size()));
            for (std::size_t j = 0; j < columns.size(); ++j)
                sub.col(static_cast<Eigen::Index>(j)) = U.col(columns[j]);
        }
        Eigen::MatrixXcd G = sub.adjoint() * sub;
        G -= Eigen::MatrixXcd::Identity(G.rows(), G.cols());
        return G.rows() == 0 ? 0.0 : G.cwiseAbs().maxCoeff();
    }
}
