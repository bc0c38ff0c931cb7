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

#ifndef HMIMO_GEOMETRY_HPP
#define HMIMO_GEOMETRY_HPP

#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

namespace hmimo
{
    // Propagation medium. Only the wavelength and the intrinsic impedance are stored;
    // the wavenumber is always derived so that kappa * lambda == 2 pi.
    class Medium
    {
    public:
        explicit Medium(double wavelength_m, double impedance_ohm = 376.730);

        double wavelength() const { return lambda_; }
        double wavenumber() const { return 2.0 * std::numbers::pi / lambda_; }
        double impedance() const { return eta_; }

    private:
        double lambda_;
        double eta_;
    };

    // Integer Fourier index of a wavenumber cell, (lx, ly) at the receiver or (mx, my) at the source.
    struct CellIndex
    {
        int ix = 0;
        int iy = 0;
        friend bool operator==(const CellIndex &, const CellIndex &) = default;
        friend auto operator<=>(const CellIndex &, const CellIndex &) = default;
    };

    // Half-open rectangle [kx0, kx1) x [ky0, ky1) in rad/m.
    struct WavenumberCell
    {
        double kx0, kx1, ky0, ky1;
        bool contains(double kx, double ky) const { return kx >= kx0 && kx < kx1 && ky >= ky0 && ky < ky1; }
    };

    // Longitudinal wavenumber: sqrt(kappa^2 - kx^2 - ky^2) inside the spectral disk,
    // i * sqrt(kx^2 + ky^2 - kappa^2) outside (radiation condition).
    std::complex<double> gamma(double kx, double ky, const Medium &medium);

    // (ix lambda / Lx)^2 + (iy lambda / Ly)^2 <= 1, with a 1e-12 allowance for indices exactly on the ellipse.
    bool is_admissible(CellIndex index, double Lx, double Ly, const Medium &medium);

    // All admissible indices, row-major: ascending ix, then ascending iy.
    std::vector<CellIndex> lattice_ellipse(double Lx, double Ly, const Medium &medium);

    // floor(pi Lx Ly / lambda^2), the large-aperture approximation of the lattice count.
    std::uint64_t asymptotic_count(double Lx, double Ly, const Medium &medium);

    WavenumberCell cell_rect(CellIndex index, double Lx, double Ly);

    // Position of an index in a lattice_ellipse() list, or -1.
    int find_index(const std::vector<CellIndex> &indices, CellIndex index);
}

#endif
