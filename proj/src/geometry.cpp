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

#include "hmimo/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hmimo
{
    Medium::Medium(double wavelength_m, double impedance_ohm) : lambda_(wavelength_m), eta_(impedance_ohm)
    {
        if (!(wavelength_m > 0.0) || !std::isfinite(wavelength_m))
            throw std::invalid_argument("Medium: wavelength must be positive");
        if (!(impedance_ohm > 0.0) || !std::isfinite(impedance_ohm))
            throw std::invalid_argument("Medium: impedance must be positive");
    }

    std::complex<double> gamma(double kx, double ky, const Medium &medium)
    {
        const double k = medium.wavenumber();
        const double d = k * k - kx * kx - ky * ky;
        if (d >= 0.0)
            return {std::sqrt(d), 0.0};
        return {0.0, std::sqrt(-d)};
    }

    static void check_sides(double Lx, double Ly)
    {
        if (!(Lx > 0.0) || !(Ly > 0.0))
            throw std::invalid_argument("side lengths must be positive");
    }

    bool is_admissible(CellIndex index, double Lx, double Ly, const Medium &medium)
    {
        const double lam = medium.wavelength();
        const double a = index.ix * lam / Lx;
        const double b = index.iy * lam / Ly;
        return a * a + b * b <= 1.0 + 1e-12;
    }

    std::vector<CellIndex> lattice_ellipse(double Lx, double Ly, const Medium &medium)
    {
        check_sides(Lx, Ly);
        const int rx = static_cast<int>(std::floor(Lx / medium.wavelength())) + 1;
        const int ry = static_cast<int>(std::floor(Ly / medium.wavelength())) + 1;
        std::vector<CellIndex> out;
        for (int ix = -rx; ix <= rx; ++ix)
            for (int iy = -ry; iy <= ry; ++iy)
                if (is_admissible({ix, iy}, Lx, Ly, medium))
                    out.push_back({ix, iy});
        return out;
    }

    std::uint64_t asymptotic_count(double Lx, double Ly, const Medium &medium)
    {
        check_sides(Lx, Ly);
        const double lam = medium.wavelength();
        return static_cast<std::uint64_t>(std::floor(std::numbers::pi * Lx * Ly / (lam * lam)));
    }

    WavenumberCell cell_rect(CellIndex index, double Lx, double Ly)
    {
        check_sides(Lx, Ly);
        constexpr double two_pi = 2.0 * std::numbers::pi;
        return {two_pi * index.ix / Lx, two_pi * (index.ix + 1) / Lx,
                two_pi * index.iy / Ly, two_pi * (index.iy + 1) / Ly};
    }

    int find_index(const std::vector<CellIndex> &indices, CellIndex index)
    {
        auto it = std::lower_bound(indices.begin(), indices.end(), index);
        if (it == indices.end() || *it != index)
            return -1;
        return static_cast<int>(it - indices.begin());
    }
}
