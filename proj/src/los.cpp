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

#include "hmimo/los.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hmimo
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        constexpr cplx I{0.0, 1.0};

        double distance(const Eigen::Vector3d &r, const Eigen::Vector3d &s)
        {
            const double d = (r - s).norm();
            if (!(d > 0.0))
                throw std::invalid_argument("coincident source and receive points");
            return d;
        }

        // Integral over the spectral disk of radius cutoff kappa of f(kx, ky, kz) dkx dky / kz,
        // with g(rho, kz) = Int_0^{2 pi} f(rho cos phi, rho sin phi, kz) dphi supplied by the
        // caller. Propagating: rho dkx dky / kz = kappa sin(t) dt dphi. Evanescent:
        // kz = i kappa sinh(u), rho drho / kz = -i kappa cosh(u) du.
        template <typename G>
        void spectral_integral(G &&g, const Medium &medium, const WeylOptions &opt, cplx &prop, cplx &evan,
                               double &err)
        {
            const double k = medium.wavenumber();
            const bool annulus = opt.cutoff > 1.0;
            QuadratureOptions q{annulus ? 0.5 * opt.tol : opt.tol, opt.max_intervals};

            auto pr = integrate<cplx>([&](double t)
                                      { return k * std::sin(t) * g(k * std::sin(t), cplx(k * std::cos(t), 0.0)); },
                                      0.0, 0.5 * pi, q);
            if (!pr.converged)
                throw QuadratureError("spectral integral: propagating part did not converge (error " +
                                      std::to_string(pr.error) + ")");
            prop = pr.value;
            err = pr.error;
            evan = 0.0;
            if (annulus)
            {
                auto ev = integrate<cplx>([&](double u)
                                          { return -I * k * std::cosh(u) *
                                                   g(k * std::cosh(u), cplx(0.0, k * std::sinh(u))); },
                                          0.0, std::acosh(opt.cutoff), q);
                if (!ev.converged)
                    throw QuadratureError("spectral integral: evanescent part did not converge (error " +
                                          std::to_string(ev.error) + ")");
                evan = ev.value;
                err += ev.error;
            }
        }
    }

    cplx green(const Eigen::Vector3d &r, const Eigen::Vector3d &s, const Medium &medium)
    {
        const double R = distance(r, s);
        return std::exp(I * (medium.wavenumber() * R)) / (4.0 * pi * R);
    }

    cplx los_impulse(const Eigen::Vector3d &r, const Eigen::Vector3d &s, const Medium &medium)
    {
        return -I * medium.wavenumber() * medium.impedance() * green(r, s, medium);
    }

    WeylResult weyl_integral(double x, double y, double z, const Medium &medium, const WeylOptions &opt)
    {
        if (!(z > 0.0))
            throw std::invalid_argument("weyl_integral: z must be positive");
        if (!(opt.cutoff >= 1.0))
            throw std::invalid_argument("weyl_integral: cutoff must be at least 1");
        const double d = std::hypot(x, y);
        // Int_0^{2 pi} exp(i rho (x cos phi + y sin phi)) dphi = 2 pi J0(rho d)
        auto g = [&](double rho, cplx kz)
        { return 2.0 * pi * std::cyl_bessel_j(0.0, rho * d) * std::exp(I * kz * z); };

        WeylResult out;
        spectral_integral(g, medium, opt, out.propagating, out.evanescent, out.error);
        const cplx c = I / (2.0 * pi);
        out.propagating *= c;
        out.evanescent *= c;
        out.error /= 2.0 * pi;
        out.value = out.propagating + out.evanescent;
        return out;
    }

    cplx plane_wave_los_impulse(const Eigen::Vector3d &r, const Eigen::Vector3d &s, const Medium &medium,
                                const WeylOptions &opt)
    {
        if (!(r.z() > s.z()))
            throw std::invalid_argument("plane_wave_los_impulse: requires r_z > s_z");
        QuadratureOptions inner{0.1 * opt.tol, opt.max_intervals};
        auto g = [&](double rho, cplx kz)
        {
            auto f = [&](double phi)
            {
                const double kx = rho * std::cos(phi), ky = rho * std::sin(phi);
                const cplx ar = std::exp(I * (kx * r.x() + ky * r.y() + kz * r.z()));
                const cplx as = std::exp(-I * (kx * s.x() + ky * s.y() + kz * s.z()));
                return ar * as;
            };
            auto res = integrate<cplx>(f, 0.0, 2.0 * pi, inner);
            if (!res.converged)
                throw QuadratureError("plane_wave_los_impulse: azimuthal integral did not converge");
            return res.value;
        };
        cplx prop, evan;
        double err;
        spectral_integral(g, medium, opt, prop, evan, err);
        const double k = medium.wavenumber();
        return (0.5 * k * medium.impedance()) / (4.0 * pi * pi) * (prop + evan);
    }
}
