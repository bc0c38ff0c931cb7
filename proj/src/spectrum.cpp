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

#include "hmimo/spectrum.hpp"

#include "hmimo/parallel.hpp"
#include "hmimo/quadrature.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace hmimo
{
    namespace
    {
        constexpr double pi = std::numbers::pi;
        constexpr double two_pi = 2.0 * std::numbers::pi;

        class IsotropicSpectrum final : public AngularSpectrum
        {
        public:
            double density(double theta, double) const override { return std::sin(theta) / two_pi; }
            std::string description() const override { return "isotropic"; }
        };

        class ProductSpectrum final : public JointAngularSpectrum
        {
        public:
            ProductSpectrum(SpectrumPtr r, SpectrumPtr s) : r_(std::move(r)), s_(std::move(s)) {}
            double density(double tr, double pr, double ts, double ps) const override
            {
                return r_->density(tr, pr) * s_->density(ts, ps);
            }
            std::string description() const override { return r_->description() + " x " + s_->description(); }

        private:
            SpectrumPtr r_, s_;
        };

        // Cell rectangle in units of kappa, so the spectral disk is the unit disk.
        struct Rect
        {
            double x0, x1, y0, y1;
            bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
        };

        struct Arcs
        {
            std::array<double, 8> a{}, b{};
            int n = 0;
        };

        // Angular intervals of the circle of radius rho that lie inside r. Intervals start in
        // [0, 2 pi) and may run past 2 pi when they wrap.
        Arcs circle_arcs(double rho, const Rect &r)
        {
            Arcs out;
            if (rho <= 0.0)
                return out;

            std::array<double, 8> ang{};
            int n = 0;
            auto add = [&](double t)
            {
                t = std::fmod(t, two_pi);
                if (t < 0.0)
                    t += two_pi;
                ang[n++] = t;
            };
            for (double x : {r.x0, r.x1})
                if (std::abs(x) <= rho)
                {
                    const double t = std::acos(x / rho);
                    add(t);
                    add(-t);
                }
            for (double y : {r.y0, r.y1})
                if (std::abs(y) <= rho)
                {
                    const double t = std::asin(y / rho);
                    add(t);
                    add(pi - t);
                }

            if (n == 0)
            {
                if (r.contains(rho, 0.0))
                {
                    out.a[0] = 0.0;
                    out.b[0] = two_pi;
                    out.n = 1;
                }
                return out;
            }

            std::sort(ang.begin(), ang.begin() + n);
            for (int i = 0; i < n; ++i)
            {
                const double lo = ang[i];
                const double hi = i + 1 < n ? ang[i + 1] : ang[0] + two_pi;
                if (!(hi > lo))
                    continue;
                const double mid = 0.5 * (lo + hi);
                if (!r.contains(rho * std::cos(mid), rho * std::sin(mid)))
                    continue;
                if (out.n > 0 && out.b[out.n - 1] == lo)
                    out.b[out.n - 1] = hi;
                else
                {
                    out.a[out.n] = lo;
                    out.b[out.n] = hi;
                    ++out.n;
                }
            }
            // join the arc that wraps through 2 pi with the one starting at the smallest angle
            if (out.n > 1 && out.b[out.n - 1] == out.a[0] + two_pi)
            {
                out.b[out.n - 1] = out.b[0] + two_pi;
                for (int i = 1; i < out.n; ++i)
                {
                    out.a[i - 1] = out.a[i];
                    out.b[i - 1] = out.b[i];
                }
                --out.n;
            }
            return out;
        }

        // Radii at which the set of arcs changes shape: corner distances, perpendicular feet on
        // the edges, the nearest and farthest points, and the disk edge.
        std::vector<double> radial_breaks(const Rect &r)
        {
            const double dx = std::max({r.x0, 0.0, -r.x1});
            const double dy = std::max({r.y0, 0.0, -r.y1});
            const double lo = std::hypot(dx, dy);
            double hi = 0.0;
            for (double x : {r.x0, r.x1})
                for (double y : {r.y0, r.y1})
                    hi = std::max(hi, std::hypot(x, y));
            hi = std::min(hi, 1.0);

            std::vector<double> br{lo, hi};
            if (lo >= hi)
                return {};
            auto add = [&](double v)
            {
                if (v > lo && v < hi)
                    br.push_back(v);
            };
            for (double x : {r.x0, r.x1})
                for (double y : {r.y0, r.y1})
                    add(std::hypot(x, y));
            if (r.y0 <= 0.0 && 0.0 <= r.y1)
            {
                add(std::abs(r.x0));
                add(std::abs(r.x1));
            }
            if (r.x0 <= 0.0 && 0.0 <= r.x1)
            {
                add(std::abs(r.y0));
                add(std::abs(r.y1));
            }
            std::sort(br.begin(), br.end());
            br.erase(std::unique(br.begin(), br.end()), br.end());
            return br;
        }

        // Integral of f(theta, phi) over {(theta, phi): (sin theta cos phi, sin theta sin phi) in r},
        // theta restricted to the upper hemisphere. Outer variable theta with breakpoints, inner phi over
        // exact arcs. The split gives half of tol to the outer level and half to the inner one.
        template <typename F>
        QuadratureResult<double> integrate_cell(const F &f, const Rect &r, double tol, std::size_t max_intervals)
        {
            QuadratureResult<double> out;
            auto rho_breaks = radial_breaks(r);
            if (rho_breaks.size() < 2)
                return out;
            std::vector<double> theta_breaks;
            theta_breaks.reserve(rho_breaks.size());
            for (double rho : rho_breaks)
                theta_breaks.push_back(std::asin(std::min(rho, 1.0)));

            const double inner_tol = 0.5 * tol / (4.0 * (pi / 2.0));
            bool inner_ok = true;
            double inner_err = 0.0;
            auto g = [&](double theta)
            {
                const Arcs arcs = circle_arcs(std::sin(theta), r);
                double acc = 0.0;
                for (int i = 0; i < arcs.n; ++i)
                {
                    auto res = integrate<double>([&](double phi)
                                                 { return f(theta, phi); },
                                                 arcs.a[i], arcs.b[i], {inner_tol, max_intervals});
                    inner_ok = inner_ok && res.converged;
                    inner_err = std::max(inner_err, res.error);
                    acc += res.value;
                }
                return acc;
            };
            out = integrate_pieces<double>(g, theta_breaks, {0.5 * tol, max_intervals});
            out.error += inner_err * (theta_breaks.back() - theta_breaks.front()) * 4.0;
            out.converged = out.converged && inner_ok;
            return out;
        }

        Rect normalized_rect(CellIndex index, double Lx, double Ly, const Medium &medium)
        {
            const auto c = cell_rect(index, Lx, Ly);
            const double k = medium.wavenumber();
            return {c.kx0 / k, c.kx1 / k, c.ky0 / k, c.ky1 / k};
        }

        std::string cell_name(const char *side, CellIndex index)
        {
            std::ostringstream os;
            os << side << "(" << index.ix << "," << index.iy << ")";
            return os.str();
        }

        [[noreturn]] void fail_cell(const std::string &cell, double err, double tol)
        {
            std::ostringstream os;
            os << "quadrature did not converge for cell " << cell << ": error estimate " << err << " > tol " << tol;
            throw QuadratureError(os.str());
        }

        void finish_side(SideVariances &side)
        {
            side.raw_total = 0.0;
            for (double v : side.raw)
                side.raw_total += v;
            side.variance.resize(side.raw.size());
            for (std::size_t i = 0; i < side.raw.size(); ++i)
                side.variance[i] = side.raw_total > 0.0 ? side.raw[i] / side.raw_total : 0.0;
        }
    }

    SpectrumPtr isotropic_spectrum()
    {
        static const auto iso = std::make_shared<const IsotropicSpectrum>();
        return iso;
    }

    VmfSpectrum::VmfSpectrum(const VmfParams &params) : p_(params)
    {
        if (!(params.alpha > 0.0) || !std::isfinite(params.alpha))
            throw std::invalid_argument("VmfSpectrum: concentration must be positive");
        mx_ = std::sin(p_.mean_elevation) * std::cos(p_.mean_azimuth);
        my_ = std::sin(p_.mean_elevation) * std::sin(p_.mean_azimuth);
        mz_ = std::cos(p_.mean_elevation);
        // alpha / (4 pi sinh alpha) = alpha e^{-alpha} / (2 pi (1 - e^{-2 alpha}))
        scale_ = p_.alpha / (-two_pi * std::expm1(-2.0 * p_.alpha));

        auto inner = [&](double theta)
        {
            return integrate<double>([&](double phi)
                                     { return sphere_density(theta, phi); },
                                     p_.mean_azimuth - pi, p_.mean_azimuth + pi, {1e-14, 4000})
                .value;
        };
        hemisphere_mass_ = integrate<double>(inner, 0.0, pi / 2.0, {1e-13, 4000}).value;
    }

    double VmfSpectrum::sphere_density(double theta, double phi) const
    {
        const double st = std::sin(theta);
        const double dot = st * std::cos(phi) * mx_ + st * std::sin(phi) * my_ + std::cos(theta) * mz_;
        return scale_ * std::exp(p_.alpha * (dot - 1.0)) * st;
    }

    std::string VmfSpectrum::description() const
    {
        char buf[128];
        std::snprintf(buf, sizeof buf, "vmf(alpha=%.6g, mu_theta=%.6g, mu_phi=%.6g)", p_.alpha, p_.mean_elevation,
                      p_.mean_azimuth);
        return buf;
    }

    std::shared_ptr<const VmfSpectrum> vmf_spectrum(const VmfParams &params)
    {
        return std::make_shared<const VmfSpectrum>(params);
    }

    double mean_resultant_length(double alpha)
    {
        if (alpha < 1e-2)
        {
            const double a2 = alpha * alpha;
            return alpha * (1.0 / 3.0 - a2 / 45.0 + 2.0 * a2 * a2 / 945.0);
        }
        return 1.0 + 2.0 / std::expm1(2.0 * alpha) - 1.0 / alpha;
    }

    namespace
    {
        double circular_variance_of(double alpha)
        {
            double log_r;
            if (alpha < 1e-2)
                log_r = std::log(mean_resultant_length(alpha));
            else
                log_r = std::log1p(2.0 / std::expm1(2.0 * alpha) - 1.0 / alpha);
            return std::sqrt(-2.0 * log_r);
        }
    }

    double solve_concentration(double nu)
    {
        if (!(nu > 0.0) || !(nu < pi / 2.0))
            throw std::invalid_argument("solve_concentration: circular variance must lie in (0, pi/2)");
        double lo = 1e-6, hi = 1e3;
        while (circular_variance_of(hi) > nu)
        {
            lo = hi;
            hi *= 1e3;
            if (!std::isfinite(hi))
                throw std::invalid_argument("solve_concentration: circular variance too small");
        }
        // circular variance decreases monotonically in alpha
        while (hi - lo > 1e-12 * lo)
        {
            const double mid = std::sqrt(lo * hi);
            if (circular_variance_of(mid) > nu)
                lo = mid;
            else
                hi = mid;
        }
        return std::sqrt(lo * hi);
    }

    std::shared_ptr<const JointAngularSpectrum> product_spectrum(SpectrumPtr receive, SpectrumPtr source)
    {
        return std::make_shared<const ProductSpectrum>(std::move(receive), std::move(source));
    }

    double SideVariances::at(CellIndex index) const
    {
        const int i = find_index(indices, index);
        return i < 0 ? 0.0 : variance[static_cast<std::size_t>(i)];
    }

    VarianceMap VarianceMap::separable(SideVariances receive, SideVariances source)
    {
        VarianceMap m;
        m.r_ = std::move(receive);
        m.s_ = std::move(source);
        m.separable_ = true;
        return m;
    }

    VarianceMap VarianceMap::joint(SideVariances receive_marginal, SideVariances source_marginal,
                                   Eigen::MatrixXd table)
    {
        if (table.rows() != static_cast<Eigen::Index>(receive_marginal.indices.size()) ||
            table.cols() != static_cast<Eigen::Index>(source_marginal.indices.size()))
            throw std::invalid_argument("VarianceMap::joint: table shape does not match index lists");
        VarianceMap m;
        m.r_ = std::move(receive_marginal);
        m.s_ = std::move(source_marginal);
        m.table_ = std::move(table);
        m.separable_ = false;
        return m;
    }

    double VarianceMap::sigma2(CellIndex l, CellIndex m) const
    {
        if (separable_)
            return r_.at(l) * s_.at(m);
        const int i = find_index(r_.indices, l), j = find_index(s_.indices, m);
        return (i < 0 || j < 0) ? 0.0 : table_(i, j);
    }

    Eigen::MatrixXd VarianceMap::matrix() const
    {
        if (!separable_)
            return table_;
        const Eigen::Map<const Eigen::VectorXd> r(r_.variance.data(), static_cast<Eigen::Index>(r_.variance.size()));
        const Eigen::Map<const Eigen::VectorXd> s(s_.variance.data(), static_cast<Eigen::Index>(s_.variance.size()));
        return r * s.transpose();
    }

    double cell_variance(const AngularSpectrum &spectrum, CellIndex index, double Lx, double Ly, const Medium &medium,
                         const VarianceOptions &opt)
    {
        if (!(opt.tol > 0.0))
            throw std::invalid_argument("cell_variance: tolerance must be positive");
        if (!is_admissible(index, Lx, Ly, medium))
            return 0.0;
        const Rect r = normalized_rect(index, Lx, Ly, medium);
        auto res = integrate_cell([&](double t, double p)
                                  { return spectrum.density(t, p); },
                                  r, opt.tol, opt.max_intervals);
        if (!res.converged)
            fail_cell(cell_name("", index), res.error, opt.tol);
        return res.value;
    }

    SideVariances side_variances(const AngularSpectrum &spectrum, double Lx, double Ly, const Medium &medium,
                                 const VarianceOptions &opt)
    {
        SideVariances side;
        side.Lx = Lx;
        side.Ly = Ly;
        side.indices = lattice_ellipse(Lx, Ly, medium);
        side.raw.assign(side.indices.size(), 0.0);
        std::vector<double> err(side.indices.size(), 0.0);
        if (!(opt.tol > 0.0))
            throw std::invalid_argument("side_variances: tolerance must be positive");

        parallel_for(side.indices.size(), opt.threads, [&](std::size_t i)
                     {
            const Rect r = normalized_rect(side.indices[i], Lx, Ly, medium);
            auto res = integrate_cell([&](double t, double p) { return spectrum.density(t, p); }, r, opt.tol,
                                      opt.max_intervals);
            if (!res.converged)
                fail_cell(cell_name("", side.indices[i]), res.error, opt.tol);
            side.raw[i] = res.value;
            err[i] = res.error; });

        for (double e : err)
            side.quadrature_error += e;
        finish_side(side);
        return side;
    }

    VarianceMap variance_map(const AngularSpectrum &receive_spectrum, const AngularSpectrum &source_spectrum,
                             double Lr_x, double Lr_y, double Ls_x, double Ls_y, const Medium &medium,
                             const VarianceOptions &opt)
    {
        auto r = side_variances(receive_spectrum, Lr_x, Lr_y, medium, opt);
        auto s = (&receive_spectrum == &source_spectrum && Lr_x == Ls_x && Lr_y == Ls_y)
                     ? r
                     : side_variances(source_spectrum, Ls_x, Ls_y, medium, opt);
        return VarianceMap::separable(std::move(r), std::move(s));
    }

    VarianceMap joint_variance_map(const JointAngularSpectrum &spectrum, double Lr_x, double Lr_y, double Ls_x,
                                   double Ls_y, const Medium &medium, VarianceOptions opt)
    {
        if (!(opt.tol > 0.0))
            throw std::invalid_argument("joint_variance_map: tolerance must be positive");
        SideVariances r, s;
        r.Lx = Lr_x;
        r.Ly = Lr_y;
        s.Lx = Ls_x;
        s.Ly = Ls_y;
        r.indices = lattice_ellipse(Lr_x, Lr_y, medium);
        s.indices = lattice_ellipse(Ls_x, Ls_y, medium);
        const std::size_t nr = r.indices.size(), ns = s.indices.size();
        Eigen::MatrixXd raw(nr, ns);
        std::vector<double> err(nr * ns, 0.0);

        // Inner source-cell integrals get a tolerance scaled by the receive hemisphere measure.
        const double inner_tol = 0.5 * opt.tol / (2.0 * pi);
        parallel_for(nr * ns, opt.threads, [&](std::size_t k)
                     {
            const std::size_t i = k / ns, j = k % ns;
            const Rect rr = normalized_rect(r.indices[i], Lr_x, Lr_y, medium);
            const Rect rs = normalized_rect(s.indices[j], Ls_x, Ls_y, medium);
            bool inner_ok = true;
            auto outer = [&](double tr, double pr)
            {
                auto in = integrate_cell([&](double ts, double ps) { return spectrum.density(tr, pr, ts, ps); }, rs,
                                         inner_tol, opt.max_intervals);
                inner_ok = inner_ok && in.converged;
                return in.value;
            };
            auto res = integrate_cell(outer, rr, 0.5 * opt.tol, opt.max_intervals);
            if (!res.converged || !inner_ok)
                fail_cell(cell_name("r", r.indices[i]) + " x " + cell_name("s", s.indices[j]), res.error, opt.tol);
            raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = res.value;
            err[k] = res.error; });

        double total = 0.0;
        for (Eigen::Index j = 0; j < raw.cols(); ++j)
            for (Eigen::Index i = 0; i < raw.rows(); ++i)
                total += raw(i, j);
        Eigen::MatrixXd table = total > 0.0 ? Eigen::MatrixXd(raw / total) : raw;

        r.raw.assign(nr, 0.0);
        s.raw.assign(ns, 0.0);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < ns; ++j)
            {
                r.raw[i] += raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                s.raw[j] += raw(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
            }
        finish_side(r);
        finish_side(s);
        for (double e : err)
            r.quadrature_error += e;
        s.quadrature_error = r.quadrature_error;
        return VarianceMap::joint(std::move(r), std::move(s), std::move(table));
    }

    void write_csv(const VarianceMap &map, std::ostream &os)
    {
        os << "side,ix,iy,variance\n";
        char buf[64];
        auto side = [&](const char *tag, const SideVariances &sv)
        {
            for (std::size_t i = 0; i < sv.indices.size(); ++i)
            {
                std::snprintf(buf, sizeof buf, "%.17g", sv.variance[i]);
                os << tag << ',' << sv.indices[i].ix << ',' << sv.indices[i].iy << ',' << buf << '\n';
            }
        };
        side("r", map.receive());
        side("s", map.source());
    }
}
