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

#ifndef HMIMO_QUADRATURE_HPP
#define HMIMO_QUADRATURE_HPP

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace hmimo
{
    // Raised when an adaptive integral cannot reach its absolute tolerance within the interval budget.
    class QuadratureError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    struct QuadratureOptions
    {
        double abs_tol = 1e-10;
        std::size_t max_intervals = 4000;
    };

    template <typename T>
    struct QuadratureResult
    {
        T value{};
        double error = 0.0;
        std::size_t intervals = 0;
        bool converged = true;
    };

    namespace detail
    {
        inline double magnitude(double v) { return std::abs(v); }
        inline double magnitude(const std::complex<double> &v) { return std::abs(v); }

        template <typename T>
        struct Segment
        {
            double a, b;
            T value;
            double error;
            bool operator<(const Segment &o) const { return error < o.error; }
        };

        // 15-point Kronrod / 7-point Gauss pair on [a, b].
        template <typename T, typename F>
        Segment<T> gk15(F &f, double a, double b)
        {
            using kr = boost::math::quadrature::gauss_kronrod<double, 15>;
            using ga = boost::math::quadrature::gauss<double, 7>;
            const auto &x = kr::abscissa();
            const auto &wk = kr::weights();
            const auto &wg = ga::weights();
            const double c = 0.5 * (a + b), h = 0.5 * (b - a);

            T f0 = f(c);
            T kron = f0 * wk[0];
            T gauss = f0 * wg[0];
            for (std::size_t i = 1; i < x.size(); ++i)
            {
                T s = f(c + h * x[i]) + f(c - h * x[i]);
                kron += s * wk[i];
                if ((i & 1) == 0)
                    gauss += s * wg[i / 2];
            }
            return {a, b, kron * h, magnitude((kron - gauss) * h)};
        }
    }

    // Globally adaptive Gauss-Kronrod: the segment with the largest error estimate is bisected
    // until the summed estimate is below abs_tol or the interval budget is spent.
    template <typename T, typename F>
    QuadratureResult<T> integrate(F &&f, double a, double b, const QuadratureOptions &opt = {})
    {
        QuadratureResult<T> out;
        if (!(b > a))
            return out;

        std::priority_queue<detail::Segment<T>> heap;
        heap.push(detail::gk15<T>(f, a, b));
        double total_err = heap.top().error;
        std::size_t n = 1;
        while (total_err > opt.abs_tol && n < opt.max_intervals)
        {
            auto s = heap.top();
            heap.pop();
            const double m = 0.5 * (s.a + s.b);
            if (!(m > s.a && m < s.b)) // no room left to bisect
            {
                heap.push(s);
                break;
            }
            auto l = detail::gk15<T>(f, s.a, m);
            auto r = detail::gk15<T>(f, m, s.b);
            total_err += l.error + r.error - s.error;
            heap.push(l);
            heap.push(r);
            ++n;
        }

        // Sum in interval order so the result does not depend on heap layout.
        std::vector<detail::Segment<T>> segs;
        segs.reserve(heap.size());
        while (!heap.empty())
        {
            segs.push_back(heap.top());
            heap.pop();
        }
        std::sort(segs.begin(), segs.end(), [](const auto &p, const auto &q)
                  { return p.a < q.a; });
        total_err = 0.0;
        for (const auto &s : segs)
        {
            out.value += s.value;
            total_err += s.error;
        }
        out.error = total_err;
        out.intervals = n;
        out.converged = total_err <= opt.abs_tol;
        return out;
    }

    // Sum of adaptive integrals over consecutive breakpoints, each piece receiving a share of
    // the tolerance proportional to its length.
    template <typename T, typename F>
    QuadratureResult<T> integrate_pieces(F &&f, const std::vector<double> &breaks, const QuadratureOptions &opt = {})
    {
        QuadratureResult<T> out;
        if (breaks.size() < 2)
            return out;
        const double span = breaks.back() - breaks.front();
        for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
        {
            const double a = breaks[i], b = breaks[i + 1];
            if (!(b > a))
                continue;
            QuadratureOptions o = opt;
            o.abs_tol = opt.abs_tol * (b - a) / span;
            auto r = integrate<T>(f, a, b, o);
            out.value += r.value;
            out.error += r.error;
            out.intervals += r.intervals;
            out.converged = out.converged && r.converged;
        }
        return out;
    }
}

#endif
