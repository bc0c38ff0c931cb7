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

#include "hmimo/capacity.hpp"
#include "hmimo/parallel.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace hmimo
{
    double log2det_gram(const Eigen::MatrixXcd &K, double scale)
    {
        if (K.size() == 0 || scale == 0.0)
            return 0.0;
        const Eigen::MatrixXcd G = K.rows() <= K.cols() ? Eigen::MatrixXcd(K * K.adjoint())
                                                        : Eigen::MatrixXcd(K.adjoint() * K);
        Eigen::MatrixXcd A = scale * G;
        A.diagonal().array() += 1.0;

        Eigen::LLT<Eigen::MatrixXcd> llt(A);
        if (llt.info() == Eigen::Success)
        {
            double s = 0.0;
            for (Eigen::Index i = 0; i < A.rows(); ++i)
                s += std::log(llt.matrixLLT()(i, i).real());
            return 2.0 * s / std::numbers::ln2;
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
        double s = 0.0;
        for (Eigen::Index i = 0; i < G.rows(); ++i)
            s += std::log1p(scale * std::max(es.eigenvalues()(i), 0.0));
        return s / std::numbers::ln2;
    }

    double log2det_gram(const Bidiagonal &B, double scale)
    {
        const Eigen::Index n = B.diag.size();
        if (n == 0 || scale == 0.0)
            return 0.0;
        // T = B B^T: T(i, i) = d_i^2 + s_{i-1}^2, T(i, i-1) = s_{i-1} d_{i-1}.
        double s = 0.0, prev = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
        {
            double a = B.diag(i) * B.diag(i);
            double piv;
            if (i == 0)
                piv = 1.0 + scale * a;
            else
            {
                const double sub = B.sub(i - 1);
                a += sub * sub;
                const double off = scale * sub * B.diag(i - 1);
                piv = 1.0 + scale * a - off * off / prev;
            }
            s += std::log(piv);
            prev = piv;
        }
        return s / std::numbers::ln2;
    }

    CapacityResult ergodic_capacity(const ChannelModel &model, double snr, std::size_t trials, std::uint64_t seed,
                                    const CapacityOptions &opt)
    {
        if (!(snr >= 0.0))
            throw std::invalid_argument("ergodic_capacity: snr must be non-negative");
        if (trials < 1)
            throw std::invalid_argument("ergodic_capacity: at least one trial is required");

        CapacityResult out;
        out.trials = trials;
        out.snr = snr;
        out.Ns = model.transmit_antennas();
        const double scale = snr / static_cast<double>(out.Ns);

        std::vector<double> c(trials, 0.0);
        if (snr > 0.0)
        {
            parallel_for(trials, opt.threads, [&](std::size_t t)
                         {
                double v;
                if (opt.dense)
                    v = log2det_gram(model.realize(seed, t).H, scale);
                else
                    v = std::visit([&](const auto &k) { return log2det_gram(k, scale); }, model.core(seed, t));
                if (!std::isfinite(v))
                    throw CapacityError(model.name() + ": non-finite log-determinant at trial " + std::to_string(t), t);
                c[t] = v; });
        }

        double sum = 0.0;
        for (double v : c)
            sum += v;
        out.capacity = sum / static_cast<double>(trials);
        if (trials > 1)
        {
            double ss = 0.0;
            for (double v : c)
                ss += (v - out.capacity) * (v - out.capacity);
            out.std_error = std::sqrt(ss / static_cast<double>(trials - 1) / static_cast<double>(trials));
        }
        return out;
    }

    std::size_t dof(const VarianceMap &map, double rel_threshold)
    {
        if (map.is_separable())
        {
            auto count = [&](const std::vector<double> &v)
            {
                double top = 0.0;
                for (double x : v)
                    top = std::max(top, x);
                std::size_t n = 0;
                for (double x : v)
                    n += top > 0.0 && x > rel_threshold * top;
                return n;
            };
            return std::min(count(map.receive().variance), count(map.source().variance));
        }
        const Eigen::MatrixXd S = map.matrix();
        const double top = S.size() ? S.maxCoeff() : 0.0;
        if (!(top > 0.0))
            return 0;
        std::size_t nr = 0, ns = 0;
        for (Eigen::Index i = 0; i < S.rows(); ++i)
            nr += S.row(i).maxCoeff() > rel_threshold * top;
        for (Eigen::Index j = 0; j < S.cols(); ++j)
            ns += S.col(j).maxCoeff() > rel_threshold * top;
        return std::min(nr, ns);
    }

    std::size_t numerical_rank(const Eigen::MatrixXcd &H, double rel_tol)
    {
        if (H.size() == 0)
            return 0;
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(H);
        const auto &sv = svd.singularValues();
        if (!(sv(0) > 0.0))
            return 0;
        std::size_t r = 0;
        for (Eigen::Index i = 0; i < sv.size(); ++i)
            r += sv(i) > rel_tol * sv(0);
        return r;
    }
}
