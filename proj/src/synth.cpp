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

#include "hmimo/synth.hpp"
#include "hmimo/kernels.hpp"
#include "hmimo/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <stdexcept>

namespace hmimo
{
    namespace
    {
        // C += A B with A (m x k), B (k x n), column by column through the axpy kernel.
        void gemm_acc(const Eigen::MatrixXcd &A, const Eigen::MatrixXcd &B, Eigen::MatrixXcd &C)
        {
            const auto m = static_cast<std::size_t>(A.rows());
            for (Eigen::Index j = 0; j < B.cols(); ++j)
                for (Eigen::Index k = 0; k < A.cols(); ++k)
                {
                    const auto b = B(k, j);
                    if (b != 0.0)
                        kernels::caxpy(m, b, A.col(k).data(), C.col(j).data());
                }
        }

        Eigen::MatrixXcd gather_cols(const Eigen::MatrixXcd &U, const std::vector<Eigen::Index> &cols)
        {
            Eigen::MatrixXcd out(U.rows(), static_cast<Eigen::Index>(cols.size()));
            for (std::size_t j = 0; j < cols.size(); ++j)
                out.col(static_cast<Eigen::Index>(j)) = U.col(cols[j]);
            return out;
        }

        // Upper triangular factor R (min(N, n) x n) of U = Q R.
        Eigen::MatrixXcd qr_factor(const Eigen::MatrixXcd &U)
        {
            Eigen::HouseholderQR<Eigen::MatrixXcd> qr(U);
            const Eigen::Index k = std::min(U.rows(), U.cols());
            Eigen::MatrixXcd R = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
            return R;
        }

        // Factor F = V Lambda^{1/2} of a real symmetric PSD matrix, dropping negligible modes.
        void psd_factor(const Eigen::MatrixXd &R, Eigen::MatrixXd &F, Eigen::VectorXd &kept)
        {
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(R);
            if (es.info() != Eigen::Success)
                throw std::runtime_error("clarke: eigen-decomposition failed");
            const Eigen::VectorXd &ev = es.eigenvalues(); // ascending
            const double top = ev.maxCoeff();
            if (ev.minCoeff() < -1e-10 * top)
                throw std::runtime_error("clarke: correlation matrix is not positive semi-definite (min eigenvalue " +
                                         std::to_string(ev.minCoeff()) + ")");
            std::vector<Eigen::Index> keep;
            for (Eigen::Index i = ev.size() - 1; i >= 0; --i)
                if (ev(i) > 1e-12 * top)
                    keep.push_back(i);
            F.resize(R.rows(), static_cast<Eigen::Index>(keep.size()));
            kept.resize(static_cast<Eigen::Index>(keep.size()));
            for (std::size_t j = 0; j < keep.size(); ++j)
            {
                const auto c = static_cast<Eigen::Index>(j);
                kept(c) = ev(keep[j]);
                F.col(c) = es.eigenvectors().col(keep[j]) * std::sqrt(ev(keep[j]));
            }
        }

        Eigen::MatrixXd clarke_matrix(const ApertureSpec &a, const Medium &medium)
        {
            const Eigen::Matrix3Xd p = a.positions();
            const Eigen::Index N = p.cols();
            Eigen::MatrixXd R(N, N);
            for (Eigen::Index j = 0; j < N; ++j)
            {
                R(j, j) = 1.0;
                for (Eigen::Index i = j + 1; i < N; ++i)
                    R(i, j) = R(j, i) = clarke_correlation((p.col(i) - p.col(j)).norm(), medium);
            }
            return R;
        }
    }

    PlaneWaveEnsemble::PlaneWaveEnsemble(PlaneWaveBasis receive, PlaneWaveBasis source, VarianceMap map, std::string name)
        : Ur_(std::move(receive)), Us_(std::move(source)), map_(std::move(map)), name_(std::move(name))
    {
        if (map_.receive().indices != Ur_.indices || map_.source().indices != Us_.indices)
            throw std::invalid_argument("planewave: variance map and bases use different lattices");
        if (Ur_.side != Side::receive || Us_.side != Side::source)
            throw std::invalid_argument("planewave: bases passed in the wrong order");

        const double NN = static_cast<double>(Ur_.U.rows()) * static_cast<double>(Us_.U.rows());
        sigma_ = (map_.matrix() * NN).cwiseSqrt();

        for (Eigen::Index l = 0; l < sigma_.rows(); ++l)
            if ((sigma_.row(l).array() > 0.0).any())
                rows_.push_back(l);
        for (Eigen::Index m = 0; m < sigma_.cols(); ++m)
            if ((sigma_.col(m).array() > 0.0).any())
                cols_.push_back(m);

        const Eigen::MatrixXcd Ur = gather_cols(Ur_.U, rows_), Us = gather_cols(Us_.U, cols_);
        semi_unitary_ = gram_deviation(Ur) < 1e-10 && gram_deviation(Us) < 1e-10;
        Rr_ = qr_factor(Ur);
        Rs_ = qr_factor(Us);
    }

    Eigen::MatrixXcd PlaneWaveEnsemble::sample_Ha(std::uint64_t seed, std::uint64_t trial) const
    {
        const CounterRng rng(seed, streams::planewave, trial);
        Eigen::MatrixXcd W(sigma_.rows(), sigma_.cols());
        rng.complex_normals(0, static_cast<std::size_t>(W.size()), W.data());
        return W.cwiseProduct(sigma_.cast<std::complex<double>>());
    }

    Eigen::MatrixXcd PlaneWaveEnsemble::assemble_H(const Eigen::MatrixXcd &Ha) const
    {
        if (Ha.rows() != Ur_.U.cols() || Ha.cols() != Us_.U.cols())
            throw std::invalid_argument("assemble_H: Ha is " + std::to_string(Ha.rows()) + "x" +
                                        std::to_string(Ha.cols()) + ", expected " + std::to_string(Ur_.U.cols()) +
                                        "x" + std::to_string(Us_.U.cols()));
        Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(Ur_.U.rows(), Ha.cols());
        gemm_acc(Ur_.U, Ha, T);
        Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(Ur_.U.rows(), Us_.U.rows());
        gemm_acc(T, Us_.U.adjoint(), H);
        return H;
    }

    Realization PlaneWaveEnsemble::realize(std::uint64_t seed, std::uint64_t trial) const
    {
        return {assemble_H(sample_Ha(seed, trial)), trial, seed};
    }

    CoreSample PlaneWaveEnsemble::core(std::uint64_t seed, std::uint64_t trial) const
    {
        const Eigen::MatrixXcd Ha = sample_Ha(seed, trial);
        Eigen::MatrixXcd sub(static_cast<Eigen::Index>(rows_.size()), static_cast<Eigen::Index>(cols_.size()));
        for (std::size_t j = 0; j < cols_.size(); ++j)
            for (std::size_t i = 0; i < rows_.size(); ++i)
                sub(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = Ha(rows_[i], cols_[j]);
        Eigen::MatrixXcd K = Rr_ * sub * Rs_.adjoint();
        return K;
    }

    std::vector<double> PlaneWaveEnsemble::correlation_eigenvalues() const
    {
        if (!semi_unitary_)
            throw std::logic_error("correlation_eigenvalues: bases are not semi-unitary on the support");
        const std::size_t total = receive_antennas() * transmit_antennas();
        std::vector<double> ev;
        ev.reserve(total);
        for (Eigen::Index j = 0; j < sigma_.cols(); ++j)
            for (Eigen::Index i = 0; i < sigma_.rows(); ++i)
                if (sigma_(i, j) > 0.0)
                    ev.push_back(sigma_(i, j) * sigma_(i, j));
        ev.resize(total, 0.0);
        std::sort(ev.begin(), ev.end(), std::greater<>());
        return ev;
    }

    double clarke_correlation(double distance, const Medium &medium)
    {
        const double x = medium.wavenumber() * distance;
        return x == 0.0 ? 1.0 : std::sin(x) / x;
    }

    ClarkeEnsemble::ClarkeEnsemble(const ApertureSpec &receive, const ApertureSpec &source, const Medium &medium)
    {
        psd_factor(clarke_matrix(receive, medium), Fr_, lr_);
        psd_factor(clarke_matrix(source, medium), Fs_, ls_);
    }

    Eigen::MatrixXcd ClarkeEnsemble::draw_G(std::uint64_t seed, std::uint64_t trial) const
    {
        const CounterRng rng(seed, streams::clarke, trial);
        Eigen::MatrixXcd G(lr_.size(), ls_.size());
        rng.complex_normals(0, static_cast<std::size_t>(G.size()), G.data());
        return G;
    }

    Realization ClarkeEnsemble::realize(std::uint64_t seed, std::uint64_t trial) const
    {
        const Eigen::MatrixXcd G = draw_G(seed, trial);
        Eigen::MatrixXcd H = Fr_.cast<std::complex<double>>() * G * Fs_.transpose().cast<std::complex<double>>();
        return {std::move(H), trial, seed};
    }

    CoreSample ClarkeEnsemble::core(std::uint64_t seed, std::uint64_t trial) const
    {
        Eigen::MatrixXcd K = draw_G(seed, trial);
        K = lr_.cwiseSqrt().cast<std::complex<double>>().asDiagonal() * K;
        K = K * ls_.cwiseSqrt().cast<std::complex<double>>().asDiagonal();
        return K;
    }

    IidEnsemble::IidEnsemble(std::size_t receive, std::size_t transmit) : Nr_(receive), Ns_(transmit)
    {
        if (Nr_ < 1 || Ns_ < 1)
            throw std::invalid_argument("iid: antenna counts must be positive");
    }

    Realization IidEnsemble::realize(std::uint64_t seed, std::uint64_t trial) const
    {
        const CounterRng rng(seed, streams::iid, trial);
        Eigen::MatrixXcd H(static_cast<Eigen::Index>(Nr_), static_cast<Eigen::Index>(Ns_));
        rng.complex_normals(0, static_cast<std::size_t>(H.size()), H.data());
        return {std::move(H), trial, seed};
    }

    CoreSample IidEnsemble::core(std::uint64_t seed, std::uint64_t trial) const
    {
        const std::size_t n = std::min(Nr_, Ns_), m = std::max(Nr_, Ns_);
        RngStream s(CounterRng(seed, streams::iid_core, trial));
        Bidiagonal B;
        B.diag.resize(static_cast<Eigen::Index>(n));
        B.sub.resize(static_cast<Eigen::Index>(n - 1));
        for (std::size_t i = 0; i < n; ++i)
        {
            B.diag(static_cast<Eigen::Index>(i)) = std::sqrt(s.gamma(static_cast<double>(m - i)));
            if (i + 1 < n)
                B.sub(static_cast<Eigen::Index>(i)) = std::sqrt(s.gamma(static_cast<double>(n - 1 - i)));
        }
        return B;
    }

    Eigen::MatrixXcd sample_covariance(const ChannelModel &model, std::uint64_t seed, std::size_t trials)
    {
        const auto d = static_cast<Eigen::Index>(model.receive_antennas() * model.transmit_antennas());
        Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(d, d);
        for (std::size_t t = 0; t < trials; ++t)
        {
            const Realization r = model.realize(seed, t);
            const std::complex<double> *v = r.H.data();
            for (Eigen::Index j = 0; j < d; ++j)
                kernels::caxpy(static_cast<std::size_t>(d), std::conj(v[j]), v, C.col(j).data());
        }
        if (trials > 0)
            C /= static_cast<double>(trials);
        return C;
    }

    void write_realizations_csv(const ChannelModel &model, std::uint64_t seed, std::size_t trials, std::ostream &os)
    {
        os << "trial,row,col,re,im\n";
        char buf[128];
        for (std::size_t t = 0; t < trials; ++t)
        {
            const Realization r = model.realize(seed, t);
            for (Eigen::Index j = 0; j < r.H.cols(); ++j)
                for (Eigen::Index i = 0; i < r.H.rows(); ++i)
                {
                    std::snprintf(buf, sizeof buf, "%zu,%ld,%ld,%.17g,%.17g\n", t, static_cast<long>(i),
                                  static_cast<long>(j), r.H(i, j).real(), r.H(i, j).imag());
                    os << buf;
                }
        }
    }
}
