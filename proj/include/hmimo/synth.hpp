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


#ifndef HMIMO_SYNTH_HPP
#define HMIMO_SYNTH_HPP

#include "hmimo/basis.hpp"
#include "hmimo/spectrum.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace hmimo
{
    // Lower bidiagonal n x n matrix B (diag[i] at (i, i), sub[i] at (i + 1, i)).
    struct Bidiagonal
    {
        Eigen::VectorXd diag;
        Eigen::VectorXd sub;
    };

    // Small matrix whose nonzero singular values are those of a channel realization. For the
    // i.i.d. model the bidiagonal core is equal in distribution only.
    using CoreSample = std::variant<Eigen::MatrixXcd, Bidiagonal>;

    struct Realization
    {
        Eigen::MatrixXcd H; // N_r x N_s
        std::uint64_t trial = 0;
        std::uint64_t seed = 0;
    };

    // A seeded generator of N_r x N_s channel matrices. Both methods are pure functions of
    // (seed, trial).
    class ChannelModel
    {
    public:
        virtual ~ChannelModel() = default;
        virtual std::size_t receive_antennas() const = 0;
        virtual std::size_t transmit_antennas() const = 0;
        virtual std::string name() const = 0;
        virtual Realization realize(std::uint64_t seed, std::uint64_t trial) const = 0;
        virtual CoreSample core(std::uint64_t seed, std::uint64_t trial) const = 0;
    };

    // H = U_r (Sigma .* W) U_s^H with Sigma(l, m) = sqrt(N_s N_r sigma^2(l, m)).
    class PlaneWaveEnsemble : public ChannelModel
    {
    public:
        PlaneWaveEnsemble(PlaneWaveBasis receive, PlaneWaveBasis source, VarianceMap map, std::string name = "planewave");

        std::size_t receive_antennas() const override { return static_cast<std::size_t>(Ur_.U.rows()); }
        std::size_t transmit_antennas() const override { return static_cast<std::size_t>(Us_.U.rows()); }
        std::string name() const override { return name_; }

        const PlaneWaveBasis &receive_basis() const { return Ur_; }
        const PlaneWaveBasis &source_basis() const { return Us_; }
        const VarianceMap &variances() const { return map_; }
        const Eigen::MatrixXd &sigma() const { return sigma_; } // n_r x n_s

        // Sigma .* W; W(l, m) is block l + n_r m of the trial's stream.
        Eigen::MatrixXcd sample_Ha(std::uint64_t seed, std::uint64_t trial) const;
        // U_r Ha U_s^H. Throws std::invalid_argument on a shape mismatch.
        Eigen::MatrixXcd assemble_H(const Eigen::MatrixXcd &Ha) const;

        Realization realize(std::uint64_t seed, std::uint64_t trial) const override;
        // R_r Ha' R_s^H, where Ha' keeps the rows/columns of nonzero variance and U' = Q R is a
        // thin QR of the matching basis columns.
        CoreSample core(std::uint64_t seed, std::uint64_t trial) const override;

        // True when the basis columns carrying power are orthonormal to 1e-10 on both sides.
        bool semi_unitary_on_support() const { return semi_unitary_; }

        // The multiset {N_s N_r sigma^2(l, m)} padded with zeros to N_s N_r, descending.
        // Requires semi_unitary_on_support(); throws std::logic_error otherwise.
        std::vector<double> correlation_eigenvalues() const;

    private:
        PlaneWaveBasis Ur_, Us_;
        VarianceMap map_;
        std::string name_;
        Eigen::MatrixXd sigma_;
        std::vector<Eigen::Index> rows_, cols_; // support
        Eigen::MatrixXcd Rr_, Rs_;              // triangular QR factors on the support
        bool semi_unitary_ = false;
    };

    // rho(d) = sin(kappa d) / (kappa d), rho(0) = 1.
    double clarke_correlation(double distance, const Medium &medium);

    // Separable 3D-isotropic model H = R_r^{1/2} G R_s^{1/2}, realized with the eigenvector
    // factors F = V Lambda^{1/2} (equal in distribution). Eigenvalues below 1e-12 of the largest
    // are dropped; below -1e-10 of the largest the correlation is rejected as indefinite.
    class ClarkeEnsemble : public ChannelModel
    {
    public:
        ClarkeEnsemble(const ApertureSpec &receive, const ApertureSpec &source, const Medium &medium);

        std::size_t receive_antennas() const override { return static_cast<std::size_t>(Fr_.rows()); }
        std::size_t transmit_antennas() const override { return static_cast<std::size_t>(Fs_.rows()); }
        std::string name() const override { return "clarke"; }

        Realization realize(std::uint64_t seed, std::uint64_t trial) const override;
        // Lambda_r^{1/2} G Lambda_s^{1/2} with the same G as realize().
        CoreSample core(std::uint64_t seed, std::uint64_t trial) const override;

        const Eigen::VectorXd &receive_eigenvalues() const { return lr_; }
        const Eigen::VectorXd &source_eigenvalues() const { return ls_; }

    private:
        Eigen::MatrixXcd draw_G(std::uint64_t seed, std::uint64_t trial) const;

        Eigen::MatrixXd Fr_, Fs_;
        Eigen::VectorXd lr_, ls_; // retained eigenvalues
    };

    // i.i.d. CN(0, 1) entries.
    class IidEnsemble : public ChannelModel
    {
    public:
        IidEnsemble(std::size_t receive, std::size_t transmit);

        std::size_t receive_antennas() const override { return Nr_; }
        std::size_t transmit_antennas() const override { return Ns_; }
        std::string name() const override { return "iid"; }

        Realization realize(std::uint64_t seed, std::uint64_t trial) const override;
        // Complex Laguerre bidiagonal B with B B^T distributed as the eigenvalues of the smaller
        // Gram matrix: diag^2 ~ Gamma(max - i, 1), sub^2 ~ Gamma(min - 1 - i, 1).
        CoreSample core(std::uint64_t seed, std::uint64_t trial) const override;

    private:
        std::size_t Nr_, Ns_;
    };

    // Sum over trials of vec(H) vec(H)^H divided by the trial count (column-major vec).
    Eigen::MatrixXcd sample_covariance(const ChannelModel &model, std::uint64_t seed, std::size_t trials);

    // CSV with header "trial,row,col,re,im".
    void write_realizations_csv(const ChannelModel &model, std::uint64_t seed, std::size_t trials, std::ostream &os);
}

#endif
