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


#ifndef HMIMO_CAPACITY_HPP
#define HMIMO_CAPACITY_HPP

#include "hmimo/spectrum.hpp"
#include "hmimo/synth.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace hmimo
{
    class CapacityError : public std::runtime_error
    {
    public:
        CapacityError(const std::string &what, std::uint64_t trial) : std::runtime_error(what), trial_(trial) {}
        std::uint64_t trial() const { return trial_; }

    private:
        std::uint64_t trial_;
    };

    struct CapacityResult
    {
        double capacity = 0.0;  // bit/s/Hz
        double std_error = 0.0; // of the mean
        std::size_t trials = 0;
        double snr = 0.0;       // linear
        std::size_t Ns = 0;     // transmit antennas in snr / Ns
    };

    struct CapacityOptions
    {
        unsigned threads = 0;
        bool dense = false; // full N_r x N_s realizations instead of the model's core
    };

    // log2 det(I + scale K K^H), evaluated on the smaller Gram matrix by Cholesky with an
    // eigenvalue fallback. Returns NaN/inf unchanged for the caller to report.
    double log2det_gram(const Eigen::MatrixXcd &K, double scale);
    // Same for a bidiagonal core, via the LDL^T recurrence of the tridiagonal B B^T.
    double log2det_gram(const Bidiagonal &B, double scale);

    // Mean of log2 det(I + snr / N_s H H^H) over trials 0 .. trials - 1. Per-trial values are
    // reduced in trial order, so the result does not depend on the thread count.
    CapacityResult ergodic_capacity(const ChannelModel &model, double snr, std::size_t trials, std::uint64_t seed,
                                    const CapacityOptions &opt = {});

    // min(n_s', n_r'), counting rows/columns of sigma^2 above rel_threshold times its maximum.
    std::size_t dof(const VarianceMap &map, double rel_threshold = 1e-12);

    // Number of singular values above rel_tol times the largest.
    std::size_t numerical_rank(const Eigen::MatrixXcd &H, double rel_tol = 1e-8);
}

#endif
