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


#ifndef HMIMO_EXPERIMENTS_HPP
#define HMIMO_EXPERIMENTS_HPP

#include "hmimo/capacity.hpp"
#include "hmimo/config.hpp"
#include "hmimo/spectrum.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace hmimo
{
    struct CountResult
    {
        std::size_t lattice = 0;
        std::uint64_t asymptotic = 0;
    };

    struct CapacityRow
    {
        double snr_db = 0.0;
        double spacing = 0.0; // wavelengths
        std::string model;
        CapacityResult result;
    };

    struct CheckResult
    {
        std::string name;
        std::string status; // pass | fail | flagged | info
        double value = 0.0;
        double threshold = 0.0;
        std::string detail;
    };

    struct VerifyReport
    {
        std::vector<CheckResult> checks;
        std::string status() const; // fail > flagged > pass
        std::string to_json() const;
    };

    struct RunOutput
    {
        std::vector<std::string> artifacts;
        std::string manifest;
    };

    SpectrumPtr make_spectrum(const ExperimentConfig &cfg);
    SpectrumPtr make_vmf(const ExperimentConfig &cfg);
    Medium make_medium(const ExperimentConfig &cfg);

    CountResult count_modes(const ExperimentConfig &cfg);

    // Receive-side table "side,ix,iy,variance,variance_db", dB relative to the largest cell.
    void write_variances(const ExperimentConfig &cfg, std::ostream &os);

    // Every (snr, spacing, model) combination in that nesting order; models are
    // planewave-isotropic, planewave-vmf, clarke and iid.
    std::vector<CapacityRow> capacity_sweep(const ExperimentConfig &cfg);
    void write_capacity_csv(const std::vector<CapacityRow> &rows, std::ostream &os);

    // Weyl-identity, LoS and eigenvalue-consistency checks. Quadrature-dependent checks are
    // flagged rather than judged when quadrature_tol is looser than 1e-6.
    VerifyReport verify(const ExperimentConfig &cfg);

    // Command runners: write their artifacts and a manifest into cfg.output_dir.
    RunOutput run_count(const ExperimentConfig &cfg, CountResult *result = nullptr);
    RunOutput run_variances(const ExperimentConfig &cfg);
    RunOutput run_capacity(const ExperimentConfig &cfg);
    RunOutput run_verify(const ExperimentConfig &cfg, VerifyReport *report = nullptr);

    std::string write_manifest(const ExperimentConfig &cfg, const std::string &command,
                               const std::vector<std::string> &artifacts);
}

#endif
