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


#ifndef HMIMO_CONFIG_HPP
#define HMIMO_CONFIG_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace hmimo
{
    // Experiment parameters. Physical quantities carry their unit in the key name; the text form
    // is one "key = value" per line, lists comma-separated, '#' starts a comment.
    struct ExperimentConfig
    {
        double wavelength_m = 0.1;
        double impedance_ohm = 376.730;
        double aperture_x_m = 0.4; // same aperture on both sides
        double aperture_y_m = 0.4;
        double aperture_z_m = 0.0;
        std::string spectrum = "isotropic"; // isotropic | vmf
        double vmf_mean_elevation_deg = 30.0;
        double vmf_mean_azimuth_deg = 30.0;
        double vmf_circular_variance_deg = 30.0;
        std::vector<double> snr_db = {0.0};
        std::vector<double> spacing_wavelengths = {0.5, 0.25, 0.125};
        std::uint64_t trials = 2000;
        std::uint64_t seed = 20260101;
        double quadrature_tol = 1e-8;
        unsigned threads = 0;
        std::string output_dir = "hmimo_out";

        // Parses and range-checks one value. Throws std::invalid_argument naming the key.
        void set(const std::string &key, const std::string &value);
        // Throws std::invalid_argument on the first out-of-range field.
        void validate() const;

        bool operator==(const ExperimentConfig &) const = default;
    };

    const std::vector<std::string> &config_keys();
    std::string config_value(const ExperimentConfig &cfg, const std::string &key);

    // Lossless text form (doubles at 17 significant digits), keys in config_keys() order.
    std::string serialize(const ExperimentConfig &cfg);
    ExperimentConfig parse_config(std::istream &is, ExperimentConfig base = {});
    ExperimentConfig load_config(const std::string &path, ExperimentConfig base = {});

    // 1 m x 1 m apertures at lambda = 0.1 m (L / lambda = 10).
    void apply_full_scale(ExperimentConfig &cfg);

    // 64-bit FNV-1a of serialize(cfg), as 16 hex digits.
    std::string config_hash(const ExperimentConfig &cfg);
}

#endif
