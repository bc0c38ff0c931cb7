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

#include "hmimo/config.hpp"

#include <doctest.h>

#include <sstream>

using namespace hmimo;

TEST_CASE("defaults are valid and round-trip losslessly")
{
    ExperimentConfig c;
    c.validate();
    std::istringstream is(serialize(c));
    CHECK(parse_config(is) == c);
}

TEST_CASE("awkward values round-trip")
{
    ExperimentConfig c;
    c.wavelength_m = 0.1 / 3.0;
    c.snr_db = {-10.0, 0.1, 1.0 / 7.0};
    c.spacing_wavelengths = {0.5, 1.0 / 3.0};
    c.seed = 18446744073709551615ull;
    c.spectrum = "vmf";
    c.output_dir = "some/dir";
    std::istringstream is(serialize(c));
    CHECK(parse_config(is) == c);
    CHECK(config_hash(c) != config_hash(ExperimentConfig{}));
    CHECK(config_hash(c).size() == 16);
}

TEST_CASE("parser accepts comments and rejects junk")
{
    std::istringstream ok("# comment\n wavelength_m = 0.2  # trailing\n\nsnr_db = 0, 10,20\n");
    const auto c = parse_config(ok);
    CHECK(c.wavelength_m == 0.2);
    CHECK(c.snr_db == std::vector<double>{0, 10, 20});

    std::istringstream unknown("colour = blue\n");
    CHECK_THROWS_AS(parse_config(unknown), std::invalid_argument);
    std::istringstream noeq("wavelength_m 0.2\n");
    CHECK_THROWS_AS(parse_config(noeq), std::invalid_argument);
    ExperimentConfig x;
    CHECK_THROWS_AS(x.set("trials", "-3"), std::invalid_argument);
    CHECK_THROWS_AS(x.set("wavelength_m", "0.1m"), std::invalid_argument);
    CHECK_THROWS_AS(x.set("spectrum", "laplacian"), std::invalid_argument);
    CHECK_THROWS_AS(x.set("snr_db", "1,,2"), std::invalid_argument);
}

TEST_CASE("range checks")
{
    ExperimentConfig c;
    c.wavelength_m = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.vmf_circular_variance_deg = 90;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.spacing_wavelengths = {0.5, 0.0};
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = {};
    c.trials = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("full scale")
{
    ExperimentConfig c;
    apply_full_scale(c);
    CHECK(c.aperture_x_m == 1.0);
    CHECK(c.aperture_y_m == 1.0);
    CHECK(c.wavelength_m == 0.1);
}
