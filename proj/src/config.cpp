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

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace hmimo
{
    namespace
    {
        std::string trim(const std::string &s)
        {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos)
                return {};
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        }

        [[noreturn]] void bad(const std::string &key, const std::string &value, const std::string &why)
        {
            throw std::invalid_argument("config: " + key + " = '" + value + "': " + why);
        }

        double to_double(const std::string &key, const std::string &v)
        {
            std::size_t pos = 0;
            double x;
            try
            {
                x = std::stod(v, &pos);
            }
            catch (const std::exception &)
            {
                bad(key, v, "not a number");
            }
            if (pos != v.size() || !std::isfinite(x))
                bad(key, v, "not a finite number");
            return x;
        }

        std::uint64_t to_u64(const std::string &key, const std::string &v)
        {
            std::uint64_t x = 0;
            auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
            if (ec != std::errc() || p != v.data() + v.size())
                bad(key, v, "not a non-negative integer");
            return x;
        }

        std::vector<double> to_list(const std::string &key, const std::string &v)
        {
            std::vector<double> out;
            std::stringstream ss(v);
            std::string item;
            while (std::getline(ss, item, ','))
                out.push_back(to_double(key, trim(item)));
            if (out.empty())
                bad(key, v, "empty list");
            return out;
        }

        std::string fmt(double x)
        {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", x);
            return buf;
        }

        std::string fmt(const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? "," : "") + fmt(v[i]);
            return s;
        }
    }

    const std::vector<std::string> &config_keys()
    {
        static const std::vector<std::string> keys = {
            "wavelength_m", "impedance_ohm", "aperture_x_m", "aperture_y_m", "aperture_z_m", "spectrum",
            "vmf_mean_elevation_deg", "vmf_mean_azimuth_deg", "vmf_circular_variance_deg", "snr_db",
            "spacing_wavelengths", "trials", "seed", "quadrature_tol", "threads", "output_dir"};
        return keys;
    }

    void ExperimentConfig::set(const std::string &key, const std::string &raw)
    {
        const std::string v = trim(raw);
        if (key == "wavelength_m")
            wavelength_m = to_double(key, v);
        else if (key == "impedance_ohm")
            impedance_ohm = to_double(key, v);
        else if (key == "aperture_x_m")
            aperture_x_m = to_double(key, v);
        else if (key == "aperture_y_m")
            aperture_y_m = to_double(key, v);
        else if (key == "aperture_z_m")
            aperture_z_m = to_double(key, v);
        else if (key == "spectrum")
        {
            if (v != "isotropic" && v != "vmf")
                bad(key, v, "expected isotropic or vmf");
            spectrum = v;
        }
        else if (key == "vmf_mean_elevation_deg")
            vmf_mean_elevation_deg = to_double(key, v);
        else if (key == "vmf_mean_azimuth_deg")
            vmf_mean_azimuth_deg = to_double(key, v);
        else if (key == "vmf_circular_variance_deg")
            vmf_circular_variance_deg = to_double(key, v);
        else if (key == "snr_db")
            snr_db = to_list(key, v);
        else if (key == "spacing_wavelengths")
            spacing_wavelengths = to_list(key, v);
        else if (key == "trials")
            trials = to_u64(key, v);
        else if (key == "seed")
            seed = to_u64(key, v);
        else if (key == "quadrature_tol")
            quadrature_tol = to_double(key, v);
        else if (key == "threads")
            threads = static_cast<unsigned>(to_u64(key, v));
        else if (key == "output_dir")
        {
            if (v.empty())
                bad(key, v, "empty path");
            output_dir = v;
        }
        else
            throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    void ExperimentConfig::validate() const
    {
        auto need = [](bool ok, const char *what)
        {
            if (!ok)
                throw std::invalid_argument(std::string("config: ") + what);
        };
        need(wavelength_m > 0.0, "wavelength_m must be positive");
        need(impedance_ohm > 0.0, "impedance_ohm must be positive");
        need(aperture_x_m > 0.0 && aperture_y_m > 0.0, "aperture sides must be positive");
        need(aperture_z_m >= 0.0, "aperture_z_m must be non-negative");
        need(vmf_mean_elevation_deg >= 0.0 && vmf_mean_elevation_deg <= 90.0, "vmf_mean_elevation_deg must be in [0, 90]");
        need(vmf_circular_variance_deg > 0.0 && vmf_circular_variance_deg < 90.0,
             "vmf_circular_variance_deg must be in (0, 90)");
        for (double s : spacing_wavelengths)
            need(s > 0.0, "spacing_wavelengths entries must be positive");
        need(trials >= 1, "trials must be at least 1");
        need(quadrature_tol > 0.0, "quadrature_tol must be positive");
    }

    std::string config_value(const ExperimentConfig &c, const std::string &key)
    {
        if (key == "wavelength_m")
            return fmt(c.wavelength_m);
        if (key == "impedance_ohm")
            return fmt(c.impedance_ohm);
        if (key == "aperture_x_m")
            return fmt(c.aperture_x_m);
        if (key == "aperture_y_m")
            return fmt(c.aperture_y_m);
        if (key == "aperture_z_m")
            return fmt(c.aperture_z_m);
        if (key == "spectrum")
            return c.spectrum;
        if (key == "vmf_mean_elevation_deg")
            return fmt(c.vmf_mean_elevation_deg);
        if (key == "vmf_mean_azimuth_deg")
            return fmt(c.vmf_mean_azimuth_deg);
        if (key == "vmf_circular_variance_deg")
            return fmt(c.vmf_circular_variance_deg);
        if (key == "snr_db")
            return fmt(c.snr_db);
        if (key == "spacing_wavelengths")
            return fmt(c.spacing_wavelengths);
        if (key == "trials")
            return std::to_string(c.trials);
        if (key == "seed")
            return std::to_string(c.seed);
        if (key == "quadrature_tol")
            return fmt(c.quadrature_tol);
        if (key == "threads")
            return std::to_string(c.threads);
        if (key == "output_dir")
            return c.output_dir;
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }

    std::string serialize(const ExperimentConfig &cfg)
    {
        std::string s;
        for (const auto &k : config_keys())
            s += k + " = " + config_value(cfg, k) + "\n";
        return s;
    }

    ExperimentConfig parse_config(std::istream &is, ExperimentConfig cfg)
    {
        std::string line;
        int n = 0;
        while (std::getline(is, line))
        {
            ++n;
            if (const auto h = line.find('#'); h != std::string::npos)
                line.erase(h);
            line = trim(line);
            if (line.empty())
                continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos)
                throw std::invalid_argument("config line " + std::to_string(n) + ": expected key = value");
            cfg.set(trim(line.substr(0, eq)), line.substr(eq + 1));
        }
        return cfg;
    }

    ExperimentConfig load_config(const std::string &path, ExperimentConfig base)
    {
        std::ifstream f(path);
        if (!f)
            throw std::runtime_error("cannot open config file " + path);
        return parse_config(f, std::move(base));
    }

    void apply_full_scale(ExperimentConfig &cfg)
    {
        cfg.wavelength_m = 0.1;
        cfg.aperture_x_m = 1.0;
        cfg.aperture_y_m = 1.0;
    }

    std::string config_hash(const ExperimentConfig &cfg)
    {
        std::uint64_t h = 0xcbf29ce484222325ull;
        for (unsigned char c : serialize(cfg))
        {
            h ^= c;
            h *= 0x100000001b3ull;
        }
        char buf[17];
        std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
        return buf;
    }
}
