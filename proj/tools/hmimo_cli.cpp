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

// Command-line front end: count, variances, capacity, verify, dump.

#include "hmimo/basis.hpp"
#include "hmimo/experiments.hpp"
#include "hmimo/kernels.hpp"
#include "hmimo/synth.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>

using namespace hmimo;

namespace
{
    struct Common
    {
        std::string config_path;
        bool full_scale = false;
        std::map<std::string, std::string> overrides;
    };

    // --config, --full-scale and one --<key> flag per configuration field.
    void add_common(CLI::App *app, Common &c)
    {
        app->add_option("--config", c.config_path, "key = value configuration file")->check(CLI::ExistingFile);
        app->add_flag("--full-scale", c.full_scale, "1 m x 1 m apertures at lambda = 0.1 m");
        for (const auto &key : config_keys())
            app->add_option_function<std::string>("--" + key, [&c, key](const std::string &v)
                                                  { c.overrides[key] = v; },
                                                  "override " + key);
    }

    ExperimentConfig resolve(const Common &c)
    {
        ExperimentConfig cfg;
        if (!c.config_path.empty())
            cfg = load_config(c.config_path);
        if (c.full_scale)
            apply_full_scale(cfg);
        for (const auto &[k, v] : c.overrides)
            cfg.set(k, v);
        cfg.validate();
        return cfg;
    }

    void print_outputs(const RunOutput &out)
    {
        for (const auto &a : out.artifacts)
            std::cout << "wrote " << a << '\n';
        std::cout << "manifest " << out.manifest << '\n';
    }
}

int main(int argc, char **argv)
{
    CLI::App app{"hmimo - plane-wave channel models for holographic MIMO arrays"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", HMIMO_CLI_VERSION);
    std::string backend;
    app.add_option("--kernels", backend, "kernel backend (scalar|avx2); default picks the best available")
        ->check(CLI::IsMember({"scalar", "avx2"}));

    Common c_count, c_var, c_cap, c_ver, c_dump;
    auto *count = app.add_subcommand("count", "lattice and asymptotic mode counts");
    add_common(count, c_count);
    auto *var = app.add_subcommand("variances", "per-cell variance table of the configured spectrum");
    add_common(var, c_var);
    auto *cap = app.add_subcommand("capacity", "ergodic capacity sweep over spacing and snr");
    add_common(cap, c_cap);
    auto *ver = app.add_subcommand("verify", "Weyl-identity, LoS and eigenvalue consistency checks");
    add_common(ver, c_ver);
    auto *dump = app.add_subcommand("dump", "write channel realizations as CSV");
    add_common(dump, c_dump);
    std::string dump_model = "planewave-isotropic";
    double dump_spacing = 0.5;
    std::size_t dump_trials = 1;
    dump->add_option("--model", dump_model)
        ->check(CLI::IsMember({"planewave-isotropic", "planewave-vmf", "clarke", "iid"}));
    dump->add_option("--spacing", dump_spacing, "antenna spacing in wavelengths");
    dump->add_option("--count", dump_trials, "number of realizations");

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (!backend.empty())
            kernels::set_backend(backend == "avx2" ? kernels::Backend::avx2 : kernels::Backend::scalar);

        if (*count)
        {
            const auto cfg = resolve(c_count);
            CountResult r;
            const auto out = run_count(cfg, &r);
            std::cout << "lattice_count " << r.lattice << "\nasymptotic_count " << r.asymptotic << '\n';
            print_outputs(out);
        }
        else if (*var)
            print_outputs(run_variances(resolve(c_var)));
        else if (*cap)
        {
            const auto cfg = resolve(c_cap);
            const auto out = run_capacity(cfg);
            std::ifstream f(out.artifacts.front());
            std::cout << f.rdbuf();
            print_outputs(out);
        }
        else if (*ver)
        {
            VerifyReport rep;
            const auto out = run_verify(resolve(c_ver), &rep);
            std::cout << rep.to_json() << '\n';
            print_outputs(out);
            return rep.status() == "fail" ? 1 : 0;
        }
        else if (*dump)
        {
            const auto cfg = resolve(c_dump);
            const Medium m = make_medium(cfg);
            const ApertureSpec a = make_aperture(cfg.aperture_x_m, cfg.aperture_y_m, cfg.aperture_z_m,
                                                 dump_spacing * cfg.wavelength_m);
            std::unique_ptr<ChannelModel> model;
            if (dump_model == "clarke")
                model = std::make_unique<ClarkeEnsemble>(a, a, m);
            else if (dump_model == "iid")
                model = std::make_unique<IidEnsemble>(a.size(), a.size());
            else
            {
                ExperimentConfig sc = cfg;
                sc.spectrum = dump_model == "planewave-vmf" ? "vmf" : "isotropic";
                const auto spec = make_spectrum(sc);
                VarianceOptions vo;
                vo.tol = cfg.quadrature_tol;
                vo.threads = cfg.threads;
                auto map = variance_map(*spec, *spec, a.Lx, a.Ly, a.Lx, a.Ly, m, vo);
                model = std::make_unique<PlaneWaveEnsemble>(build_basis(a, m, Side::receive),
                                                            build_basis(a, m, Side::source), std::move(map), dump_model);
            }
            std::filesystem::create_directories(cfg.output_dir);
            const auto p = (std::filesystem::path(cfg.output_dir) / "realizations.csv").string();
            {
                std::ofstream f(p, std::ios::binary);
                if (!f)
                    throw std::runtime_error("cannot write " + p);
                write_realizations_csv(*model, cfg.seed, dump_trials, f);
            }
            print_outputs({{p}, write_manifest(cfg, "dump", {p})});
        }
    }
    catch (const std::exception &e)
    {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
