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

#ifndef HMIMO_SPECTRUM_HPP
#define HMIMO_SPECTRUM_HPP

#include "hmimo/geometry.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace hmimo
{
    // Normalized angular power density on the upper hemisphere in (theta, phi) coordinates.
    //
    // density() already contains the sin(theta) area factor, so integrating it over
    // theta in [0, pi/2] and phi in [0, 2 pi) gives 1. In wavenumber coordinates this is the
    // per-side spectral factor A(kx, ky) divided by the Jacobian gamma: with kx = kappa sin(theta) cos(phi),
    // ky = kappa sin(theta) sin(phi) one has dkx dky / (kappa gamma) = sin(theta) dtheta dphi. The
    // constants kappa eta / 2 and the isotropic A = (2 / kappa eta) (2 pi / sqrt(kappa))^2 cancel
    // under unit-power normalization and never appear at run time.
    class AngularSpectrum
    {
    public:
        virtual ~AngularSpectrum() = default;
        virtual double density(double theta, double phi) const = 0;
        virtual std::string description() const = 0;
    };

    using SpectrumPtr = std::shared_ptr<const AngularSpectrum>;

    // Uniform power per solid angle: sin(theta) / (2 pi).
    SpectrumPtr isotropic_spectrum();

    struct VmfParams
    {
        double alpha = 1.0;          // concentration
        double mean_elevation = 0.0; // mu_theta [rad]
        double mean_azimuth = 0.0;   // mu_phi [rad]
    };

    // Von Mises-Fisher lobe truncated to the upper hemisphere and renormalized there.
    class VmfSpectrum : public AngularSpectrum
    {
    public:
        explicit VmfSpectrum(const VmfParams &params);

        // alpha exp(alpha (sin t sin mt cos(p - mp) + cos t cos mt)) sin t / (4 pi sinh alpha), full-sphere normalized.
        double sphere_density(double theta, double phi) const;
        double density(double theta, double phi) const override { return sphere_density(theta, phi) / hemisphere_mass_; }
        std::string description() const override;

        // Full-sphere probability mass that falls on the upper hemisphere.
        double hemisphere_mass() const { return hemisphere_mass_; }
        const VmfParams &params() const { return p_; }

    private:
        VmfParams p_;
        double mx_, my_, mz_; // mean direction
        double scale_;        // alpha / (4 pi sinh alpha) with exp(-alpha) folded in
        double hemisphere_mass_ = 1.0;
    };

    std::shared_ptr<const VmfSpectrum> vmf_spectrum(const VmfParams &params);

    // Mean resultant length of the 3D VMF: coth(alpha) - 1/alpha.
    double mean_resultant_length(double alpha);

    // Concentration alpha such that sqrt(-2 ln R(alpha)) equals the circular variance nu [rad].
    // Bisection in log(alpha) to 1e-10 relative. Throws std::invalid_argument unless 0 < nu < pi/2.
    double solve_concentration(double circular_variance);

    // Joint (non-separable) density over receive and source directions; integrates to 1 over
    // the product of hemispheres.
    class JointAngularSpectrum
    {
    public:
        virtual ~JointAngularSpectrum() = default;
        virtual double density(double theta_r, double phi_r, double theta_s, double phi_s) const = 0;
        virtual std::string description() const = 0;
    };

    std::shared_ptr<const JointAngularSpectrum> product_spectrum(SpectrumPtr receive, SpectrumPtr source);

    // Per-side cell powers over one lattice ellipse.
    struct SideVariances
    {
        double Lx = 0.0, Ly = 0.0;
        std::vector<CellIndex> indices; // lattice_ellipse order
        std::vector<double> raw;        // integrals before renormalization
        std::vector<double> variance;   // normalized, sums to 1
        double raw_total = 0.0;         // sum before renormalization
        double quadrature_error = 0.0;  // summed error estimate

        double at(CellIndex index) const; // 0 outside the ellipse
    };

    // sigma^2(l, m) over the receive and source lattice ellipses. Separable maps store only the
    // per-side factors; joint maps carry the full n_r x n_s table with per-side marginals.
    class VarianceMap
    {
    public:
        static VarianceMap separable(SideVariances receive, SideVariances source);
        static VarianceMap joint(SideVariances receive_marginal, SideVariances source_marginal, Eigen::MatrixXd table);

        bool is_separable() const { return separable_; }
        const SideVariances &receive() const { return r_; }
        const SideVariances &source() const { return s_; }

        double sigma2(CellIndex l, CellIndex m) const;
        // n_r x n_s matrix in the index order of receive() / source().
        Eigen::MatrixXd matrix() const;

    private:
        SideVariances r_, s_;
        Eigen::MatrixXd table_;
        bool separable_ = true;
    };

    struct VarianceOptions
    {
        double tol = 1e-8;               // absolute tolerance per cell
        std::size_t max_intervals = 20000; // per adaptive level
        unsigned threads = 0;
    };

    // Power of `spectrum` over the preimage of cell_rect(index) intersected with the spectral disk.
    // Returns the unnormalized integral; throws QuadratureError naming the cell on failure.
    double cell_variance(const AngularSpectrum &spectrum, CellIndex index, double Lx, double Ly,
                         const Medium &medium, const VarianceOptions &opt = {});

    SideVariances side_variances(const AngularSpectrum &spectrum, double Lx, double Ly, const Medium &medium,
                                 const VarianceOptions &opt = {});

    VarianceMap variance_map(const AngularSpectrum &receive_spectrum, const AngularSpectrum &source_spectrum,
                             double Lr_x, double Lr_y, double Ls_x, double Ls_y, const Medium &medium,
                             const VarianceOptions &opt = {});

    // Joint-density variant: 4D quadrature over every product cell. Default tolerance is loose.
    VarianceMap joint_variance_map(const JointAngularSpectrum &spectrum, double Lr_x, double Lr_y, double Ls_x,
                                   double Ls_y, const Medium &medium, VarianceOptions opt = {.tol = 1e-6});

    // CSV with header "side,ix,iy,variance".
    void write_csv(const VarianceMap &map, std::ostream &os);
}

#endif
