// Copyright 2026 The polclone Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef POLCLONE_THEORY_H
#define POLCLONE_THEORY_H

#include <optional>
#include <string_view>

#include "polclone/elements.h"

namespace polclone {

struct FidelityPair {
    double f1;
    double f2;
};

/// Optimal asymmetric phase-covariant cloner, q in [0, 1]:
/// F1 = (1 + sqrt(1 - q)) / 2, F2 = (1 + sqrt(q)) / 2.
FidelityPair pc_fidelities(double q);

/// Optimal asymmetric universal cloner, p in [0, 1].
FidelityPair universal_fidelities(double p);

enum class SetupKind { Sbs, Hybrid };

std::string_view setup_name(SetupKind kind);
SetupKind parse_setup(std::string_view name);

/// Intensity transmittance ratios (t_V / t_H)^2 of the two filters for one
/// asymmetry q.
struct FilterSettings {
    double q = 0.5;
    double sigma_eta = 1;
    double sigma_nu = 1;
    /// False when a tilted-plate stack cannot reach one of the ratios. Only
    /// evaluated by with_tilts; the solvers leave it true.
    bool feasible = true;
    std::optional<double> tilt_eta;
    std::optional<double> tilt_nu;
};

/// Filter ratios turning the unbalanced splitter setup into the optimal cloner.
/// Rejects |2 R_V - 1| < 1e-6 (balanced V splitting cannot work) and q at
/// the endpoints.
FilterSettings sbs_filter_settings(double q, double reflectance_v, double reflectance_h);

/// Filter ratios for the coupler + bulk splitter setup.
FilterSettings hybrid_filter_settings(double q, double reflectance_v, double reflectance_h);

FilterSettings filter_settings(SetupKind kind, double q, double reflectance_v, double reflectance_h);

/// Adds plate tilts for both ratios and sets `feasible`.
FilterSettings with_tilts(FilterSettings settings, const FresnelPlate &plate);

/// Success probability of the splitter setup: (eta_V nu_V (r_V^2 - t_V^2))^2.
/// eta acts on clone 2, nu on clone 1.
double sbs_success(double reflectance_v, const FilterAmplitudes &eta, const FilterAmplitudes &nu);

/// Success probability of the hybrid setup: (2 r t eta_V^2 t_V r_V nu_V)^2.
double hybrid_success(double coupler_reflectance, double reflectance_v, const FilterAmplitudes &eta,
                      const FilterAmplitudes &nu);

/// Closed-form success with ideal filters (favored amplitude 1).
double ideal_sbs_success(double q, double reflectance_v, double reflectance_h);
double ideal_hybrid_success(double q, double reflectance_v, double reflectance_h,
                            double coupler_reflectance = 0.5);

/// Splitter reflectances for which the symmetric cloner needs no filters.
inline constexpr double kSymmetricSbsReflectanceV = 0.78867513459481288225;  // (1 + 1/sqrt 3) / 2

struct QInterval {
    double lo = 0;
    double hi = 0;
    bool empty = true;

    bool contains(double q) const { return !empty && q >= lo && q <= hi; }
};

/// Asymmetries for which both filter ratios satisfy
/// min_ratio <= sigma <= 1 / min_ratio. min_ratio <= 0 means unlimited.
QInterval feasible_q_range(SetupKind kind, double reflectance_v, double reflectance_h, double min_ratio);

}  // namespace polclone

#endif
