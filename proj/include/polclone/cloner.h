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

#ifndef POLCLONE_CLONER_H
#define POLCLONE_CLONER_H

#include <variant>
#include <vector>

#include "polclone/elements.h"
#include "polclone/state.h"
#include "polclone/theory.h"

namespace polclone {

// Arm conventions shared by both setups: the signal enters arm 0 and the
// ancilla arm 1; clone 1 leaves in arm 0 and clone 2 in arm 1.
inline constexpr int kClone1Arm = 0;
inline constexpr int kClone2Arm = 1;

/// Deviations from the ideal device.
struct ImperfectionParams {
    /// Temporal overlap amplitude of the two photons, in [0, 1].
    double overlap = 1;
    /// Uncompensated H/V phase on the clone 1 arm (radians).
    double residual_phase = 0;
    /// Ancilla polarization; the ideal device uses |V>.
    PolarizationQubit ancilla = PolarizationQubit::vertical();
};

/// Unbalanced splitter setup. GP_nu filters clone 1, GP_eta clone 2.
struct SbsConfig {
    double reflectance_v = kSymmetricSbsReflectanceV;
    double reflectance_h = 1 - kSymmetricSbsReflectanceV;
    double sigma_eta = 1;
    double sigma_nu = 1;
    /// Absolute amplitude transmittance of each filter's less attenuated
    /// polarization.
    double eta_favored = 1;
    double nu_favored = 1;
    ImperfectionParams imperfections;

    FilterAmplitudes eta() const { return filter_for_ratio(sigma_eta, eta_favored); }
    FilterAmplitudes nu() const { return filter_for_ratio(sigma_nu, nu_favored); }

    /// Ideal filters solved for asymmetry q.
    static SbsConfig for_asymmetry(double q, double reflectance_v, double reflectance_h);
};

/// Fiber coupler followed by a bulk splitter. GP_eta filters the common
/// beam before the bulk splitter, GP_nu filters clone 2.
struct HybridConfig {
    double coupler_reflectance = 0.5;
    double reflectance_v = 0.5;
    double reflectance_h = 0.5;
    double sigma_eta = 1;
    double sigma_nu = 1;
    double eta_favored = 1;
    double nu_favored = 1;
    ImperfectionParams imperfections;

    FilterAmplitudes eta() const { return filter_for_ratio(sigma_eta, eta_favored); }
    FilterAmplitudes nu() const { return filter_for_ratio(sigma_nu, nu_favored); }

    static HybridConfig for_asymmetry(double q, double reflectance_v, double reflectance_h,
                                      double coupler_reflectance = 0.5);
};

using SetupConfig = std::variant<SbsConfig, HybridConfig>;

SetupKind setup_kind(const SetupConfig &cfg);
const ImperfectionParams &imperfections(const SetupConfig &cfg);
ImperfectionParams &imperfections(SetupConfig &cfg);

/// Replaces the ideal favored amplitudes (1) by those of tilted-plate stacks
/// realizing the configured ratios. Throws InfeasibleFilterError.
SetupConfig with_fresnel_filters(SetupConfig cfg, const FresnelPlate &plate);

struct CloningOutcome {
    /// Absolute coincidence probabilities per input pair.
    double c_pp = 0;
    double c_pm = 0;
    double c_mp = 0;
    double c_mm = 0;
    double f1 = 0;
    double f2 = 0;
    double success = 0;
    /// Unit-norm state after coincidence postselection.
    TwoPhotonState postselected = TwoPhotonState::zero(ModeSet::two_arms());

    double c_sum() const { return c_pp + c_pm + c_mp + c_mm; }
};

struct RunOptions {
    /// Twirl phase: U(angle) on the input, U(-angle) on both clones.
    double twirl_angle = 0;
    /// Always use the two-temporal-bin mode set, even at perfect overlap.
    bool temporal_modes = false;
};

CloningOutcome run_sbs(const PolarizationQubit &input, const SbsConfig &cfg, const RunOptions &opts = {});
CloningOutcome run_hybrid(const PolarizationQubit &input, const HybridConfig &cfg, const RunOptions &opts = {});
CloningOutcome run(const PolarizationQubit &input, const SetupConfig &cfg, const RunOptions &opts = {});

struct Projected {
    TwoPhotonState state;
    /// Squared norm of the projected, not yet renormalized state.
    double probability;
};

/// Keeps only components with one photon in each of arms 0 and 1.
/// Throws DegenerateOutcomeError when nothing survives.
Projected coincidence_project(const TwoPhotonState &state);

/// Keeps only components with both photons in `arm` (no renormalization).
TwoPhotonState bunch_project(const TwoPhotonState &state, int arm);

struct CoincidenceRates {
    double pp = 0;
    double pm = 0;
    double mp = 0;
    double mm = 0;
};

/// Projects clone 1 and clone 2 onto {psi, psi_perp} each, summing over
/// temporal bins. For a unit-norm coincidence state the rates sum to 1.
CoincidenceRates coincidence_rates(const TwoPhotonState &state, const PolarizationQubit &psi);

/// Fidelities averaged over n equally spaced twirl phases in [0, 2pi).
FidelityPair twirl(const SetupConfig &cfg, const PolarizationQubit &input, int n_phases);

struct ScanRow {
    int k;
    double phi;
    double f1;
    double f2;
    double success;
};

struct EquatorScan {
    std::vector<ScanRow> rows;
    double mean_f1 = 0;
    double mean_f2 = 0;
    double std_f1 = 0;
    double std_f2 = 0;
};

/// Nine equatorial inputs phi = k pi / 4, k = -4..4.
EquatorScan equator_scan(const SetupConfig &cfg, const RunOptions &opts = {});

}  // namespace polclone

#endif
