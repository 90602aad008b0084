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

#ifndef POLCLONE_ELEMENTS_H
#define POLCLONE_ELEMENTS_H

#include <stdexcept>
#include <string>
#include <vector>

#include "polclone/state.h"

namespace polclone {

/// Linear optical element: a scattering matrix M(out, in) over a mode
/// subset. Sub-unitary matrices describe filtering loss.
///
/// Labels carry temporal bin 0. When applied to a state with several
/// temporal bins the element acts identically on each bin.
class OpticalElement {
   public:
    OpticalElement(std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix);

    const std::vector<ModeLabel> &modes() const { return modes_; }
    const Eigen::MatrixXcd &matrix() const { return matrix_; }
    bool is_unitary() const { return unitary_; }

    /// The element over the full mode set of a state, replicated across
    /// temporal bins and identity on untouched modes.
    Eigen::MatrixXcd embed(const ModeSet &target) const;

   private:
    std::vector<ModeLabel> modes_;
    Eigen::MatrixXcd matrix_;
    bool unitary_;
};

TwoPhotonState apply_element(const TwoPhotonState &state, const OpticalElement &element);

/// `first` then `second`. Mode subsets are merged (first's order, then any
/// new modes of second).
OpticalElement compose(const OpticalElement &first, const OpticalElement &second);

/// Polarization-dependent beam splitter between arms a and b. Per
/// polarization p the block over (a_p, b_p) is [[t_p, r_p], [r_p, -t_p]]
/// with r_p = sqrt(R_p), t_p = sqrt(1 - R_p).
OpticalElement pol_beam_splitter(double reflectance_v, double reflectance_h, int arm_a, int arm_b);

/// Polarization-independent splitter (fiber coupler / balanced BS).
inline OpticalElement beam_splitter(double reflectance, int arm_a, int arm_b) {
    return pol_beam_splitter(reflectance, reflectance, arm_a, arm_b);
}

/// diag(t_H, t_V) on one arm. Amplitudes in [0, 1].
OpticalElement pol_filter(double t_h, double t_v, int arm);

enum class WavePlate { Half, Quarter };

/// Retarder (retardance pi or pi/2) with its fast axis at `angle` from H.
/// Determinant-normalized Jones matrix.
OpticalElement wave_plate(WavePlate kind, double angle, int arm);

/// diag(e^{i delta}, 1) on (H, V) of one arm.
OpticalElement phase_shifter(double delta, int arm);

OpticalElement identity_element(int arm);

// Tilted glass-plate filters.

struct FresnelPlate {
    double refractive_index = 1.5;
    double tilt = 0;  // radians, angle of incidence
    int plates_per_filter = 2;
    int passes_per_plate = 2;

    int interfaces() const { return plates_per_filter * passes_per_plate; }
};

/// Intensity transmittances of a full filter (all plates, all interfaces).
struct FresnelTransmittance {
    double te;
    double tm;
};

FresnelTransmittance fresnel_plate(const FresnelPlate &plate);

/// Smallest TE/TM intensity ratio the plate stack reaches (grazing limit).
double min_achievable_ratio(const FresnelPlate &plate);

struct InfeasibleFilterError : std::runtime_error {
    InfeasibleFilterError(const std::string &what, double min_ratio)
        : std::runtime_error(what), min_ratio(min_ratio) {}
    double min_ratio;
};

/// Tilt at which T_TE / T_TM equals target (in (0, 1]). The tilt, index and
/// plate counts of `plate` other than tilt are used as given.
double tilt_for_ratio(double target, const FresnelPlate &plate);

/// Amplitude transmittances of one polarization filter.
struct FilterAmplitudes {
    double h = 1;
    double v = 1;

    /// (v/h)^2.
    double ratio() const { return (v * v) / (h * h); }
};

/// Filter with intensity ratio sigma = (t_V/t_H)^2 whose less attenuated
/// polarization has amplitude `favored`.
FilterAmplitudes filter_for_ratio(double sigma, double favored = 1.0);

/// Filter realized by a tilted-plate stack: the attenuated polarization is
/// TE, the favored one TM. Absolute transmittances follow from the tilt.
FilterAmplitudes fresnel_filter_for_ratio(double sigma, const FresnelPlate &plate);

inline OpticalElement pol_filter(const FilterAmplitudes &f, int arm) {
    return pol_filter(f.h, f.v, arm);
}

}  // namespace polclone

#endif
