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

#ifndef POLCLONE_IMPERFECTIONS_H
#define POLCLONE_IMPERFECTIONS_H

#include <span>
#include <vector>

#include "polclone/cloner.h"

namespace polclone {

/// Runs the setup on the two-temporal-bin mode set with the ancilla overlap
/// amplitude set to s. s = 1 reproduces the ideal run.
CloningOutcome run_with_overlap(const SetupConfig &cfg, const PolarizationQubit &input, double s);

struct HomPoint {
    double overlap;
    double coincidence;
};

/// Coincidence probability of two V photons on a splitter with V
/// reflectance R, versus temporal overlap. For R = 1/2 this is (1 - s^2)/2.
std::vector<HomPoint> hom_dip_curve(double reflectance, std::span<const double> overlaps);

struct OverlapFit {
    double overlap;
    /// Sum of squared fidelity errors at the optimum.
    double residual;
    /// The optimum sits on 0 or 1, so the minimum may not be bracketed.
    bool at_boundary;
};

/// Golden-section search (tolerance 1e-5) for the overlap whose equator-scan
/// mean fidelities best match `measured`.
OverlapFit fit_overlap(const FidelityPair &measured, const SetupConfig &cfg);

/// Same config with the ancilla moved off the pole to (theta, phi).
SetupConfig apply_ancilla_offset(SetupConfig cfg, double theta, double phi);

/// m1 + a1 cos(phi - phase) and m2 + a2 cos(phi - phase) fitted jointly by
/// least squares.
struct SharedSinusoid {
    double mean1 = 0;
    double amp1 = 0;
    double mean2 = 0;
    double amp2 = 0;
    double phase = 0;
    /// Root-mean-square deviation over both series.
    double rms_residual = 0;
};

SharedSinusoid fit_shared_sinusoid(std::span<const double> phis, std::span<const double> y1,
                                   std::span<const double> y2);

}  // namespace polclone

#endif
