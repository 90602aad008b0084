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

#include "polclone/imperfections.h"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace polclone;

TEST(run_with_overlap, full_overlap_matches_plain_run) {
    std::vector<SetupConfig> configs = {SbsConfig{}, SbsConfig::for_asymmetry(0.8, 0.758, 0.179),
                                        HybridConfig::for_asymmetry(0.6, 0.509, 0.466)};
    for (const auto &cfg : configs) {
        auto psi = PolarizationQubit::equatorial(0.9);
        auto a = run(psi, cfg);
        auto b = run_with_overlap(cfg, psi, 1);
        EXPECT_EQ(b.postselected.dimension(), 36u);
        EXPECT_NEAR(a.f1, b.f1, 1e-12);
        EXPECT_NEAR(a.f2, b.f2, 1e-12);
        EXPECT_NEAR(a.success, b.success, 1e-12);
        EXPECT_NEAR(a.c_pm, b.c_pm, 1e-12);
    }
}

TEST(run_with_overlap, rejects_out_of_range) {
    EXPECT_THROW(run_with_overlap(SbsConfig{}, PolarizationQubit::vertical(), 1.2), std::invalid_argument);
}

TEST(run_with_overlap, norm_accounting_in_temporal_space) {
    // Unfiltered SBS is unitary: the coincidence and bunched parts add to 1.
    SbsConfig cfg;
    for (double s : {0.0, 0.3, 0.7, 1.0}) {
        auto modes = ModeSet::two_arms(2);
        std::vector<Complex> sig(modes.size());
        std::vector<Complex> anc(modes.size());
        sig[modes.index_of({0, Polarization::V, 0})] = 1;
        anc[modes.index_of({1, Polarization::V, 0})] = s;
        anc[modes.index_of({1, Polarization::V, 1})] = std::sqrt(1 - s * s);
        auto in = create_two_photons(sig, anc, modes);
        EXPECT_EQ(in.dimension(), 36u);
        EXPECT_NEAR(in.norm_squared(), 1, 1e-14);
        auto out = apply_element(in, pol_beam_splitter(cfg.reflectance_v, cfg.reflectance_h, 0, 1));
        EXPECT_NEAR(out.norm_squared(), 1, 1e-14);
        double rv = cfg.reflectance_v;
        // Coincidence: |r^2 - t^2|^2 s^2 + (r^4 + t^4)(1 - s^2).
        double want = std::pow(2 * rv - 1, 2) * s * s + (rv * rv + (1 - rv) * (1 - rv)) * (1 - s * s);
        EXPECT_NEAR(run_with_overlap(cfg, PolarizationQubit::vertical(), s).success, want, 1e-12) << s;
    }
}

TEST(run_with_overlap, fidelities_fall_with_overlap) {
    double prev1 = 2;
    double prev2 = 2;
    for (int k = 20; k >= 0; k--) {
        auto o = run_with_overlap(SbsConfig{}, PolarizationQubit::equatorial(0), k / 20.0);
        EXPECT_LE(o.f1, prev1 + 1e-12);
        EXPECT_LE(o.f2, prev2 + 1e-12);
        prev1 = o.f1;
        prev2 = o.f2;
    }
}

TEST(hom_dip_curve, balanced_closed_form) {
    std::vector<double> s = {0, 0.25, 0.5, 0.75, 1};
    auto curve = hom_dip_curve(0.5, s);
    ASSERT_EQ(curve.size(), s.size());
    EXPECT_NEAR(curve.front().coincidence, 0.5, 1e-14);
    EXPECT_NEAR(curve.back().coincidence, 0, 1e-14);
    for (const auto &p : curve) {
        EXPECT_NEAR(p.coincidence, (1 - p.overlap * p.overlap) / 2, 1e-14);
    }
}

TEST(hom_dip_curve, unbalanced_cross_term) {
    double r = 0.509;
    std::vector<double> s = {1.0, 0.0, 0.6};
    auto curve = hom_dip_curve(r, s);
    double cross = std::pow(2 * r - 1, 2);
    double classical = r * r + (1 - r) * (1 - r);
    EXPECT_NEAR(curve[0].coincidence, cross, 1e-14);
    EXPECT_NEAR(curve[1].coincidence, classical, 1e-14);
    EXPECT_NEAR(curve[2].coincidence, 0.36 * cross + 0.64 * classical, 1e-14);
    std::vector<double> bad = {-0.1};
    EXPECT_THROW(hom_dip_curve(0.5, bad), std::invalid_argument);
}

TEST(fit_overlap, recovers_planted_value) {
    SetupConfig cfg = SbsConfig::for_asymmetry(0.7, 0.758, 0.179);
    SetupConfig planted = cfg;
    imperfections(planted).overlap = 0.9;
    RunOptions opts;
    opts.temporal_modes = true;
    auto scan = equator_scan(planted, opts);
    auto fit = fit_overlap({scan.mean_f1, scan.mean_f2}, cfg);
    EXPECT_NEAR(fit.overlap, 0.9, 1e-4);
    EXPECT_FALSE(fit.at_boundary);
    EXPECT_LT(fit.residual, 1e-10);
}

TEST(fit_overlap, ideal_values_give_full_overlap) {
    auto pc = pc_fidelities(0.5);
    auto fit = fit_overlap(pc, SbsConfig{});
    EXPECT_DOUBLE_EQ(fit.overlap, 1.0);
    EXPECT_TRUE(fit.at_boundary);
    EXPECT_LT(fit.residual, 1e-20);
}

TEST(fit_overlap, symmetric_table_row_needs_partial_overlap) {
    auto fit = fit_overlap({0.819, 0.840}, SbsConfig::for_asymmetry(0.51, 0.758, 0.179));
    EXPECT_LT(fit.overlap, 1);
    EXPECT_GT(fit.residual, 0);
    EXPECT_THROW(fit_overlap({0.3, 0.9}, SbsConfig{}), std::invalid_argument);
}

TEST(fit_shared_sinusoid, recovers_parameters) {
    std::vector<double> phis, y1, y2;
    for (int k = -4; k <= 4; k++) {
        double phi = k * std::numbers::pi / 4;
        phis.push_back(phi);
        y1.push_back(0.8 + 0.05 * std::cos(phi - 0.6));
        y2.push_back(0.85 - 0.02 * std::cos(phi - 0.6));
    }
    auto fit = fit_shared_sinusoid(phis, y1, y2);
    EXPECT_LT(fit.rms_residual, 1e-9);
    EXPECT_NEAR(fit.mean1, 0.8, 1e-9);
    EXPECT_NEAR(fit.mean2, 0.85, 1e-9);
    EXPECT_NEAR(std::abs(fit.amp1), 0.05, 1e-9);
    EXPECT_NEAR(fit.amp1 / fit.amp2, -2.5, 1e-6);
}

TEST(fit_shared_sinusoid, rejects_short_input) {
    std::vector<double> two = {0, 1};
    EXPECT_THROW(fit_shared_sinusoid(two, two, two), std::invalid_argument);
}

TEST(ancilla_offset, rate_sums_share_a_phase) {
    // Unnormalized single-clone rates are exact first harmonics in phi.
    auto cfg = apply_ancilla_offset(HybridConfig::for_asymmetry(0.7, 0.509, 0.466), 0.15, 0);
    std::vector<double> phis, a1, a2;
    for (int k = -4; k <= 4; k++) {
        double phi = k * std::numbers::pi / 4;
        auto o = run(PolarizationQubit::equatorial(phi), cfg);
        phis.push_back(phi);
        a1.push_back(o.c_pp + o.c_pm);
        a2.push_back(o.c_pp + o.c_mp);
    }
    EXPECT_LT(fit_shared_sinusoid(phis, a1, a2).rms_residual, 1e-12);
}
