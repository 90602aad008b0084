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

#include "polclone/cloner.h"

#include <cmath>
#include <numbers>

namespace polclone {

SbsConfig SbsConfig::for_asymmetry(double q, double reflectance_v, double reflectance_h) {
    auto s = sbs_filter_settings(q, reflectance_v, reflectance_h);
    SbsConfig cfg;
    cfg.reflectance_v = reflectance_v;
    cfg.reflectance_h = reflectance_h;
    cfg.sigma_eta = s.sigma_eta;
    cfg.sigma_nu = s.sigma_nu;
    return cfg;
}

HybridConfig HybridConfig::for_asymmetry(double q, double reflectance_v, double reflectance_h,
                                         double coupler_reflectance) {
    auto s = hybrid_filter_settings(q, reflectance_v, reflectance_h);
    HybridConfig cfg;
    cfg.coupler_reflectance = coupler_reflectance;
    cfg.reflectance_v = reflectance_v;
    cfg.reflectance_h = reflectance_h;
    cfg.sigma_eta = s.sigma_eta;
    cfg.sigma_nu = s.sigma_nu;
    return cfg;
}

SetupKind setup_kind(const SetupConfig &cfg) {
    return std::holds_alternative<SbsConfig>(cfg) ? SetupKind::Sbs : SetupKind::Hybrid;
}

const ImperfectionParams &imperfections(const SetupConfig &cfg) {
    return std::visit([](const auto &c) -> const ImperfectionParams & { return c.imperfections; }, cfg);
}

ImperfectionParams &imperfections(SetupConfig &cfg) {
    return std::visit([](auto &c) -> ImperfectionParams & { return c.imperfections; }, cfg);
}

SetupConfig with_fresnel_filters(SetupConfig cfg, const FresnelPlate &plate) {
    std::visit(
        [&](auto &c) {
            auto favored = [](const FilterAmplitudes &f) { return std::max(f.h, f.v); };
            c.eta_favored = favored(fresnel_filter_for_ratio(c.sigma_eta, plate));
            c.nu_favored = favored(fresnel_filter_for_ratio(c.sigma_nu, plate));
        },
        cfg);
    return cfg;
}

namespace {

void validate(const ImperfectionParams &p) {
    if (!(p.overlap >= 0 && p.overlap <= 1)) {
        throw std::invalid_argument("overlap must lie in [0, 1]");
    }
}

void validate_ratios(double sigma_eta, double sigma_nu) {
    if (!(sigma_eta > 0 && sigma_nu > 0) || !std::isfinite(sigma_eta) || !std::isfinite(sigma_nu)) {
        throw std::invalid_argument("filter ratios must be positive and finite");
    }
}

// Signal in arm 0 (bin 0); ancilla in arm 1 spread over temporal bins
// according to the overlap amplitude.
TwoPhotonState input_state(const PolarizationQubit &input, const ImperfectionParams &imp, bool temporal) {
    bool two_bins = temporal || imp.overlap < 1;
    ModeSet modes = ModeSet::two_arms(two_bins ? 2 : 1);
    std::vector<Complex> sig(modes.size());
    std::vector<Complex> anc(modes.size());
    sig[modes.index_of({0, Polarization::H, 0})] = input.h();
    sig[modes.index_of({0, Polarization::V, 0})] = input.v();
    double in_bin0 = imp.overlap;
    double in_bin1 = std::sqrt(std::max(0.0, 1 - imp.overlap * imp.overlap));
    anc[modes.index_of({1, Polarization::H, 0})] = imp.ancilla.h() * in_bin0;
    anc[modes.index_of({1, Polarization::V, 0})] = imp.ancilla.v() * in_bin0;
    if (two_bins) {
        anc[modes.index_of({1, Polarization::H, 1})] = imp.ancilla.h() * in_bin1;
        anc[modes.index_of({1, Polarization::V, 1})] = imp.ancilla.v() * in_bin1;
    }
    return create_two_photons(sig, anc, modes);
}

CloningOutcome finish(const TwoPhotonState &out, const PolarizationQubit &input) {
    auto projected = coincidence_project(out);
    auto rates = coincidence_rates(projected.state, input);
    double total = rates.pp + rates.pm + rates.mp + rates.mm;
    CloningOutcome o;
    o.success = projected.probability;
    o.c_pp = rates.pp / total * o.success;
    o.c_pm = rates.pm / total * o.success;
    o.c_mp = rates.mp / total * o.success;
    o.c_mm = rates.mm / total * o.success;
    o.f1 = (rates.pp + rates.pm) / total;
    o.f2 = (rates.pp + rates.mp) / total;
    o.postselected = std::move(projected.state);
    return o;
}

TwoPhotonState untwirl(TwoPhotonState s, double angle) {
    if (angle == 0) {
        return s;
    }
    s = apply_element(s, phase_shifter(-angle, kClone1Arm));
    return apply_element(s, phase_shifter(-angle, kClone2Arm));
}

}  // namespace

CloningOutcome run_sbs(const PolarizationQubit &input, const SbsConfig &cfg, const RunOptions &opts) {
    validate(cfg.imperfections);
    validate_ratios(cfg.sigma_eta, cfg.sigma_nu);
    auto s = input_state(input, cfg.imperfections, opts.temporal_modes);
    if (opts.twirl_angle != 0) {
        s = apply_element(s, phase_shifter(opts.twirl_angle, 0));
    }
    s = apply_element(s, pol_beam_splitter(cfg.reflectance_v, cfg.reflectance_h, 0, 1));
    // The transmitted-H/transmitted-V path picks up a relative sign under the
    // real splitter convention; a fixed pi retardation on clone 1 removes it.
    s = apply_element(s, phase_shifter(std::numbers::pi + cfg.imperfections.residual_phase, kClone1Arm));
    s = apply_element(s, pol_filter(cfg.nu(), kClone1Arm));
    s = apply_element(s, pol_filter(cfg.eta(), kClone2Arm));
    s = untwirl(std::move(s), opts.twirl_angle);
    return finish(s, input);
}

CloningOutcome run_hybrid(const PolarizationQubit &input, const HybridConfig &cfg, const RunOptions &opts) {
    validate(cfg.imperfections);
    validate_ratios(cfg.sigma_eta, cfg.sigma_nu);
    auto s = input_state(input, cfg.imperfections, opts.temporal_modes);
    if (opts.twirl_angle != 0) {
        s = apply_element(s, phase_shifter(opts.twirl_angle, 0));
    }
    s = apply_element(s, beam_splitter(cfg.coupler_reflectance, 0, 1));
    // First postselection: both photons leave the coupler in fiber 1.
    s = bunch_project(s, 1);
    s = apply_element(s, pol_filter(cfg.eta(), 1));
    // Bulk splitter fed from arm 1: the reflected port is clone 1.
    s = apply_element(s, pol_beam_splitter(cfg.reflectance_v, cfg.reflectance_h, 0, 1));
    s = apply_element(s, pol_filter(cfg.nu(), kClone2Arm));
    if (cfg.imperfections.residual_phase != 0) {
        s = apply_element(s, phase_shifter(cfg.imperfections.residual_phase, kClone1Arm));
    }
    s = untwirl(std::move(s), opts.twirl_angle);
    return finish(s, input);
}

CloningOutcome run(const PolarizationQubit &input, const SetupConfig &cfg, const RunOptions &opts) {
    if (const auto *sbs = std::get_if<SbsConfig>(&cfg)) {
        return run_sbs(input, *sbs, opts);
    }
    return run_hybrid(input, std::get<HybridConfig>(cfg), opts);
}

Projected coincidence_project(const TwoPhotonState &state) {
    auto out = state;
    const auto &modes = state.modes();
    size_t m = modes.size();
    for (size_t k = 0; k < out.dimension(); k++) {
        auto [i, j] = pair_of(k, m);
        bool split = (modes[i].arm == 0 && modes[j].arm == 1) || (modes[i].arm == 1 && modes[j].arm == 0);
        if (!split) {
            out.amplitudes()[k] = 0;
        }
    }
    double p = out.norm_squared();
    if (p < kZeroAmplitude * kZeroAmplitude) {
        throw DegenerateOutcomeError("coincidence postselection never succeeds for this configuration");
    }
    auto n = normalize(out);
    return {std::move(n.state), p};
}

TwoPhotonState bunch_project(const TwoPhotonState &state, int arm) {
    auto out = state;
    const auto &modes = state.modes();
    size_t m = modes.size();
    for (size_t k = 0; k < out.dimension(); k++) {
        auto [i, j] = pair_of(k, m);
        if (modes[i].arm != arm || modes[j].arm != arm) {
            out.amplitudes()[k] = 0;
        }
    }
    return out;
}

CoincidenceRates coincidence_rates(const TwoPhotonState &state, const PolarizationQubit &psi) {
    const auto &modes = state.modes();
    Eigen::Vector2cd basis[2] = {psi.jones(), psi.orthogonal().jones()};
    double rates[2][2] = {{0, 0}, {0, 0}};
    for (int b1 : modes.bins()) {
        for (int b2 : modes.bins()) {
            Eigen::Matrix2cd amp;
            for (int p1 = 0; p1 < 2; p1++) {
                for (int p2 = 0; p2 < 2; p2++) {
                    amp(p1, p2) = state.pair_amplitude({kClone1Arm, static_cast<Polarization>(p1), b1},
                                                       {kClone2Arm, static_cast<Polarization>(p2), b2});
                }
            }
            for (int x = 0; x < 2; x++) {
                for (int y = 0; y < 2; y++) {
                    Complex a = basis[x].adjoint() * amp * basis[y].conjugate();
                    rates[x][y] += std::norm(a);
                }
            }
        }
    }
    return {rates[0][0], rates[0][1], rates[1][0], rates[1][1]};
}

FidelityPair twirl(const SetupConfig &cfg, const PolarizationQubit &input, int n_phases) {
    if (n_phases < 1) {
        throw std::invalid_argument("twirl: n_phases must be at least 1");
    }
    double f1 = 0;
    double f2 = 0;
    for (int j = 0; j < n_phases; j++) {
        RunOptions opts;
        opts.twirl_angle = 2 * std::numbers::pi * j / n_phases;
        auto o = run(input, cfg, opts);
        f1 += o.f1;
        f2 += o.f2;
    }
    return {f1 / n_phases, f2 / n_phases};
}

EquatorScan equator_scan(const SetupConfig &cfg, const RunOptions &opts) {
    EquatorScan scan;
    for (int k = -4; k <= 4; k++) {
        double phi = k * std::numbers::pi / 4;
        auto o = run(PolarizationQubit::equatorial(phi), cfg, opts);
        scan.rows.push_back({k, phi, o.f1, o.f2, o.success});
    }
    double n = static_cast<double>(scan.rows.size());
    for (const auto &r : scan.rows) {
        scan.mean_f1 += r.f1 / n;
        scan.mean_f2 += r.f2 / n;
    }
    for (const auto &r : scan.rows) {
        scan.std_f1 += (r.f1 - scan.mean_f1) * (r.f1 - scan.mean_f1);
        scan.std_f2 += (r.f2 - scan.mean_f2) * (r.f2 - scan.mean_f2);
    }
    scan.std_f1 = std::sqrt(scan.std_f1 / (n - 1));
    scan.std_f2 = std::sqrt(scan.std_f2 / (n - 1));
    return scan;
}

}  // namespace polclone
