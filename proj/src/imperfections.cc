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

#include <cmath>
#include <functional>
#include <numbers>

namespace polclone {

CloningOutcome run_with_overlap(const SetupConfig &cfg, const PolarizationQubit &input, double s) {
    if (!(s >= 0 && s <= 1)) {
        throw std::invalid_argument("run_with_overlap: s must lie in [0, 1]");
    }
    SetupConfig c = cfg;
    imperfections(c).overlap = s;
    RunOptions opts;
    opts.temporal_modes = true;
    return run(input, c, opts);
}

std::vector<HomPoint> hom_dip_curve(double reflectance, std::span<const double> overlaps) {
    auto splitter = beam_splitter(reflectance, 0, 1);
    ModeSet modes = ModeSet::two_arms(2);
    std::vector<HomPoint> out;
    for (double s : overlaps) {
        if (!(s >= 0 && s <= 1)) {
            throw std::invalid_argument("hom_dip_curve: overlap must lie in [0, 1]");
        }
        std::vector<Complex> a(modes.size());
        std::vector<Complex> b(modes.size());
        a[modes.index_of({0, Polarization::V, 0})] = 1;
        b[modes.index_of({1, Polarization::V, 0})] = s;
        b[modes.index_of({1, Polarization::V, 1})] = std::sqrt(1 - s * s);
        auto state = apply_element(create_two_photons(a, b, modes), splitter);
        double p = 0;
        for (size_t k = 0; k < state.dimension(); k++) {
            auto [i, j] = pair_of(k, modes.size());
            if (modes[i].arm != modes[j].arm) {
                p += std::norm(state.amplitudes()[k]);
            }
        }
        out.push_back({s, p});
    }
    return out;
}

OverlapFit fit_overlap(const FidelityPair &measured, const SetupConfig &cfg) {
    for (double f : {measured.f1, measured.f2}) {
        if (!(f >= 0.5 && f <= 1)) {
            throw std::invalid_argument("fit_overlap: measured fidelities must lie in [1/2, 1]");
        }
    }
    auto objective = [&](double s) {
        SetupConfig c = cfg;
        imperfections(c).overlap = s;
        RunOptions opts;
        opts.temporal_modes = true;
        auto scan = equator_scan(c, opts);
        double d1 = scan.mean_f1 - measured.f1;
        double d2 = scan.mean_f2 - measured.f2;
        return d1 * d1 + d2 * d2;
    };

    constexpr double kTolerance = 1e-5;
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    double a = 0;
    double b = 1;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = objective(c);
    double fd = objective(d);
    while (b - a > kTolerance) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = objective(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = objective(d);
        }
    }
    OverlapFit fit{0.5 * (a + b), 0, false};
    fit.residual = objective(fit.overlap);
    for (double edge : {0.0, 1.0}) {
        double fe = objective(edge);
        if (fe <= fit.residual) {
            fit = {edge, fe, true};
        }
    }
    return fit;
}

SetupConfig apply_ancilla_offset(SetupConfig cfg, double theta, double phi) {
    imperfections(cfg).ancilla = PolarizationQubit(theta, phi);
    return cfg;
}

SharedSinusoid fit_shared_sinusoid(std::span<const double> phis, std::span<const double> y1,
                                   std::span<const double> y2) {
    size_t n = phis.size();
    if (n < 3 || y1.size() != n || y2.size() != n) {
        throw std::invalid_argument("fit_shared_sinusoid: need at least three points per series");
    }
    struct Line {
        double mean, amp, sse;
    };
    // Least squares y = m + a c for fixed regressor c.
    auto fit_line = [&](std::span<const double> y, const std::vector<double> &c) {
        double sc = 0, scc = 0, sy = 0, scy = 0;
        for (size_t k = 0; k < n; k++) {
            sc += c[k];
            scc += c[k] * c[k];
            sy += y[k];
            scy += c[k] * y[k];
        }
        double den = n * scc - sc * sc;
        double amp = std::abs(den) < 1e-300 ? 0 : (n * scy - sc * sy) / den;
        double mean = (sy - amp * sc) / n;
        double sse = 0;
        for (size_t k = 0; k < n; k++) {
            double r = y[k] - mean - amp * c[k];
            sse += r * r;
        }
        return Line{mean, amp, sse};
    };
    auto evaluate = [&](double phase) {
        std::vector<double> c(n);
        for (size_t k = 0; k < n; k++) {
            c[k] = std::cos(phis[k] - phase);
        }
        return std::pair{fit_line(y1, c), fit_line(y2, c)};
    };
    auto total = [&](double phase) {
        auto [a, b] = evaluate(phase);
        return a.sse + b.sse;
    };

    // Amplitudes may be negative, so phases modulo pi suffice.
    constexpr int kGrid = 3600;
    double best = 0;
    double best_val = total(0);
    for (int k = 1; k < kGrid; k++) {
        double ph = std::numbers::pi * k / kGrid;
        double v = total(ph);
        if (v < best_val) {
            best_val = v;
            best = ph;
        }
    }
    double step = std::numbers::pi / kGrid;
    double lo = best - step;
    double hi = best + step;
    const double inv_phi = (std::sqrt(5.0) - 1) / 2;
    for (int it = 0; it < 100; it++) {
        double c = hi - inv_phi * (hi - lo);
        double d = lo + inv_phi * (hi - lo);
        if (total(c) < total(d)) {
            hi = d;
        } else {
            lo = c;
        }
    }
    double phase = 0.5 * (lo + hi);
    auto [a, b] = evaluate(phase);
    SharedSinusoid out;
    out.mean1 = a.mean;
    out.amp1 = a.amp;
    out.mean2 = b.mean;
    out.amp2 = b.amp;
    out.phase = phase;
    out.rms_residual = std::sqrt((a.sse + b.sse) / (2.0 * n));
    return out;
}

}  // namespace polclone
