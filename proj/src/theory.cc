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

#include "polclone/theory.h"

#include <cmath>
#include <stdexcept>
#include <string>

namespace polclone {

namespace {

void require_unit_interval(double x, const char *what) {
    if (!(x >= 0 && x <= 1)) {
        throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    }
}

void require_open_q(double q) {
    if (!(q > 0 && q < 1)) {
        throw std::invalid_argument("filter settings: q must lie in (0, 1); the ratios diverge at the endpoints");
    }
}

}  // namespace

FidelityPair pc_fidelities(double q) {
    require_unit_interval(q, "pc_fidelities: q");
    return {0.5 * (1 + std::sqrt(1 - q)), 0.5 * (1 + std::sqrt(q))};
}

FidelityPair universal_fidelities(double p) {
    require_unit_interval(p, "universal_fidelities: p");
    double den = 2 * (1 - p + p * p);
    return {1 - (1 - p) * (1 - p) / den, 1 - p * p / den};
}

std::string_view setup_name(SetupKind kind) {
    return kind == SetupKind::Sbs ? "sbs" : "hybrid";
}

SetupKind parse_setup(std::string_view name) {
    if (name == "sbs") {
        return SetupKind::Sbs;
    }
    if (name == "hybrid") {
        return SetupKind::Hybrid;
    }
    throw std::invalid_argument("unknown setup '" + std::string(name) + "' (expected sbs or hybrid)");
}

FilterSettings sbs_filter_settings(double q, double reflectance_v, double reflectance_h) {
    require_open_q(q);
    require_unit_interval(reflectance_v, "R_V");
    require_unit_interval(reflectance_h, "R_H");
    double contrast = 2 * reflectance_v - 1;
    if (std::abs(contrast) < 1e-6) {
        throw std::invalid_argument("sbs_filter_settings: R_V = 1/2 is singular, no filter setting exists");
    }
    double c2 = contrast * contrast;
    FilterSettings s;
    s.q = q;
    s.sigma_eta = reflectance_v * reflectance_h / c2 / q;
    s.sigma_nu = (1 - reflectance_v) * (1 - reflectance_h) / c2 / (1 - q);
    return s;
}

FilterSettings hybrid_filter_settings(double q, double reflectance_v, double reflectance_h) {
    require_open_q(q);
    require_unit_interval(reflectance_v, "R_V");
    require_unit_interval(reflectance_h, "R_H");
    if (reflectance_v <= 0 || reflectance_h <= 0 || reflectance_v >= 1) {
        throw std::invalid_argument("hybrid_filter_settings: need 0 < R_H and 0 < R_V < 1");
    }
    FilterSettings s;
    s.q = q;
    s.sigma_eta = reflectance_h / reflectance_v / (4 * (1 - q));
    s.sigma_nu = reflectance_v * (1 - reflectance_h) / (reflectance_h * (1 - reflectance_v)) * (1 - q) / q;
    return s;
}

FilterSettings filter_settings(SetupKind kind, double q, double reflectance_v, double reflectance_h) {
    return kind == SetupKind::Sbs ? sbs_filter_settings(q, reflectance_v, reflectance_h)
                                  : hybrid_filter_settings(q, reflectance_v, reflectance_h);
}

FilterSettings with_tilts(FilterSettings settings, const FresnelPlate &plate) {
    auto tilt = [&](double sigma) -> std::optional<double> {
        try {
            return tilt_for_ratio(sigma <= 1 ? sigma : 1 / sigma, plate);
        } catch (const InfeasibleFilterError &) {
            return std::nullopt;
        }
    };
    settings.tilt_eta = tilt(settings.sigma_eta);
    settings.tilt_nu = tilt(settings.sigma_nu);
    settings.feasible = settings.tilt_eta.has_value() && settings.tilt_nu.has_value();
    return settings;
}

double sbs_success(double reflectance_v, const FilterAmplitudes &eta, const FilterAmplitudes &nu) {
    require_unit_interval(reflectance_v, "R_V");
    double a = eta.v * nu.v * (2 * reflectance_v - 1);
    return a * a;
}

double hybrid_success(double coupler_reflectance, double reflectance_v, const FilterAmplitudes &eta,
                      const FilterAmplitudes &nu) {
    require_unit_interval(coupler_reflectance, "coupler reflectance");
    require_unit_interval(reflectance_v, "R_V");
    double rt = std::sqrt(coupler_reflectance * (1 - coupler_reflectance));
    double tv_rv = std::sqrt(reflectance_v * (1 - reflectance_v));
    double a = 2 * rt * eta.v * eta.v * tv_rv * nu.v;
    return a * a;
}

double ideal_sbs_success(double q, double reflectance_v, double reflectance_h) {
    auto s = sbs_filter_settings(q, reflectance_v, reflectance_h);
    return sbs_success(reflectance_v, filter_for_ratio(s.sigma_eta), filter_for_ratio(s.sigma_nu));
}

double ideal_hybrid_success(double q, double reflectance_v, double reflectance_h, double coupler_reflectance) {
    auto s = hybrid_filter_settings(q, reflectance_v, reflectance_h);
    return hybrid_success(coupler_reflectance, reflectance_v, filter_for_ratio(s.sigma_eta),
                          filter_for_ratio(s.sigma_nu));
}

QInterval feasible_q_range(SetupKind kind, double reflectance_v, double reflectance_h, double min_ratio) {
    if (min_ratio >= 1) {
        throw std::invalid_argument("feasible_q_range: min_ratio must be below 1");
    }
    auto ok = [&](double q) {
        if (!(q > 0 && q < 1)) {
            return false;
        }
        if (min_ratio <= 0) {
            return true;
        }
        auto s = filter_settings(kind, q, reflectance_v, reflectance_h);
        auto within = [&](double sigma) { return sigma >= min_ratio && sigma <= 1 / min_ratio; };
        return within(s.sigma_eta) && within(s.sigma_nu);
    };
    // Each ratio is monotone in q, so the feasible set is one interval.
    constexpr int kGrid = 20000;
    double seed = -1;
    for (int k = 1; k < kGrid; k++) {
        double q = static_cast<double>(k) / kGrid;
        if (ok(q)) {
            seed = q;
            break;
        }
    }
    if (seed < 0) {
        return {};
    }
    auto edge = [&](double inside, double outside) {
        for (int it = 0; it < 200 && std::abs(inside - outside) > 1e-14; it++) {
            double mid = 0.5 * (inside + outside);
            (ok(mid) ? inside : outside) = mid;
        }
        return inside;
    };
    return {edge(seed, 0.0), edge(seed, 1.0), false};
}

}  // namespace polclone
