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

#include "polclone/elements.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/SVD>

namespace polclone {

namespace {

constexpr double kUnitaryTolerance = 1e-10;
constexpr double kGainTolerance = 1e-12;

std::vector<ModeLabel> arm_modes(int arm) {
    return {{arm, Polarization::H, 0}, {arm, Polarization::V, 0}};
}

OpticalElement single_arm(int arm, const Eigen::Matrix2cd &m) {
    return OpticalElement(arm_modes(arm), m);
}

}  // namespace

OpticalElement::OpticalElement(std::vector<ModeLabel> modes, Eigen::MatrixXcd matrix)
    : modes_(std::move(modes)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || static_cast<size_t>(matrix_.rows()) != modes_.size()) {
        throw std::invalid_argument("OpticalElement: matrix must be square over the mode subset");
    }
    ModeSet check(modes_);  // rejects duplicates
    for (const auto &m : modes_) {
        if (m.bin != 0) {
            throw std::invalid_argument("OpticalElement: labels must use temporal bin 0");
        }
    }
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(matrix_);
    if (svd.singularValues().maxCoeff() > 1 + kGainTolerance) {
        throw std::invalid_argument("OpticalElement: matrix has gain (singular value above 1)");
    }
    auto n = matrix_.rows();
    unitary_ = ((matrix_.adjoint() * matrix_ - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() <=
                kUnitaryTolerance);
}

Eigen::MatrixXcd OpticalElement::embed(const ModeSet &target) const {
    auto m = static_cast<Eigen::Index>(target.size());
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(m, m);
    for (int bin : target.bins()) {
        std::vector<Eigen::Index> idx;
        for (const auto &label : modes_) {
            ModeLabel shifted{label.arm, label.pol, bin};
            if (!target.contains(shifted)) {
                throw std::invalid_argument("apply_element: mode " + shifted.str() + " missing from the state");
            }
            idx.push_back(static_cast<Eigen::Index>(target.index_of(shifted)));
        }
        for (size_t r = 0; r < idx.size(); r++) {
            for (size_t c = 0; c < idx.size(); c++) {
                u(idx[r], idx[c]) = matrix_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
            }
        }
    }
    return u;
}

TwoPhotonState apply_element(const TwoPhotonState &state, const OpticalElement &element) {
    return apply_mode_transformation(state, element.embed(state.modes()));
}

OpticalElement compose(const OpticalElement &first, const OpticalElement &second) {
    std::vector<ModeLabel> merged = first.modes();
    for (const auto &m : second.modes()) {
        if (std::find(merged.begin(), merged.end(), m) == merged.end()) {
            merged.push_back(m);
        }
    }
    ModeSet set(merged);
    Eigen::MatrixXcd product = second.embed(set) * first.embed(set);
    return OpticalElement(std::move(merged), std::move(product));
}

OpticalElement pol_beam_splitter(double reflectance_v, double reflectance_h, int arm_a, int arm_b) {
    for (double r : {reflectance_v, reflectance_h}) {
        if (!(r >= 0 && r <= 1)) {
            throw std::invalid_argument("pol_beam_splitter: reflectance must lie in [0, 1]");
        }
    }
    if (arm_a == arm_b) {
        throw std::invalid_argument("pol_beam_splitter: arms must differ");
    }
    // Modes: a_H, a_V, b_H, b_V.
    std::vector<ModeLabel> modes{{arm_a, Polarization::H, 0},
                                 {arm_a, Polarization::V, 0},
                                 {arm_b, Polarization::H, 0},
                                 {arm_b, Polarization::V, 0}};
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(4, 4);
    double rs[2] = {reflectance_h, reflectance_v};
    for (int p = 0; p < 2; p++) {
        double r = std::sqrt(rs[p]);
        double t = std::sqrt(1 - rs[p]);
        int a = p;
        int b = 2 + p;
        m(a, a) = t;
        m(b, a) = r;
        m(a, b) = r;
        m(b, b) = -t;
    }
    return OpticalElement(std::move(modes), std::move(m));
}

OpticalElement pol_filter(double t_h, double t_v, int arm) {
    for (double t : {t_h, t_v}) {
        if (!(t >= 0 && t <= 1 + kGainTolerance)) {
            throw std::invalid_argument("pol_filter: amplitude transmittance must lie in [0, 1]");
        }
    }
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = std::min(t_h, 1.0);
    m(1, 1) = std::min(t_v, 1.0);
    return single_arm(arm, m);
}

OpticalElement wave_plate(WavePlate kind, double angle, int arm) {
    double retardance = kind == WavePlate::Half ? std::numbers::pi : std::numbers::pi / 2;
    // Fast axis at `angle` measured from V towards H, in (H, V) components.
    Eigen::Vector2cd fast(std::sin(angle), std::cos(angle));
    Eigen::Vector2cd slow(std::cos(angle), -std::sin(angle));
    Complex ef = std::polar(1.0, -retardance / 2);
    Complex es = std::polar(1.0, retardance / 2);
    Eigen::Matrix2cd j = ef * fast * fast.transpose() + es * slow * slow.transpose();
    return single_arm(arm, j);
}

OpticalElement phase_shifter(double delta, int arm) {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Identity();
    m(0, 0) = std::polar(1.0, delta);
    return single_arm(arm, m);
}

OpticalElement identity_element(int arm) {
    return single_arm(arm, Eigen::Matrix2cd::Identity());
}

namespace {

// Per-interface intensity transmittances (TE, TM) entering glass at `tilt`.
// Glass to air gives the same values by reciprocity.
FresnelTransmittance interface_transmittance(double n, double tilt) {
    double ci = std::cos(tilt);
    double st = std::sin(tilt) / n;
    double ct = std::sqrt(1 - st * st);
    double ts = 2 * ci / (ci + n * ct);
    double tp = 2 * ci / (n * ci + ct);
    double geom = n * ct / ci;
    return {geom * ts * ts, geom * tp * tp};
}

double stack_ratio(const FresnelPlate &plate) {
    auto t = fresnel_plate(plate);
    return t.te / t.tm;
}

}  // namespace

FresnelTransmittance fresnel_plate(const FresnelPlate &plate) {
    if (!(plate.tilt >= 0 && plate.tilt < std::numbers::pi / 2)) {
        throw std::invalid_argument("fresnel_plate: tilt must lie in [0, pi/2)");
    }
    if (plate.refractive_index <= 1 || plate.plates_per_filter < 1 || plate.passes_per_plate < 1) {
        throw std::invalid_argument("fresnel_plate: need index > 1 and at least one plate and pass");
    }
    auto t = interface_transmittance(plate.refractive_index, plate.tilt);
    int k = plate.interfaces();
    return {std::pow(t.te, k), std::pow(t.tm, k)};
}

double min_achievable_ratio(const FresnelPlate &plate) {
    // At grazing incidence t_s / t_p -> 1/n per interface.
    return std::pow(plate.refractive_index, -2 * plate.interfaces());
}

double tilt_for_ratio(double target, const FresnelPlate &plate) {
    if (!(target > 0 && target <= 1)) {
        throw std::invalid_argument("tilt_for_ratio: target ratio must lie in (0, 1]");
    }
    if (target == 1) {
        return 0;
    }
    double floor = min_achievable_ratio(plate);
    if (target <= floor) {
        throw InfeasibleFilterError("tilt_for_ratio: ratio " + std::to_string(target) +
                                        " is below the achievable range (" + std::to_string(floor) + ", 1]",
                                    floor);
    }
    FresnelPlate p = plate;
    double lo = 0;
    double hi = std::nextafter(std::numbers::pi / 2, 0.0);
    p.tilt = hi;
    if (stack_ratio(p) > target) {
        // Only reachable asymptotically; closer than double precision allows.
        throw InfeasibleFilterError("tilt_for_ratio: ratio not reachable below grazing incidence", floor);
    }
    // Ratio decreases monotonically with tilt.
    for (int it = 0; it < 200 && hi - lo > 1e-15; it++) {
        double mid = 0.5 * (lo + hi);
        p.tilt = mid;
        if (stack_ratio(p) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

FilterAmplitudes filter_for_ratio(double sigma, double favored) {
    if (!(sigma > 0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("filter_for_ratio: ratio must be positive and finite");
    }
    if (!(favored > 0 && favored <= 1)) {
        throw std::invalid_argument("filter_for_ratio: favored amplitude must lie in (0, 1]");
    }
    if (sigma <= 1) {
        return {favored, favored * std::sqrt(sigma)};
    }
    return {favored / std::sqrt(sigma), favored};
}

FilterAmplitudes fresnel_filter_for_ratio(double sigma, const FresnelPlate &plate) {
    if (!(sigma > 0) || !std::isfinite(sigma)) {
        throw std::invalid_argument("fresnel_filter_for_ratio: ratio must be positive and finite");
    }
    FresnelPlate p = plate;
    double attenuation = sigma <= 1 ? sigma : 1 / sigma;
    p.tilt = tilt_for_ratio(attenuation, plate);
    auto t = fresnel_plate(p);
    if (sigma <= 1) {
        return {std::sqrt(t.tm), std::sqrt(t.te)};
    }
    return {std::sqrt(t.te), std::sqrt(t.tm)};
}

}  // namespace polclone
