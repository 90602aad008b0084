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

#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.h"

using namespace polclone;

namespace {

constexpr double kPi = std::numbers::pi;

ModeLabel aH{0, Polarization::H, 0};
ModeLabel aV{0, Polarization::V, 0};
ModeLabel bH{1, Polarization::H, 0};
ModeLabel bV{1, Polarization::V, 0};

TwoPhotonState vv_input() {
    return product_state(PolarizationQubit::vertical(), 0, PolarizationQubit::vertical(), 1, ModeSet::two_arms());
}

// Applies a single-arm element to a one-photon Jones vector on arm 0.
Eigen::Vector2cd act_on_arm0(const OpticalElement &e, const Eigen::Vector2cd &jones) {
    auto u = e.embed(ModeSet::two_arms());
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = jones(0);
    v(1) = jones(1);
    Eigen::VectorXcd out = u * v;
    return {out(0), out(1)};
}

// |<a|b>| for unit vectors; 1 means equal up to a global phase.
double overlap(const Eigen::Vector2cd &a, const Eigen::Vector2cd &b) {
    return std::abs(a.dot(b));
}

Eigen::MatrixXcd embed4(const OpticalElement &e) {
    return e.embed(ModeSet::two_arms());
}

}  // namespace

TEST(beam_splitter, unitary_for_all_reflectances) {
    for (double rv : {0.0, 0.179, 0.5, 0.758, 1.0}) {
        for (double rh : {0.0, 0.3, 0.466, 1.0}) {
            auto e = pol_beam_splitter(rv, rh, 0, 1);
            EXPECT_TRUE(e.is_unitary());
            auto u = embed4(e);
            EXPECT_LT((u.adjoint() * u - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-14);
        }
    }
}

TEST(beam_splitter, rejects_bad_reflectance) {
    EXPECT_THROW(pol_beam_splitter(1.2, 0.5, 0, 1), std::invalid_argument);
    EXPECT_THROW(beam_splitter(-0.1, 0, 1), std::invalid_argument);
    EXPECT_THROW(beam_splitter(0.5, 0, 0), std::invalid_argument);
}

TEST(beam_splitter, balanced_hom_dip) {
    auto out = apply_element(vv_input(), beam_splitter(0.5, 0, 1));
    EXPECT_NEAR(std::abs(out.pair_amplitude(aV, bV)), 0, 1e-15);
    std::vector<int> a2 = {0, 2, 0, 0};
    std::vector<int> b2 = {0, 0, 0, 2};
    EXPECT_NEAR(std::norm(out.amplitude(a2)) + std::norm(out.amplitude(b2)), 1, 1e-14);
}

TEST(beam_splitter, unbalanced_coincidence_amplitude) {
    // (r a + t b)(t a - r b) has cross term r^2 - t^2 = 2R - 1.
    auto out = apply_element(vv_input(), pol_beam_splitter(0.758, 0.179, 0, 1));
    EXPECT_NEAR(std::abs(out.pair_amplitude(aV, bV)), std::abs(2 * 0.758 - 1), 1e-14);
    EXPECT_NEAR(std::abs(out.pair_amplitude(aV, bV)), 0.516, 1e-12);
}

TEST(beam_splitter, h_block_cross_terms) {
    // H signal and V ancilla: coincidence terms r_V r_H and t_V t_H.
    double rv = 0.758;
    double rh = 0.179;
    auto in = product_state(PolarizationQubit::horizontal(), 0, PolarizationQubit::vertical(), 1,
                            ModeSet::two_arms());
    auto out = apply_element(in, pol_beam_splitter(rv, rh, 0, 1));
    EXPECT_NEAR(std::abs(out.pair_amplitude(aH, bV)), std::sqrt((1 - rv) * (1 - rh)), 1e-14);
    EXPECT_NEAR(std::abs(out.pair_amplitude(aV, bH)), std::sqrt(rv * rh), 1e-14);
}

TEST(beam_splitter, balanced_square) {
    // The real reflecting convention [[t, r], [r, -t]] is an involution.
    auto e = beam_splitter(0.5, 0, 1);
    EXPECT_LT((embed4(compose(e, e)) - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-14);
    // A pi phase on arm 1 between the two passes turns the square into a swap.
    auto flip = OpticalElement({bH, bV}, -Eigen::MatrixXcd::Identity(2, 2));
    auto u = embed4(compose(compose(e, flip), e));
    Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(4, 4);
    swap(0, 2) = swap(2, 0) = swap(1, 3) = swap(3, 1) = 1;
    Complex phase = u(2, 0);
    EXPECT_NEAR(std::abs(phase), 1, 1e-14);
    EXPECT_LT((u - phase * swap).norm(), 1e-14);
}

TEST(filter, identity_and_ratio) {
    auto e = pol_filter(1, 1, 0);
    EXPECT_TRUE(e.is_unitary());
    auto f = filter_for_ratio(0.55);
    EXPECT_DOUBLE_EQ(f.h, 1);
    EXPECT_NEAR(f.v, std::sqrt(0.55), 1e-15);
    EXPECT_NEAR(f.ratio(), 0.55, 1e-15);
    auto g = filter_for_ratio(2.0, 0.8);
    EXPECT_DOUBLE_EQ(g.v, 0.8);
    EXPECT_NEAR(g.ratio(), 2.0, 1e-14);
    EXPECT_THROW(pol_filter(1.5, 1, 0), std::invalid_argument);
    EXPECT_THROW(filter_for_ratio(0), std::invalid_argument);
}

TEST(element, rejects_gain) {
    Eigen::MatrixXcd m = 1.1 * Eigen::MatrixXcd::Identity(2, 2);
    EXPECT_THROW(OpticalElement({aH, aV}, m), std::invalid_argument);
}

TEST(wave_plate, half_wave_at_22_5_makes_diagonal) {
    Eigen::Vector2cd v(0, 1);
    Eigen::Vector2cd d(1 / std::sqrt(2.0), 1 / std::sqrt(2.0));
    auto out = act_on_arm0(wave_plate(WavePlate::Half, kPi / 8, 0), v);
    EXPECT_NEAR(overlap(out, d), 1, 1e-14);
}

TEST(wave_plate, quarter_wave_at_45_makes_circular) {
    Eigen::Vector2cd v(0, 1);
    auto out = act_on_arm0(wave_plate(WavePlate::Quarter, kPi / 4, 0), v);
    double plus = overlap(out, PolarizationQubit::equatorial(kPi / 2).jones());
    double minus = overlap(out, PolarizationQubit::equatorial(3 * kPi / 2).jones());
    EXPECT_NEAR(std::max(plus, minus), 1, 1e-14);
}

TEST(wave_plate, half_wave_at_zero_shifts_equator_by_pi) {
    for (double phi : {0.0, 0.7, 2.5}) {
        auto out = act_on_arm0(wave_plate(WavePlate::Half, 0, 0), PolarizationQubit::equatorial(phi).jones());
        EXPECT_NEAR(overlap(out, PolarizationQubit::equatorial(phi + kPi).jones()), 1, 1e-14);
    }
}

TEST(phase_shifter, zero_and_inverse) {
    EXPECT_LT((embed4(phase_shifter(0, 0)) - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-15);
    auto both = compose(phase_shifter(0.9, 1), phase_shifter(-0.9, 1));
    EXPECT_LT((embed4(both) - Eigen::MatrixXcd::Identity(4, 4)).norm(), 1e-15);
}

TEST(compose, identity_and_associativity) {
    std::mt19937_64 rng(3);
    auto a = oracle::random_interferometer(rng, 1);
    auto b = oracle::random_interferometer(rng, 1);
    auto c = oracle::random_interferometer(rng, 1);
    auto ia = compose(identity_element(0), a);
    EXPECT_LT((embed4(ia) - embed4(a)).norm(), 1e-12);
    auto left = compose(compose(a, b), c);
    auto right = compose(a, compose(b, c));
    EXPECT_LT((embed4(left) - embed4(right)).norm(), 1e-12);
    // compose(first, second) applies `first` then `second`.
    EXPECT_LT((embed4(compose(a, b)) - embed4(b) * embed4(a)).norm(), 1e-12);
}

TEST(embed, replicates_across_bins) {
    auto e = pol_beam_splitter(0.7, 0.2, 0, 1);
    auto modes = ModeSet::two_arms(2);
    auto u = e.embed(modes);
    auto u0 = embed4(e);
    for (size_t r = 0; r < 4; r++) {
        for (size_t c = 0; c < 4; c++) {
            auto rl = ModeSet::two_arms()[r];
            auto cl = ModeSet::two_arms()[c];
            for (int bin : {0, 1}) {
                ModeLabel rb{rl.arm, rl.pol, bin};
                ModeLabel cb{cl.arm, cl.pol, bin};
                EXPECT_EQ(u(modes.index_of(rb), modes.index_of(cb)), u0(r, c));
                ModeLabel cx{cl.arm, cl.pol, 1 - bin};
                EXPECT_EQ(u(modes.index_of(rb), modes.index_of(cx)), Complex(0));
            }
        }
    }
}

TEST(fresnel, normal_incidence) {
    double n = 1.5;
    double per_interface = 1 - std::pow((n - 1) / (n + 1), 2);
    EXPECT_NEAR(per_interface, 0.96, 1e-15);
    FresnelPlate p;
    auto t = fresnel_plate(p);
    EXPECT_NEAR(t.te, std::pow(per_interface, 4), 1e-14);
    EXPECT_NEAR(t.tm, std::pow(per_interface, 4), 1e-14);
}

TEST(fresnel, brewster_angle_passes_tm) {
    FresnelPlate p;
    p.tilt = std::atan(p.refractive_index);
    p.plates_per_filter = 1;
    p.passes_per_plate = 1;
    EXPECT_NEAR(fresnel_plate(p).tm, 1, 1e-14);
}

TEST(fresnel, tm_dominates_te) {
    FresnelPlate p;
    for (int k = 0; k < 100; k++) {
        p.tilt = 1.5 * k / 100;
        auto t = fresnel_plate(p);
        EXPECT_GE(t.tm, t.te - 1e-15) << p.tilt;
        EXPECT_LE(t.tm, 1 + 1e-14);
    }
    p.tilt = kPi / 2;
    EXPECT_THROW(fresnel_plate(p), std::invalid_argument);
}

TEST(fresnel, tilt_round_trip) {
    FresnelPlate p;
    EXPECT_EQ(tilt_for_ratio(1.0, p), 0);
    for (double target : {0.9, 0.55, 0.3, 0.10, 0.05}) {
        p.tilt = tilt_for_ratio(target, FresnelPlate{});
        auto t = fresnel_plate(p);
        EXPECT_NEAR(t.te / t.tm, target, 1e-6) << target;
    }
}

TEST(fresnel, single_plate_floor_is_infeasible) {
    FresnelPlate p;
    p.plates_per_filter = 1;
    p.passes_per_plate = 1;
    // Grazing-incidence limit of t_s / t_p is 1/n per interface.
    double floor = std::pow(1.5, -2);
    EXPECT_NEAR(min_achievable_ratio(p), floor, 1e-15);
    try {
        tilt_for_ratio(0.05, p);
        FAIL() << "expected infeasible";
    } catch (const InfeasibleFilterError &e) {
        EXPECT_NEAR(e.min_ratio, floor, 1e-15);
    }
}

TEST(fresnel, filter_amplitudes_have_requested_ratio) {
    FresnelPlate p;
    for (double sigma : {0.1, 0.55, 1.0, 1.17, 2.5}) {
        auto f = fresnel_filter_for_ratio(sigma, p);
        EXPECT_NEAR(f.ratio(), sigma, 1e-6) << sigma;
        EXPECT_LE(f.h, 1);
        EXPECT_LE(f.v, 1);
    }
}
