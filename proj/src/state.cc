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

#include "polclone/state.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

namespace polclone {

std::string ModeLabel::str() const {
    return std::to_string(arm) + (pol == Polarization::H ? "H" : "V") + "@" + std::to_string(bin);
}

ModeSet::ModeSet(std::vector<ModeLabel> modes) : modes_(std::move(modes)) {
    std::set<ModeLabel> seen(modes_.begin(), modes_.end());
    if (seen.size() != modes_.size()) {
        throw std::invalid_argument("ModeSet: duplicate mode label");
    }
    if (modes_.empty()) {
        throw std::invalid_argument("ModeSet: empty");
    }
}

ModeSet ModeSet::two_arms(int bins) {
    if (bins < 1) {
        throw std::invalid_argument("ModeSet::two_arms: need at least one temporal bin");
    }
    std::vector<ModeLabel> labels;
    for (int b = 0; b < bins; b++) {
        for (int arm = 0; arm < 2; arm++) {
            labels.push_back({arm, Polarization::H, b});
            labels.push_back({arm, Polarization::V, b});
        }
    }
    return ModeSet(std::move(labels));
}

size_t ModeSet::index_of(const ModeLabel &label) const {
    auto it = std::find(modes_.begin(), modes_.end(), label);
    if (it == modes_.end()) {
        throw std::out_of_range("mode " + label.str() + " is not in the mode set");
    }
    return static_cast<size_t>(it - modes_.begin());
}

bool ModeSet::contains(const ModeLabel &label) const {
    return std::find(modes_.begin(), modes_.end(), label) != modes_.end();
}

bool ModeSet::contains_arm(int arm) const {
    return std::any_of(modes_.begin(), modes_.end(), [&](const ModeLabel &m) { return m.arm == arm; });
}

std::vector<int> ModeSet::bins() const {
    std::set<int> b;
    for (const auto &m : modes_) {
        b.insert(m.bin);
    }
    return {b.begin(), b.end()};
}

PolarizationQubit::PolarizationQubit(double theta, double phi) : theta(theta), phi(phi) {
    if (!(theta >= 0 && theta <= std::numbers::pi)) {
        throw std::invalid_argument("PolarizationQubit: theta must lie in [0, pi]");
    }
    this->phi = std::fmod(phi, 2 * std::numbers::pi);
    if (this->phi < 0) {
        this->phi += 2 * std::numbers::pi;
    }
}

PolarizationQubit PolarizationQubit::equatorial(double phi) {
    return {std::numbers::pi / 2, phi};
}

PolarizationQubit PolarizationQubit::horizontal() {
    return {std::numbers::pi, 0};
}

Complex PolarizationQubit::h() const {
    return std::polar(std::sin(theta / 2), phi);
}

Complex PolarizationQubit::v() const {
    return std::cos(theta / 2);
}

Eigen::Vector2cd PolarizationQubit::jones() const {
    return Eigen::Vector2cd(h(), v());
}

PolarizationQubit PolarizationQubit::orthogonal() const {
    return {std::numbers::pi - theta, phi + std::numbers::pi};
}

size_t two_photon_dimension(size_t num_modes) {
    return num_modes * (num_modes + 1) / 2;
}

size_t pair_index(size_t i, size_t j, size_t num_modes) {
    if (i > j) {
        std::swap(i, j);
    }
    if (j >= num_modes) {
        throw std::out_of_range("pair_index: mode out of range");
    }
    return i * (2 * num_modes - i + 1) / 2 + (j - i);
}

std::pair<size_t, size_t> pair_of(size_t index, size_t num_modes) {
    size_t i = 0;
    size_t row = num_modes;
    while (index >= row) {
        if (i + 1 >= num_modes) {
            throw std::out_of_range("pair_of: index out of range");
        }
        index -= row;
        row--;
        i++;
    }
    return {i, i + index};
}

size_t basis_index(std::span<const int> occupation) {
    std::vector<size_t> photons;
    for (size_t k = 0; k < occupation.size(); k++) {
        if (occupation[k] < 0) {
            throw std::invalid_argument("basis_index: negative occupation");
        }
        for (int n = 0; n < occupation[k]; n++) {
            photons.push_back(k);
        }
    }
    if (photons.size() != 2) {
        throw std::invalid_argument("basis_index: occupation must hold exactly two photons");
    }
    return pair_index(photons[0], photons[1], occupation.size());
}

Occupation occupation_of(size_t index, size_t num_modes) {
    auto [i, j] = pair_of(index, num_modes);
    Occupation n(num_modes, 0);
    n[i]++;
    n[j]++;
    return n;
}

TwoPhotonState::TwoPhotonState(ModeSet modes, std::vector<Complex> amplitudes)
    : modes_(std::move(modes)), amps_(std::move(amplitudes)) {
    if (amps_.size() != two_photon_dimension(modes_.size())) {
        throw std::invalid_argument("TwoPhotonState: amplitude count does not match the two-photon dimension");
    }
}

TwoPhotonState TwoPhotonState::zero(ModeSet modes) {
    size_t d = two_photon_dimension(modes.size());
    return TwoPhotonState(std::move(modes), std::vector<Complex>(d));
}

Complex TwoPhotonState::amplitude(std::span<const int> occupation) const {
    if (occupation.size() != modes_.size()) {
        throw std::invalid_argument("amplitude: occupation length does not match the mode count");
    }
    return amps_[basis_index(occupation)];
}

Complex TwoPhotonState::pair_amplitude(const ModeLabel &a, const ModeLabel &b) const {
    return amps_[pair_index(modes_.index_of(a), modes_.index_of(b), modes_.size())];
}

double TwoPhotonState::norm_squared() const {
    double t = 0;
    for (const auto &c : amps_) {
        t += std::norm(c);
    }
    return t;
}

TwoPhotonState create_two_photons(std::span<const Complex> first, std::span<const Complex> second,
                                  const ModeSet &modes) {
    size_t m = modes.size();
    if (first.size() != m || second.size() != m) {
        throw std::invalid_argument("create_two_photons: amplitude vectors must match the mode count");
    }
    auto out = TwoPhotonState::zero(modes);
    auto &a = out.amplitudes();
    for (size_t i = 0; i < m; i++) {
        a[pair_index(i, i, m)] = std::sqrt(2.0) * first[i] * second[i];
        for (size_t j = i + 1; j < m; j++) {
            a[pair_index(i, j, m)] = first[i] * second[j] + first[j] * second[i];
        }
    }
    return out;
}

namespace {

std::vector<Complex> single_photon(const PolarizationQubit &q, int arm, const ModeSet &modes) {
    if (!modes.contains_arm(arm)) {
        throw std::invalid_argument("product_state: arm " + std::to_string(arm) + " is not in the mode set");
    }
    std::vector<Complex> amps(modes.size());
    amps[modes.index_of({arm, Polarization::H, 0})] = q.h();
    amps[modes.index_of({arm, Polarization::V, 0})] = q.v();
    return amps;
}

}  // namespace

TwoPhotonState product_state(const PolarizationQubit &sig, int sig_arm, const PolarizationQubit &anc,
                             int anc_arm, const ModeSet &modes) {
    if (sig_arm == anc_arm) {
        throw std::invalid_argument("product_state: signal and ancilla must occupy distinct arms");
    }
    auto s = single_photon(sig, sig_arm, modes);
    auto a = single_photon(anc, anc_arm, modes);
    return create_two_photons(s, a, modes);
}

Complex inner_product(const TwoPhotonState &a, const TwoPhotonState &b) {
    if (!(a.modes() == b.modes())) {
        throw std::invalid_argument("inner_product: states live on different mode sets");
    }
    Complex t = 0;
    for (size_t k = 0; k < a.dimension(); k++) {
        t += std::conj(a.amplitudes()[k]) * b.amplitudes()[k];
    }
    return t;
}

double norm(const TwoPhotonState &s) {
    return std::sqrt(s.norm_squared());
}

Normalized normalize(const TwoPhotonState &s) {
    double n = norm(s);
    if (n < kZeroAmplitude) {
        throw DegenerateOutcomeError("normalize: state has zero norm (postselection never succeeds)");
    }
    auto out = s;
    for (auto &c : out.amplitudes()) {
        c /= n;
    }
    return {std::move(out), n};
}

Eigen::MatrixXcd two_photon_transfer(const Eigen::MatrixXcd &u) {
    if (u.rows() != u.cols()) {
        throw std::invalid_argument("two_photon_transfer: mode transformation must be square");
    }
    size_t m = static_cast<size_t>(u.rows());
    size_t d = two_photon_dimension(m);
    Eigen::MatrixXcd t(d, d);
    for (size_t col = 0; col < d; col++) {
        auto [i, j] = pair_of(col, m);
        double in_fact = (i == j) ? 2.0 : 1.0;
        for (size_t row = 0; row < d; row++) {
            auto [k, l] = pair_of(row, m);
            double out_fact = (k == l) ? 2.0 : 1.0;
            // Rows of U[n'|n] are repeated output modes, columns repeated input modes.
            Complex p = permanent2(u(k, i), u(k, j), u(l, i), u(l, j));
            t(row, col) = p / std::sqrt(in_fact * out_fact);
        }
    }
    return t;
}

TwoPhotonState apply_mode_transformation(const TwoPhotonState &s, const Eigen::MatrixXcd &u) {
    size_t m = s.modes().size();
    if (static_cast<size_t>(u.rows()) != m || static_cast<size_t>(u.cols()) != m) {
        throw std::invalid_argument("apply_mode_transformation: matrix does not match the mode count");
    }
    Eigen::Map<const Eigen::VectorXcd> in(s.amplitudes().data(), static_cast<Eigen::Index>(s.dimension()));
    Eigen::VectorXcd out = two_photon_transfer(u) * in;
    return TwoPhotonState(s.modes(), std::vector<Complex>(out.data(), out.data() + out.size()));
}

Eigen::Matrix2cd reduced_polarization(const TwoPhotonState &s, int arm) {
    const auto &modes = s.modes();
    size_t m = modes.size();
    // amp[(pol, bin)][partner mode] for the photon in `arm`.
    Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
    for (int bin : modes.bins()) {
        ModeLabel lh{arm, Polarization::H, bin};
        ModeLabel lv{arm, Polarization::V, bin};
        if (!modes.contains(lh) || !modes.contains(lv)) {
            continue;
        }
        size_t ih = modes.index_of(lh);
        size_t iv = modes.index_of(lv);
        for (size_t y = 0; y < m; y++) {
            if (modes[y].arm == arm) {
                continue;
            }
            Complex ah = s.amplitudes()[pair_index(ih, y, m)];
            Complex av = s.amplitudes()[pair_index(iv, y, m)];
            Eigen::Vector2cd a(ah, av);
            rho += a * a.adjoint();
        }
    }
    double tr = rho.trace().real();
    if (tr < kZeroAmplitude * kZeroAmplitude) {
        throw DegenerateOutcomeError("reduced_polarization: no photon found in arm " + std::to_string(arm));
    }
    return rho / tr;
}

}  // namespace polclone
