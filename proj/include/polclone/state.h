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

#ifndef POLCLONE_STATE_H
#define POLCLONE_STATE_H

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace polclone {

using Complex = std::complex<double>;

/// Amplitudes below this magnitude are treated as zero.
inline constexpr double kZeroAmplitude = 1e-10;

/// Raised when a postselection keeps nothing (projected norm is zero).
struct DegenerateOutcomeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Polarization { H = 0, V = 1 };

/// One optical mode: spatial arm, polarization and temporal bin.
struct ModeLabel {
    int arm = 0;
    Polarization pol = Polarization::H;
    int bin = 0;

    auto operator<=>(const ModeLabel &) const = default;
    std::string str() const;
};

/// Ordered, duplicate-free list of modes. The order defines basis indexing.
class ModeSet {
   public:
    explicit ModeSet(std::vector<ModeLabel> modes);

    /// Arms 0 and 1 with H,V each, repeated for every temporal bin:
    /// (0H,0V,1H,1V) for bin 0, then the same for bin 1, ...
    static ModeSet two_arms(int bins = 1);

    size_t size() const { return modes_.size(); }
    const ModeLabel &operator[](size_t k) const { return modes_[k]; }
    const std::vector<ModeLabel> &labels() const { return modes_; }

    /// Throws std::out_of_range if the label is not present.
    size_t index_of(const ModeLabel &label) const;
    bool contains(const ModeLabel &label) const;
    bool contains_arm(int arm) const;
    /// Distinct temporal bins, ascending.
    std::vector<int> bins() const;

    bool operator==(const ModeSet &) const = default;

   private:
    std::vector<ModeLabel> modes_;
};

/// cos(theta/2)|V> + e^{i phi} sin(theta/2)|H>.
struct PolarizationQubit {
    double theta = 0;
    double phi = 0;

    PolarizationQubit() = default;
    /// phi is wrapped into [0, 2pi); theta must lie in [0, pi].
    PolarizationQubit(double theta, double phi);

    static PolarizationQubit equatorial(double phi);
    static PolarizationQubit vertical() { return {0, 0}; }
    static PolarizationQubit horizontal();

    Complex h() const;
    Complex v() const;
    /// Jones vector in (H, V) order.
    Eigen::Vector2cd jones() const;
    PolarizationQubit orthogonal() const;
};

// Two-photon occupation basis. Basis vectors are ordered lexicographically
// descending over occupation vectors, so (2,0,...,0) has index 0. Equivalently
// the unordered mode pairs (i <= j) in row-major order.

using Occupation = std::vector<int>;

size_t two_photon_dimension(size_t num_modes);
size_t basis_index(std::span<const int> occupation);
Occupation occupation_of(size_t index, size_t num_modes);
/// Index of the basis vector with one photon in mode i and one in mode j.
size_t pair_index(size_t i, size_t j, size_t num_modes);
/// Inverse of pair_index; first <= second.
std::pair<size_t, size_t> pair_of(size_t index, size_t num_modes);

/// Pure (possibly sub-normalized) two-photon state over a mode set.
class TwoPhotonState {
   public:
    TwoPhotonState(ModeSet modes, std::vector<Complex> amplitudes);
    static TwoPhotonState zero(ModeSet modes);

    const ModeSet &modes() const { return modes_; }
    const std::vector<Complex> &amplitudes() const { return amps_; }
    std::vector<Complex> &amplitudes() { return amps_; }
    size_t dimension() const { return amps_.size(); }

    Complex amplitude(std::span<const int> occupation) const;
    /// Coefficient of the basis vector holding modes i and j.
    Complex pair_amplitude(const ModeLabel &a, const ModeLabel &b) const;

    double norm_squared() const;

   private:
    ModeSet modes_;
    std::vector<Complex> amps_;
};

/// a^dag(first) a^dag(second)|vac>, where first and second are single-photon
/// amplitude vectors over modes. Not normalized when the two overlap.
TwoPhotonState create_two_photons(std::span<const Complex> first, std::span<const Complex> second,
                                  const ModeSet &modes);

/// Signal in sig_arm and ancilla in anc_arm, both in temporal bin 0.
TwoPhotonState product_state(const PolarizationQubit &sig, int sig_arm, const PolarizationQubit &anc,
                             int anc_arm, const ModeSet &modes);

Complex inner_product(const TwoPhotonState &a, const TwoPhotonState &b);
double norm(const TwoPhotonState &s);

struct Normalized {
    TwoPhotonState state;
    double norm;
};
/// Throws DegenerateOutcomeError on a (numerically) zero state.
Normalized normalize(const TwoPhotonState &s);

/// Permanent of a 2x2 matrix.
inline Complex permanent2(const Complex &a, const Complex &b, const Complex &c, const Complex &d) {
    return a * d + b * c;
}

/// Two-photon transfer matrix of a single-photon mode transformation U
/// (U(out, in), may be sub-unitary). Entry (n', n) is
/// per(U[n'|n]) / sqrt(prod n! prod n'!).
Eigen::MatrixXcd two_photon_transfer(const Eigen::MatrixXcd &u);

/// Evolves the state under a^dag_i -> sum_j U(j, i) a^dag_j, with U over the
/// state's full mode set.
TwoPhotonState apply_mode_transformation(const TwoPhotonState &s, const Eigen::MatrixXcd &u);

/// 2x2 polarization density matrix of the photon found in `arm`, given that
/// the state holds exactly one photon there (traced over the other arm and
/// over temporal bins). Normalized to unit trace.
Eigen::Matrix2cd reduced_polarization(const TwoPhotonState &s, int arm);

}  // namespace polclone

#endif
