// Copyright 2026 The QSS Authors
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

// Local-realism analysis: the two-qubit Horodecki test, full correlation tensors, the
// two-setting sufficient condition and the white-noise thresholds of the G and GHZ families.

#ifndef QSS_BELL_HPP
#define QSS_BELL_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qss/attack.hpp"
#include "qss/rng.hpp"
#include "qss/states.hpp"
#include "qss/types.hpp"

namespace qss {

/// T_ij = tr(rho sigma_i (x) sigma_j), i, j in {x, y, z}.
Eigen::Matrix3d correlation_matrix_2q(const DensityMatrix &rho);

/// Sum of the two largest eigenvalues of T^T T. Some CHSH inequality is violated iff M > 1.
double horodecki_m(const DensityMatrix &rho);

/// Largest attainable CHSH value, 2 sqrt(M).
double max_chsh_value(const DensityMatrix &rho);

/// Dense tensor of full-weight Pauli correlations. Entry (a_0, ..., a_{n-1}) with a_k in
/// {x=0, y=1, z=2} sits at flat index sum_k a_k 3^{n-1-k}.
class CorrelationTensor {
   public:
    static constexpr std::size_t kMaxParties = 8;

    CorrelationTensor(std::size_t n, std::vector<double> entries);

    std::size_t n() const { return n_; }
    std::size_t size() const { return entries_.size(); }
    const std::vector<double> &entries() const { return entries_; }
    double operator[](std::size_t flat) const { return entries_[flat]; }
    double at(std::string_view axes) const;  // e.g. "xxzzzz"

    static std::size_t flat_index(std::string_view axes);
    std::string label(std::size_t flat) const;

   private:
    std::size_t n_;
    std::vector<double> entries_;
};

CorrelationTensor correlation_tensor(const PureState &state);
CorrelationTensor correlation_tensor(const DensityMatrix &rho);

/// A measurement plane per party, spanned by two orthonormal directions. The third axis of the
/// induced local rotation is u x v.
class LocalFrame {
   public:
    using Plane = Eigen::Matrix<double, 3, 2>;

    explicit LocalFrame(std::vector<Plane> planes);
    /// The sigma_x / sigma_y plane for every party.
    static LocalFrame standard(std::size_t n);
    /// Haar-ish random frame (Gaussian vectors, Gram-Schmidt).
    static LocalFrame random(std::size_t n, Rng &rng);

    std::size_t n() const { return planes_.size(); }
    const Plane &plane(std::size_t k) const { return planes_[k]; }
    Eigen::Matrix3d rotation(std::size_t k) const;

   private:
    std::vector<Plane> planes_;
};

/// Sum of squared correlations with every index restricted to the frame's plane directions.
double plane_sum(const CorrelationTensor &t);
double plane_sum(const CorrelationTensor &t, const LocalFrame &frame);

/// Sum of all 3^n squared entries.
double full_sum(const CorrelationTensor &t);

/// Re-expresses the tensor in the rotated local bases {u, v, u x v} of `frame`.
CorrelationTensor rotate_tensor(const CorrelationTensor &t, const LocalFrame &frame);

struct FrameSearchResult {
    double value;  // best plane sum found; a lower bound on the maximum over frames
    LocalFrame frame;
    std::size_t restarts;
};

/// Alternating per-party plane optimization. Restart 0 starts from the standard frame, the
/// others from random frames seeded by `seed`. Deterministic for a given seed.
FrameSearchResult maximize_plane_sum(const CorrelationTensor &t, std::size_t restarts = 64, std::uint64_t seed = 0);

/// Visibility of the two-qubit Werner state left after n-2 parties of a visibility-p G_n
/// measure sigma_z and all find |0> (or all |1>).
double collapse_visibility(std::size_t n, double p);

struct WernerFit {
    double probability;  // probability of the post-selected pattern
    double visibility;   // (4F - 1)/3 with F the overlap with the G_2 Bell state
    double residual;     // max entrywise distance to the fitted Werner state
};

/// Exact counterpart of collapse_visibility: projects the noisy n-qubit state and fits.
WernerFit simulate_collapse(std::size_t n, double p, CollapsePattern pattern = CollapsePattern::AllPlus);

double crit_noise_g(std::size_t n);
double crit_noise_ghz(std::size_t n);

struct ThresholdReport {
    std::size_t n;
    double p_crit_g;
    double q_crit_ghz;
    bool g_more_robust;  // p_crit_g < q_crit_ghz
};

ThresholdReport threshold_report(std::size_t n);
std::vector<ThresholdReport> crossover_scan(std::size_t n_min, std::size_t n_max);

/// Visibility bounds below which the two-setting sufficient condition certifies a local model,
/// derived from the actual six-qubit tensors and checked against their closed forms.
struct LrThresholds {
    double g6_plane;  // sqrt(3/16): default-frame plane sum of G_6 is 16/3
    double g6_full;   // 1/sqrt(23): full sum bounds every frame
    double ghz6;      // 1/sqrt(32)
};

LrThresholds lr_sufficiency_thresholds();

/// One row of a security sweep. horodecki_ab is evaluated on the post-selected pair of Alice
/// and the last Bob (on rho_AB itself when m = 1).
struct SweepRow {
    double phi;
    double i_ab;
    double i_ae;
    double margin;
    double qber_x;
    double horodecki_ab;
    double horodecki_ae;
};

SweepRow sweep_row(CarrierFamily carrier, std::size_t m, double phi);
std::vector<SweepRow> sweep_attack(CarrierFamily carrier, std::size_t m, std::span<const double> phis);

/// Bisection for the zero of I(A:B) - I(A:E) on [0, pi/2].
double margin_crossing(double tol = 1e-12);
/// Bisection for M(rho_AB_k) = 1 on [0, pi/2].
double horodecki_crossing(CarrierFamily carrier, std::size_t m, double tol = 1e-12);

}  // namespace qss

#endif  // QSS_BELL_HPP
