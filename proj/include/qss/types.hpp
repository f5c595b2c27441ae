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

#ifndef QSS_TYPES_HPP
#define QSS_TYPES_HPP

#include <Eigen/Dense>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qss {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Qubit indices are 0-based throughout. Qubit 0 is the most significant bit of an amplitude
// index; in protocol states qubit 0 is Alice, qubits 1..2M-1 the Bobs, and the probe comes last.

inline constexpr double kExactTol = 1e-10;
inline constexpr double kEigenTol = 1e-8;
inline constexpr double kZeroProbability = 1e-12;
inline constexpr std::size_t kMaxStateQubits = 20;
inline constexpr std::size_t kMaxDensityQubits = 12;

enum class PauliAxis : std::uint8_t { X = 0, Y = 1, Z = 2 };

char axis_char(PauliAxis axis);
PauliAxis axis_from_char(char c);

/// Bit position (from the least significant end) of qubit `q` in an `n`-qubit index.
inline constexpr unsigned bit_of(std::size_t n, std::size_t q) { return static_cast<unsigned>(n - 1 - q); }

/// Tensor product of single-qubit Paulis. Positions outside `support` act as identity.
class PauliString {
   public:
    PauliString(std::vector<PauliAxis> axes, std::vector<bool> support);

    static PauliString uniform(std::size_t n, PauliAxis axis);
    /// Parses e.g. "XXIZ"; 'I' marks an identity position.
    static PauliString parse(std::string_view text);
    /// Places `axes[k]` on `qubits[k]` of an `n`-qubit register, identity elsewhere.
    static PauliString on(std::size_t n, std::span<const std::size_t> qubits, std::span<const PauliAxis> axes);

    std::size_t n_qubits() const { return axes_.size(); }
    const std::vector<PauliAxis> &axes() const { return axes_; }
    const std::vector<bool> &support() const { return support_; }
    std::size_t weight() const;
    std::string str() const;

    /// Bit masks used by the kernels: X/Y positions flip the index, Y/Z positions carry a sign.
    std::uint64_t flip_mask() const;
    std::uint64_t sign_mask() const;
    std::size_t y_count() const;

   private:
    std::vector<PauliAxis> axes_;
    std::vector<bool> support_;
};

/// Per-qubit measurement results, each +1 or -1.
class Outcome {
   public:
    Outcome() = default;
    explicit Outcome(std::vector<int> values);

    const std::vector<int> &values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    int operator[](std::size_t k) const { return values_[k]; }
    int product() const;

    friend bool operator==(const Outcome &, const Outcome &) = default;

   private:
    std::vector<int> values_;
};

/// Normalized amplitude vector over n qubits. Immutable after construction.
class PureState {
   public:
    /// Validates length 2^n and unit norm within 1e-10.
    PureState(std::size_t n_qubits, std::vector<cplx> amplitudes);
    /// Normalizes first; throws InvalidState for a (numerically) zero vector.
    static PureState normalized(std::size_t n_qubits, std::vector<cplx> amplitudes);

    std::size_t n_qubits() const { return n_; }
    std::size_t dim() const { return amps_.size(); }
    std::span<const cplx> amplitudes() const { return amps_; }
    cplx operator[](std::size_t index) const { return amps_[index]; }

    cplx inner(const PureState &other) const;  // <this|other>
    double norm() const;

    /// Smallest ||this - e^{i theta} other|| over theta.
    double distance_up_to_phase(const PureState &other) const;

    PureState tensor(const PureState &other) const;

   private:
    struct Unchecked {};
    PureState(Unchecked, std::size_t n, std::vector<cplx> amplitudes) : n_(n), amps_(std::move(amplitudes)) {}

    std::size_t n_;
    std::vector<cplx> amps_;
};

/// Hermitian, PSD, unit-trace operator on n qubits. Immutable after construction.
class DensityMatrix {
   public:
    /// Validates Hermiticity and trace within 1e-10 and eigenvalues >= -1e-9.
    DensityMatrix(std::size_t n_qubits, CMatrix matrix);

    /// For results of PSD-preserving maps (partial traces, projections, mixtures of valid
    /// states): checks Hermiticity and trace but skips the O(d^3) spectrum check.
    static DensityMatrix trusted(std::size_t n_qubits, CMatrix matrix);

    static DensityMatrix from_pure(const PureState &state);
    static DensityMatrix maximally_mixed(std::size_t n_qubits);
    /// Mixture sum_k w_k rho_k; weights must be non-negative and sum to 1.
    static DensityMatrix mixture(std::span<const double> weights, std::span<const DensityMatrix> parts);

    std::size_t n_qubits() const { return n_; }
    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const CMatrix &matrix() const { return m_; }
    cplx operator()(std::size_t r, std::size_t c) const { return m_(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)); }

    double trace_distance(const DensityMatrix &other) const;
    double max_abs_diff(const DensityMatrix &other) const;
    double purity() const;

   private:
    struct Unchecked {};
    DensityMatrix(Unchecked, std::size_t n, CMatrix m) : n_(n), m_(std::move(m)) {}

    std::size_t n_;
    CMatrix m_;
};

}  // namespace qss

#endif  // QSS_TYPES_HPP
