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

#include "qss/types.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numeric>

#include "qss/error.hpp"

namespace qss {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::InvalidDimension:
            return "InvalidDimension";
        case ErrorKind::InvalidState:
            return "InvalidState";
        case ErrorKind::InvalidArgument:
            return "InvalidArgument";
        case ErrorKind::ZeroProbabilityBranch:
            return "ZeroProbabilityBranch";
        case ErrorKind::BudgetExceeded:
            return "BudgetExceeded";
        case ErrorKind::EmptySiftedSet:
            return "EmptySiftedSet";
        case ErrorKind::InternalInconsistency:
            return "InternalInconsistency";
    }
    return "Unknown";
}

char axis_char(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::X:
            return 'X';
        case PauliAxis::Y:
            return 'Y';
        case PauliAxis::Z:
            return 'Z';
    }
    return '?';
}

PauliAxis axis_from_char(char c) {
    switch (c) {
        case 'X':
        case 'x':
            return PauliAxis::X;
        case 'Y':
        case 'y':
            return PauliAxis::Y;
        case 'Z':
        case 'z':
            return PauliAxis::Z;
        default:
            fail(ErrorKind::InvalidArgument, std::string("not a Pauli axis: '") + c + "'");
    }
}

// ---------------------------------------------------------------------------------------------
// PauliString

PauliString::PauliString(std::vector<PauliAxis> axes, std::vector<bool> support)
    : axes_(std::move(axes)), support_(std::move(support)) {
    require(axes_.size() == support_.size(), ErrorKind::InvalidDimension, "support mask length must match axes");
    require(!axes_.empty() && axes_.size() <= 63, ErrorKind::InvalidDimension, "Pauli string length out of range");
}

PauliString PauliString::uniform(std::size_t n, PauliAxis axis) {
    return PauliString(std::vector<PauliAxis>(n, axis), std::vector<bool>(n, true));
}

PauliString PauliString::parse(std::string_view text) {
    std::vector<PauliAxis> axes;
    std::vector<bool> support;
    for (char c : text) {
        if (c == 'I' || c == 'i' || c == '_') {
            axes.push_back(PauliAxis::Z);
            support.push_back(false);
        } else {
            axes.push_back(axis_from_char(c));
            support.push_back(true);
        }
    }
    return PauliString(std::move(axes), std::move(support));
}

PauliString PauliString::on(std::size_t n, std::span<const std::size_t> qubits, std::span<const PauliAxis> axes) {
    require(qubits.size() == axes.size(), ErrorKind::InvalidDimension, "one axis per listed qubit");
    std::vector<PauliAxis> all(n, PauliAxis::Z);
    std::vector<bool> support(n, false);
    for (std::size_t k = 0; k < qubits.size(); ++k) {
        require(qubits[k] < n, ErrorKind::InvalidDimension, "qubit index out of range");
        all[qubits[k]] = axes[k];
        support[qubits[k]] = true;
    }
    return PauliString(std::move(all), std::move(support));
}

std::size_t PauliString::weight() const { return static_cast<std::size_t>(std::count(support_.begin(), support_.end(), true)); }

std::string PauliString::str() const {
    std::string out;
    for (std::size_t q = 0; q < axes_.size(); ++q) {
        out.push_back(support_[q] ? axis_char(axes_[q]) : 'I');
    }
    return out;
}

std::uint64_t PauliString::flip_mask() const {
    std::uint64_t mask = 0;
    const std::size_t n = axes_.size();
    for (std::size_t q = 0; q < n; ++q) {
        if (support_[q] && axes_[q] != PauliAxis::Z) {
            mask |= std::uint64_t{1} << bit_of(n, q);
        }
    }
    return mask;
}

std::uint64_t PauliString::sign_mask() const {
    std::uint64_t mask = 0;
    const std::size_t n = axes_.size();
    for (std::size_t q = 0; q < n; ++q) {
        if (support_[q] && axes_[q] != PauliAxis::X) {
            mask |= std::uint64_t{1} << bit_of(n, q);
        }
    }
    return mask;
}

std::size_t PauliString::y_count() const {
    std::size_t count = 0;
    for (std::size_t q = 0; q < axes_.size(); ++q) {
        count += (support_[q] && axes_[q] == PauliAxis::Y) ? 1 : 0;
    }
    return count;
}

// ---------------------------------------------------------------------------------------------
// Outcome

Outcome::Outcome(std::vector<int> values) : values_(std::move(values)) {
    for (int v : values_) {
        require(v == 1 || v == -1, ErrorKind::InvalidArgument, "outcome entries must be +1 or -1");
    }
}

int Outcome::product() const {
    return std::accumulate(values_.begin(), values_.end(), 1, std::multiplies<>());
}

// ---------------------------------------------------------------------------------------------
// PureState

namespace {

double squared_norm(std::span<const cplx> v) {
    double acc = 0.0;
    for (const cplx &a : v) {
        acc += std::norm(a);
    }
    return acc;
}

void check_dimension(std::size_t n, std::size_t length, std::size_t cap) {
    require(n >= 1 && n <= cap, ErrorKind::InvalidDimension, "qubit count " + std::to_string(n) + " outside [1, " + std::to_string(cap) + "]");
    require(length == (std::size_t{1} << n), ErrorKind::InvalidDimension,
            "expected 2^" + std::to_string(n) + " entries, got " + std::to_string(length));
}

}  // namespace

PureState::PureState(std::size_t n_qubits, std::vector<cplx> amplitudes) : n_(n_qubits), amps_(std::move(amplitudes)) {
    check_dimension(n_, amps_.size(), kMaxStateQubits);
    const double norm2 = squared_norm(amps_);
    require(std::abs(std::sqrt(norm2) - 1.0) <= kExactTol, ErrorKind::InvalidState,
            "state norm deviates from 1 by " + std::to_string(std::abs(std::sqrt(norm2) - 1.0)));
}

PureState PureState::normalized(std::size_t n_qubits, std::vector<cplx> amplitudes) {
    check_dimension(n_qubits, amplitudes.size(), kMaxStateQubits);
    const double norm = std::sqrt(squared_norm(amplitudes));
    require(norm > 1e-150, ErrorKind::InvalidState, "cannot normalize a zero vector");
    for (cplx &a : amplitudes) {
        a /= norm;
    }
    return PureState(Unchecked{}, n_qubits, std::move(amplitudes));
}

cplx PureState::inner(const PureState &other) const {
    require(dim() == other.dim(), ErrorKind::InvalidDimension, "inner product of states of different size");
    cplx acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

double PureState::norm() const { return std::sqrt(squared_norm(amps_)); }

double PureState::distance_up_to_phase(const PureState &other) const {
    const cplx overlap = other.inner(*this);
    const cplx phase = std::abs(overlap) > 0.0 ? overlap / std::abs(overlap) : cplx(1.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < amps_.size(); ++i) {
        acc += std::norm(amps_[i] - phase * other.amps_[i]);
    }
    return std::sqrt(acc);
}

PureState PureState::tensor(const PureState &other) const {
    std::vector<cplx> out(dim() * other.dim());
    for (std::size_t i = 0; i < dim(); ++i) {
        for (std::size_t j = 0; j < other.dim(); ++j) {
            out[i * other.dim() + j] = amps_[i] * other.amps_[j];
        }
    }
    return PureState(n_ + other.n_, std::move(out));
}

// ---------------------------------------------------------------------------------------------
// DensityMatrix

namespace {

void check_hermitian_unit_trace(std::size_t n, const CMatrix &m) {
    require(m.rows() == m.cols(), ErrorKind::InvalidDimension, "density matrix must be square");
    check_dimension(n, static_cast<std::size_t>(m.rows()), kMaxDensityQubits);
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    require(asym <= kExactTol, ErrorKind::InvalidState, "density matrix not Hermitian (deviation " + std::to_string(asym) + ")");
    const cplx tr = m.trace();
    require(std::abs(tr - cplx(1.0)) <= kExactTol, ErrorKind::InvalidState,
            "density matrix trace " + std::to_string(tr.real()) + " != 1");
}

}  // namespace

DensityMatrix::DensityMatrix(std::size_t n_qubits, CMatrix matrix) : n_(n_qubits), m_(std::move(matrix)) {
    check_hermitian_unit_trace(n_, m_);
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_, Eigen::EigenvaluesOnly);
    const double smallest = solver.eigenvalues().minCoeff();
    require(smallest >= -1e-9, ErrorKind::InvalidState, "density matrix has eigenvalue " + std::to_string(smallest));
}

DensityMatrix DensityMatrix::trusted(std::size_t n_qubits, CMatrix matrix) {
    check_hermitian_unit_trace(n_qubits, matrix);
    return DensityMatrix(Unchecked{}, n_qubits, std::move(matrix));
}

DensityMatrix DensityMatrix::from_pure(const PureState &state) {
    const auto amps = state.amplitudes();
    Eigen::Map<const Eigen::VectorXcd> v(amps.data(), static_cast<Eigen::Index>(amps.size()));
    return trusted(state.n_qubits(), v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t n_qubits) {
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << n_qubits);
    return trusted(n_qubits, CMatrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::mixture(std::span<const double> weights, std::span<const DensityMatrix> parts) {
    require(!parts.empty() && weights.size() == parts.size(), ErrorKind::InvalidArgument, "one weight per component required");
    double total = 0.0;
    CMatrix acc = CMatrix::Zero(parts[0].matrix().rows(), parts[0].matrix().cols());
    for (std::size_t k = 0; k < parts.size(); ++k) {
        require(weights[k] >= 0.0, ErrorKind::InvalidArgument, "mixture weights must be non-negative");
        require(parts[k].n_qubits() == parts[0].n_qubits(), ErrorKind::InvalidDimension, "mixture components differ in size");
        acc += weights[k] * parts[k].matrix();
        total += weights[k];
    }
    require(std::abs(total - 1.0) <= kExactTol, ErrorKind::InvalidArgument, "mixture weights must sum to 1");
    return trusted(parts[0].n_qubits(), std::move(acc));
}

double DensityMatrix::trace_distance(const DensityMatrix &other) const {
    require(dim() == other.dim(), ErrorKind::InvalidDimension, "trace distance of differently sized states");
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m_ - other.m_, Eigen::EigenvaluesOnly);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

double DensityMatrix::max_abs_diff(const DensityMatrix &other) const {
    require(dim() == other.dim(), ErrorKind::InvalidDimension, "comparison of differently sized states");
    return (m_ - other.m_).cwiseAbs().maxCoeff();
}

double DensityMatrix::purity() const { return (m_ * m_).trace().real(); }

}  // namespace qss
