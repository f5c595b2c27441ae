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

#include <bit>

#include "kernels_common.hpp"
#include "qss/kernels.hpp"

namespace qss::kernels {

PauliMasks PauliMasks::from(const PauliString &p) { return PauliMasks{p.flip_mask(), p.sign_mask(), p.y_count()}; }

IndexSplit::IndexSplit(std::size_t n, std::span<const std::size_t> keep) {
    std::vector<bool> is_kept(n, false);
    for (std::size_t q : keep) {
        is_kept[q] = true;
    }
    std::vector<unsigned> kept_bits;
    std::vector<unsigned> traced_bits;
    for (std::size_t q = 0; q < n; ++q) {
        (is_kept[q] ? kept_bits : traced_bits).push_back(bit_of(n, q));
    }
    // Sub-index bit j (from the top) maps to the j-th listed qubit.
    auto offsets = [](const std::vector<unsigned> &bits) {
        std::vector<std::uint64_t> out(std::size_t{1} << bits.size());
        const std::size_t k = bits.size();
        for (std::size_t sub = 0; sub < out.size(); ++sub) {
            std::uint64_t full = 0;
            for (std::size_t j = 0; j < k; ++j) {
                if ((sub >> (k - 1 - j)) & 1u) {
                    full |= std::uint64_t{1} << bits[j];
                }
            }
            out[sub] = full;
        }
        return out;
    };
    kept_offsets_ = offsets(kept_bits);
    traced_offsets_ = offsets(traced_bits);
}

namespace serial {

void apply_pauli(std::span<const cplx> in, std::span<cplx> out, const PauliMasks &masks) {
    const cplx base = detail::i_power(masks.y_count);
    for (std::size_t i = 0; i < in.size(); ++i) {
        out[i ^ masks.flip] = detail::pauli_phase(base, i, masks.sign) * in[i];
    }
}

cplx expectation_pure(std::span<const cplx> psi, const PauliMasks &masks) {
    const cplx base = detail::i_power(masks.y_count);
    cplx acc = 0.0;
    for (std::size_t i = 0; i < psi.size(); ++i) {
        acc += std::conj(psi[i ^ masks.flip]) * detail::pauli_phase(base, i, masks.sign) * psi[i];
    }
    return acc;
}

cplx expectation_density(const CMatrix &rho, const PauliMasks &masks) {
    // tr(rho P) = sum_i rho[i, i^flip] phase(i)
    const cplx base = detail::i_power(masks.y_count);
    cplx acc = 0.0;
    const auto dim = static_cast<std::size_t>(rho.rows());
    for (std::size_t i = 0; i < dim; ++i) {
        acc += rho(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i ^ masks.flip)) *
               detail::pauli_phase(base, i, masks.sign);
    }
    return acc;
}

void apply_gate(std::span<cplx> psi, std::size_t n, std::size_t qubit, const Gate2 &gate) {
    const std::uint64_t stride = std::uint64_t{1} << bit_of(n, qubit);
    const std::size_t pairs = psi.size() / 2;
    for (std::size_t k = 0; k < pairs; ++k) {
        const std::uint64_t i0 = detail::insert_zero(k, stride);
        detail::gate_pair(psi[i0], psi[i0 | stride], gate);
    }
}

void conjugate_gate(CMatrix &rho, std::size_t n, std::size_t qubit, const Gate2 &gate) {
    const std::uint64_t stride = std::uint64_t{1} << bit_of(n, qubit);
    const auto dim = static_cast<std::size_t>(rho.rows());
    const Gate2 conj_gate{std::conj(gate[0]), std::conj(gate[1]), std::conj(gate[2]), std::conj(gate[3])};
    // Left multiply: every column, pairs of rows.
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t k = 0; k < dim / 2; ++k) {
            const std::uint64_t r0 = detail::insert_zero(k, stride);
            detail::gate_pair(rho.coeffRef(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(c)),
                              rho.coeffRef(static_cast<Eigen::Index>(r0 | stride), static_cast<Eigen::Index>(c)), gate);
        }
    }
    // Right multiply by U^dagger: every row, pairs of columns with the conjugated gate.
    for (std::size_t k = 0; k < dim / 2; ++k) {
        const std::uint64_t c0 = detail::insert_zero(k, stride);
        for (std::size_t r = 0; r < dim; ++r) {
            detail::gate_pair(rho.coeffRef(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c0)),
                              rho.coeffRef(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c0 | stride)),
                              conj_gate);
        }
    }
}

CMatrix partial_trace_pure(std::span<const cplx> psi, const IndexSplit &split) {
    const std::size_t kd = split.kept_dim();
    const std::size_t td = split.traced_dim();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    for (std::size_t r = 0; r < kd; ++r) {
        for (std::size_t c = 0; c < kd; ++c) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                acc += psi[split.index(r, t)] * std::conj(psi[split.index(c, t)]);
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return out;
}

CMatrix partial_trace_density(const CMatrix &rho, const IndexSplit &split) {
    const std::size_t kd = split.kept_dim();
    const std::size_t td = split.traced_dim();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    for (std::size_t r = 0; r < kd; ++r) {
        for (std::size_t c = 0; c < kd; ++c) {
            cplx acc = 0.0;
            for (std::size_t t = 0; t < td; ++t) {
                acc += rho(static_cast<Eigen::Index>(split.index(r, t)), static_cast<Eigen::Index>(split.index(c, t)));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = acc;
        }
    }
    return out;
}

std::vector<double> marginal_probabilities(std::span<const cplx> psi, const IndexSplit &split) {
    std::vector<double> out(split.kept_dim(), 0.0);
    for (std::size_t r = 0; r < split.kept_dim(); ++r) {
        double acc = 0.0;
        for (std::size_t t = 0; t < split.traced_dim(); ++t) {
            acc += std::norm(psi[split.index(r, t)]);
        }
        out[r] = acc;
    }
    return out;
}

void expectation_batch(std::span<const cplx> psi, std::span<const PauliMasks> batch, std::span<cplx> out) {
    for (std::size_t k = 0; k < batch.size(); ++k) {
        out[k] = expectation_pure(psi, batch[k]);
    }
}

void expectation_batch(const CMatrix &rho, std::span<const PauliMasks> batch, std::span<cplx> out) {
    for (std::size_t k = 0; k < batch.size(); ++k) {
        out[k] = expectation_density(rho, batch[k]);
    }
}

}  // namespace serial
}  // namespace qss::kernels
