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

// Brute-force reference computations shared by the unit tests. Everything here works on dense
// Kronecker products and explicit bit loops, independent of the library's index kernels.

#ifndef QSS_TEST_UTIL_HPP
#define QSS_TEST_UTIL_HPP

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <bit>
#include <cmath>
#include <string>
#include <vector>

#include "qss/error.hpp"
#include "qss/rng.hpp"
#include "qss/types.hpp"

namespace qss::testing {

inline CMatrix pauli_2x2(char c) {
    CMatrix m(2, 2);
    const cplx i(0.0, 1.0);
    switch (c) {
        case 'X': case 'x': m << 0.0, 1.0, 1.0, 0.0; break;
        case 'Y': case 'y': m << 0.0, -i, i, 0.0; break;
        case 'Z': case 'z': m << 1.0, 0.0, 0.0, -1.0; break;
        default: m << 1.0, 0.0, 0.0, 1.0; break;
    }
    return m;
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

/// Dense operator for a label like "XIZY"; the leftmost character acts on qubit 0.
inline CMatrix dense_pauli(const std::string &label) {
    CMatrix out = CMatrix::Identity(1, 1);
    for (char c : label) {
        out = kron(out, pauli_2x2(c));
    }
    return out;
}

inline Eigen::VectorXcd to_vec(const PureState &s) {
    Eigen::VectorXcd v(static_cast<Eigen::Index>(s.dim()));
    for (std::size_t i = 0; i < s.dim(); ++i) {
        v(static_cast<Eigen::Index>(i)) = s[i];
    }
    return v;
}

inline CMatrix projector(const Eigen::VectorXcd &v) { return v * v.adjoint(); }

inline double dense_expectation(const PureState &s, const std::string &label) {
    const Eigen::VectorXcd v = to_vec(s);
    return (v.adjoint() * dense_pauli(label) * v)(0).real();
}

inline double dense_expectation(const CMatrix &rho, const std::string &label) {
    return (rho * dense_pauli(label)).trace().real();
}

/// Ket from a bitstring such as "0110" (leftmost = qubit 0).
inline Eigen::VectorXcd ket(const std::string &bits) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(Eigen::Index{1} << bits.size());
    Eigen::Index idx = 0;
    for (char c : bits) {
        idx = (idx << 1) | (c == '1' ? 1 : 0);
    }
    v(idx) = 1.0;
    return v;
}

/// Reduced state on `keep` (ascending qubit order) by explicit bit manipulation.
inline CMatrix brute_partial_trace(const CMatrix &rho, std::size_t n, const std::vector<std::size_t> &keep) {
    std::vector<std::size_t> traced;
    for (std::size_t q = 0; q < n; ++q) {
        if (std::find(keep.begin(), keep.end(), q) == keep.end()) {
            traced.push_back(q);
        }
    }
    const auto compose = [&](std::size_t r, std::size_t t) {
        std::size_t idx = 0;
        for (std::size_t j = 0; j < keep.size(); ++j) {
            if ((r >> (keep.size() - 1 - j)) & 1u) {
                idx |= std::size_t{1} << (n - 1 - keep[j]);
            }
        }
        for (std::size_t j = 0; j < traced.size(); ++j) {
            if ((t >> (traced.size() - 1 - j)) & 1u) {
                idx |= std::size_t{1} << (n - 1 - traced[j]);
            }
        }
        return static_cast<Eigen::Index>(idx);
    };
    const std::size_t kd = std::size_t{1} << keep.size();
    const std::size_t td = std::size_t{1} << traced.size();
    CMatrix out = CMatrix::Zero(static_cast<Eigen::Index>(kd), static_cast<Eigen::Index>(kd));
    for (std::size_t r = 0; r < kd; ++r) {
        for (std::size_t c = 0; c < kd; ++c) {
            for (std::size_t t = 0; t < td; ++t) {
                out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += rho(compose(r, t), compose(c, t));
            }
        }
    }
    return out;
}

/// Haar-ish random pure state (Gaussian amplitudes, normalized).
inline PureState random_state(std::size_t n, Rng &rng) {
    std::vector<cplx> amps(std::size_t{1} << n);
    for (cplx &a : amps) {
        a = cplx(rng.gaussian(), rng.gaussian());
    }
    return PureState::normalized(n, std::move(amps));
}

/// Random full-rank density matrix G G^dagger / tr.
inline CMatrix random_density(std::size_t n, Rng &rng) {
    const auto d = Eigen::Index{1} << n;
    CMatrix g(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
        for (Eigen::Index c = 0; c < d; ++c) {
            g(r, c) = cplx(rng.gaussian(), rng.gaussian());
        }
    }
    CMatrix rho = g * g.adjoint();
    return rho / rho.trace();
}

/// Throws-with-kind check.
template <typename F>
void expect_error(ErrorKind kind, F &&f) {
    try {
        f();
        ADD_FAILURE() << "expected qss::Error(" << to_string(kind) << ")";
    } catch (const Error &e) {
        EXPECT_EQ(e.kind(), kind) << e.what();
    }
}

inline double binary_entropy_ref(double p) {
    if (p <= 0.0 || p >= 1.0) {
        return 0.0;
    }
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

}  // namespace qss::testing

#endif  // QSS_TEST_UTIL_HPP
