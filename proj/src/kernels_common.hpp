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

#ifndef QSS_SRC_KERNELS_COMMON_HPP
#define QSS_SRC_KERNELS_COMMON_HPP

#include <bit>
#include <cstdint>

#include "qss/kernels.hpp"

namespace qss::kernels::detail {

inline cplx i_power(std::size_t k) {
    switch (k & 3u) {
        case 0:
            return {1.0, 0.0};
        case 1:
            return {0.0, 1.0};
        case 2:
            return {-1.0, 0.0};
        default:
            return {0.0, -1.0};
    }
}

inline cplx pauli_phase(cplx base, std::uint64_t index, std::uint64_t sign_mask) {
    return (std::popcount(index & sign_mask) & 1) ? -base : base;
}

/// k-th index whose `stride` bit is zero.
inline std::uint64_t insert_zero(std::uint64_t k, std::uint64_t stride) {
    const std::uint64_t low = k & (stride - 1);
    return ((k - low) << 1) | low;
}

inline void gate_pair(cplx &a0, cplx &a1, const Gate2 &g) {
    const cplx b0 = g[0] * a0 + g[1] * a1;
    const cplx b1 = g[2] * a0 + g[3] * a1;
    a0 = b0;
    a1 = b1;
}

}  // namespace qss::kernels::detail

#endif  // QSS_SRC_KERNELS_COMMON_HPP
