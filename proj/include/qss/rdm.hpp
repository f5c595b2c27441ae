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

// Do the (n-1)-party marginals of a state determine it?
//
// For GHZ they do not (a classical mixture shares every marginal). For G_n the question is
// settled by a Gram-matrix certificate: every state on parties 1..n whose {2..n} marginal equals
// that of G_n can be purified as
//
//   |chi> = (|v_0>|E_0> + |v_1>|E_1>)/sqrt(2),  |E_i> = |0>_n |e_{i0}> + |1>_n |e_{i1}>,
//
// and all constraints are linear in the 4x4 Gram matrix of {e00, e01, e10, e11}. Solving that
// system (plus positivity) decides whether |chi> must be G_n times an environment state.

#ifndef QSS_RDM_HPP
#define QSS_RDM_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "qss/types.hpp"

namespace qss {

struct MarginalSet {
    std::size_t n;
    std::map<std::size_t, DensityMatrix> marginals;  // left-out party -> state of the others
};

MarginalSet marginal_set(const PureState &state);
MarginalSet marginal_set(const DensityMatrix &rho);

/// Largest entrywise difference between corresponding marginals.
double max_marginal_difference(const MarginalSet &a, const MarginalSet &b);

struct CounterexampleReport {
    double max_marginal_diff;
    double trace_distance;
    bool holds;  // marginals agree within 1e-10 while the states are > 0.4 apart
};

CounterexampleReport counterexample_check(const PureState &state, const DensityMatrix &candidate);

/// (|0...0><0...0| + |1...1><1...1|)/2 against |GHZ_n>.
bool ghz_counterexample_check(std::size_t n);

/// (|W><W| + |Wbar><Wbar|)/2, the same dephasing construction applied to G_n.
DensityMatrix w_dephased_mixture(std::size_t n);

struct GramSolution {
    std::size_t n;
    CMatrix gram;     // 4x4 over {e00, e01, e10, e11}
    double residual;  // ||A x - b|| of `gram` against the assembled system
    bool forced_product;
    std::size_t nullspace_dim;                 // orthonormality + the {2..n} marginal
    std::size_t nullspace_dim_two_marginals;   // adds the {1..n-1} marginal
    std::size_t nullspace_dim_all_marginals;   // every (n-1)-party marginal
    std::optional<CMatrix> alternative;        // a different PSD solution, when one exists
};

/// Builds and solves the Gram system. When the affine solution set is larger than one point,
/// a seeded alternating-projection search looks for a positive semidefinite solution away from
/// the product Gram; finding one makes forced_product false.
GramSolution g_uniqueness_check(std::size_t n, std::uint64_t seed = 0);

/// The product solution: e00 = e11 = one unit vector, e01 = e10 = 0.
CMatrix product_gram();

/// Residual of an arbitrary Gram against the {2..n} system.
double gram_residual(std::size_t n, const CMatrix &gram);

}  // namespace qss

#endif  // QSS_RDM_HPP
