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

#include "qss/rdm.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <array>
#include <cmath>
#include <string>

#include "qss/core.hpp"
#include "qss/error.hpp"
#include "qss/kernels.hpp"
#include "qss/rng.hpp"
#include "qss/states.hpp"

namespace qss {

namespace {

constexpr std::size_t kMaxGramQubits = 10;
constexpr std::size_t kUnknowns = 32;  // real and imaginary parts of the 4x4 Gram matrix
constexpr double kRankTol = 1e-9;
constexpr double kFeasibleTol = 1e-9;

std::vector<std::size_t> all_but(std::size_t n, std::size_t skip) {
    std::vector<std::size_t> keep;
    for (std::size_t q = 0; q < n; ++q) {
        if (q != skip) {
            keep.push_back(q);
        }
    }
    return keep;
}

Eigen::VectorXd to_vector(const CMatrix &g) {
    Eigen::VectorXd x(kUnknowns);
    for (Eigen::Index a = 0; a < 4; ++a) {
        for (Eigen::Index b = 0; b < 4; ++b) {
            x(a * 4 + b) = g(a, b).real();
            x(16 + a * 4 + b) = g(a, b).imag();
        }
    }
    return x;
}

CMatrix to_gram(const Eigen::VectorXd &x) {
    CMatrix g(4, 4);
    for (Eigen::Index a = 0; a < 4; ++a) {
        for (Eigen::Index b = 0; b < 4; ++b) {
            g(a, b) = cplx(x(a * 4 + b), x(16 + a * 4 + b));
        }
    }
    return g;
}

// Least-squares system over the 32 Gram unknowns, compressed as rows arrive: the running
// triangular factor of [A | b] is all that is kept.
class GramSystem {
   public:
    GramSystem() : r_(Eigen::MatrixXd::Zero(0, kUnknowns + 1)) {}

    // One complex equation sum_{a,b} coef(a,b) G(a,b) = value, as two real rows.
    void add(const Eigen::Matrix4cd &coef, cplx value) {
        Eigen::RowVectorXd re(kUnknowns + 1);
        Eigen::RowVectorXd im(kUnknowns + 1);
        for (Eigen::Index a = 0; a < 4; ++a) {
            for (Eigen::Index b = 0; b < 4; ++b) {
                const cplx c = coef(a, b);
                re(a * 4 + b) = c.real();
                re(16 + a * 4 + b) = -c.imag();
                im(a * 4 + b) = c.imag();
                im(16 + a * 4 + b) = c.real();
            }
        }
        re(kUnknowns) = value.real();
        im(kUnknowns) = value.imag();
        push(re);
        push(im);
    }

    void push(const Eigen::RowVectorXd &row) {
        pending_.push_back(row);
        if (pending_.size() >= kBlock) {
            flush();
        }
    }

    void finish() {
        flush();
        const Eigen::Index k = kUnknowns;
        Eigen::MatrixXd full = Eigen::MatrixXd::Zero(k + 1, k + 1);
        full.topRows(std::min<Eigen::Index>(r_.rows(), k + 1)) = r_.topRows(std::min<Eigen::Index>(r_.rows(), k + 1));
        a_ = full.topLeftCorner(k, k);
        c_ = full.topRightCorner(k, 1);
        tail_ = std::abs(full(k, k));
        const Eigen::JacobiSVD<Eigen::MatrixXd> svd(a_, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const Eigen::VectorXd &s = svd.singularValues();
        rank_ = 0;
        while (rank_ < kUnknowns && s(static_cast<Eigen::Index>(rank_)) > kRankTol * s(0)) {
            ++rank_;
        }
        const auto r = static_cast<Eigen::Index>(rank_);
        particular_ = svd.matrixV().leftCols(r) *
                      (svd.matrixU().leftCols(r).transpose() * c_).cwiseQuotient(s.head(r));
        null_ = svd.matrixV().rightCols(k - r);
    }

    std::size_t nullspace_dim() const { return kUnknowns - rank_; }
    const Eigen::VectorXd &particular() const { return particular_; }
    const Eigen::MatrixXd &nullspace() const { return null_; }

    double residual(const Eigen::VectorXd &x) const { return std::hypot((a_ * x - c_).norm(), tail_); }

    Eigen::VectorXd project_affine(const Eigen::VectorXd &y) const {
        return particular_ + null_ * (null_.transpose() * (y - particular_));
    }

   private:
    static constexpr std::size_t kBlock = 4096;

    void flush() {
        if (pending_.empty()) {
            return;
        }
        Eigen::MatrixXd stacked(r_.rows() + static_cast<Eigen::Index>(pending_.size()), kUnknowns + 1);
        stacked.topRows(r_.rows()) = r_;
        for (std::size_t i = 0; i < pending_.size(); ++i) {
            stacked.row(r_.rows() + static_cast<Eigen::Index>(i)) = pending_[i];
        }
        pending_.clear();
        const Eigen::HouseholderQR<Eigen::MatrixXd> qr(stacked);
        const Eigen::Index keep = std::min<Eigen::Index>(stacked.rows(), kUnknowns + 1);
        r_ = qr.matrixQR().topRows(keep).triangularView<Eigen::Upper>();
    }

    std::vector<Eigen::RowVectorXd> pending_;
    Eigen::MatrixXd r_;
    Eigen::MatrixXd a_;
    Eigen::VectorXd c_;
    double tail_ = 0.0;
    std::size_t rank_ = 0;
    Eigen::VectorXd particular_;
    Eigen::MatrixXd null_;
};

// coeff[i][l]: amplitude of |i> (parties 1..n) on environment label l in |chi>.
std::vector<std::array<double, 4>> chi_coefficients(std::size_t n) {
    const auto [v0, v1] = v_states(n);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<std::array<double, 4>> coeff(std::size_t{1} << n, std::array<double, 4>{});
    for (std::size_t b = 0; b < v0.dim(); ++b) {
        for (std::size_t last = 0; last < 2; ++last) {
            auto &row = coeff[(b << 1) | last];
            row[last] += inv_sqrt2 * v0[b].real();
            row[2 + last] += inv_sqrt2 * v1[b].real();
        }
    }
    return coeff;
}

void add_orthonormality(GramSystem &sys) {
    Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
    c(0, 0) = c(1, 1) = 1.0;  // <E0|E0> = 1
    sys.add(c, 1.0);
    c.setZero();
    c(2, 2) = c(3, 3) = 1.0;  // <E1|E1> = 1
    sys.add(c, 1.0);
    c.setZero();
    c(0, 2) = c(1, 3) = 1.0;  // <E0|E1> = 0
    sys.add(c, 0.0);
}

void add_hermiticity(GramSystem &sys) {
    for (std::size_t a = 0; a < 4; ++a) {
        for (std::size_t b = a; b < 4; ++b) {
            Eigen::RowVectorXd re = Eigen::RowVectorXd::Zero(kUnknowns + 1);
            Eigen::RowVectorXd im = Eigen::RowVectorXd::Zero(kUnknowns + 1);
            re(static_cast<Eigen::Index>(a * 4 + b)) += 1.0;
            re(static_cast<Eigen::Index>(b * 4 + a)) -= 1.0;
            im(static_cast<Eigen::Index>(16 + a * 4 + b)) += 1.0;
            im(static_cast<Eigen::Index>(16 + b * 4 + a)) += 1.0;
            sys.push(re);
            sys.push(im);
        }
    }
}

// rho[r,s] = sum_t sum_{l,l'} C[(r,t),l] C[(s,t),l'] G[l',l] must equal the marginal of G_n.
void add_marginal(GramSystem &sys, std::size_t n, std::size_t traced,
                  const std::vector<std::array<double, 4>> &coeff, const DensityMatrix &target) {
    const std::vector<std::size_t> keep = all_but(n, traced);
    const kernels::IndexSplit split(n, keep);
    const std::size_t d = split.kept_dim();
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t s = 0; s < d; ++s) {
            Eigen::Matrix4cd c = Eigen::Matrix4cd::Zero();
            for (std::size_t t = 0; t < 2; ++t) {
                const auto &ci = coeff[split.index(r, t)];
                const auto &cj = coeff[split.index(s, t)];
                for (Eigen::Index lp = 0; lp < 4; ++lp) {
                    for (Eigen::Index l = 0; l < 4; ++l) {
                        c(lp, l) += ci[static_cast<std::size_t>(l)] * cj[static_cast<std::size_t>(lp)];
                    }
                }
            }
            sys.add(c, target(r, s));
        }
    }
}

GramSystem build_system(std::size_t n, const std::vector<std::size_t> &traced_parties) {
    const auto coeff = chi_coefficients(n);
    const PureState g = g_state(n);
    GramSystem sys;
    add_hermiticity(sys);
    add_orthonormality(sys);
    for (std::size_t traced : traced_parties) {
        const std::vector<std::size_t> keep = all_but(n, traced);
        add_marginal(sys, n, traced, coeff, partial_trace(g, keep));
    }
    sys.finish();
    return sys;
}

Eigen::VectorXd project_psd(const Eigen::VectorXd &x) {
    const CMatrix g = to_gram(x);
    const CMatrix h = 0.5 * (g + g.adjoint());
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    return to_vector(es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().adjoint());
}

double min_eigenvalue(const CMatrix &g) {
    const Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (g + g.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

// Dykstra's alternating projection between the affine solution set and the PSD cone, started
// from random points of the affine set.
std::optional<Eigen::VectorXd> search_alternative(const GramSystem &sys, const Eigen::VectorXd &product,
                                                  std::uint64_t seed) {
    constexpr int kTrials = 16;
    constexpr int kIterations = 3000;
    constexpr double kMinDistance = 1e-3;
    const Rng master(seed);
    std::optional<Eigen::VectorXd> best;
    double best_distance = kMinDistance;
    const auto dim = sys.nullspace().cols();
    for (int trial = 0; trial < kTrials; ++trial) {
        Rng rng = master.split(static_cast<std::uint64_t>(trial));
        Eigen::VectorXd z(dim);
        for (Eigen::Index j = 0; j < dim; ++j) {
            z(j) = rng.gaussian();
        }
        Eigen::VectorXd x = sys.project_affine(product + sys.nullspace() * z);
        Eigen::VectorXd p = Eigen::VectorXd::Zero(kUnknowns);
        Eigen::VectorXd q = Eigen::VectorXd::Zero(kUnknowns);
        for (int it = 0; it < kIterations; ++it) {
            const Eigen::VectorXd y = x + p;
            const Eigen::VectorXd ya = sys.project_affine(y);
            p = y - ya;
            const Eigen::VectorXd w = ya + q;
            x = project_psd(w);
            q = w - x;
        }
        const Eigen::VectorXd candidate = sys.project_affine(x);
        const double distance = (candidate - product).norm();
        const bool feasible = sys.residual(candidate) <= kFeasibleTol && min_eigenvalue(to_gram(candidate)) >= -kFeasibleTol;
        if (feasible && distance > best_distance) {
            best = candidate;
            best_distance = distance;
        }
    }
    return best;
}

}  // namespace

MarginalSet marginal_set(const PureState &state) {
    const std::size_t n = state.n_qubits();
    require(n >= 3, ErrorKind::InvalidDimension, "marginal set needs n >= 3");
    require(n <= kMaxGramQubits, ErrorKind::BudgetExceeded, "marginal sets limited to n <= 10");
    MarginalSet out{n, {}};
    for (std::size_t k = 0; k < n; ++k) {
        out.marginals.emplace(k, partial_trace(state, all_but(n, k)));
    }
    return out;
}

MarginalSet marginal_set(const DensityMatrix &rho) {
    const std::size_t n = rho.n_qubits();
    require(n >= 3, ErrorKind::InvalidDimension, "marginal set needs n >= 3");
    require(n <= kMaxGramQubits, ErrorKind::BudgetExceeded, "marginal sets limited to n <= 10");
    MarginalSet out{n, {}};
    for (std::size_t k = 0; k < n; ++k) {
        out.marginals.emplace(k, partial_trace(rho, all_but(n, k)));
    }
    return out;
}

double max_marginal_difference(const MarginalSet &a, const MarginalSet &b) {
    require(a.n == b.n, ErrorKind::InvalidDimension, "marginal sets of different sizes");
    double worst = 0.0;
    for (const auto &[k, rho] : a.marginals) {
        worst = std::max(worst, rho.max_abs_diff(b.marginals.at(k)));
    }
    return worst;
}

CounterexampleReport counterexample_check(const PureState &state, const DensityMatrix &candidate) {
    require(state.n_qubits() == candidate.n_qubits(), ErrorKind::InvalidDimension, "states of different sizes");
    const double diff = max_marginal_difference(marginal_set(state), marginal_set(candidate));
    const double distance = DensityMatrix::from_pure(state).trace_distance(candidate);
    return CounterexampleReport{diff, distance, diff <= kExactTol && distance > 0.4};
}

bool ghz_counterexample_check(std::size_t n) {
    require(n >= 3, ErrorKind::InvalidDimension, "counterexample needs n >= 3");
    const std::array<double, 2> w{0.5, 0.5};
    const std::array<DensityMatrix, 2> parts{DensityMatrix::from_pure(make_basis_state(n, std::string(n, '0'))),
                                             DensityMatrix::from_pure(make_basis_state(n, std::string(n, '1')))};
    return counterexample_check(ghz_state(n), DensityMatrix::mixture(w, parts)).holds;
}

DensityMatrix w_dephased_mixture(std::size_t n) {
    const std::array<double, 2> w{0.5, 0.5};
    const std::array<DensityMatrix, 2> parts{DensityMatrix::from_pure(w_state(n)), DensityMatrix::from_pure(wbar_state(n))};
    return DensityMatrix::mixture(w, parts);
}

CMatrix product_gram() {
    CMatrix g = CMatrix::Zero(4, 4);
    g(0, 0) = g(3, 3) = g(0, 3) = g(3, 0) = 1.0;
    return g;
}

double gram_residual(std::size_t n, const CMatrix &gram) {
    require(n >= 3 && n <= kMaxGramQubits, ErrorKind::InvalidDimension, "Gram system defined for 3 <= n <= 10");
    require(gram.rows() == 4 && gram.cols() == 4, ErrorKind::InvalidDimension, "Gram matrix must be 4x4");
    return build_system(n, {0}).residual(to_vector(gram));
}

GramSolution g_uniqueness_check(std::size_t n, std::uint64_t seed) {
    require(n >= 3 && n <= kMaxGramQubits, ErrorKind::InvalidDimension, "Gram system defined for 3 <= n <= 10");
    std::vector<std::size_t> every(n);
    for (std::size_t k = 0; k < n; ++k) {
        every[k] = k;
    }
    const GramSystem sys = build_system(n, {0});
    const GramSystem two = build_system(n, {0, n - 1});
    const GramSystem all = build_system(n, every);

    const Eigen::VectorXd product = to_vector(product_gram());
    const double product_residual = sys.residual(product);
    require(product_residual <= kFeasibleTol, ErrorKind::InternalInconsistency,
            "the product Gram does not solve its own system (residual " + std::to_string(product_residual) + ")");

    GramSolution out{n, product_gram(), product_residual, true, sys.nullspace_dim(), two.nullspace_dim(),
                     all.nullspace_dim(), std::nullopt};
    if (sys.nullspace_dim() == 0) {
        const Eigen::VectorXd &x = sys.particular();
        require((x - product).norm() <= 1e-8, ErrorKind::InternalInconsistency,
                "unique Gram solution differs from the product solution");
        out.gram = to_gram(x);
        out.residual = sys.residual(x);
        return out;
    }
    if (auto alt = search_alternative(sys, product, seed)) {
        out.forced_product = false;
        out.alternative = to_gram(*alt);
    }
    return out;
}

}  // namespace qss
