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

#include "qss/bell.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <cstdint>

#include "qss/core.hpp"
#include "qss/error.hpp"
#include "qss/kernels.hpp"

namespace qss {

namespace {

constexpr double kEntrySlack = 1e-9;

std::size_t pow3(std::size_t n) {
    std::size_t r = 1;
    for (std::size_t k = 0; k < n; ++k) {
        r *= 3;
    }
    return r;
}

void check_tensor_size(std::size_t n) {
    require(n >= 1, ErrorKind::InvalidDimension, "correlation tensor needs at least one qubit");
    require(n <= CorrelationTensor::kMaxParties, ErrorKind::BudgetExceeded,
            "correlation tensor limited to " + std::to_string(CorrelationTensor::kMaxParties) + " parties, got " +
                std::to_string(n));
}

std::vector<kernels::PauliMasks> full_weight_masks(std::size_t n) {
    std::vector<kernels::PauliMasks> masks(pow3(n));
    for (std::size_t flat = 0; flat < masks.size(); ++flat) {
        kernels::PauliMasks &mk = masks[flat];
        std::size_t rest = flat;
        for (std::size_t k = n; k-- > 0;) {
            const std::size_t axis = rest % 3;
            rest /= 3;
            const std::uint64_t bit = std::uint64_t{1} << bit_of(n, k);
            if (axis != 2) {
                mk.flip |= bit;
            }
            if (axis != 0) {
                mk.sign |= bit;
            }
            if (axis == 1) {
                ++mk.y_count;
            }
        }
    }
    return masks;
}

CorrelationTensor finish_tensor(std::size_t n, const std::vector<cplx> &raw) {
    std::vector<double> entries(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (std::abs(raw[i].imag()) > kExactTol) {
            fail(ErrorKind::InternalInconsistency, "correlation entry has imaginary part " + std::to_string(raw[i].imag()));
        }
        entries[i] = raw[i].real();
    }
    return CorrelationTensor(n, std::move(entries));
}

// Applies `op` (rows x 3) along mode k of a row-major tensor with extents `dims`.
std::vector<double> contract_mode(const std::vector<double> &in, std::vector<std::size_t> &dims, std::size_t k,
                                  const Eigen::MatrixXd &op) {
    std::size_t outer = 1;
    std::size_t inner = 1;
    for (std::size_t j = 0; j < k; ++j) {
        outer *= dims[j];
    }
    for (std::size_t j = k + 1; j < dims.size(); ++j) {
        inner *= dims[j];
    }
    const std::size_t din = dims[k];
    const auto dout = static_cast<std::size_t>(op.rows());
    std::vector<double> out(outer * dout * inner, 0.0);
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t i = 0; i < dout; ++i) {
            double *dst = &out[(o * dout + i) * inner];
            for (std::size_t j = 0; j < din; ++j) {
                const double w = op(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
                if (w == 0.0) {
                    continue;
                }
                const double *src = &in[(o * din + j) * inner];
                for (std::size_t s = 0; s < inner; ++s) {
                    dst[s] += w * src[s];
                }
            }
        }
    }
    dims[k] = dout;
    return out;
}

double sum_squares(const std::vector<double> &v) {
    double s = 0.0;
    for (double x : v) {
        s += x * x;
    }
    return s;
}

LocalFrame::Plane orthonormal_plane(Eigen::Vector3d u, Eigen::Vector3d v) {
    u.normalize();
    v -= u.dot(v) * u;
    v.normalize();
    LocalFrame::Plane p;
    p.col(0) = u;
    p.col(1) = v;
    return p;
}

// Plane sum with every party but `skip` restricted to its plane; returns the 3x3 scatter of the
// remaining mode.
Eigen::Matrix3d mode_scatter(const CorrelationTensor &t, const std::vector<LocalFrame::Plane> &planes, std::size_t skip) {
    std::vector<std::size_t> dims(t.n(), 3);
    std::vector<double> data = t.entries();
    for (std::size_t k = 0; k < t.n(); ++k) {
        if (k != skip) {
            data = contract_mode(data, dims, k, planes[k].transpose());
        }
    }
    std::size_t outer = 1;
    for (std::size_t j = 0; j < skip; ++j) {
        outer *= dims[j];
    }
    const std::size_t inner = data.size() / (outer * 3);
    Eigen::Matrix3d s = Eigen::Matrix3d::Zero();
    for (std::size_t o = 0; o < outer; ++o) {
        for (std::size_t r = 0; r < inner; ++r) {
            Eigen::Vector3d w;
            for (std::size_t a = 0; a < 3; ++a) {
                w(static_cast<Eigen::Index>(a)) = data[(o * 3 + a) * inner + r];
            }
            s += w * w.transpose();
        }
    }
    return s;
}

double climb(const CorrelationTensor &t, std::vector<LocalFrame::Plane> &planes) {
    constexpr int kMaxSweeps = 500;
    double value = plane_sum(t, LocalFrame(planes));
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        for (std::size_t k = 0; k < t.n(); ++k) {
            const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(mode_scatter(t, planes, k));
            // Eigenvalues ascend: the top two eigenvectors span the best plane for party k.
            planes[k] = orthonormal_plane(es.eigenvectors().col(2), es.eigenvectors().col(1));
        }
        const double next = plane_sum(t, LocalFrame(planes));
        const bool converged = next - value <= 1e-13 * std::max(1.0, next);
        value = std::max(value, next);
        if (converged) {
            break;
        }
    }
    return value;
}

}  // namespace

Eigen::Matrix3d correlation_matrix_2q(const DensityMatrix &rho) {
    require(rho.n_qubits() == 2, ErrorKind::InvalidDimension,
            "correlation matrix needs a two-qubit state, got " + std::to_string(rho.n_qubits()) + " qubits");
    Eigen::Matrix3d t;
    const std::array<PauliAxis, 3> axes{PauliAxis::X, PauliAxis::Y, PauliAxis::Z};
    const std::array<std::size_t, 2> both{0, 1};
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const std::array<PauliAxis, 2> pair{axes[i], axes[j]};
            t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = expectation(rho, PauliString::on(2, both, pair));
        }
    }
    return t;
}

double horodecki_m(const DensityMatrix &rho) {
    const Eigen::Matrix3d t = correlation_matrix_2q(rho);
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(t.transpose() * t, Eigen::EigenvaluesOnly);
    return std::max(0.0, es.eigenvalues()(2) + es.eigenvalues()(1));
}

double max_chsh_value(const DensityMatrix &rho) { return 2.0 * std::sqrt(horodecki_m(rho)); }

CorrelationTensor::CorrelationTensor(std::size_t n, std::vector<double> entries) : n_(n), entries_(std::move(entries)) {
    check_tensor_size(n);
    require(entries_.size() == pow3(n), ErrorKind::InvalidDimension, "tensor needs 3^n entries");
    for (double e : entries_) {
        require(std::abs(e) <= 1.0 + kEntrySlack, ErrorKind::InvalidState, "correlation entry outside [-1, 1]");
    }
}

std::size_t CorrelationTensor::flat_index(std::string_view axes) {
    std::size_t flat = 0;
    for (char c : axes) {
        std::size_t a = 0;
        switch (c) {
            case 'x': case 'X': a = 0; break;
            case 'y': case 'Y': a = 1; break;
            case 'z': case 'Z': a = 2; break;
            default: fail(ErrorKind::InvalidArgument, std::string("bad tensor axis '") + c + "'");
        }
        flat = flat * 3 + a;
    }
    return flat;
}

double CorrelationTensor::at(std::string_view axes) const {
    require(axes.size() == n_, ErrorKind::InvalidDimension, "axis label length must equal n");
    return entries_[flat_index(axes)];
}

std::string CorrelationTensor::label(std::size_t flat) const {
    std::string s(n_, 'x');
    for (std::size_t k = n_; k-- > 0;) {
        s[k] = "xyz"[flat % 3];
        flat /= 3;
    }
    return s;
}

CorrelationTensor correlation_tensor(const PureState &state) {
    const std::size_t n = state.n_qubits();
    check_tensor_size(n);
    const auto masks = full_weight_masks(n);
    std::vector<cplx> raw(masks.size());
    kernels::parallel::expectation_batch(state.amplitudes(), masks, raw);
    return finish_tensor(n, raw);
}

CorrelationTensor correlation_tensor(const DensityMatrix &rho) {
    const std::size_t n = rho.n_qubits();
    check_tensor_size(n);
    const auto masks = full_weight_masks(n);
    std::vector<cplx> raw(masks.size());
    kernels::parallel::expectation_batch(rho.matrix(), masks, raw);
    return finish_tensor(n, raw);
}

LocalFrame::LocalFrame(std::vector<Plane> planes) : planes_(std::move(planes)) {
    for (const Plane &p : planes_) {
        const bool unit = std::abs(p.col(0).norm() - 1.0) <= kExactTol && std::abs(p.col(1).norm() - 1.0) <= kExactTol;
        require(unit, ErrorKind::InvalidArgument, "frame directions must be unit vectors");
        require(std::abs(p.col(0).dot(p.col(1))) <= kExactTol, ErrorKind::InvalidArgument,
                "frame directions must be orthogonal");
    }
}

LocalFrame LocalFrame::standard(std::size_t n) {
    Plane p = Plane::Zero();
    p(0, 0) = 1.0;
    p(1, 1) = 1.0;
    return LocalFrame(std::vector<Plane>(n, p));
}

LocalFrame LocalFrame::random(std::size_t n, Rng &rng) {
    std::vector<Plane> planes;
    planes.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        Eigen::Vector3d u;
        Eigen::Vector3d v;
        for (int a = 0; a < 3; ++a) {
            u(a) = rng.gaussian();
        }
        for (int a = 0; a < 3; ++a) {
            v(a) = rng.gaussian();
        }
        planes.push_back(orthonormal_plane(u, v));
    }
    return LocalFrame(std::move(planes));
}

Eigen::Matrix3d LocalFrame::rotation(std::size_t k) const {
    Eigen::Matrix3d r;
    r.col(0) = planes_[k].col(0);
    r.col(1) = planes_[k].col(1);
    r.col(2) = planes_[k].col(0).cross(planes_[k].col(1));
    return r;
}

double plane_sum(const CorrelationTensor &t) {
    const std::size_t n = t.n();
    double s = 0.0;
    for (std::size_t flat = 0; flat < t.size(); ++flat) {
        std::size_t rest = flat;
        bool in_plane = true;
        for (std::size_t k = 0; k < n && in_plane; ++k) {
            in_plane = rest % 3 != 2;
            rest /= 3;
        }
        if (in_plane) {
            s += t[flat] * t[flat];
        }
    }
    return s;
}

double plane_sum(const CorrelationTensor &t, const LocalFrame &frame) {
    require(frame.n() == t.n(), ErrorKind::InvalidDimension, "frame and tensor sizes differ");
    std::vector<std::size_t> dims(t.n(), 3);
    std::vector<double> data = t.entries();
    for (std::size_t k = 0; k < t.n(); ++k) {
        data = contract_mode(data, dims, k, frame.plane(k).transpose());
    }
    return sum_squares(data);
}

double full_sum(const CorrelationTensor &t) { return sum_squares(t.entries()); }

CorrelationTensor rotate_tensor(const CorrelationTensor &t, const LocalFrame &frame) {
    require(frame.n() == t.n(), ErrorKind::InvalidDimension, "frame and tensor sizes differ");
    std::vector<std::size_t> dims(t.n(), 3);
    std::vector<double> data = t.entries();
    for (std::size_t k = 0; k < t.n(); ++k) {
        data = contract_mode(data, dims, k, frame.rotation(k).transpose());
    }
    return CorrelationTensor(t.n(), std::move(data));
}

FrameSearchResult maximize_plane_sum(const CorrelationTensor &t, std::size_t restarts, std::uint64_t seed) {
    require(restarts >= 1, ErrorKind::InvalidArgument, "frame search needs at least one restart");
    const Rng master(seed);
    std::vector<double> values(restarts, 0.0);
    std::vector<std::vector<LocalFrame::Plane>> found(restarts);
    const auto count = static_cast<std::int64_t>(restarts);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t r = 0; r < count; ++r) {
        const auto idx = static_cast<std::size_t>(r);
        Rng rng = master.split(idx);
        const LocalFrame start = idx == 0 ? LocalFrame::standard(t.n()) : LocalFrame::random(t.n(), rng);
        std::vector<LocalFrame::Plane> planes;
        for (std::size_t k = 0; k < t.n(); ++k) {
            planes.push_back(start.plane(k));
        }
        values[idx] = climb(t, planes);
        found[idx] = std::move(planes);
    }
    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r) {
        if (values[r] > values[best]) {
            best = r;
        }
    }
    return FrameSearchResult{values[best], LocalFrame(found[best]), restarts};
}

double collapse_visibility(std::size_t n, double p) {
    require(n >= 4, ErrorKind::InvalidArgument, "collapse needs n >= 4");
    require(p > 0.0 && p <= 1.0, ErrorKind::InvalidArgument, "visibility must lie in (0, 1]");
    const double pow2 = std::ldexp(1.0, static_cast<int>(n) - 2);
    return 1.0 / (1.0 + (1.0 - p) * static_cast<double>(n) / (p * pow2));
}

WernerFit simulate_collapse(std::size_t n, double p, CollapsePattern pattern) {
    require(n >= 4, ErrorKind::InvalidArgument, "collapse needs n >= 4");
    require(n <= kMaxDensityQubits, ErrorKind::BudgetExceeded, "density simulation limited to 12 qubits");
    const NoisyState noisy = add_white_noise(g_state(n), p);
    std::vector<std::size_t> measured;
    for (std::size_t q = 2; q < n; ++q) {
        measured.push_back(q);
    }
    const std::vector<int> outcomes(measured.size(), pattern == CollapsePattern::AllPlus ? 1 : -1);
    const auto projected = project(noisy.realized, measured, PauliAxis::Z, outcomes);
    const std::array<std::size_t, 2> pair{0, 1};
    const DensityMatrix rho = partial_trace(projected.collapsed, pair);

    Eigen::Vector4cd bell = Eigen::Vector4cd::Zero();
    bell(1) = bell(2) = 1.0 / std::sqrt(2.0);
    const double fidelity = (bell.adjoint() * rho.matrix() * bell)(0).real();
    const double v = (4.0 * fidelity - 1.0) / 3.0;
    const CMatrix werner = v * (bell * bell.adjoint()) + ((1.0 - v) / 4.0) * CMatrix::Identity(4, 4);
    const double residual = (rho.matrix() - werner).cwiseAbs().maxCoeff();
    return WernerFit{projected.probability, v, residual};
}

double crit_noise_g(std::size_t n) {
    require(n >= 4, ErrorKind::InvalidArgument, "threshold defined for n >= 4");
    const double nd = static_cast<double>(n);
    return nd / (nd + (std::sqrt(2.0) - 1.0) * std::ldexp(1.0, static_cast<int>(n) - 2));
}

double crit_noise_ghz(std::size_t n) {
    require(n >= 4, ErrorKind::InvalidArgument, "threshold defined for n >= 4");
    return 1.0 / std::sqrt(std::ldexp(1.0, static_cast<int>(n) - 1));
}

ThresholdReport threshold_report(std::size_t n) {
    const double pg = crit_noise_g(n);
    const double qg = crit_noise_ghz(n);
    return ThresholdReport{n, pg, qg, pg < qg};
}

std::vector<ThresholdReport> crossover_scan(std::size_t n_min, std::size_t n_max) {
    require(n_min >= 4 && n_min <= n_max, ErrorKind::InvalidArgument, "scan needs 4 <= n_min <= n_max");
    require(n_max <= 60, ErrorKind::BudgetExceeded, "scan limited to n <= 60");
    std::vector<ThresholdReport> out;
    for (std::size_t n = n_min; n <= n_max; ++n) {
        out.push_back(threshold_report(n));
    }
    return out;
}

LrThresholds lr_sufficiency_thresholds() {
    const CorrelationTensor g6 = correlation_tensor(g_state(6));
    const CorrelationTensor ghz6 = correlation_tensor(ghz_state(6));
    const double g_plane = plane_sum(g6);
    const double g_full = full_sum(g6);
    const double ghz_plane = plane_sum(ghz6);
    const bool consistent = std::abs(g_plane - 16.0 / 3.0) <= 1e-9 && std::abs(g_full - 23.0) <= 1e-9 &&
                            std::abs(ghz_plane - 32.0) <= 1e-9;
    require(consistent, ErrorKind::InternalInconsistency, "six-qubit tensor sums disagree with their closed forms");
    return LrThresholds{1.0 / std::sqrt(g_plane), 1.0 / std::sqrt(g_full), 1.0 / std::sqrt(ghz_plane)};
}

SweepRow sweep_row(CarrierFamily carrier, std::size_t m, double phi) {
    const AttackScenario scenario{carrier, m, phi};
    const SecurityReport report = security_report(scenario);
    const TripartiteState t = attacked_state(scenario);
    const DensityMatrix pair_ab = m >= 2 ? coalition_collapse(t, t.scenario.parties() - 1).state : rho_ab(t);
    return SweepRow{report.phi,         report.i_ab,           report.i_ae,           report.margin,
                    qber_x(report.phi), horodecki_m(pair_ab), horodecki_m(rho_ae(t))};
}

std::vector<SweepRow> sweep_attack(CarrierFamily carrier, std::size_t m, std::span<const double> phis) {
    for (double phi : phis) {
        AttackScenario{carrier, m, phi}.validate();
    }
    std::vector<SweepRow> rows(phis.size());
    const auto count = static_cast<std::int64_t>(phis.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (std::int64_t i = 0; i < count; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        rows[idx] = sweep_row(carrier, m, phis[idx]);
    }
    return rows;
}

namespace {

template <typename F>
double bisect_decreasing(F f, double tol) {
    double lo = 0.0;
    double hi = kHalfPi;
    require(f(lo) > 0.0 && f(hi) < 0.0, ErrorKind::InternalInconsistency, "no sign change to bisect");
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) {
            break;
        }
        (f(mid) > 0.0 ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double margin_crossing(double tol) {
    return bisect_decreasing([](double phi) { return mutual_info_ab(phi) - mutual_info_ae(phi); }, tol);
}

double horodecki_crossing(CarrierFamily carrier, std::size_t m, double tol) {
    return bisect_decreasing([&](double phi) { return sweep_row(carrier, m, phi).horodecki_ab - 1.0; }, tol);
}

}  // namespace qss
