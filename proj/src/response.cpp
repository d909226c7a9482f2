#include "wlcsim/response.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace wlcsim {

namespace {

using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;
using std::complex;

// Orthonormal basis of the column space, rank decided at tol * sigma_max.
MatrixXd column_space(const MatrixXd& m, double tol) {
    if (m.cols() == 0) return MatrixXd::Zero(m.rows(), 0);
    Eigen::JacobiSVD<MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double cut = sv.size() ? sv(0) * tol : 0.0;
    int r = 0;
    while (r < sv.size() && sv(r) > cut) ++r;
    return svd.matrixU().leftCols(r);
}

// Smallest A-invariant subspace containing range(seed), grown with repeated
// orthonormalization so stiff rate ratios never swamp the rank decisions.
// Seed columns are normalized first for the same reason.
MatrixXd invariant_span(const MatrixXd& a, const MatrixXd& seed, double tol) {
    const int n = static_cast<int>(a.rows());
    const double an = std::max(a.norm(), 1e-300);
    const MatrixXd a_unit = a / an;
    MatrixXd seed_unit = seed;
    for (int j = 0; j < seed_unit.cols(); ++j) {
        const double cn = seed_unit.col(j).norm();
        if (cn > 0.0) seed_unit.col(j) /= cn;
    }
    MatrixXd q = column_space(seed_unit, tol);
    for (int it = 0; it < n && q.cols() < n; ++it) {
        MatrixXd cand(n, 2 * q.cols());
        cand << q, a_unit * q;
        MatrixXd grown = column_space(cand, tol);
        if (grown.cols() == q.cols()) return grown;
        q = grown;
    }
    return q;
}

struct Realization {
    MatrixXd a, b, c;
    VectorXd s;
};

// Kalman reduction to the controllable-and-observable part.  The signal
// column counts as an input for controllability.  Both steps are exact:
// the controllable subspace is A-invariant, and within it the unobservable
// kernel is invariant, so quotienting it out leaves the visible dynamics
// with the transfer function intact.
Realization minimal_realization(const MatrixXd& a, const MatrixXd& b, const MatrixXd& c,
                                const VectorXd& s) {
    MatrixXd bs(b.rows(), b.cols() + 1);
    bs << b, s;
    const MatrixXd uc = invariant_span(a, bs, minreal_rank_tol);
    MatrixXd a1 = uc.transpose() * a * uc;
    MatrixXd b1 = uc.transpose() * b;
    VectorXd s1 = uc.transpose() * s;
    MatrixXd c1 = c * uc;

    // observable subspace = range of the observability map, A1^T-invariant
    const MatrixXd uo = invariant_span(a1.transpose(), c1.transpose(), minreal_rank_tol);
    if (uo.cols() == a1.rows()) return {a1, b1, c1, s1};
    Realization r;
    r.a = uo.transpose() * a1 * uo;
    r.b = uo.transpose() * b1;
    r.s = uo.transpose() * s1;
    r.c = c1 * uo;
    return r;
}

// Structurally connected component of the readout-phase state under the
// symmetrized sparsity pattern of the drift.
std::vector<int> readout_block_indices(const QuadratureSystem& sys) {
    const int n = sys.state_dim();
    const double tol = 0.0; // exact structural zeros
    const int seed = sys.state_index(sys.ports[sys.readout_port].mode, 1);
    std::vector<bool> in(n, false);
    std::vector<int> stack{seed};
    in[seed] = true;
    while (!stack.empty()) {
        const int i = stack.back();
        stack.pop_back();
        for (int j = 0; j < n; ++j) {
            if (in[j]) continue;
            if (std::abs(sys.drift(i, j)) > tol || std::abs(sys.drift(j, i)) > tol) {
                in[j] = true;
                stack.push_back(j);
            }
        }
    }
    std::vector<int> idx;
    for (int i = 0; i < n; ++i)
        if (in[i]) idx.push_back(i);
    return idx;
}

struct BlockSystem {
    MatrixXd a, b, c;
    VectorXd s;
};

BlockSystem readout_block(const QuadratureSystem& sys) {
    const auto idx = readout_block_indices(sys);
    const int m = static_cast<int>(idx.size());
    BlockSystem blk;
    blk.a.resize(m, m);
    blk.b.resize(m, sys.input_map.cols());
    blk.c.resize(1, m);
    blk.s.resize(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) blk.a(i, j) = sys.drift(idx[i], idx[j]);
        blk.b.row(i) = sys.input_map.row(idx[i]);
        blk.c(0, i) = sys.output_map(QuadratureSystem::phase_row, idx[i]);
        blk.s(i) = sys.signal_map(idx[i]);
    }
    return blk;
}

std::vector<complex<double>> drift_poles(const MatrixXd& a) {
    Eigen::EigenSolver<MatrixXd> es(a);
    std::vector<complex<double>> out;
    for (int i = 0; i < a.rows(); ++i) {
        const complex<double> lambda = es.eigenvalues()(i);
        out.push_back(complex<double>(0, 1) * lambda); // Omega = i lambda
    }
    return out;
}

StabilityClass classify(const std::vector<Pole>& poles, double tol) {
    double max_im = -std::numeric_limits<double>::infinity();
    bool any = false;
    for (const auto& p : poles) {
        if (p.hidden) continue;
        max_im = std::max(max_im, p.omega.imag());
        any = true;
    }
    if (!any) return StabilityClass::Stable;
    if (max_im > tol) return StabilityClass::Unstable;
    if (max_im >= -tol) return StabilityClass::Marginal;
    return StabilityClass::Stable;
}

std::vector<Pole> cluster_poles(std::vector<std::pair<complex<double>, bool>> raw, double tol) {
    std::sort(raw.begin(), raw.end(), [](const auto& x, const auto& y) {
        if (x.first.real() != y.first.real()) return x.first.real() < y.first.real();
        return x.first.imag() < y.first.imag();
    });
    std::vector<Pole> out;
    for (const auto& [w, hidden] : raw) {
        bool merged = false;
        for (auto& p : out) {
            if (p.hidden == hidden && std::abs(p.omega - w) <= tol) {
                p.omega = (p.omega * double(p.multiplicity) + w) / double(p.multiplicity + 1);
                ++p.multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back({w, 1, hidden});
    }
    return out;
}

}  // namespace

std::string to_string(StabilityClass c) {
    switch (c) {
        case StabilityClass::Stable: return "stable";
        case StabilityClass::Marginal: return "marginal";
        case StabilityClass::Unstable: return "unstable";
    }
    return {};
}

int PoleSet::total_multiplicity() const {
    int n = 0;
    for (const auto& p : poles) n += p.multiplicity;
    return n;
}

TransferEvaluator::TransferEvaluator(const QuadratureSystem& sys) {
    const Realization r =
        minimal_realization(sys.drift, sys.input_map, sys.output_map, sys.signal_map);
    a_ = r.a;
    b_ = r.b;
    c_ = r.c;
    s_ = r.s;
    d_ = sys.feedthrough;
    scale_ = std::max(sys.max_rate, 1.0);
}

TransferMatrix TransferEvaluator::operator()(double omega) const {
    const int n = static_cast<int>(a_.rows());
    MatrixXcd m = -complex<double>(0, omega) * MatrixXcd::Identity(n, n) - a_.cast<complex<double>>();
    Eigen::FullPivLU<MatrixXcd> lu(m);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) throw EvaluationAtPole(omega);
    TransferMatrix t;
    t.omega = omega;
    const MatrixXcd x = lu.inverse();
    t.noise_block = c_.cast<complex<double>>() * x * b_.cast<complex<double>>() +
                    d_.cast<complex<double>>();
    t.signal_block = c_.cast<complex<double>>() * x * s_.cast<complex<double>>();
    return t;
}

TransferMatrix transfer_matrix(const QuadratureSystem& sys, double omega) {
    if (!std::isfinite(omega)) throw std::invalid_argument("transfer_matrix: omega must be finite");
    return TransferEvaluator(sys)(omega);
}

PoleSet poles(const QuadratureSystem& sys) {
    const BlockSystem blk = readout_block(sys);
    const Realization min = minimal_realization(blk.a, blk.b, blk.c, blk.s);
    auto all = drift_poles(blk.a);
    auto visible = drift_poles(min.a);

    // pair each visible pole with the nearest full eigenvalue; leftovers are hidden
    std::vector<bool> used(all.size(), false);
    for (const auto& v : visible) {
        int best = -1;
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < all.size(); ++i) {
            if (used[i]) continue;
            const double d = std::abs(all[i] - v);
            if (d < dist) {
                dist = d;
                best = static_cast<int>(i);
            }
        }
        if (best >= 0) used[best] = true;
    }

    const double tol = marginal_tol_factor * std::max(sys.max_rate, 1.0);
    std::vector<std::pair<complex<double>, bool>> raw;
    for (std::size_t i = 0; i < all.size(); ++i) raw.push_back({all[i], !used[i]});

    PoleSet set;
    set.state_dim = static_cast<int>(blk.a.rows());
    set.poles = cluster_poles(std::move(raw), tol);
    // snap tiny components to zero for readability
    for (auto& p : set.poles) {
        if (std::abs(p.omega.real()) <= tol) p.omega.real(0.0);
        if (std::abs(p.omega.imag()) <= tol) p.omega.imag(0.0);
    }
    set.classification = classify(set.poles, tol);
    return set;
}

std::vector<TrajectoryPoint> pole_trajectory(const std::function<NetworkSpec(double)>& family,
                                             const std::vector<double>& sweep) {
    if (sweep.empty()) throw std::invalid_argument("pole_trajectory: empty sweep");
    for (std::size_t i = 1; i < sweep.size(); ++i)
        if (!(sweep[i] > sweep[i - 1]) && !(sweep[i] < sweep[i - 1]))
            throw std::invalid_argument("pole_trajectory: sweep values must be distinct");

    std::vector<TrajectoryPoint> out;
    std::vector<complex<double>> prev;
    for (const double v : sweep) {
        TrajectoryPoint pt;
        pt.parameter = v;
        pt.set = poles(assemble_system(family(v)));

        // order poles by nearest-neighbor continuity with the previous set
        std::vector<complex<double>> flat;
        std::vector<Pole> flat_poles;
        for (const auto& p : pt.set.poles)
            for (int k = 0; k < p.multiplicity; ++k) {
                flat.push_back(p.omega);
                flat_poles.push_back({p.omega, 1, p.hidden});
            }
        if (!prev.empty()) {
            std::vector<Pole> ordered;
            std::vector<bool> used(flat.size(), false);
            double max_step = 0.0;
            for (const auto& q : prev) {
                int best = -1;
                double dist = std::numeric_limits<double>::infinity();
                for (std::size_t i = 0; i < flat.size(); ++i) {
                    if (used[i]) continue;
                    const double d = std::abs(flat[i] - q);
                    if (d < dist) {
                        dist = d;
                        best = static_cast<int>(i);
                    }
                }
                if (best >= 0) {
                    used[best] = true;
                    ordered.push_back(flat_poles[best]);
                    max_step = std::max(max_step, dist);
                }
            }
            for (std::size_t i = 0; i < flat.size(); ++i)
                if (!used[i]) ordered.push_back(flat_poles[i]);

            double min_sep = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < prev.size(); ++i)
                for (std::size_t j = i + 1; j < prev.size(); ++j)
                    min_sep = std::min(min_sep, std::abs(prev[i] - prev[j]));
            if (std::isfinite(min_sep) && min_sep > 0 && max_step > 0.5 * min_sep)
                pt.step_warning = true;
            pt.set.poles = ordered;
        }
        prev = flat;
        out.push_back(std::move(pt));
    }
    return out;
}

// ------------------------------- PT symmetry --------------------------------

namespace {

// Symplectic form for the interleaved (y1, y2) ordering.
MatrixXd symplectic_form(int n_modes) {
    MatrixXd w = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    for (int i = 0; i < n_modes; ++i) {
        w(2 * i, 2 * i + 1) = 1.0;
        w(2 * i + 1, 2 * i) = -1.0;
    }
    return w;
}

// PT map for a set of swapped mode pairs.  Paired modes (m, n) exchange with
// a sign on both quadratures (m -> -n, n -> -m); every unpaired mode picks up
// the time-reversal conjugation, y2 -> -y2 for bosonic modes and p -> -p for
// mechanical pairs.
MatrixXd pt_map(const std::vector<ModeSpec>& modes,
                const std::vector<std::pair<int, int>>& pairs) {
    const int n_modes = static_cast<int>(modes.size());
    MatrixXd w = MatrixXd::Zero(2 * n_modes, 2 * n_modes);
    std::vector<bool> paired(n_modes, false);
    for (const auto& [m, n] : pairs) {
        paired[m] = paired[n] = true;
        w(2 * m, 2 * n) = w(2 * n, 2 * m) = -1.0;
        w(2 * m + 1, 2 * n + 1) = w(2 * n + 1, 2 * m + 1) = -1.0;
    }
    for (int i = 0; i < n_modes; ++i) {
        if (paired[i]) continue;
        w(2 * i, 2 * i) = 1.0;
        w(2 * i + 1, 2 * i + 1) = -1.0;
    }
    return w;
}

void enumerate_pairings(const std::vector<int>& candidates, std::size_t start,
                        std::vector<std::pair<int, int>>& current,
                        std::vector<std::vector<std::pair<int, int>>>& out) {
    // all ways to choose one or more disjoint unordered pairs
    if (!current.empty()) out.push_back(current);
    for (std::size_t i = start; i < candidates.size(); ++i) {
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            bool taken = false;
            for (const auto& [a, b] : current)
                if (a == candidates[i] || b == candidates[i] || a == candidates[j] ||
                    b == candidates[j])
                    taken = true;
            if (taken) continue;
            current.push_back({candidates[i], candidates[j]});
            enumerate_pairings(candidates, i + 1, current, out);
            current.pop_back();
        }
    }
}

}  // namespace

PTReport pt_check(const NetworkSpec& spec) {
    PTReport report;
    const auto diags = validate_spec(spec);
    if (!diags.empty()) throw SpecError("pt_check: invalid spec");

    const int n_modes = static_cast<int>(spec.modes.size());
    const MatrixXd a0 = hamiltonian_drift(spec);
    const MatrixXd ws = symplectic_form(n_modes);
    const MatrixXd g = -ws * a0; // Hamiltonian coefficient matrix, V = y^T G y / 2

    report.ep_indicator = ep_indicator(assemble_system(spec));

    // a non-Hamiltonian port-free drift (asymmetric G) cannot be PT-symmetric
    const double gn = std::max(g.norm(), 1e-300);
    if ((g - g.transpose()).norm() > 1e-9 * gn) return report;

    std::vector<int> bosonic;
    for (int i = 0; i < n_modes; ++i)
        if (spec.modes[i].kind == ModeKind::Bosonic) bosonic.push_back(i);

    std::vector<std::vector<std::pair<int, int>>> pairings;
    std::vector<std::pair<int, int>> current;
    enumerate_pairings(bosonic, 0, current, pairings);

    for (const auto& pairing : pairings) {
        const MatrixXd w = pt_map(spec.modes, pairing);
        if ((w.transpose() * g * w - g).norm() <= 1e-9 * gn) {
            report.is_pt_symmetric = true;
            std::string witness;
            for (const auto& [m, n] : pairing) {
                if (!witness.empty()) witness += ", ";
                witness += spec.modes[m].name + "<->" + spec.modes[n].name;
            }
            report.witness = witness;
            return report;
        }
    }
    return report;
}

double ep_indicator(const QuadratureSystem& sys) {
    const BlockSystem blk = readout_block(sys);
    Eigen::ComplexEigenSolver<MatrixXcd> es(blk.a.cast<complex<double>>());
    const MatrixXcd v = es.eigenvectors();
    Eigen::JacobiSVD<MatrixXcd> svd(v);
    const auto& sv = svd.singularValues();
    if (sv(sv.size() - 1) <= 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / sv(sv.size() - 1);
}

std::complex<double> delta_detuning(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& beta,
                                    double kappa, double chi, double omega) {
    const int n = static_cast<int>(m.rows());
    if (m.cols() != n || beta.size() != n)
        throw std::invalid_argument("delta_detuning: dimension mismatch");
    MatrixXcd r = -complex<double>(0, omega) * MatrixXcd::Identity(n, n) - m;
    Eigen::FullPivLU<MatrixXcd> lu(r);
    lu.setThreshold(1e-13);
    if (!lu.isInvertible()) throw EvaluationAtPole(omega);
    return (chi * chi - kappa * kappa) * (beta.transpose() * lu.solve(beta))(0);
}

}  // namespace wlcsim
