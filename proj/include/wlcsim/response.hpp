#pragma once

// response.hpp — frequency response, pole/stability analysis, PT-symmetry and
// exceptional-point diagnostics for assembled quadrature systems.

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "wlcsim/network.hpp"

namespace wlcsim {

class EvaluationAtPole : public std::runtime_error {
  public:
    explicit EvaluationAtPole(double omega)
        : std::runtime_error("transfer evaluation at pole, omega = " + std::to_string(omega)) {}
};

struct TransferMatrix {
    double omega = 0.0;             // rad/s
    Eigen::MatrixXcd noise_block;   // 2 x 2P, (amplitude, phase) rows
    Eigen::Vector2cd signal_block;  // signal -> readout quadratures
};

enum class StabilityClass { Stable, Marginal, Unstable };
std::string to_string(StabilityClass c);

struct Pole {
    std::complex<double> omega; // rad/s, stable poles have Im < 0
    int multiplicity = 1;
    bool hidden = false; // drift eigenvalue absent from the minimal readout channel
};

struct PoleSet {
    std::vector<Pole> poles;
    StabilityClass classification = StabilityClass::Stable;
    int state_dim = 0; // dimension of the analyzed block

    int total_multiplicity() const;
};

struct PTReport {
    bool is_pt_symmetric = false;
    std::string witness;      // mode pairing used for the swap, e.g. "a<->c"
    double ep_indicator = 1.0;
};

// Marginality tolerance: |Im Omega| <= marginal_tol_factor * max_rate.
inline constexpr double marginal_tol_factor = 1e-9;
// Rank decisions in controllability/observability reductions.
inline constexpr double minreal_rank_tol = 1e-10;

// Prepared evaluator over the minimal (controllable and observable)
// realization of the readout channel.  Hidden fixed poles cancel from the
// transfer function, so evaluation stays regular there; only visible poles
// on the real axis raise EvaluationAtPole.
class TransferEvaluator {
  public:
    explicit TransferEvaluator(const QuadratureSystem& sys);

    TransferMatrix operator()(double omega) const;
    int minimal_dim() const { return static_cast<int>(a_.rows()); }
    const Eigen::MatrixXd& minimal_drift() const { return a_; }

  private:
    Eigen::MatrixXd a_, b_, c_, d_;
    Eigen::VectorXd s_;
    double scale_ = 0.0;
};

TransferMatrix transfer_matrix(const QuadratureSystem& sys, double omega);

// Pole analysis of the readout block (the structurally connected component of
// the readout-phase state).  Visible poles come from the minimal realization;
// remaining drift eigenvalues are reported with a hidden flag.
PoleSet poles(const QuadratureSystem& sys);

struct TrajectoryPoint {
    double parameter = 0.0;
    PoleSet set;
    bool step_warning = false; // pole motion exceeded half the minimal separation
};

std::vector<TrajectoryPoint> pole_trajectory(const std::function<NetworkSpec(double)>& family,
                                             const std::vector<double>& sweep);

// Hamiltonian-level PT check: search for a sensor/auxiliary mode pairing whose
// conjugate swap (a1 -> c1, a2 -> -c2, unpaired modes fixed) leaves the
// port-free Hamiltonian invariant.
PTReport pt_check(const NetworkSpec& spec);

// Condition number of the eigenvector matrix of the readout-block drift;
// diverges at the exceptional point.
double ep_indicator(const QuadratureSystem& sys);

// Delta(Omega) = (chi^2 - kappa^2) * beta^T (-i Omega I - M)^{-1} beta
std::complex<double> delta_detuning(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& beta,
                                    double kappa, double chi, double omega);

}  // namespace wlcsim
