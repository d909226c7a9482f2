#pragma once

// sweep.hpp — parameter sweeps and the two-parameter scan-rate optimization
// over (kappa, gamma_R) at fixed amplifier gain and squeezing.

#include <functional>
#include <string>
#include <vector>

#include "wlcsim/detectors.hpp"
#include "wlcsim/metrics.hpp"
#include "wlcsim/spectra.hpp"

namespace wlcsim {

// scan rate R_a = integral dW/(2 pi) S_psi^-2 of an assembled system
double scan_rate(const QuadratureSystem& sys);

struct OptResult {
    double enhancement = 0.0;          // R_a over the optimized single-cavity baseline
    double kappa_over_gamma_l = 0.0;
    double gamma_r_over_gamma_l = 0.0;
    int evaluations = 0;
    bool converged = false;
    double scan_rate_value = 0.0;
    double baseline_scan_rate = 0.0;
    double baseline_gamma_r_over_gamma_l = 0.0;
};

// Single-cavity comparator at the same loss and squeezing, optimized over its
// readout rate alone.
struct BaselineResult {
    double gamma_r_over_gamma_l = 0.0;
    double scan_rate_value = 0.0;
    int evaluations = 0;
    bool converged = false;
};
BaselineResult optimize_single_cavity(double squeeze_r);

// Maximize R_a over (kappa/gamma_L, gamma_R/gamma_L) on a coarse log grid
// followed by Nelder-Mead refinement; sWLC searches respect chi <= 0.999 kappa.
OptResult optimize_scan_rate(double chi_over_gamma_l, double squeeze_r, Topology topology);

struct SweepAxis {
    std::string name;
    std::vector<double> values;
};

struct SweepRow {
    std::vector<double> coordinates; // one per axis, lexicographic order
    double value = 0.0;
    std::string error; // empty on success; metric exceptions are recorded here
};

std::vector<SweepRow> grid_sweep(const std::vector<SweepAxis>& axes,
                                 const std::function<double(const std::vector<double>&)>& metric);

void write_sweep_csv(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows,
                     const std::string& metric_name, std::ostream& os);

// Shared-parameter noise budget tables for the three GW configurations.
struct GwBudget {
    SpectrumTable swlc;
    SpectrumTable uwlc;
    SpectrumTable conventional;
};
GwBudget gw_budget_run(const GWParams& params, const std::vector<double>& grid);

// Derivative-free Nelder-Mead on a box, used by the optimizer and exposed for
// tests; deterministic for fixed inputs.
struct SimplexResult {
    std::vector<double> x;
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};
SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start, double step, int max_iterations,
                          double relative_tolerance);

}  // namespace wlcsim
