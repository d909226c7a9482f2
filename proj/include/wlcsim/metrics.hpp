#pragma once

// metrics.hpp — figures of merit built on integrals of inverse noise PSDs:
// integrated sensitivity and the EQL ratio, amplification gain Lambda, the
// axion scan rate, and the thermal/loss sensitivity limits.

#include <functional>
#include <stdexcept>
#include <string>

#include "wlcsim/constants.hpp"
#include "wlcsim/network.hpp"

namespace wlcsim {

class DivergentIntegral : public std::runtime_error {
  public:
    explicit DivergentIntegral(double exponent)
        : std::runtime_error("divergent improper integral, fitted tail exponent " +
                             std::to_string(exponent)),
          tail_exponent(exponent) {}
    double tail_exponent;
};

struct FigureOfMerit {
    double value = 0.0;
    double abs_error = 0.0;
    double cutoff = 0.0; // rad/s, end of the quadrature window
    bool tail_corrected = false;
};

// integral_0^inf  dW/(2 pi)  S(W)^-power  by adaptive Gauss-Kronrod on
// [0, 10^3 * scale] plus an analytic power-law tail.  A fitted tail exponent
// of S^-power above -1.1 raises DivergentIntegral.
FigureOfMerit integrated_inverse_psd(const std::function<double(double)>& psd, int power,
                                     double scale);

// Ratio of power-1 integrals, amplified over conventional.
double gain_lambda(const std::function<double(double)>& amp_psd,
                   const std::function<double(double)>& conv_psd, double scale);

// [integral S^-1] / [dE^2 / (4 hbar^2)] in normalized units (hbar = 1), so a
// conventional lossless detector with dE^2 = 2 alpha^2 sits at 1.
double eql_ratio(double inverse_psd_integral, double delta_e_sq);

// hbar gamma_R Q_m / (kB T)
double lambda_max_thermal(double q_m, double gamma_r, double t_env);

// gamma_a Sa + (gamma_R/kappa)^2 gamma_b Sb + (chi/kappa)^2 gamma_c Sc
// against gamma_R^3 / (4 kappa^2); ratio is LHS/RHS.
struct LossBudget {
    bool within_budget = true;
    double ratio = 0.0;
};
LossBudget loss_budget_check(double gamma_a, double gamma_b, double gamma_c, double s_a,
                             double s_b, double s_c, double kappa, double chi, double gamma_r);

}  // namespace wlcsim
