#include "wlcsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace wlcsim {

namespace {

// Gauss-Kronrod 7-15 nodes and weights on [-1, 1].
constexpr double kronrod_nodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kronrod_weights[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double gauss_weights[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double integral = 0.0;
    double error = 0.0;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double h = 0.5 * (b - a), mid = 0.5 * (a + b);
    double fk[15];
    for (int i = 0; i < 7; ++i) {
        fk[i] = f(mid - h * kronrod_nodes[i]);
        fk[14 - i] = f(mid + h * kronrod_nodes[i]);
    }
    fk[7] = f(mid);
    double ik = 0.0, ig = 0.0;
    for (int i = 0; i < 7; ++i) ik += kronrod_weights[i] * (fk[i] + fk[14 - i]);
    ik += kronrod_weights[7] * fk[7];
    // Gauss nodes are the odd Kronrod indices
    for (int i = 0; i < 3; ++i) ig += gauss_weights[i] * (fk[2 * i + 1] + fk[13 - 2 * i]);
    ig += gauss_weights[3] * fk[7];
    PanelResult r;
    r.integral = ik * h;
    r.error = std::abs(ik - ig) * h;
    return r;
}

// Deterministic depth-first adaptive bisection with a per-panel error budget.
void adapt(const std::function<double(double)>& f, double a, double b, double tol, int depth,
           double& integral, double& err) {
    const PanelResult r = gk15(f, a, b);
    if (r.error <= tol || depth >= 48 || (b - a) < 1e-300) {
        integral += r.integral;
        err += r.error;
        return;
    }
    const double mid = 0.5 * (a + b);
    adapt(f, a, mid, 0.5 * tol, depth + 1, integral, err);
    adapt(f, mid, b, 0.5 * tol, depth + 1, integral, err);
}

}  // namespace

FigureOfMerit integrated_inverse_psd(const std::function<double(double)>& psd, int power,
                                     double scale) {
    if (power != 1 && power != 2)
        throw std::invalid_argument("integrated_inverse_psd: power must be 1 or 2");
    if (!(scale > 0.0)) throw std::invalid_argument("integrated_inverse_psd: scale must be > 0");

    auto f = [&](double w) -> double {
        const double s = psd(w);
        if (!std::isfinite(s) || s <= 0.0) return 0.0; // +inf sentinels excluded
        const double inv = 1.0 / s;
        return power == 1 ? inv : inv * inv;
    };

    const double cutoff = 1e3 * scale;

    // tail behaviour of the integrand from a log-log fit above the cutoff
    const int n_tail = 6;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    double w = cutoff;
    double last_w = cutoff, last_f = 0.0;
    for (int i = 0; i < n_tail; ++i) {
        const double fi = f(w);
        if (fi <= 0.0) { // identically small tail: no correction needed
            sx = sy = sxx = sxy = 0;
            break;
        }
        const double lx = std::log(w), ly = std::log(fi);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        last_w = w;
        last_f = fi;
        w *= 1.6;
    }
    double tail = 0.0, tail_err = 0.0;
    bool tail_corrected = false;
    if (last_f > 0.0) {
        const double denom = n_tail * sxx - sx * sx;
        const double q = (n_tail * sxy - sx * sy) / denom; // fitted exponent of f
        if (q >= -1.1) throw DivergentIntegral(q);
        // integral of last_f * (w / last_w)^q from cutoff to infinity
        const double r = cutoff / last_w;
        tail = -last_f * std::pow(r, q) * cutoff / (q + 1.0);
        // residual of the power-law model, taken against the fitted line
        double resid = 0.0;
        double wv = cutoff;
        for (int i = 0; i < n_tail; ++i) {
            const double model = last_f * std::pow(wv / last_w, q);
            resid = std::max(resid, std::abs(f(wv) - model) / std::max(model, 1e-300));
            wv *= 1.6;
        }
        tail_err = std::abs(tail) * (resid + 1e-12);
        tail_corrected = true;
    }

    // geometric panels resolve features at every rate scale below the cutoff
    std::vector<double> edges{0.0};
    for (double e = scale * 1e-3; e < cutoff; e *= 2.0) edges.push_back(e);
    edges.push_back(cutoff);

    double coarse = 0.0;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        coarse += gk15(f, edges[i], edges[i + 1]).integral;
    const double tol_total = std::max(std::abs(coarse) + std::abs(tail), 1e-300) * 1e-11;

    double integral = 0.0, err = 0.0;
    const double per_panel = tol_total / double(edges.size() - 1);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        adapt(f, edges[i], edges[i + 1], per_panel, 0, integral, err);

    FigureOfMerit fom;
    fom.value = (integral + tail) / constants::two_pi;
    fom.abs_error = (err + tail_err) / constants::two_pi;
    fom.cutoff = cutoff;
    fom.tail_corrected = tail_corrected;
    return fom;
}

double gain_lambda(const std::function<double(double)>& amp_psd,
                   const std::function<double(double)>& conv_psd, double scale) {
    const FigureOfMerit amp = integrated_inverse_psd(amp_psd, 1, scale);
    const FigureOfMerit conv = integrated_inverse_psd(conv_psd, 1, scale);
    if (conv.value <= 0.0) throw std::invalid_argument("gain_lambda: conventional integral is 0");
    return amp.value / conv.value;
}

double eql_ratio(double inverse_psd_integral, double delta_e_sq) {
    if (!(inverse_psd_integral > 0.0) || !(delta_e_sq > 0.0))
        throw std::invalid_argument("eql_ratio: inputs must be positive");
    return inverse_psd_integral / (delta_e_sq / 4.0);
}

double lambda_max_thermal(double q_m, double gamma_r, double t_env) {
    if (!(q_m > 0.0) || !(gamma_r > 0.0) || !(t_env > 0.0))
        throw std::invalid_argument("lambda_max_thermal: inputs must be positive");
    return constants::hbar * gamma_r * q_m / (constants::k_boltzmann * t_env);
}

LossBudget loss_budget_check(double gamma_a, double gamma_b, double gamma_c, double s_a,
                             double s_b, double s_c, double kappa, double chi, double gamma_r) {
    if (!(kappa > 0.0) || !(gamma_r > 0.0))
        throw std::invalid_argument("loss_budget_check: kappa and gamma_r must be positive");
    const double gk = gamma_r / kappa, xk = chi / kappa;
    const double lhs = gamma_a * s_a + gk * gk * gamma_b * s_b + xk * xk * gamma_c * s_c;
    const double rhs = gamma_r * gamma_r * gamma_r / (4.0 * kappa * kappa);
    LossBudget b;
    b.ratio = lhs / rhs;
    b.within_budget = b.ratio <= 1.0 + 1e-12;
    return b;
}

}  // namespace wlcsim
