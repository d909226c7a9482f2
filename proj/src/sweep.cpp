#include "wlcsim/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>

namespace wlcsim {

namespace {

// R_a objective for one (kappa, gamma_R) point of the axion model, gamma_L = 1
double axion_scan_rate(double kappa, double gamma_r, double chi, double squeeze_r,
                       Topology topology) {
    AxionParams p;
    p.gamma_l = 1.0;
    p.gamma_r = gamma_r;
    p.kappa = kappa;
    p.chi = chi;
    p.squeeze_r = squeeze_r;
    p.alpha = 1.0;
    p.topology = topology;
    return scan_rate(assemble_system(build_axion(p)));
}

constexpr int coarse_n = 40;
constexpr double box_lo = 0.1, box_hi = 1e3;
constexpr double stability_margin = 0.999;

}  // namespace

double scan_rate(const QuadratureSystem& sys) {
    TransferEvaluator eval(sys);
    auto psd = [&](double w) { return signal_referred_at(eval, sys.ports, w); };
    return integrated_inverse_psd(psd, 2, std::max(sys.max_rate, 1.0)).value;
}

SimplexResult nelder_mead(const std::function<double(const std::vector<double>&)>& objective,
                          std::vector<double> start, double step, int max_iterations,
                          double relative_tolerance) {
    const std::size_t n = start.size();
    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    int evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        return objective(x);
    };
    simplex.push_back({start, eval(start)});
    for (std::size_t i = 0; i < n; ++i) {
        auto x = start;
        x[i] += step;
        simplex.push_back({x, eval(x)});
    }

    bool converged = false;
    for (int it = 0; it < max_iterations; ++it) {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f > b.f; }); // maximize
        const double fb = simplex.front().f, fw = simplex.back().f;
        if (std::abs(fb - fw) <= relative_tolerance * (std::abs(fb) + 1e-300)) {
            converged = true;
            break;
        }
        std::vector<double> centroid(n, 0.0);
        for (std::size_t v = 0; v < n; ++v)
            for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[v].x[i] / double(n);
        auto blend = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t i = 0; i < n; ++i)
                x[i] = centroid[i] + t * (centroid[i] - simplex.back().x[i]);
            return x;
        };
        const auto xr = blend(1.0);
        const double fr = eval(xr);
        if (fr > simplex.front().f) {
            const auto xe = blend(2.0);
            const double fe = eval(xe);
            if (fe > fr)
                simplex.back() = {xe, fe};
            else
                simplex.back() = {xr, fr};
        } else if (fr > simplex[n - 1].f) {
            simplex.back() = {xr, fr};
        } else {
            const auto xc = blend(0.5);
            const double fc = eval(xc);
            if (fc > simplex.back().f) {
                simplex.back() = {xc, fc};
            } else {
                for (std::size_t v = 1; v <= n; ++v) {
                    for (std::size_t i = 0; i < n; ++i)
                        simplex[v].x[i] = 0.5 * (simplex[v].x[i] + simplex[0].x[i]);
                    simplex[v].f = eval(simplex[v].x);
                }
            }
        }
    }
    std::sort(simplex.begin(), simplex.end(),
              [](const Vertex& a, const Vertex& b) { return a.f > b.f; });
    return {simplex.front().x, simplex.front().f, evals, converged};
}

BaselineResult optimize_single_cavity(double squeeze_r) {
    BathSpec readout_bath;
    if (squeeze_r != 0.0) {
        readout_bath.kind = BathKind::Squeezed;
        readout_bath.squeeze_r = squeeze_r;
    }
    auto objective = [&](double gamma_r) {
        NetworkSpec sc = build_conventional(gamma_r, 1.0, 1.0);
        sc.ports.front().bath = readout_bath;
        return scan_rate(assemble_system(sc));
    };

    BaselineResult res;
    double best = -1.0, best_g = box_lo;
    for (int i = 0; i < coarse_n; ++i) {
        const double g = box_lo * std::pow(box_hi / box_lo, double(i) / double(coarse_n - 1));
        const double v = objective(g);
        ++res.evaluations;
        if (v > best) {
            best = v;
            best_g = g;
        }
    }
    auto log_obj = [&](const std::vector<double>& x) { return objective(std::exp(x[0])); };
    SimplexResult r = nelder_mead(log_obj, {std::log(best_g)}, 0.2, 200, 1e-10);
    res.evaluations += r.evaluations;
    res.gamma_r_over_gamma_l = std::exp(r.x[0]);
    res.scan_rate_value = std::max(r.value, best);
    res.converged = r.converged;
    return res;
}

OptResult optimize_scan_rate(double chi_over_gamma_l, double squeeze_r, Topology topology) {
    if (chi_over_gamma_l < 0.0)
        throw std::invalid_argument("optimize_scan_rate: chi must be >= 0");
    const double chi = chi_over_gamma_l;
    const bool swlc = topology == Topology::Swlc;
    const double kappa_floor = swlc ? std::max(chi / stability_margin, box_lo) : box_lo;
    if (swlc && kappa_floor > box_hi)
        throw std::invalid_argument("optimize_scan_rate: no stable kappa in bounds for this chi");

    auto objective = [&](double kappa, double gamma_r) -> double {
        if (kappa < kappa_floor || kappa > box_hi || gamma_r < box_lo || gamma_r > box_hi)
            return -1.0;
        if (swlc && chi > stability_margin * kappa) return -1.0;
        return axion_scan_rate(kappa, gamma_r, chi, squeeze_r, topology);
    };

    OptResult res;
    double best = -1.0, best_k = kappa_floor, best_g = box_lo;
    for (int i = 0; i < coarse_n; ++i) {
        const double k = kappa_floor * std::pow(box_hi / kappa_floor, double(i) / double(coarse_n - 1));
        for (int j = 0; j < coarse_n; ++j) {
            const double g = box_lo * std::pow(box_hi / box_lo, double(j) / double(coarse_n - 1));
            const double v = objective(k, g);
            ++res.evaluations;
            if (v > best) {
                best = v;
                best_k = k;
                best_g = g;
            }
        }
    }

    auto log_obj = [&](const std::vector<double>& x) {
        return objective(std::exp(x[0]), std::exp(x[1]));
    };
    SimplexResult r = nelder_mead(log_obj, {std::log(best_k), std::log(best_g)}, 0.15, 200, 1e-5);
    res.evaluations += r.evaluations;
    if (r.value >= best) {
        res.kappa_over_gamma_l = std::exp(r.x[0]);
        res.gamma_r_over_gamma_l = std::exp(r.x[1]);
        res.scan_rate_value = r.value;
    } else { // refinement never loses to the coarse grid
        res.kappa_over_gamma_l = best_k;
        res.gamma_r_over_gamma_l = best_g;
        res.scan_rate_value = best;
    }
    res.converged = r.converged;

    const BaselineResult baseline = optimize_single_cavity(squeeze_r);
    res.evaluations += baseline.evaluations;
    res.baseline_scan_rate = baseline.scan_rate_value;
    res.baseline_gamma_r_over_gamma_l = baseline.gamma_r_over_gamma_l;
    res.enhancement = res.scan_rate_value / baseline.scan_rate_value;
    return res;
}

std::vector<SweepRow> grid_sweep(const std::vector<SweepAxis>& axes,
                                 const std::function<double(const std::vector<double>&)>& metric) {
    if (axes.empty()) throw std::invalid_argument("grid_sweep: no axes");
    for (const auto& a : axes)
        if (a.values.empty()) throw std::invalid_argument("grid_sweep: empty axis " + a.name);

    std::vector<SweepRow> rows;
    std::vector<std::size_t> idx(axes.size(), 0);
    while (true) {
        SweepRow row;
        for (std::size_t i = 0; i < axes.size(); ++i)
            row.coordinates.push_back(axes[i].values[idx[i]]);
        try {
            row.value = metric(row.coordinates);
        } catch (const std::exception& e) {
            row.value = std::numeric_limits<double>::quiet_NaN();
            row.error = e.what();
        }
        rows.push_back(std::move(row));

        std::size_t k = axes.size();
        while (k > 0) {
            --k;
            if (++idx[k] < axes[k].values.size()) break;
            idx[k] = 0;
            if (k == 0) return rows;
        }
    }
}

void write_sweep_csv(const std::vector<SweepAxis>& axes, const std::vector<SweepRow>& rows,
                     const std::string& metric_name, std::ostream& os) {
    for (const auto& a : axes) os << a.name << ',';
    os << metric_name << ",error\n";
    os << std::setprecision(17);
    for (const auto& r : rows) {
        for (const double c : r.coordinates) os << c << ',';
        os << r.value << ',' << r.error << '\n';
    }
}

GwBudget gw_budget_run(const GWParams& params, const std::vector<double>& grid) {
    GwBudget out;
    out.swlc = noise_budget(assemble_system(build_gw(params, Topology::Swlc)), grid);
    out.uwlc = noise_budget(assemble_system(build_gw(params, Topology::Uwlc)), grid);
    out.conventional =
        noise_budget(assemble_system(build_gw(params, Topology::Conventional)), grid);
    return out;
}

}  // namespace wlcsim
