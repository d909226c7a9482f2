#pragma once

// spectra.hpp — single-sided noise power spectral densities at the readout,
// per-source decomposition, and signal-referred noise.
//
// Conventions: vacuum level is 1 per quadrature on a single-sided grid over
// Omega in [0, inf).  The signal-referred PSD divides the phase-quadrature
// output noise by |T_s|^2 / 2, the power transfer of a real classical signal
// through the phase readout; with this choice the conventional detector has
// S_h = (Omega^2 + gamma_R^2) / (2 gamma_R alpha^2).

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "wlcsim/network.hpp"
#include "wlcsim/response.hpp"

namespace wlcsim {

struct SpectrumTable {
    std::vector<double> grid;                    // rad/s
    std::vector<std::string> source_names;       // per input port (or budget group)
    std::vector<std::vector<double>> per_source; // [source][grid point]
    std::vector<double> total;                   // sum over sources
    std::vector<double> signal_transfer_sq;      // |T_s|^2 / 2 at the phase row
    std::vector<double> signal_referred;         // total / signal_transfer_sq

    std::size_t size() const { return grid.size(); }
};

// log-spaced grid, endpoints included
std::vector<double> log_grid(double lo, double hi, int points);

// Per-port contribution to the readout phase-quadrature PSD at one frequency,
// |T_p|^2 weighted by the port's bath PSD; last derived quantities use the
// baths stored in the system's ports.  The override variant substitutes bath
// statistics port by port and must cover every port.
std::vector<double> output_psd(const TransferEvaluator& eval,
                               const std::vector<PortSpec>& ports, double omega);
std::vector<double> output_psd(const QuadratureSystem& sys, double omega);
std::vector<double> output_psd(const QuadratureSystem& sys, const std::vector<BathSpec>& baths,
                               double omega);

// Full table over a grid; requires a signal in the assembled system.
SpectrumTable signal_referred_psd(const QuadratureSystem& sys, const std::vector<double>& grid);

// Signal-referred PSD at a single frequency (helper for integrals).
double signal_referred_at(const TransferEvaluator& eval, const std::vector<PortSpec>& ports,
                          double omega);

// Loss-induced signal-referred noise of the stable WLC,
//   [2 ga Sa + 2 gb (Omega/kappa)^2 Sb + 2 gc (chi/kappa)^2 Sc] / alpha^2.
double loss_referred_noise(double gamma_a, double gamma_b, double gamma_c, double s_a, double s_b,
                           double s_c, double kappa, double chi, double alpha, double omega);

// Closed-form unstable-WLC noise, signal-referred:
//   shot    = [gR^2 + W^2 ((W^2+chi^2-kappa^2)/(W^2+chi^2))^2] / (2 gR alpha^2)
//   thermal = 4 kappa^2 chi^2 kB T / (hbar Q (chi^2+W^2)^2 alpha^2)
struct UwlcNoise {
    double shot = 0.0;
    double thermal = 0.0;
};
UwlcNoise uwlc_closed_form(double gamma_r, double gamma_m, double kappa, double chi, double alpha,
                           double temperature, double quality, double omega);

// Per-source table with budget-style grouping: the readout port appears as
// "quantum", thermal loss ports as "thermal:<mode>", vacuum losses as
// "loss:<mode>".
SpectrumTable noise_budget(const QuadratureSystem& sys, const std::vector<double>& grid);

// CSV with header "freq_hz,total,signal_transfer_sq,src:<name>,...,signal_referred";
// 17 significant digits.
void write_csv(const SpectrumTable& table, std::ostream& os);

}  // namespace wlcsim
