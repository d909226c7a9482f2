#include "wlcsim/spectra.hpp"

#include <cmath>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace wlcsim {

std::vector<double> log_grid(double lo, double hi, int points) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_grid: need 0 < lo < hi");
    if (points < 2) throw std::invalid_argument("log_grid: need at least 2 points");
    std::vector<double> g(points);
    const double l0 = std::log(lo), l1 = std::log(hi);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(l0 + (l1 - l0) * double(i) / double(points - 1));
    g.front() = lo;
    g.back() = hi;
    return g;
}

std::vector<double> output_psd(const TransferEvaluator& eval, const std::vector<PortSpec>& ports,
                               double omega) {
    const TransferMatrix t = eval(omega);
    std::vector<double> out(ports.size(), 0.0);
    for (std::size_t p = 0; p < ports.size(); ++p) {
        const double sa = ports[p].bath.psd_amplitude();
        const double sp = ports[p].bath.psd_phase();
        const auto ta = t.noise_block(QuadratureSystem::phase_row, 2 * p);
        const auto tp = t.noise_block(QuadratureSystem::phase_row, 2 * p + 1);
        out[p] = std::norm(ta) * sa + std::norm(tp) * sp;
    }
    return out;
}

std::vector<double> output_psd(const QuadratureSystem& sys, double omega) {
    return output_psd(TransferEvaluator(sys), sys.ports, omega);
}

std::vector<double> output_psd(const QuadratureSystem& sys, const std::vector<BathSpec>& baths,
                               double omega) {
    if (baths.size() != sys.ports.size())
        throw std::invalid_argument("output_psd: bath assignment missing for some port");
    std::vector<PortSpec> ports = sys.ports;
    for (std::size_t i = 0; i < ports.size(); ++i) ports[i].bath = baths[i];
    return output_psd(TransferEvaluator(sys), ports, omega);
}

double signal_referred_at(const TransferEvaluator& eval, const std::vector<PortSpec>& ports,
                          double omega) {
    const TransferMatrix t = eval(omega);
    double total = 0.0;
    for (std::size_t p = 0; p < ports.size(); ++p) {
        const double sa = ports[p].bath.psd_amplitude();
        const double sp = ports[p].bath.psd_phase();
        total += std::norm(t.noise_block(QuadratureSystem::phase_row, 2 * p)) * sa +
                 std::norm(t.noise_block(QuadratureSystem::phase_row, 2 * p + 1)) * sp;
    }
    const double sts = 0.5 * std::norm(t.signal_block(QuadratureSystem::phase_row));
    if (sts <= 0.0) return std::numeric_limits<double>::infinity();
    return total / sts;
}

SpectrumTable signal_referred_psd(const QuadratureSystem& sys, const std::vector<double>& grid) {
    if (sys.signal_map.norm() == 0.0)
        throw std::invalid_argument("signal_referred_psd: no signal in spec");
    TransferEvaluator eval(sys);
    SpectrumTable tab;
    tab.grid = grid;
    for (const auto& p : sys.ports)
        tab.source_names.push_back((p.kind == PortKind::Readout ? "readout:" : "loss:") + p.mode);
    tab.per_source.assign(sys.ports.size(), std::vector<double>(grid.size(), 0.0));
    tab.total.resize(grid.size());
    tab.signal_transfer_sq.resize(grid.size());
    tab.signal_referred.resize(grid.size());

    for (std::size_t k = 0; k < grid.size(); ++k) {
        const TransferMatrix t = eval(grid[k]);
        double total = 0.0;
        for (std::size_t p = 0; p < sys.ports.size(); ++p) {
            const double v =
                std::norm(t.noise_block(QuadratureSystem::phase_row, 2 * p)) *
                    sys.ports[p].bath.psd_amplitude() +
                std::norm(t.noise_block(QuadratureSystem::phase_row, 2 * p + 1)) *
                    sys.ports[p].bath.psd_phase();
            tab.per_source[p][k] = v;
            total += v;
        }
        tab.total[k] = total;
        const double sts = 0.5 * std::norm(t.signal_block(QuadratureSystem::phase_row));
        tab.signal_transfer_sq[k] = sts;
        tab.signal_referred[k] =
            sts > 0.0 ? total / sts : std::numeric_limits<double>::infinity();
    }
    return tab;
}

double loss_referred_noise(double gamma_a, double gamma_b, double gamma_c, double s_a, double s_b,
                           double s_c, double kappa, double chi, double alpha, double omega) {
    if (gamma_a < 0 || gamma_b < 0 || gamma_c < 0)
        throw std::invalid_argument("loss_referred_noise: rates must be >= 0");
    if (kappa == 0.0) throw std::invalid_argument("loss_referred_noise: kappa must be nonzero");
    const double wk = omega / kappa, xk = chi / kappa;
    return (2.0 * gamma_a * s_a + 2.0 * gamma_b * wk * wk * s_b + 2.0 * gamma_c * xk * xk * s_c) /
           (alpha * alpha);
}

UwlcNoise uwlc_closed_form(double gamma_r, double gamma_m, double kappa, double chi, double alpha,
                           double temperature, double quality, double omega) {
    if (gamma_r < 0 || gamma_m < 0)
        throw std::invalid_argument("uwlc_closed_form: rates must be >= 0");
    const double w2 = omega * omega, x2 = chi * chi, k2 = kappa * kappa;
    const double frac = (w2 + x2 - k2) / (w2 + x2);
    UwlcNoise n;
    n.shot = (gamma_r * gamma_r + w2 * frac * frac) / (2.0 * gamma_r * alpha * alpha);
    n.thermal = 4.0 * k2 * x2 / ((x2 + w2) * (x2 + w2)) * constants::k_boltzmann * temperature /
                (constants::hbar * quality * alpha * alpha);
    return n;
}

SpectrumTable noise_budget(const QuadratureSystem& sys, const std::vector<double>& grid) {
    SpectrumTable raw = signal_referred_psd(sys, grid);
    SpectrumTable tab;
    tab.grid = raw.grid;
    // budget rows are signal-referred, so total coincides with the referred PSD
    tab.total = raw.signal_referred;
    tab.signal_transfer_sq = raw.signal_transfer_sq;
    tab.signal_referred = raw.signal_referred;
    for (std::size_t p = 0; p < sys.ports.size(); ++p) {
        const auto& port = sys.ports[p];
        std::string name;
        if (port.kind == PortKind::Readout)
            name = "quantum";
        else if (port.bath.kind == BathKind::Thermal)
            name = "thermal:" + port.mode;
        else
            name = "loss:" + port.mode;
        tab.source_names.push_back(name);
        std::vector<double> row(raw.size());
        for (std::size_t k = 0; k < raw.size(); ++k) {
            const double sts = raw.signal_transfer_sq[k];
            row[k] = sts > 0.0 ? raw.per_source[p][k] / sts
                               : std::numeric_limits<double>::infinity();
        }
        tab.per_source.push_back(std::move(row));
    }
    return tab;
}

void write_csv(const SpectrumTable& table, std::ostream& os) {
    os << "freq_hz,total,signal_transfer_sq";
    for (const auto& n : table.source_names) os << ",src:" << n;
    os << ",signal_referred\n";
    os << std::setprecision(17);
    for (std::size_t k = 0; k < table.size(); ++k) {
        os << constants::rad_to_hz(table.grid[k]) << ',' << table.total[k] << ','
           << table.signal_transfer_sq[k];
        for (const auto& src : table.per_source) os << ',' << src[k];
        os << ',' << table.signal_referred[k] << '\n';
    }
}

}  // namespace wlcsim
