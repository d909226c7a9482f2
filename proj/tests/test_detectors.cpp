#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "wlcsim/detectors.hpp"
#include "wlcsim/response.hpp"
#include "wlcsim/spectra.hpp"

using namespace wlcsim;
using std::complex;

TEST_CASE("conventional detector transfer matches the single-cavity relation") {
    const double gamma_r = 1.3, alpha = 0.8;
    const auto sys = assemble_system(build_conventional(gamma_r, 0.0, alpha));
    const TransferEvaluator eval(sys);
    const int col = 2 * sys.readout_port + 1;
    for (double w = 0.05; w < 50.0; w *= 2.3) {
        const complex<double> den{w, gamma_r};
        const complex<double> noise = complex<double>(w, -gamma_r) / den;
        const complex<double> signal =
            complex<double>(0.0, -2.0 * std::sqrt(gamma_r) * alpha) / den;
        const auto t = eval(w);
        REQUIRE(std::abs(t.noise_block(1, col) - noise) < 1e-12);
        REQUIRE(std::abs(t.signal_block(1) - signal) < 1e-12);
    }
}

TEST_CASE("impedance-matched loss: zero DC noise transfer, unit loss transfer") {
    const double gamma_r = 1.3;
    const auto sys = assemble_system(build_conventional(gamma_r, gamma_r, 1.0));
    const TransferEvaluator eval(sys);
    const auto t = eval(1e-9 * gamma_r);
    CHECK(std::abs(t.noise_block(1, 2 * sys.readout_port + 1)) < 1e-8);
    const int loss_col = sys.readout_port == 0 ? 3 : 1;
    CHECK(std::abs(t.noise_block(1, loss_col)) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("alpha = 0 gives an identically zero signal block") {
    const auto sys = assemble_system(build_conventional(1.0, 0.0, 0.0));
    CHECK(sys.signal_map.norm() == 0.0);
    CHECK(std::abs(transfer_matrix(sys, 0.7).signal_block(1)) == 0.0);
}

TEST_CASE("sWLC builder: threshold is marginal, passive chain is stable") {
    CHECK(poles(assemble_system(build_swlc(2.0, 2.0, 1.0, 0, 0, 0, 1.0))).classification ==
          StabilityClass::Marginal);
    CHECK(poles(assemble_system(build_swlc(2.0, 0.0, 1.0, 0, 0, 0, 1.0))).classification ==
          StabilityClass::Stable);
}

TEST_CASE("uWLC builder matches the closed-form output at random frequencies") {
    const double gamma_r = 1.2, kappa = 5.0, chi = 4.0, alpha = 0.9;
    const auto sys = assemble_system(build_uwlc(kappa, chi, gamma_r, 0.0, 0.0, alpha));
    const TransferEvaluator eval(sys);
    const int col = 2 * sys.readout_port + 1;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> logw(-2.0, 2.0);
    for (int k = 0; k < 100; ++k) {
        const double w = kappa * std::pow(10.0, logw(rng));
        const double w2 = w * w, x2 = chi * chi, k2 = kappa * kappa;
        const complex<double> den{w * (w2 + x2 - k2), gamma_r * (w2 + x2)};
        const complex<double> num{w * (w2 + x2 - k2), -gamma_r * (w2 + x2)};
        const complex<double> signal =
            complex<double>(0.0, -std::sqrt(2.0 * gamma_r) * (x2 + w2) * std::sqrt(2.0) * alpha) /
            den;
        const auto t = eval(w);
        REQUIRE(std::abs(t.noise_block(1, col) - num / den) <= 1e-10);
        REQUIRE(std::abs(t.signal_block(1) - signal) <= 1e-10 * std::abs(signal));
    }
}

TEST_CASE("uWLC builder: unstable for chi > 0; kappa = chi = 0 decouples to conventional") {
    CHECK(poles(assemble_system(build_uwlc(5.0, 0.5, 1.0, 0.0, 0.0, 1.0))).classification ==
          StabilityClass::Unstable);

    const auto sys = assemble_system(build_uwlc(0.0, 0.0, 1.3, 0.0, 0.0, 0.8));
    const auto conv = assemble_system(build_conventional(1.3, 0.0, 0.8));
    const TransferEvaluator ev(sys), evc(conv);
    for (double w = 0.1; w < 10.0; w *= 3.0) {
        REQUIRE(std::abs(ev(w).noise_block(1, 1) - evc(w).noise_block(1, 1)) < 1e-12);
        REQUIRE(std::abs(ev(w).signal_block(1) - evc(w).signal_block(1)) < 1e-12);
    }
}

TEST_CASE("GW coupling constant for the Voyager point") {
    CHECK(alpha_gw(3e6, 4000.0, 2e-6) == doctest::Approx(7.0495e-13).epsilon(1e-4));
}

TEST_CASE("GW builder accepts the quoted rate set") {
    GWParams p; // defaults carry kappa/2pi = 5 kHz, chi/2pi = 4.93 kHz, gR/2pi = 500 Hz
    CHECK(p.chi / p.kappa == doctest::Approx(0.986));
    const auto spec = build_gw(p);
    CHECK(validate_spec(spec).empty());
    const auto sys = assemble_system(spec);
    CHECK(sys.state_dim() == 8);
    CHECK(sys.port_count() == 2);
}

TEST_CASE("GW builder: huge mirror mass freezes radiation pressure") {
    GWParams p;
    p.t_env = 0.0;
    GWParams frozen = p;
    frozen.mirror_mass = p.mirror_mass * 1e12;

    const double alpha_eff = alpha_gw(p.circulating_power, p.arm_length, p.wavelength) /
                             std::sqrt(constants::hbar) * p.arm_length / std::sqrt(2.0);
    const auto rate_level =
        assemble_system(build_swlc(p.kappa, p.chi, p.gamma_r, 0, 0, 0, alpha_eff));
    const auto gw = assemble_system(build_gw(frozen));
    for (double f = 20.0; f < 2e4; f *= 4.0) {
        const double w = constants::hz_to_rad(f);
        const double s_gw = signal_referred_psd(gw, {w}).signal_referred[0];
        const double s_rl = signal_referred_psd(rate_level, {w}).signal_referred[0];
        REQUIRE(s_gw == doctest::Approx(s_rl).epsilon(1e-8));
    }
}

TEST_CASE("axion builder: kappa = chi = 0 with no squeezing is a single-cavity detector") {
    AxionParams p;
    p.gamma_l = 1.0;
    p.gamma_r = 2.0;
    p.alpha = 1.0;
    p.topology = Topology::Uwlc; // conventional readout on a
    const auto sys = assemble_system(build_axion(p));
    const auto conv = assemble_system(build_conventional(2.0, 1.0, 1.0));
    for (double w = 0.1; w < 30.0; w *= 2.7) {
        const double sa = signal_referred_psd(sys, {w}).signal_referred[0];
        const double sc = signal_referred_psd(conv, {w}).signal_referred[0];
        REQUIRE(sa == doctest::Approx(sc).epsilon(1e-12));
    }
}

TEST_CASE("axion coupling constant formula") {
    const double eta = 0.3, g = 1e-14, omega0 = constants::hz_to_rad(5e9), eb = 2.5;
    const double expect = 4.0 * 3.14159265358979323846 * eta * g *
                          std::sqrt(constants::hbar * omega0 * eb);
    CHECK(alpha_axion(eta, g, omega0, eb) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("axion builder: topology flag moves only the readout port") {
    AxionParams p;
    p.gamma_l = 0.5;
    p.gamma_r = 2.0;
    p.kappa = 3.0;
    p.chi = 1.0;
    p.squeeze_r = 0.4;
    const auto swlc = build_axion(p);
    p.topology = Topology::Uwlc;
    const auto uwlc = build_axion(p);
    CHECK(swlc.ports.front().mode == "b");
    CHECK(uwlc.ports.front().mode == "a");
    CHECK(swlc.couplings.size() == uwlc.couplings.size());
    CHECK(swlc.ports.size() == uwlc.ports.size());
    CHECK(swlc.signal->mode == uwlc.signal->mode);
    CHECK(swlc.ports.front().bath.squeeze_r == uwlc.ports.front().bath.squeeze_r);
}

TEST_CASE("property: every builder output validates cleanly") {
    CHECK(validate_spec(build_conventional(1.0, 0.5, 1.0)).empty());
    CHECK(validate_spec(build_swlc(2.0, 1.0, 1.0, 0.1, 0.2, 0.3, 1.0)).empty());
    CHECK(validate_spec(build_uwlc(2.0, 1.0, 1.0, 0.01, 4.0, 1.0)).empty());
    CHECK(validate_spec(build_gw(GWParams{})).empty());
    CHECK(validate_spec(build_gw(GWParams{}, Topology::Uwlc)).empty());
    CHECK(validate_spec(build_gw(GWParams{}, Topology::Conventional)).empty());
    AxionParams ap;
    ap.gamma_l = 1.0;
    ap.gamma_r = 2.0;
    ap.kappa = 3.0;
    ap.chi = 1.0;
    CHECK(validate_spec(build_axion(ap)).empty());
}

TEST_CASE("property: builders are deterministic") {
    const auto a = spec_to_json(build_gw(GWParams{}));
    const auto b = spec_to_json(build_gw(GWParams{}));
    CHECK(a == b);
}

TEST_CASE("sWLC builder is PT-symmetric exactly on threshold") {
    CHECK(pt_check(build_swlc(2.0, 2.0, 1.0, 0, 0, 0, 1.0)).is_pt_symmetric);
    CHECK_FALSE(pt_check(build_swlc(2.0, 1.9, 1.0, 0, 0, 0, 1.0)).is_pt_symmetric);
}

TEST_CASE("GW build with mechanics is not PT-symmetric without the negative-mass partner") {
    CHECK_FALSE(pt_check(build_gw(GWParams{})).is_pt_symmetric);
}
