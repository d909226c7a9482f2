#include <doctest.h>

#include <cmath>
#include <memory>

#include "wlcsim/detectors.hpp"
#include "wlcsim/metrics.hpp"
#include "wlcsim/spectra.hpp"

using namespace wlcsim;

namespace {

std::function<double(double)> referred_psd(const QuadratureSystem& sys) {
    auto eval = std::make_shared<TransferEvaluator>(sys);
    auto ports = sys.ports;
    return [eval, ports](double w) { return signal_referred_at(*eval, ports, w); };
}

double conventional_psd(double w, double gamma_r, double alpha) {
    return (w * w + gamma_r * gamma_r) / (2.0 * gamma_r * alpha * alpha);
}

}  // namespace

TEST_CASE("conventional integral equals alpha^2 / 2") {
    const double gamma_r = 2.0 * 3.14159, alpha = 0.77;
    const auto sys = assemble_system(build_conventional(gamma_r, 0.0, alpha));
    const auto fom = integrated_inverse_psd(referred_psd(sys), 1, gamma_r);
    CHECK(fom.value == doctest::Approx(alpha * alpha / 2.0).epsilon(1e-6));
    CHECK(fom.tail_corrected);
    CHECK(fom.abs_error < 1e-5 * fom.value);
}

TEST_CASE("lossy single-cavity scan rate has the closed form gR^2 a^4 / (2 (gR+gL)^3)") {
    const double gamma_r = 2.0, gamma_l = 1.0, alpha = 1.0;
    const auto sys = assemble_system(build_conventional(gamma_r, gamma_l, alpha));
    const auto fom = integrated_inverse_psd(referred_psd(sys), 2, gamma_r);
    CHECK(fom.value == doctest::Approx(2.0 / 27.0).epsilon(1e-6));
}

TEST_CASE("constant PSD raises a divergence error") {
    CHECK_THROWS_AS((void)integrated_inverse_psd([](double) { return 2.0; }, 1, 1.0),
                    DivergentIntegral);
}

TEST_CASE("oracle: residue closed forms for the sWLC power-2 integrals") {
    // residue calculus on [(W^2-m)^2 + gR^2 W^2]^-2 (independent derivation):
    //   (gR, kappa, chi) = (1, 2, 1): 32/27;  (2, 3, 1): 243/512
    {
        const auto sys = assemble_system(build_swlc(2.0, 1.0, 1.0, 0, 0, 0, 1.0));
        const auto fom = integrated_inverse_psd(referred_psd(sys), 2, 2.0);
        CHECK(fom.value == doctest::Approx(32.0 / 27.0).epsilon(1e-6));
    }
    {
        const auto sys = assemble_system(build_swlc(3.0, 1.0, 2.0, 0, 0, 0, 1.0));
        const auto fom = integrated_inverse_psd(referred_psd(sys), 2, 3.0);
        CHECK(fom.value == doctest::Approx(243.0 / 512.0).epsilon(1e-6));
    }
}

TEST_CASE("oracle: uWLC power-1 integral against an independent quadrature value") {
    // mpmath quad of [S_shot]^-1 at (gR, kappa, chi, alpha) = (2, 7, 6.5, 1.3),
    // frozen to 17 digits
    const double expect = 1.7975450459919045;
    const double gamma_r = 2.0, kappa = 7.0, chi = 6.5, alpha = 1.3;
    auto psd = [&](double w) {
        return uwlc_closed_form(gamma_r, 0.0, kappa, chi, alpha, 0.0, 1.0, w).shot;
    };
    const auto fom = integrated_inverse_psd(psd, 1, kappa);
    CHECK(fom.value == doctest::Approx(expect).epsilon(1e-8));
}

TEST_CASE("gain law: Lambda = (1 - chi^2/kappa^2)^-1") {
    const double gamma_r = 1.0, kappa = 2.0, alpha = 1.0;
    auto conv = [&](double w) { return conventional_psd(w, gamma_r, alpha); };
    for (const double ratio : {0.0, 0.5, 0.9, 0.986}) {
        const double chi = ratio * kappa;
        const auto amp = assemble_system(build_swlc(kappa, chi, gamma_r, 0, 0, 0, alpha));
        const double lambda = gain_lambda(referred_psd(amp), conv, kappa);
        CHECK(lambda == doctest::Approx(1.0 / (1.0 - ratio * ratio)).epsilon(1e-4));
    }
    // chi/kappa = 0.986 sits near 35.97
    const auto amp = assemble_system(build_swlc(kappa, 0.986 * kappa, gamma_r, 0, 0, 0, alpha));
    CHECK(gain_lambda(referred_psd(amp), conv, kappa) == doctest::Approx(35.97).epsilon(3e-4));
}

TEST_CASE("property: Lambda increases strictly with chi") {
    const double gamma_r = 1.0, kappa = 2.0;
    auto conv = [&](double w) { return conventional_psd(w, gamma_r, 1.0); };
    double prev = 0.0;
    for (double ratio = 0.0; ratio < 0.95; ratio += 0.1) {
        const auto amp =
            assemble_system(build_swlc(kappa, ratio * kappa, gamma_r, 0, 0, 0, 1.0));
        const double lambda = gain_lambda(referred_psd(amp), conv, kappa);
        CHECK(lambda > prev);
        prev = lambda;
    }
}

TEST_CASE("property: scan rate scales with rate-degree -1 at fixed alpha") {
    const double alpha = 1.0;
    auto ra = [&](double c) {
        const auto sys = assemble_system(build_conventional(2.0 * c, 1.0 * c, alpha));
        return integrated_inverse_psd(referred_psd(sys), 2, 2.0 * c).value;
    };
    const double base = ra(1.0);
    CHECK(ra(2.0) == doctest::Approx(base / 2.0).epsilon(1e-8));
    CHECK(ra(10.0) == doctest::Approx(base / 10.0).epsilon(1e-8));
}

TEST_CASE("eql_ratio normalization") {
    const double alpha = 0.9;
    // conventional lossless with dE^2 = 2 alpha^2 saturates the bound
    CHECK(eql_ratio(alpha * alpha / 2.0, 2.0 * alpha * alpha) == doctest::Approx(1.0));
    // amplified integral multiplies the saturated bound by Lambda
    CHECK(eql_ratio((4.0 / 3.0) * alpha * alpha / 2.0, 2.0 * alpha * alpha) ==
          doctest::Approx(4.0 / 3.0));
    // doubling dE^2 halves the ratio
    CHECK(eql_ratio(alpha * alpha / 2.0, 4.0 * alpha * alpha) == doctest::Approx(0.5));
}

TEST_CASE("thermal gain limit values") {
    const double q_m = 8e9, t_env = 4.0;
    const double gamma_1k = constants::hz_to_rad(1000.0);
    CHECK(lambda_max_thermal(q_m, gamma_1k, t_env) == doctest::Approx(96.0).epsilon(0.01));
    CHECK(lambda_max_thermal(q_m, constants::hz_to_rad(500.0), t_env) ==
          doctest::Approx(48.0).epsilon(0.01));
    CHECK(lambda_max_thermal(q_m, gamma_1k, 8.0) == doctest::Approx(48.0).epsilon(0.01));
}

TEST_CASE("loss budget boundary cases") {
    const double gamma_r = 1.0, kappa = 10.0;
    const double chi = std::sqrt(kappa * kappa - gamma_r * gamma_r);

    const auto zero = loss_budget_check(0, 0, 0, 1, 1, 1, kappa, chi, gamma_r);
    CHECK(zero.within_budget);
    CHECK(zero.ratio == 0.0);

    // gamma_a = gR^3 / (4 kappa^2) with vacuum baths sits exactly on the boundary
    const double ga = std::pow(gamma_r, 3) / (4.0 * kappa * kappa);
    const auto edge = loss_budget_check(ga, 0, 0, 1, 1, 1, kappa, chi, gamma_r);
    CHECK(edge.ratio == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(edge.within_budget);

    // thermal c-port: gamma_c * S_c placed exactly on the boundary of the
    // (chi/kappa)^2-weighted term
    const double target = std::pow(gamma_r, 3) / (4.0 * chi * chi); // gamma_c * S_c
    const double gamma_c = 1e-6;
    const auto th = loss_budget_check(0, 0, gamma_c, 1, 1, target / gamma_c, kappa, chi, gamma_r);
    CHECK(th.ratio == doctest::Approx(1.0).epsilon(1e-12));

    const auto over = loss_budget_check(2.0 * ga, 0, 0, 1, 1, 1, kappa, chi, gamma_r);
    CHECK_FALSE(over.within_budget);
}

TEST_CASE("figure of merit carries cutoff and error metadata") {
    const auto sys = assemble_system(build_conventional(3.0, 0.0, 1.0));
    const auto fom = integrated_inverse_psd(referred_psd(sys), 1, 3.0);
    CHECK(fom.cutoff == doctest::Approx(3000.0));
    CHECK(fom.abs_error >= 0.0);
}
