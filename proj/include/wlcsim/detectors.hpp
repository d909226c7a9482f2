#pragma once

// detectors.hpp — prebuilt NetworkSpec factories for the five standard
// configurations (conventional cavity, stable / unstable WLC, GW
// interferometer, microwave axion detector) plus the physical coupling
// helpers.
//
// Builders take the paper-style coupling alpha (the one appearing in the
// closed-form transfer functions) and emit the sqrt(2)*alpha quadrature
// forcing that reproduces those forms; the GW strain channel instead carries
// the combination alpha_gw * L directly, matching its position-type coupling.

#include "wlcsim/constants.hpp"
#include "wlcsim/network.hpp"

namespace wlcsim {

enum class Topology { Conventional, Swlc, Uwlc };
std::string to_string(Topology t);

// alpha_gw = sqrt(2 P_c hbar omega_0 / (L c)), SI value of the paper coupling
double alpha_gw(double circulating_power, double arm_length, double wavelength);

// alpha_axion = 4 pi eta g_agg sqrt(hbar omega_0 E_B)
double alpha_axion(double eta, double g_agg, double omega0, double b_field_energy);

NetworkSpec build_conventional(double gamma_r, double gamma_l, double alpha);

NetworkSpec build_swlc(double kappa, double chi, double gamma_r, double loss_a, double loss_b,
                       double loss_c, double alpha);

// Unstable WLC with a mechanical c-mode: loss rate gamma_m at temperature T,
// quality factor q_m fixing the thermal bath via omega_m = q_m * gamma_m.
NetworkSpec build_uwlc(double kappa, double chi, double gamma_r, double gamma_m,
                       double temperature, double alpha, double q_m = 1e6);

struct GWParams {
    double mirror_mass = 200.0;          // kg, per mirror; reduced mass is M/4
    double arm_length = 4000.0;          // m
    double circulating_power = 3e6;      // W
    double wavelength = 2e-6;            // m
    double gamma_r = constants::hz_to_rad(500.0);
    double kappa = constants::hz_to_rad(5000.0);
    double chi = constants::hz_to_rad(4930.0);
    double q_m = 8e9;                    // c-oscillator quality factor
    double omega_m = constants::hz_to_rad(1e5); // c-oscillator resonance, rad/s
    double t_env = 4.0;                  // K
};

NetworkSpec build_gw(const GWParams& params, Topology topology = Topology::Swlc);

struct AxionParams {
    double gamma_l = 0.0;  // rad/s, identical loss on a, b, c
    double gamma_r = 0.0;  // rad/s
    double kappa = 0.0;    // rad/s
    double chi = 0.0;      // rad/s
    double squeeze_r = 0.0;
    double alpha = 1.0;    // normalized signal coupling
    Topology topology = Topology::Swlc;
};

NetworkSpec build_axion(const AxionParams& params);

}  // namespace wlcsim
