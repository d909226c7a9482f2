#include "wlcsim/detectors.hpp"

#include <cmath>

namespace wlcsim {

namespace {

constexpr double root2 = 1.4142135623730950488;

void add_loss(NetworkSpec& spec, const std::string& mode, double rate) {
    if (rate > 0.0) spec.ports.push_back({PortKind::Loss, mode, rate, BathSpec{}});
}

}  // namespace

std::string to_string(Topology t) {
    switch (t) {
        case Topology::Conventional: return "conventional";
        case Topology::Swlc: return "swlc";
        case Topology::Uwlc: return "uwlc";
    }
    return {};
}

double alpha_gw(double circulating_power, double arm_length, double wavelength) {
    const double omega0 = constants::two_pi * constants::c_light / wavelength;
    return std::sqrt(2.0 * circulating_power * constants::hbar * omega0 /
                     (arm_length * constants::c_light));
}

double alpha_axion(double eta, double g_agg, double omega0, double b_field_energy) {
    return 2.0 * constants::two_pi * eta * g_agg *
           std::sqrt(constants::hbar * omega0 * b_field_energy);
}

NetworkSpec build_conventional(double gamma_r, double gamma_l, double alpha) {
    NetworkSpec spec;
    spec.modes.push_back({"a", ModeKind::Bosonic});
    spec.ports.push_back({PortKind::Readout, "a", gamma_r, BathSpec{}});
    add_loss(spec, "a", gamma_l);
    spec.signal = SignalSpec{"a", QuadratureIndex::Phase, root2 * alpha, "h"};
    return spec;
}

NetworkSpec build_swlc(double kappa, double chi, double gamma_r, double loss_a, double loss_b,
                       double loss_c, double alpha) {
    NetworkSpec spec;
    spec.modes.push_back({"a", ModeKind::Bosonic});
    spec.modes.push_back({"b", ModeKind::Bosonic});
    spec.modes.push_back({"c", ModeKind::Bosonic});
    if (kappa > 0.0)
        spec.couplings.push_back({CouplingKind::BeamSplitter, {"a", "b"}, kappa});
    if (chi > 0.0)
        spec.couplings.push_back({CouplingKind::TwoModeSqueeze, {"b", "c"}, chi});
    spec.ports.push_back({PortKind::Readout, "b", gamma_r, BathSpec{}});
    add_loss(spec, "a", loss_a);
    add_loss(spec, "b", loss_b);
    add_loss(spec, "c", loss_c);
    spec.signal = SignalSpec{"a", QuadratureIndex::Phase, root2 * alpha, "h"};
    return spec;
}

NetworkSpec build_uwlc(double kappa, double chi, double gamma_r, double gamma_m,
                       double temperature, double alpha, double q_m) {
    NetworkSpec spec;
    spec.modes.push_back({"a", ModeKind::Bosonic});
    spec.modes.push_back({"b", ModeKind::Bosonic});
    spec.modes.push_back({"c", ModeKind::Bosonic});
    if (kappa > 0.0)
        spec.couplings.push_back({CouplingKind::BeamSplitter, {"a", "b"}, kappa});
    if (chi > 0.0)
        spec.couplings.push_back({CouplingKind::TwoModeSqueeze, {"b", "c"}, chi});
    spec.ports.push_back({PortKind::Readout, "a", gamma_r, BathSpec{}});
    if (gamma_m > 0.0) {
        BathSpec bath;
        bath.kind = BathKind::Thermal;
        bath.temperature = temperature;
        bath.omega_m = q_m * gamma_m;
        spec.ports.push_back({PortKind::Loss, "c", gamma_m, bath});
    }
    spec.signal = SignalSpec{"a", QuadratureIndex::Phase, root2 * alpha, "h"};
    return spec;
}

NetworkSpec build_gw(const GWParams& p, Topology topology) {
    NetworkSpec spec;
    spec.modes.push_back({"a", ModeKind::Bosonic});
    if (topology != Topology::Conventional) {
        spec.modes.push_back({"b", ModeKind::Bosonic});
        spec.modes.push_back({"c", ModeKind::Bosonic});
    }
    ModeSpec mech;
    mech.name = "m";
    mech.kind = ModeKind::MechanicalPair;
    mech.reduced_mass = p.mirror_mass / 4.0;
    mech.eigenfrequency = 0.0; // free differential mode
    spec.modes.push_back(mech);

    // working coupling: alpha_gw rescaled so that the (x, p) pair carries
    // [x, p] = i; radiation pressure and phase pickup share this constant
    const double alpha = alpha_gw(p.circulating_power, p.arm_length, p.wavelength) /
                         std::sqrt(constants::hbar);

    if (topology != Topology::Conventional) {
        spec.couplings.push_back({CouplingKind::BeamSplitter, {"a", "b"}, p.kappa});
        spec.couplings.push_back({CouplingKind::TwoModeSqueeze, {"b", "c"}, p.chi});
    }
    spec.couplings.push_back({CouplingKind::PositionPhase, {"m", "a"}, alpha});
    spec.couplings.push_back({CouplingKind::MomentumKick, {"m", "a"}, alpha});

    const std::string readout_mode = topology == Topology::Swlc ? "b" : "a";
    spec.ports.push_back({PortKind::Readout, readout_mode, p.gamma_r, BathSpec{}});

    if (topology != Topology::Conventional) {
        BathSpec bath;
        bath.kind = BathKind::Thermal;
        bath.temperature = p.t_env;
        bath.omega_m = p.omega_m;
        spec.ports.push_back({PortKind::Loss, "c", p.omega_m / (2.0 * p.q_m), bath});
    }

    // strain enters through the (x - L h) combination, so the signal carries
    // the plain alpha * L with a sign making a2' -= alpha L h
    spec.signal = SignalSpec{"a", QuadratureIndex::Phase, -alpha * p.arm_length, "h"};
    return spec;
}

NetworkSpec build_axion(const AxionParams& p) {
    NetworkSpec spec;
    spec.modes.push_back({"a", ModeKind::Bosonic});
    spec.modes.push_back({"b", ModeKind::Bosonic});
    spec.modes.push_back({"c", ModeKind::Bosonic});
    if (p.kappa > 0.0)
        spec.couplings.push_back({CouplingKind::BeamSplitter, {"a", "b"}, p.kappa});
    if (p.chi > 0.0)
        spec.couplings.push_back({CouplingKind::TwoModeSqueeze, {"b", "c"}, p.chi});

    BathSpec readout_bath;
    if (p.squeeze_r != 0.0) {
        readout_bath.kind = BathKind::Squeezed;
        readout_bath.squeeze_r = p.squeeze_r;
    }
    const std::string readout_mode = p.topology == Topology::Swlc ? "b" : "a";
    spec.ports.push_back({PortKind::Readout, readout_mode, p.gamma_r, readout_bath});

    add_loss(spec, "a", p.gamma_l);
    add_loss(spec, "b", p.gamma_l);
    add_loss(spec, "c", p.gamma_l);

    spec.signal = SignalSpec{"a", QuadratureIndex::Phase, root2 * p.alpha, "psi1"};
    return spec;
}

}  // namespace wlcsim
