#include "wlcsim/network.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>

#include <nlohmann/json.hpp>

namespace wlcsim {

using json = nlohmann::json;

double BathSpec::psd_amplitude() const {
    switch (kind) {
        case BathKind::Vacuum: return 1.0;
        case BathKind::Squeezed: return std::exp(2.0 * squeeze_r);
        case BathKind::Thermal: {
            if (temperature <= 0.0) return vacuum_floor ? 1.0 : 0.0;
            const double s = 2.0 * constants::k_boltzmann * temperature / (constants::hbar * omega_m);
            return vacuum_floor ? std::max(s, 1.0) : s;
        }
    }
    return 1.0;
}

double BathSpec::psd_phase() const {
    switch (kind) {
        case BathKind::Vacuum: return 1.0;
        case BathKind::Squeezed: return std::exp(-2.0 * squeeze_r);
        case BathKind::Thermal: return psd_amplitude();
    }
    return 1.0;
}

int QuadratureSystem::mode_offset(const std::string& mode) const {
    for (std::size_t i = 0; i < modes.size(); ++i) {
        if (modes[i].name == mode) return static_cast<int>(2 * i);
    }
    throw std::invalid_argument("unknown mode: " + mode);
}

int QuadratureSystem::state_index(const std::string& mode, int quadrature) const {
    return mode_offset(mode) + quadrature;
}

namespace {

const ModeSpec* find_mode(const NetworkSpec& spec, const std::string& name) {
    for (const auto& m : spec.modes)
        if (m.name == name) return &m;
    return nullptr;
}

bool finite(double v) { return std::isfinite(v); }

}  // namespace

std::vector<Diagnostic> validate_spec(const NetworkSpec& spec) {
    std::vector<Diagnostic> diags;
    auto add = [&](const std::string& el, const std::string& rule, const std::string& msg) {
        diags.push_back({el, rule, msg});
    };

    std::set<std::string> seen;
    for (const auto& m : spec.modes) {
        if (m.name.empty()) add(m.name, "empty mode name", "modes must be named");
        if (!seen.insert(m.name).second)
            add(m.name, "duplicate mode name", "mode name repeated: " + m.name);
        if (m.kind == ModeKind::MechanicalPair) {
            if (!(m.reduced_mass > 0.0))
                add(m.name, "nonpositive reduced mass", "mechanical pair needs mu > 0");
            if (m.eigenfrequency < 0.0 || !finite(m.eigenfrequency))
                add(m.name, "negative eigenfrequency", "mechanical pair needs omega_m >= 0");
        }
    }

    for (const auto& c : spec.couplings) {
        const std::string el = c.modes[0] + "-" + c.modes[1];
        const ModeSpec* m0 = find_mode(spec, c.modes[0]);
        const ModeSpec* m1 = find_mode(spec, c.modes[1]);
        if (!m0 || !m1) {
            add(el, "unknown mode reference", "coupling references a missing mode");
            continue;
        }
        if (!finite(c.rate)) add(el, "non-finite rate", "coupling rate must be finite");
        switch (c.kind) {
            case CouplingKind::BeamSplitter:
            case CouplingKind::TwoModeSqueeze:
                if (c.rate < 0.0)
                    add(el, "negative coupling rate", "beam-splitter/two-mode-squeeze rates are >= 0");
                if (m0->kind != ModeKind::Bosonic || m1->kind != ModeKind::Bosonic)
                    add(el, "coupling kind mismatch", "bilinear mode couplings connect bosonic modes");
                if (c.modes[0] == c.modes[1])
                    add(el, "self coupling", "couplings connect distinct modes");
                break;
            case CouplingKind::PositionPhase:
            case CouplingKind::MomentumKick:
                if (m0->kind != ModeKind::MechanicalPair || m1->kind != ModeKind::Bosonic)
                    add(el, "coupling kind mismatch",
                        "position-phase/momentum-kick take (mechanical, bosonic) mode pairs");
                break;
        }
    }

    int readouts = 0;
    for (const auto& p : spec.ports) {
        const ModeSpec* m = find_mode(spec, p.mode);
        if (!m) {
            add(p.mode, "unknown mode reference", "port attached to a missing mode");
            continue;
        }
        if (m->kind != ModeKind::Bosonic)
            add(p.mode, "port on mechanical pair", "ports attach to bosonic modes");
        if (p.rate < 0.0 || !finite(p.rate))
            add(p.mode, "negative port rate", "port rates are >= 0");
        if (p.kind == PortKind::Readout) ++readouts;
        if (p.bath.kind == BathKind::Thermal && p.bath.temperature > 0.0 && !(p.bath.omega_m > 0.0))
            add(p.mode, "thermal bath without omega_m", "thermal bath PSD needs omega_m > 0");
        if (p.bath.temperature < 0.0)
            add(p.mode, "negative temperature", "bath temperature is >= 0");
    }
    if (readouts != 1)
        add("ports", "readout count", "exactly one readout port is required, got " +
                                          std::to_string(readouts));

    if (spec.signal) {
        const ModeSpec* m = find_mode(spec, spec.signal->mode);
        if (!m)
            add(spec.signal->mode, "unknown mode reference", "signal targets a missing mode");
        else if (m->kind != ModeKind::Bosonic)
            add(spec.signal->mode, "signal on mechanical pair", "signals target bosonic modes");
        if (!finite(spec.signal->coupling))
            add(spec.signal->mode, "non-finite coupling", "signal coupling must be finite");
    }

    return diags;
}

Eigen::MatrixXd hamiltonian_drift(const NetworkSpec& spec) {
    const int n = static_cast<int>(2 * spec.modes.size());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    std::unordered_map<std::string, int> off;
    for (std::size_t i = 0; i < spec.modes.size(); ++i)
        off[spec.modes[i].name] = static_cast<int>(2 * i);

    // intrinsic mechanical dynamics: x' = p/mu, p' = -mu w^2 x
    for (const auto& m : spec.modes) {
        if (m.kind != ModeKind::MechanicalPair) continue;
        const int x = off[m.name], p = off[m.name] + 1;
        a(x, p) += 1.0 / m.reduced_mass;
        a(p, x) -= m.reduced_mass * m.eigenfrequency * m.eigenfrequency;
    }

    for (const auto& c : spec.couplings) {
        const int i = off[c.modes[0]], j = off[c.modes[1]];
        const double g = c.rate;
        switch (c.kind) {
            case CouplingKind::BeamSplitter:
                // i hbar g (m n† - m† n):  m' = -g n, n' = +g m
                a(i, j) -= g;
                a(i + 1, j + 1) -= g;
                a(j, i) += g;
                a(j + 1, i + 1) += g;
                break;
            case CouplingKind::TwoModeSqueeze:
                // i hbar g (m† n† - m n):  m1' = +g n1, m2' = -g n2 (symmetric)
                a(i, j) += g;
                a(i + 1, j + 1) -= g;
                a(j, i) += g;
                a(j + 1, i + 1) -= g;
                break;
            case CouplingKind::PositionPhase:
                // opt2' += g * x
                a(j + 1, i) += g;
                break;
            case CouplingKind::MomentumKick:
                // p' += g * opt1
                a(i + 1, j) += g;
                break;
        }
    }
    return a;
}

QuadratureSystem assemble_system(const NetworkSpec& spec) {
    auto diags = validate_spec(spec);
    if (!diags.empty()) {
        std::ostringstream os;
        os << "invalid NetworkSpec:";
        for (const auto& d : diags) os << " [" << d.element << ": " << d.rule << "]";
        throw SpecError(os.str(), std::move(diags));
    }

    QuadratureSystem sys;
    sys.modes = spec.modes;
    sys.ports = spec.ports;
    const int n = static_cast<int>(2 * spec.modes.size());
    const int np = static_cast<int>(spec.ports.size());

    for (const auto& m : spec.modes) {
        if (m.kind == ModeKind::Bosonic) {
            sys.state_labels.push_back(m.name + "1");
            sys.state_labels.push_back(m.name + "2");
        } else {
            sys.state_labels.push_back(m.name + "_x");
            sys.state_labels.push_back(m.name + "_p");
        }
    }

    sys.drift = hamiltonian_drift(spec);
    sys.input_map = Eigen::MatrixXd::Zero(n, 2 * np);
    sys.output_map = Eigen::MatrixXd::Zero(2, n);
    sys.feedthrough = Eigen::MatrixXd::Zero(2, 2 * np);
    sys.signal_map = Eigen::VectorXd::Zero(n);

    std::unordered_map<std::string, int> off;
    for (std::size_t i = 0; i < spec.modes.size(); ++i)
        off[spec.modes[i].name] = static_cast<int>(2 * i);

    for (int p = 0; p < np; ++p) {
        const auto& port = spec.ports[p];
        const int m = off[port.mode];
        const double root = std::sqrt(2.0 * port.rate);
        sys.drift(m, m) -= port.rate;
        sys.drift(m + 1, m + 1) -= port.rate;
        sys.input_map(m, 2 * p) = root;
        sys.input_map(m + 1, 2 * p + 1) = root;
        if (port.kind == PortKind::Readout) {
            sys.readout_port = p;
            // v = u - sqrt(2 gamma_R) * mode
            sys.output_map(0, m) = -root;
            sys.output_map(1, m + 1) = -root;
            sys.feedthrough(0, 2 * p) = 1.0;
            sys.feedthrough(1, 2 * p + 1) = 1.0;
        }
    }

    if (spec.signal) {
        const int m = off[spec.signal->mode];
        const int q = static_cast<int>(spec.signal->quadrature);
        sys.signal_map(m + q) += spec.signal->coupling;
        sys.signal_name = spec.signal->signal_name;
    }

    double scale = 0.0;
    for (const auto& c : spec.couplings) scale = std::max(scale, std::abs(c.rate));
    for (const auto& p : spec.ports) scale = std::max(scale, p.rate);
    for (const auto& m : spec.modes) scale = std::max(scale, m.eigenfrequency);
    sys.max_rate = scale;
    return sys;
}

// ---------------------------------- JSON ------------------------------------

namespace {

std::string mode_kind_name(ModeKind k) {
    return k == ModeKind::Bosonic ? "optical-or-microwave" : "mechanical-pair";
}
ModeKind mode_kind_from(const std::string& s) {
    if (s == "optical-or-microwave") return ModeKind::Bosonic;
    if (s == "mechanical-pair") return ModeKind::MechanicalPair;
    throw std::invalid_argument("unknown mode kind: " + s);
}

std::string coupling_kind_name(CouplingKind k) {
    switch (k) {
        case CouplingKind::BeamSplitter: return "beam-splitter";
        case CouplingKind::TwoModeSqueeze: return "two-mode-squeeze";
        case CouplingKind::PositionPhase: return "position-phase";
        case CouplingKind::MomentumKick: return "momentum-kick";
    }
    return {};
}
CouplingKind coupling_kind_from(const std::string& s) {
    if (s == "beam-splitter") return CouplingKind::BeamSplitter;
    if (s == "two-mode-squeeze") return CouplingKind::TwoModeSqueeze;
    if (s == "position-phase") return CouplingKind::PositionPhase;
    if (s == "momentum-kick") return CouplingKind::MomentumKick;
    throw std::invalid_argument("unknown coupling kind: " + s);
}

json bath_to_json(const BathSpec& b) {
    json j;
    switch (b.kind) {
        case BathKind::Vacuum: j["kind"] = "vacuum"; break;
        case BathKind::Squeezed:
            j["kind"] = "squeezed";
            j["squeeze_factor"] = b.squeeze_r;
            break;
        case BathKind::Thermal:
            j["kind"] = "thermal";
            j["temperature_k"] = b.temperature;
            j["omega_m_hz"] = constants::rad_to_hz(b.omega_m);
            if (b.vacuum_floor) j["vacuum_floor"] = true;
            break;
    }
    return j;
}

BathSpec bath_from_json(const json& j) {
    BathSpec b;
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "vacuum") {
        b.kind = BathKind::Vacuum;
    } else if (kind == "squeezed") {
        b.kind = BathKind::Squeezed;
        b.squeeze_r = j.at("squeeze_factor").get<double>();
    } else if (kind == "thermal") {
        b.kind = BathKind::Thermal;
        b.temperature = j.at("temperature_k").get<double>();
        b.omega_m = constants::hz_to_rad(j.at("omega_m_hz").get<double>());
        b.vacuum_floor = j.value("vacuum_floor", false);
    } else {
        throw std::invalid_argument("unknown bath kind: " + kind);
    }
    return b;
}

}  // namespace

std::string spec_to_json(const NetworkSpec& spec) {
    json j;
    j["modes"] = json::array();
    for (const auto& m : spec.modes) {
        json jm{{"name", m.name}, {"kind", mode_kind_name(m.kind)}};
        if (m.kind == ModeKind::MechanicalPair) {
            jm["mu_kg"] = m.reduced_mass;
            jm["omega_m_hz"] = constants::rad_to_hz(m.eigenfrequency);
        }
        j["modes"].push_back(jm);
    }
    j["couplings"] = json::array();
    for (const auto& c : spec.couplings) {
        json jc{{"kind", coupling_kind_name(c.kind)}, {"modes", {c.modes[0], c.modes[1]}}};
        if (c.kind == CouplingKind::BeamSplitter || c.kind == CouplingKind::TwoModeSqueeze)
            jc["rate_hz"] = constants::rad_to_hz(c.rate);
        else
            jc["rate"] = c.rate; // normalized units, not a frequency
        j["couplings"].push_back(jc);
    }
    j["ports"] = json::array();
    for (const auto& p : spec.ports) {
        j["ports"].push_back(json{{"kind", p.kind == PortKind::Readout ? "readout" : "loss"},
                                  {"mode", p.mode},
                                  {"rate_hz", constants::rad_to_hz(p.rate)},
                                  {"bath", bath_to_json(p.bath)}});
    }
    if (spec.signal) {
        const auto& s = *spec.signal;
        j["signal"] = json{{"mode", s.mode},
                           {"quadrature", s.quadrature == QuadratureIndex::Phase ? "phase" : "amplitude"},
                           {"coupling", s.coupling},
                           {"signal_name", s.signal_name}};
    }
    return j.dump(2);
}

NetworkSpec spec_from_json(const std::string& text) {
    const json j = json::parse(text);
    NetworkSpec spec;
    for (const auto& jm : j.at("modes")) {
        ModeSpec m;
        m.name = jm.at("name").get<std::string>();
        m.kind = mode_kind_from(jm.at("kind").get<std::string>());
        if (m.kind == ModeKind::MechanicalPair) {
            m.reduced_mass = jm.at("mu_kg").get<double>();
            m.eigenfrequency = constants::hz_to_rad(jm.at("omega_m_hz").get<double>());
        }
        spec.modes.push_back(m);
    }
    if (j.contains("couplings")) {
        for (const auto& jc : j.at("couplings")) {
            CouplingTerm c;
            c.kind = coupling_kind_from(jc.at("kind").get<std::string>());
            c.modes[0] = jc.at("modes").at(0).get<std::string>();
            c.modes[1] = jc.at("modes").at(1).get<std::string>();
            if (jc.contains("rate_hz"))
                c.rate = constants::hz_to_rad(jc.at("rate_hz").get<double>());
            else
                c.rate = jc.at("rate").get<double>();
            spec.couplings.push_back(c);
        }
    }
    if (j.contains("ports")) {
        for (const auto& jp : j.at("ports")) {
            PortSpec p;
            const std::string kind = jp.at("kind").get<std::string>();
            if (kind == "readout")
                p.kind = PortKind::Readout;
            else if (kind == "loss")
                p.kind = PortKind::Loss;
            else
                throw std::invalid_argument("unknown port kind: " + kind);
            p.mode = jp.at("mode").get<std::string>();
            p.rate = constants::hz_to_rad(jp.at("rate_hz").get<double>());
            if (jp.contains("bath")) p.bath = bath_from_json(jp.at("bath"));
            spec.ports.push_back(p);
        }
    }
    if (j.contains("signal")) {
        const auto& js = j.at("signal");
        SignalSpec s;
        s.mode = js.at("mode").get<std::string>();
        s.quadrature = js.at("quadrature").get<std::string>() == "phase"
                           ? QuadratureIndex::Phase
                           : QuadratureIndex::Amplitude;
        s.coupling = js.at("coupling").get<double>();
        s.signal_name = js.value("signal_name", "h");
        spec.signal = s;
    }
    return spec;
}

}  // namespace wlcsim
