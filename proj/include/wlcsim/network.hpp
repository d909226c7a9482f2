#pragma once

// network.hpp — declarative network description and its compilation into a
// real quadrature state-space model.
//
// A NetworkSpec lists bosonic modes (and mechanical pairs), bilinear
// couplings, input/output ports with bath statistics, and an optional
// classical signal injection. assemble_system() compiles it into drift /
// input / output / signal maps over the quadrature basis, the form used by
// every downstream frequency-domain computation.

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wlcsim/constants.hpp"

namespace wlcsim {

enum class ModeKind { Bosonic, MechanicalPair };
enum class CouplingKind { BeamSplitter, TwoModeSqueeze, PositionPhase, MomentumKick };
enum class PortKind { Readout, Loss };
enum class BathKind { Vacuum, Squeezed, Thermal };
enum class QuadratureIndex { Amplitude = 0, Phase = 1 };

struct ModeSpec {
    std::string name;
    ModeKind kind = ModeKind::Bosonic;
    // mechanical pairs only
    double reduced_mass = 0.0;   // kg
    double eigenfrequency = 0.0; // rad/s, >= 0
};

struct CouplingTerm {
    CouplingKind kind = CouplingKind::BeamSplitter;
    // BeamSplitter(m, n, g):    m' = -g n,  n' = +g m   (both quadratures)
    // TwoModeSqueeze(m, n, g):  m1' = +g n1, m2' = -g n2 and symmetrically
    // PositionPhase(mech, opt, a):  opt2' += a * x
    // MomentumKick(mech, opt, a):   p'    += a * opt1
    std::array<std::string, 2> modes;
    double rate = 0.0; // rad/s for beam-splitter / two-mode-squeeze; normalized for the rest
};

struct BathSpec {
    BathKind kind = BathKind::Vacuum;
    double squeeze_r = 0.0;    // squeezed only
    double temperature = 0.0;  // K, thermal only
    double omega_m = 0.0;      // rad/s, thermal only
    bool vacuum_floor = false; // clamp thermal PSD below at 1

    // single-sided PSD per quadrature; vacuum level is 1
    double psd_amplitude() const;
    double psd_phase() const;
};

struct PortSpec {
    PortKind kind = PortKind::Readout;
    std::string mode;
    double rate = 0.0; // rad/s
    BathSpec bath;
};

struct SignalSpec {
    std::string mode;
    QuadratureIndex quadrature = QuadratureIndex::Phase;
    double coupling = 0.0; // forcing added verbatim to the chosen quadrature
    std::string signal_name = "h";
};

struct NetworkSpec {
    std::vector<ModeSpec> modes;
    std::vector<CouplingTerm> couplings;
    std::vector<PortSpec> ports;
    std::optional<SignalSpec> signal;
};

struct Diagnostic {
    std::string element; // offending mode/coupling/port
    std::string rule;    // short rule id, e.g. "duplicate mode name"
    std::string message;
};

class SpecError : public std::runtime_error {
  public:
    explicit SpecError(const std::string& what, std::vector<Diagnostic> diags = {})
        : std::runtime_error(what), diagnostics(std::move(diags)) {}
    std::vector<Diagnostic> diagnostics;
};

// Compiled frequency-domain model:  x' = A x + B u + s h,  v = C x + D u.
// States are ordered two per mode, (m1, m2) for bosonic modes and (x, p)
// for mechanical pairs, following the order of NetworkSpec::modes.  Input
// columns come in (amplitude, phase) pairs, one pair per port, in port
// order.  Output rows are the readout (amplitude, phase) pair.
struct QuadratureSystem {
    std::vector<std::string> state_labels;
    Eigen::MatrixXd drift;       // n x n
    Eigen::MatrixXd input_map;   // n x 2P
    Eigen::MatrixXd output_map;  // 2 x n
    Eigen::MatrixXd feedthrough; // 2 x 2P, identity on the readout pair
    Eigen::VectorXd signal_map;  // n
    std::vector<PortSpec> ports; // column order
    std::vector<ModeSpec> modes; // state order
    int readout_port = -1;
    double max_rate = 0.0; // largest rate in the spec, for tolerances
    std::string signal_name;

    int state_dim() const { return static_cast<int>(drift.rows()); }
    int port_count() const { return static_cast<int>(ports.size()); }

    // state index of (mode, quadrature); throws for unknown modes
    int state_index(const std::string& mode, int quadrature) const;
    int mode_offset(const std::string& mode) const;

    static constexpr int amplitude_row = 0;
    static constexpr int phase_row = 1;
};

// Empty result iff the spec satisfies every type invariant.
std::vector<Diagnostic> validate_spec(const NetworkSpec& spec);

// Deterministic compilation; throws SpecError when validate_spec is nonempty.
QuadratureSystem assemble_system(const NetworkSpec& spec);

// Port-free drift: Hamiltonian coupling terms and mechanical dynamics only.
Eigen::MatrixXd hamiltonian_drift(const NetworkSpec& spec);

// JSON document round-trip; rates are emitted in Hz with key suffix "_hz".
std::string spec_to_json(const NetworkSpec& spec);
NetworkSpec spec_from_json(const std::string& text);

}  // namespace wlcsim
