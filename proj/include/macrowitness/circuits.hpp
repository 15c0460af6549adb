#pragma once

#include <optional>
#include <string>
#include <vector>

#include "macrowitness/qstate.hpp"

namespace macrowitness {

enum class GateKind { U3, CNOT, H, Barrier, Measure };

struct Gate {
    GateKind kind;
    std::vector<int> qubits;   // CNOT: {control, target}
    double lambda = 0.0;       // U3 angles, radians
    double phi = 0.0;
    double theta = 0.0;
    std::string creg;          // Measure register label

    static Gate make_u3(int qubit, double lambda, double phi, double theta);
    static Gate make_cnot(int control, int target);
    static Gate make_h(int qubit);
    static Gate make_barrier();
    static Gate make_measure(std::vector<int> qubits, std::string creg);

    bool touches_qubits() const { return kind != GateKind::Barrier; }
    /// Unitary content (U3/CNOT/H only). For CNOT the matrix is expressed in
    /// the sorted-qubit-order basis apply_local_unitary expects.
    Operator to_operator() const;
};

/// Ordered gate list over a fixed register. Immutable once built via the
/// builders below; append validates indices and the one-measurement-per-qubit
/// restriction.
struct Circuit {
    int n_qubits = 0;
    std::vector<Gate> gates;
    std::string name;

    Circuit(int n_qubits, std::string name = "");
    void append(Gate gate);
    bool has_measure() const;
};

struct GateDurations {
    double u3_time = 0.1;       // microseconds
    double cnot_time = 0.4;
    double h_time = 0.1;
    double measure_time = 0.0;

    void validate() const;
    double of(const Gate& gate) const;
};

struct Moment {
    std::vector<Gate> gates;   // disjoint qubit supports
    double duration = 0.0;     // max member gate duration
};

/// cat-state preparation: U3(0,0,theta) on qubit 0, then the CNOT ladder
/// CNOT(0,1), ..., CNOT(n-2,n-1). Noiseless action on |0..0> is
/// cos(theta/2)|0..0> + sin(theta/2)|1..1>.
Circuit cat_preparation_circuit(int n, double theta);

/// Reversed gate list with each gate inverted; rejects circuits with Measure.
Circuit inverse_circuit(const Circuit& circuit);

/// One Hadamard per qubit (uniform superposition).
Circuit product_preparation_circuit(int n);

/// Appends CNOT(system_k, ancilla_k) for each k, then Measure on the
/// ancillas. With `serial_ancilla`, barriers between the fan-out CNOTs force
/// sequential scheduling.
Circuit attach_ancilla_measurement(const Circuit& circuit, const QubitSubset& system,
                                   const QubitSubset& ancillas, bool serial_ancilla = false,
                                   const std::string& creg = "anc");

/// Greedy left-justified moment packing. Barriers close all open moments;
/// every qubit accrues the full duration of every moment.
std::vector<Moment> schedule(const Circuit& circuit, const GateDurations& durations);

double total_duration(const std::vector<Moment>& moments);

/// OpenQASM 2.0 text for the circuit; deterministic byte-for-byte.
std::string to_qasm(const Circuit& circuit);

}  // namespace macrowitness
