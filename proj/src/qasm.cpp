#include <cmath>
#include <cstdio>
#include <sstream>

#include "macrowitness/circuits.hpp"

namespace macrowitness {

namespace {

// Renders angles as small rational multiples of pi when they are one, so the
// emitted text matches hand-written OpenQASM; falls back to a full-precision
// decimal.
std::string format_angle(double value) {
    if (value == 0.0) return "0";
    const double pi = M_PI;
    for (int den : {1, 2, 3, 4, 6, 8, 12, 16}) {
        double ratio = value * den / pi;
        double rounded = std::round(ratio);
        if (rounded != 0.0 && std::abs(ratio - rounded) < 1e-12) {
            long num = static_cast<long>(rounded);
            std::string sign = num < 0 ? "-" : "";
            num = std::labs(num);
            std::string head = num == 1 ? "pi" : std::to_string(num) + "*pi";
            std::string tail = den == 1 ? "" : "/" + std::to_string(den);
            return sign + head + tail;
        }
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

}  // namespace

std::string to_qasm(const Circuit& circuit) {
    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    out << "qreg q[" << circuit.n_qubits << "];\n";
    for (const Gate& gate : circuit.gates) {
        if (gate.kind == GateKind::Measure) {
            out << "creg " << gate.creg << "[" << gate.qubits.size() << "];\n";
        }
    }
    for (const Gate& gate : circuit.gates) {
        switch (gate.kind) {
            case GateKind::U3:
                out << "u3(" << format_angle(gate.theta) << "," << format_angle(gate.phi) << ","
                    << format_angle(gate.lambda) << ") q[" << gate.qubits[0] << "];\n";
                break;
            case GateKind::CNOT:
                out << "cx q[" << gate.qubits[0] << "],q[" << gate.qubits[1] << "];\n";
                break;
            case GateKind::H:
                out << "h q[" << gate.qubits[0] << "];\n";
                break;
            case GateKind::Barrier:
                out << "barrier q;\n";
                break;
            case GateKind::Measure:
                for (std::size_t k = 0; k < gate.qubits.size(); ++k) {
                    out << "measure q[" << gate.qubits[k] << "] -> " << gate.creg << "[" << k
                        << "];\n";
                }
                break;
        }
    }
    return out.str();
}

}  // namespace macrowitness
