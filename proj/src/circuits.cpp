#include "macrowitness/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace macrowitness {

Gate Gate::make_u3(int qubit, double lambda, double phi, double theta) {
    if (!std::isfinite(lambda) || !std::isfinite(phi) || !std::isfinite(theta)) {
        throw std::invalid_argument("u3 angles must be finite");
    }
    return Gate{GateKind::U3, {qubit}, lambda, phi, theta, ""};
}

Gate Gate::make_cnot(int control, int target) {
    if (control == target) throw std::invalid_argument("cnot control equals target");
    return Gate{GateKind::CNOT, {control, target}, 0, 0, 0, ""};
}

Gate Gate::make_h(int qubit) { return Gate{GateKind::H, {qubit}, 0, 0, 0, ""}; }

Gate Gate::make_barrier() { return Gate{GateKind::Barrier, {}, 0, 0, 0, ""}; }

Gate Gate::make_measure(std::vector<int> qubits, std::string creg) {
    if (qubits.empty()) throw std::invalid_argument("measure needs at least one qubit");
    return Gate{GateKind::Measure, std::move(qubits), 0, 0, 0, std::move(creg)};
}

Operator Gate::to_operator() const {
    switch (kind) {
        case GateKind::U3:
            return u3(lambda, phi, theta);
        case GateKind::H:
            return hadamard();
        case GateKind::CNOT:
            // sorted-qubit-order basis: first index bit is min(control, target)
            return cnot(qubits[0] < qubits[1]);
        default:
            throw std::invalid_argument("gate has no unitary content");
    }
}

Circuit::Circuit(int n, std::string circuit_name) : n_qubits(n), name(std::move(circuit_name)) {
    if (n < 0) throw std::invalid_argument("negative qubit count");
    check_capacity(n, "Circuit");
}

void Circuit::append(Gate gate) {
    for (int q : gate.qubits) {
        if (q < 0 || q >= n_qubits) {
            throw std::invalid_argument("gate qubit " + std::to_string(q) + " out of range");
        }
    }
    if (gate.kind == GateKind::Measure) {
        std::set<int> measured;
        for (const Gate& g : gates) {
            if (g.kind == GateKind::Measure) measured.insert(g.qubits.begin(), g.qubits.end());
        }
        for (int q : gate.qubits) {
            if (!measured.insert(q).second) {
                throw std::invalid_argument("qubit " + std::to_string(q) +
                                            " already carries a measurement");
            }
        }
    }
    gates.push_back(std::move(gate));
}

bool Circuit::has_measure() const {
    return std::any_of(gates.begin(), gates.end(),
                       [](const Gate& g) { return g.kind == GateKind::Measure; });
}

void GateDurations::validate() const {
    if (u3_time < 0 || cnot_time < 0 || h_time < 0 || measure_time < 0) {
        throw parameter_error("gate durations must be nonnegative");
    }
}

double GateDurations::of(const Gate& gate) const {
    switch (gate.kind) {
        case GateKind::U3:
            return u3_time;
        case GateKind::CNOT:
            return cnot_time;
        case GateKind::H:
            return h_time;
        case GateKind::Measure:
            return measure_time;
        case GateKind::Barrier:
            return 0.0;
    }
    return 0.0;
}

Circuit cat_preparation_circuit(int n, double theta) {
    if (n < 2) {
        throw std::invalid_argument("cat preparation needs n >= 2");
    }
    check_capacity(n, "cat_preparation_circuit");
    Circuit c(n, "cat");
    c.append(Gate::make_u3(0, 0.0, 0.0, theta));
    for (int q = 0; q + 1 < n; ++q) c.append(Gate::make_cnot(q, q + 1));
    return c;
}

Circuit inverse_circuit(const Circuit& circuit) {
    if (circuit.has_measure()) {
        throw std::invalid_argument("cannot invert a circuit containing measurements");
    }
    Circuit inv(circuit.n_qubits, circuit.name.empty() ? "inverse" : circuit.name + "_inverse");
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        switch (it->kind) {
            case GateKind::U3:
                inv.append(Gate::make_u3(it->qubits[0], -it->phi, -it->lambda, -it->theta));
                break;
            case GateKind::CNOT:
            case GateKind::H:
            case GateKind::Barrier:
                inv.append(*it);  // self-inverse / structural
                break;
            case GateKind::Measure:
                break;  // unreachable
        }
    }
    return inv;
}

Circuit product_preparation_circuit(int n) {
    if (n < 1) throw std::invalid_argument("product preparation needs n >= 1");
    check_capacity(n, "product_preparation_circuit");
    Circuit c(n, "product");
    for (int q = 0; q < n; ++q) c.append(Gate::make_h(q));
    return c;
}

Circuit attach_ancilla_measurement(const Circuit& circuit, const QubitSubset& system,
                                   const QubitSubset& ancillas, bool serial_ancilla,
                                   const std::string& creg) {
    if (system.size() != ancillas.size()) {
        throw std::invalid_argument("ancilla measurement: system/ancilla size mismatch");
    }
    for (int q : system.indices()) {
        if (ancillas.contains(q)) {
            throw std::invalid_argument("ancilla measurement: system and ancillas overlap");
        }
    }
    system.check_range(circuit.n_qubits, "attach_ancilla_measurement");
    ancillas.check_range(circuit.n_qubits, "attach_ancilla_measurement");

    Circuit out = circuit;
    for (int k = 0; k < system.size(); ++k) {
        if (serial_ancilla && k > 0) out.append(Gate::make_barrier());
        out.append(Gate::make_cnot(system.indices()[k], ancillas.indices()[k]));
    }
    out.append(Gate::make_measure(ancillas.indices(), creg));
    return out;
}

std::vector<Moment> schedule(const Circuit& circuit, const GateDurations& durations) {
    durations.validate();
    std::vector<Moment> moments;
    std::vector<std::size_t> frontier(circuit.n_qubits, 0);  // first free moment per qubit
    std::size_t barrier_floor = 0;
    for (const Gate& gate : circuit.gates) {
        if (gate.kind == GateKind::Barrier) {
            barrier_floor = moments.size();
            for (auto& f : frontier) f = std::max(f, barrier_floor);
            continue;
        }
        std::size_t slot = barrier_floor;
        for (int q : gate.qubits) slot = std::max(slot, frontier[q]);
        while (moments.size() <= slot) moments.push_back(Moment{});
        moments[slot].gates.push_back(gate);
        moments[slot].duration = std::max(moments[slot].duration, durations.of(gate));
        for (int q : gate.qubits) frontier[q] = slot + 1;
    }
    return moments;
}

double total_duration(const std::vector<Moment>& moments) {
    double t = 0.0;
    for (const Moment& m : moments) t += m.duration;
    return t;
}

}  // namespace macrowitness
