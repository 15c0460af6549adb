#pragma once

#include <cstdlib>
#include <stdexcept>
#include <string>

namespace macrowitness {

/// Requested state space exceeds the configured qubit ceiling.
class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

/// A density matrix failed a validity check (hermiticity, trace, positivity).
class state_error : public std::runtime_error {
public:
    explicit state_error(const std::string& what) : std::runtime_error(what) {}
};

/// Noise parameters outside their admissible range.
class parameter_error : public std::invalid_argument {
public:
    explicit parameter_error(const std::string& what) : std::invalid_argument(what) {}
};

/// Hard ceiling on the total qubit count, overridable through the
/// MACROWITNESS_MAX_QUBITS environment variable.
inline int max_qubits() {
    static const int value = [] {
        if (const char* env = std::getenv("MACROWITNESS_MAX_QUBITS")) {
            int v = std::atoi(env);
            if (v >= 1) return v;
        }
        return 14;
    }();
    return value;
}

inline void check_capacity(int n_qubits, const std::string& context) {
    if (n_qubits > max_qubits()) {
        throw capacity_error(context + ": " + std::to_string(n_qubits) +
                             " qubits exceeds the ceiling of " + std::to_string(max_qubits()));
    }
}

}  // namespace macrowitness
