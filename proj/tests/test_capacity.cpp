// Runs as its own process: the qubit ceiling is read from the environment
// once, so the override has to be in place before the first state is built.
#include <cstdio>
#include <cstdlib>

#include "macrowitness/qstate.hpp"

int main() {
    setenv("MACROWITNESS_MAX_QUBITS", "3", 1);
    int failures = 0;

    try {
        macrowitness::DensityMatrix::basis_state(4, 0);
        std::fprintf(stderr, "expected capacity_error for 4 qubits under a ceiling of 3\n");
        ++failures;
    } catch (const macrowitness::capacity_error&) {
    }

    try {
        macrowitness::DensityMatrix::basis_state(3, 0);
    } catch (const std::exception& error) {
        std::fprintf(stderr, "3 qubits should fit under a ceiling of 3: %s\n", error.what());
        ++failures;
    }

    return failures == 0 ? 0 : 1;
}
