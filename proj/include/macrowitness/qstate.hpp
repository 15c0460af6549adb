#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "macrowitness/errors.hpp"

namespace macrowitness {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Basis-index convention: qubit 0 is the leftmost character of an outcome
// bit-string and therefore the most significant bit of a basis index.
inline int bit_of(std::size_t index, int qubit, int n_qubits) {
    return static_cast<int>((index >> (n_qubits - 1 - qubit)) & 1u);
}

inline std::string bitstring(std::size_t index, int n_qubits) {
    std::string s(n_qubits, '0');
    for (int q = 0; q < n_qubits; ++q) {
        s[q] = bit_of(index, q, n_qubits) ? '1' : '0';
    }
    return s;
}

std::size_t index_of_bitstring(const std::string& bits);

/// Ordered set of distinct qubit positions; normalized to strictly increasing.
class QubitSubset {
public:
    QubitSubset() = default;
    QubitSubset(std::initializer_list<int> qubits);
    explicit QubitSubset(std::vector<int> qubits);

    const std::vector<int>& indices() const { return indices_; }
    int size() const { return static_cast<int>(indices_.size()); }
    bool empty() const { return indices_.empty(); }
    bool contains(int q) const;
    void check_range(int n_qubits, const std::string& context) const;

private:
    std::vector<int> indices_;
};

QubitSubset complement_of(const QubitSubset& subset, int n_qubits);

/// Dense complex operator on k qubits (dim = 2^k).
class Operator {
public:
    explicit Operator(Matrix entries, bool unitary = false);

    static Operator identity(int dim);
    static Operator unitary(Matrix entries);

    const Matrix& entries() const { return entries_; }
    int dim() const { return static_cast<int>(entries_.rows()); }
    int n_qubits() const { return n_qubits_; }
    bool is_unitary_flagged() const { return unitary_; }
    Operator adjoint() const { return Operator(entries_.adjoint(), unitary_); }

private:
    Matrix entries_;
    int n_qubits_ = 0;
    bool unitary_ = false;
};

// Standard gate matrices. u3 takes the (lambda, phi, theta) argument order of
// the IBM-style single-qubit rotation, with theta the polar rotation angle.
Operator pauli_x();
Operator pauli_z();
Operator hadamard();
Operator u3(double lambda, double phi, double theta);
// cnot over a two-qubit subspace whose first index bit is `control_first ?
// control : target`; lets callers express either qubit ordering.
Operator cnot(bool control_first = true);

Operator kron(const Operator& a, const Operator& b);

/// Trace-one positive operator on n qubits; the sole evolving state
/// representation. Values are immutable after construction.
class DensityMatrix {
public:
    DensityMatrix(int n_qubits, Matrix entries);

    static DensityMatrix basis_state(int n_qubits, std::size_t index);
    static DensityMatrix basis_state(const std::string& bits);
    static DensityMatrix from_statevector(int n_qubits, const Eigen::VectorXcd& psi);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return static_cast<std::size_t>(entries_.rows()); }
    const Matrix& entries() const { return entries_; }
    double trace_real() const { return entries_.trace().real(); }
    std::vector<double> diagonal_probabilities() const;

    /// Hermiticity within 1e-10, unit trace within 1e-10, min eigenvalue
    /// >= -1e-9; throws state_error otherwise.
    void validate() const;

private:
    int n_qubits_;
    Matrix entries_;
};

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Operator& u,
                                  const QubitSubset& targets);

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep);

/// -Tr rho ln rho in nats; eigenvalues below 1e-12 contribute zero.
double von_neumann_entropy(const DensityMatrix& rho);

struct MeasurementOutcome {
    std::string label;            // bit-string over the measured qubits
    double probability;
    DensityMatrix post_state;     // renormalized; zero matrix when probability ~ 0
    bool zero_probability;
};

/// Born-rule measurement of `targets` in the computational basis. Outcomes
/// keep the full state space; probabilities sum to one. Outcomes below
/// `prune_floor` are dropped only when `prune` is set.
std::vector<MeasurementOutcome> measure_computational(const DensityMatrix& rho,
                                                      const QubitSubset& targets,
                                                      double prune_floor = 0.0,
                                                      bool prune = false);

struct ReducedBranch {
    std::string label;
    double probability;
    DensityMatrix state;  // reduced to the unmeasured qubits, renormalized
};

/// Measures `targets` and traces them out of each branch:
/// gamma_i = Tr_targets((1 x |i><i|) rho), renormalized. Branches with
/// probability below `prune_floor` are dropped.
std::vector<ReducedBranch> measure_and_trace_out(const DensityMatrix& rho,
                                                 const QubitSubset& targets,
                                                 double prune_floor = 0.0);

}  // namespace macrowitness
