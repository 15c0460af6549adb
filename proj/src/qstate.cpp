#include "macrowitness/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace macrowitness {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int log2_exact(std::size_t v) {
    int k = 0;
    while ((std::size_t{1} << k) < v) ++k;
    return k;
}

// Global-index offset of each sub-basis state of `targets`; targets[0] is the
// most significant bit of the sub-index.
std::vector<std::size_t> subspace_offsets(const QubitSubset& targets, int n_qubits) {
    const int k = targets.size();
    std::vector<std::size_t> strides(k);
    for (int g = 0; g < k; ++g) {
        strides[g] = std::size_t{1} << (n_qubits - 1 - targets.indices()[g]);
    }
    std::vector<std::size_t> offsets(std::size_t{1} << k, 0);
    for (std::size_t s = 0; s < offsets.size(); ++s) {
        for (int g = 0; g < k; ++g) {
            if ((s >> (k - 1 - g)) & 1u) offsets[s] += strides[g];
        }
    }
    return offsets;
}

std::size_t subspace_mask(const QubitSubset& targets, int n_qubits) {
    std::size_t mask = 0;
    for (int q : targets.indices()) mask |= std::size_t{1} << (n_qubits - 1 - q);
    return mask;
}

}  // namespace

std::size_t index_of_bitstring(const std::string& bits) {
    std::size_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw std::invalid_argument("bit-string must contain only '0'/'1': " + bits);
        }
        index = (index << 1) | static_cast<std::size_t>(c == '1');
    }
    return index;
}

QubitSubset::QubitSubset(std::initializer_list<int> qubits)
    : QubitSubset(std::vector<int>(qubits)) {}

QubitSubset::QubitSubset(std::vector<int> qubits) : indices_(std::move(qubits)) {
    std::sort(indices_.begin(), indices_.end());
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
        throw std::invalid_argument("qubit subset contains duplicate indices");
    }
    if (!indices_.empty() && indices_.front() < 0) {
        throw std::invalid_argument("qubit index must be nonnegative");
    }
}

bool QubitSubset::contains(int q) const {
    return std::binary_search(indices_.begin(), indices_.end(), q);
}

void QubitSubset::check_range(int n_qubits, const std::string& context) const {
    if (!indices_.empty() && indices_.back() >= n_qubits) {
        throw std::invalid_argument(context + ": qubit index " +
                                    std::to_string(indices_.back()) + " out of range for " +
                                    std::to_string(n_qubits) + " qubits");
    }
}

QubitSubset complement_of(const QubitSubset& subset, int n_qubits) {
    std::vector<int> rest;
    for (int q = 0; q < n_qubits; ++q) {
        if (!subset.contains(q)) rest.push_back(q);
    }
    return QubitSubset(std::move(rest));
}

Operator::Operator(Matrix entries, bool unitary) : entries_(std::move(entries)), unitary_(unitary) {
    if (entries_.rows() != entries_.cols() || !is_power_of_two(entries_.rows())) {
        throw std::invalid_argument("operator dimension must be a power of two");
    }
    n_qubits_ = log2_exact(entries_.rows());
    if (unitary_) {
        Matrix residual = entries_.adjoint() * entries_ - Matrix::Identity(dim(), dim());
        if (residual.norm() > 1e-12) {
            throw std::invalid_argument("operator flagged unitary fails U^dag U = 1 within 1e-12");
        }
    }
}

Operator Operator::identity(int dim) { return Operator(Matrix::Identity(dim, dim), true); }

Operator Operator::unitary(Matrix entries) { return Operator(std::move(entries), true); }

Operator pauli_x() {
    Matrix m(2, 2);
    m << 0, 1, 1, 0;
    return Operator::unitary(m);
}

Operator pauli_z() {
    Matrix m(2, 2);
    m << 1, 0, 0, -1;
    return Operator::unitary(m);
}

Operator hadamard() {
    Matrix m(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    m << s, s, s, -s;
    return Operator::unitary(m);
}

Operator u3(double lambda, double phi, double theta) {
    const Complex i(0.0, 1.0);
    Matrix m(2, 2);
    m << std::cos(theta / 2), -std::exp(i * lambda) * std::sin(theta / 2),
        std::exp(i * phi) * std::sin(theta / 2),
        std::exp(i * (lambda + phi)) * std::cos(theta / 2);
    return Operator::unitary(m);
}

Operator cnot(bool control_first) {
    Matrix m = Matrix::Zero(4, 4);
    if (control_first) {
        m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    } else {
        // first index bit is the target qubit
        m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = 1;
    }
    return Operator::unitary(m);
}

Operator kron(const Operator& a, const Operator& b) {
    check_capacity(a.n_qubits() + b.n_qubits(), "kron");
    const auto da = a.dim();
    const auto db = b.dim();
    Matrix out(da * db, da * db);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            out.block(i * db, j * db, db, db) = a.entries()(i, j) * b.entries();
        }
    }
    return Operator(std::move(out), a.is_unitary_flagged() && b.is_unitary_flagged());
}

DensityMatrix::DensityMatrix(int n_qubits, Matrix entries)
    : n_qubits_(n_qubits), entries_(std::move(entries)) {
    if (n_qubits < 0) throw std::invalid_argument("negative qubit count");
    check_capacity(n_qubits, "DensityMatrix");
    const auto d = std::size_t{1} << n_qubits;
    if (static_cast<std::size_t>(entries_.rows()) != d ||
        static_cast<std::size_t>(entries_.cols()) != d) {
        throw std::invalid_argument("density matrix dimension does not match qubit count");
    }
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, std::size_t index) {
    check_capacity(n_qubits, "basis_state");
    const auto d = std::size_t{1} << n_qubits;
    if (index >= d) throw std::invalid_argument("basis index out of range");
    Matrix m = Matrix::Zero(d, d);
    m(index, index) = 1;
    return DensityMatrix(n_qubits, std::move(m));
}

DensityMatrix DensityMatrix::basis_state(const std::string& bits) {
    return basis_state(static_cast<int>(bits.size()), index_of_bitstring(bits));
}

DensityMatrix DensityMatrix::from_statevector(int n_qubits, const Eigen::VectorXcd& psi) {
    return DensityMatrix(n_qubits, psi * psi.adjoint());
}

std::vector<double> DensityMatrix::diagonal_probabilities() const {
    std::vector<double> p(dim());
    for (std::size_t i = 0; i < dim(); ++i) p[i] = entries_(i, i).real();
    return p;
}

void DensityMatrix::validate() const {
    if ((entries_ - entries_.adjoint()).norm() > 1e-10) {
        throw state_error("density matrix is not Hermitian within 1e-10");
    }
    if (std::abs(entries_.trace().real() - 1.0) > 1e-10 || std::abs(entries_.trace().imag()) > 1e-10) {
        throw state_error("density matrix trace differs from one beyond 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -1e-9) {
        throw state_error("density matrix has eigenvalue below -1e-9");
    }
}

DensityMatrix apply_local_unitary(const DensityMatrix& rho, const Operator& u,
                                  const QubitSubset& targets) {
    const int n = rho.n_qubits();
    targets.check_range(n, "apply_local_unitary");
    const int k = targets.size();
    if (u.dim() != (1 << k)) {
        throw std::invalid_argument("apply_local_unitary: operator dimension does not match targets");
    }
    if (!u.is_unitary_flagged()) {
        throw std::invalid_argument("apply_local_unitary requires a unitary-flagged operator");
    }
    const std::size_t dim = rho.dim();
    const std::size_t sub = std::size_t{1} << k;
    const auto offsets = subspace_offsets(targets, n);
    const std::size_t mask = subspace_mask(targets, n);
    const Matrix& gate = u.entries();
    const Matrix gate_conj = gate.conjugate();

    Matrix out = rho.entries();
    Complex* data = out.data();  // column-major

    // Left pass: out <- U out, contracting the ket-side target indices.
    std::vector<Complex> v(sub), w(sub);
    for (std::size_t c = 0; c < dim; ++c) {
        Complex* col = data + c * dim;
        for (std::size_t b = 0; b < dim; ++b) {
            if (b & mask) continue;
            for (std::size_t t = 0; t < sub; ++t) v[t] = col[b + offsets[t]];
            for (std::size_t s = 0; s < sub; ++s) {
                Complex acc(0, 0);
                for (std::size_t t = 0; t < sub; ++t) acc += gate(s, t) * v[t];
                w[s] = acc;
            }
            for (std::size_t s = 0; s < sub; ++s) col[b + offsets[s]] = w[s];
        }
    }

    // Right pass: out <- out U^dag, a linear recombination of whole columns.
    Matrix scratch(dim, sub);
    for (std::size_t b = 0; b < dim; ++b) {
        if (b & mask) continue;
        for (std::size_t s = 0; s < sub; ++s) {
            scratch.col(s).setZero();
            for (std::size_t t = 0; t < sub; ++t) {
                scratch.col(s) += gate_conj(s, t) * out.col(b + offsets[t]);
            }
        }
        for (std::size_t s = 0; s < sub; ++s) out.col(b + offsets[s]) = scratch.col(s);
    }
    return DensityMatrix(n, std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, const QubitSubset& keep) {
    const int n = rho.n_qubits();
    if (keep.empty()) throw std::invalid_argument("partial_trace: keep set must be nonempty");
    keep.check_range(n, "partial_trace");
    const QubitSubset traced = complement_of(keep, n);
    const auto keep_offsets = subspace_offsets(keep, n);
    const auto traced_offsets =
        traced.empty() ? std::vector<std::size_t>{0} : subspace_offsets(traced, n);
    const std::size_t dk = keep_offsets.size();
    Matrix out = Matrix::Zero(dk, dk);
    for (std::size_t t : traced_offsets) {
        for (std::size_t i = 0; i < dk; ++i) {
            for (std::size_t j = 0; j < dk; ++j) {
                out(i, j) += rho.entries()(keep_offsets[i] + t, keep_offsets[j] + t);
            }
        }
    }
    return DensityMatrix(keep.size(), std::move(out));
}

double von_neumann_entropy(const DensityMatrix& rho) {
    if ((rho.entries() - rho.entries().adjoint()).norm() > 1e-10) {
        throw state_error("von_neumann_entropy: state is not Hermitian within 1e-10");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(rho.entries(), Eigen::EigenvaluesOnly);
    double s = 0.0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        double lambda = std::clamp(solver.eigenvalues()(i), 0.0, 1.0);
        if (lambda > 1e-12) s -= lambda * std::log(lambda);
    }
    return std::max(s, 0.0);
}

std::vector<MeasurementOutcome> measure_computational(const DensityMatrix& rho,
                                                      const QubitSubset& targets,
                                                      double prune_floor, bool prune) {
    const int n = rho.n_qubits();
    targets.check_range(n, "measure_computational");
    const int k = targets.size();
    if (k == 0) throw std::invalid_argument("measure_computational: empty target set");
    const std::size_t dim = rho.dim();
    const auto offsets = subspace_offsets(targets, n);
    const std::size_t mask = subspace_mask(targets, n);

    std::vector<MeasurementOutcome> outcomes;
    for (std::size_t o = 0; o < offsets.size(); ++o) {
        double p = 0.0;
        for (std::size_t b = 0; b < dim; ++b) {
            if (b & mask) continue;
            p += rho.entries()(b + offsets[o], b + offsets[o]).real();
        }
        if (prune && p < prune_floor) continue;
        Matrix post = Matrix::Zero(dim, dim);
        const bool zero_prob = p < 1e-15;
        if (!zero_prob) {
            for (std::size_t br = 0; br < dim; ++br) {
                if (br & mask) continue;
                for (std::size_t bc = 0; bc < dim; ++bc) {
                    if (bc & mask) continue;
                    post(br + offsets[o], bc + offsets[o]) =
                        rho.entries()(br + offsets[o], bc + offsets[o]) / p;
                }
            }
        }
        outcomes.push_back(MeasurementOutcome{bitstring(o, k), p,
                                              DensityMatrix(n, std::move(post)), zero_prob});
    }
    return outcomes;
}

std::vector<ReducedBranch> measure_and_trace_out(const DensityMatrix& rho,
                                                 const QubitSubset& targets,
                                                 double prune_floor) {
    const int n = rho.n_qubits();
    targets.check_range(n, "measure_and_trace_out");
    if (targets.empty()) throw std::invalid_argument("measure_and_trace_out: empty target set");
    const QubitSubset rest = complement_of(targets, n);
    const auto target_offsets = subspace_offsets(targets, n);
    const auto rest_offsets =
        rest.empty() ? std::vector<std::size_t>{0} : subspace_offsets(rest, n);
    const std::size_t dr = rest_offsets.size();

    std::vector<ReducedBranch> branches;
    for (std::size_t o = 0; o < target_offsets.size(); ++o) {
        Matrix block(dr, dr);
        for (std::size_t i = 0; i < dr; ++i) {
            for (std::size_t j = 0; j < dr; ++j) {
                block(i, j) = rho.entries()(rest_offsets[i] + target_offsets[o],
                                            rest_offsets[j] + target_offsets[o]);
            }
        }
        const double p = block.trace().real();
        if (p < prune_floor || p < 1e-15) continue;
        block /= p;
        branches.push_back(
            ReducedBranch{bitstring(o, targets.size()), p, DensityMatrix(rest.size(), std::move(block))});
    }
    return branches;
}

}  // namespace macrowitness
