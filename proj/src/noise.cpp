#include "macrowitness/noise.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

namespace macrowitness {

namespace {

Eigen::Matrix2cd sigma_minus() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 1) = 1;  // |1> -> |0>
    return m;
}

Eigen::Matrix2cd sigma_plus() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(1, 0) = 1;  // |0> -> |1>
    return m;
}

Eigen::Matrix2cd sigma_z() {
    Eigen::Matrix2cd m = Eigen::Matrix2cd::Zero();
    m(0, 0) = 1;
    m(1, 1) = -1;
    return m;
}

// (gamma/2)[2 L rho Ldag - Ldag L rho - rho Ldag L], column-stacked.
Eigen::Matrix4cd dissipator(const Eigen::Matrix2cd& collapse, double gamma) {
    const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
    const Eigen::Matrix2cd ll = collapse.adjoint() * collapse;
    Eigen::Matrix4cd d = Eigen::Matrix4cd::Zero();
    auto kron4 = [](const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
        Eigen::Matrix4cd out;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
        }
        return out;
    };
    d += 2.0 * kron4(collapse.conjugate(), collapse);
    d -= kron4(id, ll);
    d -= kron4(ll.transpose(), id);
    return (gamma / 2.0) * d;
}

struct FullSpaceTerm {
    Matrix collapse;  // kron-embedded on the full register
    Matrix ll;        // collapse^dag collapse
    double gamma;
};

Matrix embed(const Eigen::Matrix2cd& op, int qubit, int n_qubits) {
    Matrix out = Matrix::Identity(1, 1);
    for (int q = 0; q < n_qubits; ++q) {
        const Matrix factor = (q == qubit) ? Matrix(op) : Matrix(Eigen::Matrix2cd::Identity());
        Matrix next(out.rows() * 2, out.cols() * 2);
        for (Eigen::Index i = 0; i < out.rows(); ++i) {
            for (Eigen::Index j = 0; j < out.cols(); ++j) {
                next.block(i * 2, j * 2, 2, 2) = out(i, j) * factor;
            }
        }
        out = std::move(next);
    }
    return out;
}

}  // namespace

void NoiseParams::validate() const {
    if (t1 <= 0 || t2 <= 0) throw parameter_error("T1 and T2 must be positive");
    if (t2 > 2 * t1) {
        throw parameter_error("T2 must not exceed 2*T1 (dephasing rate would be negative)");
    }
    if (gamma_errors < 0) throw parameter_error("gamma_errors must be nonnegative");
}

DerivedRates derived_rates(const NoiseParams& params) {
    params.validate();
    return DerivedRates{1.0 / params.t1, (1.0 / params.t2 - 1.0 / (2.0 * params.t1)) / 2.0};
}

Eigen::Matrix4cd single_qubit_liouvillian(const NoiseParams& params) {
    const DerivedRates rates = derived_rates(params);
    Eigen::Matrix4cd l = Eigen::Matrix4cd::Zero();
    l += dissipator(sigma_minus(), rates.gamma_t1);
    l += dissipator(sigma_z(), rates.gamma_t2);
    l += dissipator(sigma_plus(), params.gamma_errors);
    return l;
}

IdleChannel idle_channel(const NoiseParams& params, double duration) {
    if (duration < 0) throw std::invalid_argument("idle channel duration must be nonnegative");
    IdleChannel channel;
    channel.duration = duration;
    if (duration == 0.0 || !params.enabled) return channel;
    const Eigen::Matrix4cd generator = single_qubit_liouvillian(params) * duration;
    channel.superoperator = generator.exp();
    return channel;
}

Eigen::Matrix4cd choi_matrix(const IdleChannel& channel) {
    // Choi = sum_{ij} |i><j| (x) S(|i><j|)
    Eigen::Matrix4cd choi = Eigen::Matrix4cd::Zero();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Eigen::Vector4cd vec_in = Eigen::Vector4cd::Zero();
            vec_in(j * 2 + i) = 1;  // column-stacked |i><j|
            Eigen::Vector4cd vec_out = channel.superoperator * vec_in;
            for (int k = 0; k < 2; ++k) {
                for (int l = 0; l < 2; ++l) {
                    choi(i * 2 + k, j * 2 + l) += vec_out(l * 2 + k);
                }
            }
        }
    }
    return choi;
}

bool is_cptp(const IdleChannel& channel, double tolerance) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(choi_matrix(channel),
                                                           Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tolerance) return false;
    // trace preservation: Tr S(rho) = Tr rho for the basis elements
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            Eigen::Vector4cd vec_in = Eigen::Vector4cd::Zero();
            vec_in(j * 2 + i) = 1;
            Eigen::Vector4cd out = channel.superoperator * vec_in;
            Complex trace = out(0) + out(3);
            Complex expected = (i == j) ? Complex(1, 0) : Complex(0, 0);
            if (std::abs(trace - expected) > tolerance) return false;
        }
    }
    return true;
}

DensityMatrix apply_idle_noise(const DensityMatrix& rho, const IdleChannel& channel,
                               const QubitSubset& qubits) {
    const int n = rho.n_qubits();
    qubits.check_range(n, "apply_idle_noise");
    if (channel.duration == 0.0) return rho;
    const std::size_t dim = rho.dim();
    const Eigen::Matrix4cd& s = channel.superoperator;
    Matrix out = rho.entries();
    for (int q : qubits.indices()) {
        const std::size_t stride = std::size_t{1} << (n - 1 - q);
        for (std::size_t bc = 0; bc < dim; ++bc) {
            if (bc & stride) continue;
            for (std::size_t br = 0; br < dim; ++br) {
                if (br & stride) continue;
                const Complex a00 = out(br, bc);
                const Complex a10 = out(br + stride, bc);
                const Complex a01 = out(br, bc + stride);
                const Complex a11 = out(br + stride, bc + stride);
                // column-stacked vec of the 2x2 block: (a00, a10, a01, a11)
                out(br, bc) = s(0, 0) * a00 + s(0, 1) * a10 + s(0, 2) * a01 + s(0, 3) * a11;
                out(br + stride, bc) = s(1, 0) * a00 + s(1, 1) * a10 + s(1, 2) * a01 + s(1, 3) * a11;
                out(br, bc + stride) = s(2, 0) * a00 + s(2, 1) * a10 + s(2, 2) * a01 + s(2, 3) * a11;
                out(br + stride, bc + stride) =
                    s(3, 0) * a00 + s(3, 1) * a10 + s(3, 2) * a01 + s(3, 3) * a11;
            }
        }
    }
    return DensityMatrix(n, std::move(out));
}

DensityMatrix brute_force_evolve(const DensityMatrix& rho, const NoiseParams& params,
                                 double duration) {
    if (rho.n_qubits() > 3) {
        throw capacity_error("brute_force_evolve is limited to 3 qubits");
    }
    if (duration < 0) throw std::invalid_argument("duration must be nonnegative");
    if (duration == 0.0 || !params.enabled) return rho;
    const DerivedRates rates = derived_rates(params);
    const int n = rho.n_qubits();

    std::vector<FullSpaceTerm> terms;
    for (int q = 0; q < n; ++q) {
        for (auto& [op, gamma] :
             {std::pair{sigma_minus(), rates.gamma_t1}, std::pair{sigma_z(), rates.gamma_t2},
              std::pair{sigma_plus(), params.gamma_errors}}) {
            if (gamma == 0.0) continue;
            Matrix c = embed(op, q, n);
            Matrix ll = c.adjoint() * c;
            terms.push_back(FullSpaceTerm{std::move(c), std::move(ll), gamma});
        }
    }
    auto rhs = [&](const Matrix& r) {
        Matrix d = Matrix::Zero(r.rows(), r.cols());
        for (const FullSpaceTerm& t : terms) {
            d += (t.gamma / 2.0) *
                 (2.0 * t.collapse * r * t.collapse.adjoint() - t.ll * r - r * t.ll);
        }
        return d;
    };

    const int steps = std::max(1, static_cast<int>(std::ceil(duration * 1000.0)));
    const double h = duration / steps;
    Matrix r = rho.entries();
    for (int s = 0; s < steps; ++s) {
        Matrix k1 = rhs(r);
        Matrix k2 = rhs(r + (h / 2) * k1);
        Matrix k3 = rhs(r + (h / 2) * k2);
        Matrix k4 = rhs(r + h * k3);
        r += (h / 6) * (k1 + 2 * k2 + 2 * k3 + k4);
    }
    return DensityMatrix(n, std::move(r));
}

const IdleChannel& ChannelCache::channel_for(double duration) {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(duration);
    if (it == cache_.end()) {
        it = cache_.emplace(duration, idle_channel(params_, duration)).first;
    }
    return it->second;
}

}  // namespace macrowitness
