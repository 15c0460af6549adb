#pragma once

#include <map>
#include <mutex>

#include "macrowitness/qstate.hpp"

namespace macrowitness {

/// Uniform per-qubit Lindblad rates: relaxation (sigma-), pure dephasing
/// (sigma-z) and a phenomenological excitation term (sigma+) standing in for
/// gate errors.
struct NoiseParams {
    double t1 = 46.0;             // microseconds
    double t2 = 13.5;             // microseconds
    double gamma_errors = 0.085;  // 1/microsecond
    bool enabled = true;

    void validate() const;

    static NoiseParams disabled_params() {
        NoiseParams p;
        p.enabled = false;
        return p;
    }
};

struct DerivedRates {
    double gamma_t1;  // 1/T1
    double gamma_t2;  // [T2^-1 - (2 T1)^-1] / 2
};

DerivedRates derived_rates(const NoiseParams& params);

/// exp(duration * L1) for the single-qubit Liouvillian, column-stacked
/// convention: vec index of element (row i, col j) is j*2 + i.
struct IdleChannel {
    double duration = 0.0;
    Eigen::Matrix4cd superoperator = Eigen::Matrix4cd::Identity();
};

/// Single-qubit Liouvillian combining the three dissipators with the
/// (1/2)[2 L rho Ldag - Ldag L rho - rho Ldag L] normalization.
Eigen::Matrix4cd single_qubit_liouvillian(const NoiseParams& params);

IdleChannel idle_channel(const NoiseParams& params, double duration);

/// Choi matrix of the channel (2x2 input basis); PSD for a CP map.
Eigen::Matrix4cd choi_matrix(const IdleChannel& channel);
bool is_cptp(const IdleChannel& channel, double tolerance = 1e-10);

/// Applies the channel independently to each listed qubit.
DensityMatrix apply_idle_noise(const DensityMatrix& rho, const IdleChannel& channel,
                               const QubitSubset& qubits);

/// Independent oracle: fixed-step RK4 integration of the full-space master
/// equation assembled from kron-embedded operators. n <= 3 only; at least
/// 1000 steps per microsecond.
DensityMatrix brute_force_evolve(const DensityMatrix& rho, const NoiseParams& params,
                                 double duration);

/// duration -> channel cache; safe for concurrent lookups.
class ChannelCache {
public:
    explicit ChannelCache(NoiseParams params) : params_(params) {}
    const IdleChannel& channel_for(double duration);
    const NoiseParams& params() const { return params_; }

private:
    NoiseParams params_;
    std::map<double, IdleChannel> cache_;
    std::mutex mutex_;
};

}  // namespace macrowitness
