#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "macrowitness/circuits.hpp"
#include "macrowitness/noise.hpp"

namespace macrowitness {

/// Probability distribution over computational-basis outcomes of n qubits.
struct Distribution {
    int n_qubits = 0;
    std::vector<double> p;

    Distribution() = default;
    explicit Distribution(int n) : n_qubits(n), p(std::size_t{1} << n, 0.0) {}

    std::string label(std::size_t index) const { return bitstring(index, n_qubits); }
    double at(const std::string& outcome) const;
    double sum() const;
};

enum class Scenario { Direct, PrepareMeasure };

struct WitnessResult {
    double w = 0.0;
    double sigma = 0.0;
    Distribution p_blind;
    Distribution p_with_measurement;
    std::map<std::pair<std::string, std::string>, double> joint;  // (i, j) -> probability
    std::string target_outcome;
    long shots = 0;  // 0 => exact mode
};

struct InvasivenessRecord {
    std::string prepared_state;
    double epsilon_ii = 1.0;   // survival probability
    double invasiveness = 0.0; // |1 - epsilon_ii|
    double sigma = 0.0;
};

enum class PartitionStrategy { Prefix, Exhaustive };

struct DisconnectivityReport {
    int gamma = 1;
    std::map<int, double> deltas;  // n' -> delta_{n'}
    double eta = 0.5;
    PartitionStrategy partition_strategy = PartitionStrategy::Prefix;
};

struct MeasuredRunResult {
    Distribution p_t1;                 // intermediate outcome distribution
    Distribution p_m_t2;               // sum_i p_t1(i) p(j|i)
    std::map<std::pair<std::string, std::string>, double> joint;
    std::vector<std::pair<std::string, Distribution>> conditionals;
    bool complete = true;              // false when pruning dropped weight
    double covered_weight = 1.0;
};

struct SampleResult {
    std::vector<long> counts;
    Distribution empirical;
    std::vector<double> sigma;  // sqrt(p_hat (1 - p_hat) / shots) per outcome
};

/// Noiseless or noisy evolution of a measurement-free circuit from |0..0>.
DensityMatrix simulate_circuit(const Circuit& circuit, const NoiseParams& noise,
                               const GateDurations& durations);
DensityMatrix simulate_circuit_from(DensityMatrix rho, const Circuit& circuit,
                                    const NoiseParams& noise, const GateDurations& durations);

/// prep -> barrier -> inverse(prep) -> final measurement; exact distribution.
Distribution run_blind(const Circuit& prep, const NoiseParams& noise,
                       const GateDurations& durations);

/// Ancilla-mediated intermediate measurement: prep on n system qubits plus n
/// ancillas, CNOT fan-out, ancilla readout, inverse prep, final measurement.
MeasuredRunResult run_direct_measure(const Circuit& prep, const NoiseParams& noise,
                                     const GateDurations& durations, bool serial_ancilla = false);

/// p_t1 from a first measured pass; each outcome re-prepared exactly and run
/// through the inverse circuit. Branches below `prune_floor` are dropped and
/// the result flagged incomplete.
MeasuredRunResult run_prepare_and_measure(const Circuit& prep, const NoiseParams& noise,
                                          const GateDurations& durations,
                                          double prune_floor = 1e-3);

WitnessResult quantum_witness(const Distribution& p_blind, const Distribution& p_with_measurement,
                              const std::string& target_outcome);

/// Full pipeline: blind run plus the chosen intermediate-measurement
/// scenario. Empty target selects {0}^n. With `shots`, both distributions are
/// re-sampled (seeds derived from `seed`) and sigma propagated.
WitnessResult run_witness(const Circuit& prep, const NoiseParams& noise,
                          const GateDurations& durations, Scenario scenario,
                          bool serial_ancilla = false, std::string target_outcome = "",
                          long shots = 0, std::uint64_t seed = 0);

/// 1 - cos^4(theta/2) - sin^4(theta/2); the ideal cat-state witness.
double analytic_cat_witness(double theta);

/// Prepare basis state i exactly, run the ancilla fan-out measurement block
/// under noise, and measure the system immediately after.
InvasivenessRecord invasiveness_test(const std::string& prepared_state, const NoiseParams& noise,
                                     const GateDurations& durations, bool serial_ancilla = false,
                                     long shots = 0, std::uint64_t seed = 0);

double clumsy_bound(const std::vector<InvasivenessRecord>& records);

enum class Verdict { NonMacrorealistic, CompatibleWithClumsyMacrorealism };
Verdict classify_witness(double w, double bound);
std::string verdict_string(Verdict verdict);

DisconnectivityReport disconnectivity(const DensityMatrix& state, double eta = 0.5,
                                      PartitionStrategy strategy = PartitionStrategy::Prefix);

/// Maximum quantum witness for a d-dimensional intermediate measurement.
double w_max(int d);

/// Lower bound on the discriminated dimension: floor(1 / (1 - w)).
int dimension_estimate(double w);

SampleResult sample_counts(const Distribution& dist, long shots, std::uint64_t seed);

/// Deterministic per-run seed derivation from a root seed.
std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream);

}  // namespace macrowitness
