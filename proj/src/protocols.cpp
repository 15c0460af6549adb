#include "macrowitness/protocols.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace macrowitness {

namespace {

constexpr double kBranchPrune = 1e-14;

QubitSubset all_qubits(int n) {
    std::vector<int> v(n);
    for (int q = 0; q < n; ++q) v[q] = q;
    return QubitSubset(std::move(v));
}

void apply_moment_gates(DensityMatrix& rho, const Moment& moment) {
    for (const Gate& gate : moment.gates) {
        if (gate.kind == GateKind::Measure) {
            throw std::logic_error("measurement gate reached the unitary evolution path");
        }
        rho = apply_local_unitary(rho, gate.to_operator(), QubitSubset(gate.qubits));
    }
}

DensityMatrix evolve_moments(DensityMatrix rho, const std::vector<Moment>& moments,
                             std::size_t first, std::size_t last, ChannelCache* cache) {
    const QubitSubset everything = all_qubits(rho.n_qubits());
    for (std::size_t m = first; m < last; ++m) {
        apply_moment_gates(rho, moments[m]);
        if (cache && moments[m].duration > 0) {
            rho = apply_idle_noise(rho, cache->channel_for(moments[m].duration), everything);
        }
    }
    return rho;
}

Distribution diagonal_distribution(const DensityMatrix& rho) {
    Distribution dist(rho.n_qubits());
    dist.p = rho.diagonal_probabilities();
    return dist;
}

// Locates the single ancilla-readout Measure in the scheduled moments.
std::pair<std::size_t, Moment> split_measure(std::vector<Moment>& moments) {
    for (std::size_t m = 0; m < moments.size(); ++m) {
        for (std::size_t g = 0; g < moments[m].gates.size(); ++g) {
            if (moments[m].gates[g].kind == GateKind::Measure) {
                Moment measure_moment = moments[m];
                moments[m].gates.erase(moments[m].gates.begin() + g);
                return {m, measure_moment};
            }
        }
    }
    throw std::logic_error("no measurement gate in scheduled circuit");
}

MeasuredRunResult combine_branches(int n, const Distribution& p_t1,
                                   const std::vector<std::pair<std::string, Distribution>>& conds,
                                   double covered_weight) {
    MeasuredRunResult result;
    result.p_t1 = p_t1;
    result.p_m_t2 = Distribution(n);
    result.conditionals = conds;
    result.covered_weight = covered_weight;
    result.complete = covered_weight > 1.0 - 1e-9;
    for (const auto& [i, cond] : conds) {
        const double pi = p_t1.at(i);
        for (std::size_t j = 0; j < cond.p.size(); ++j) {
            if (cond.p[j] == 0.0) continue;
            result.p_m_t2.p[j] += pi * cond.p[j];
            result.joint[{i, cond.label(j)}] = pi * cond.p[j];
        }
    }
    return result;
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

}  // namespace

double Distribution::at(const std::string& outcome) const {
    if (static_cast<int>(outcome.size()) != n_qubits) {
        throw std::invalid_argument("outcome '" + outcome + "' does not match register size");
    }
    return p[index_of_bitstring(outcome)];
}

double Distribution::sum() const {
    double s = 0.0;
    for (double v : p) s += v;
    return s;
}

DensityMatrix simulate_circuit(const Circuit& circuit, const NoiseParams& noise,
                               const GateDurations& durations) {
    return simulate_circuit_from(DensityMatrix::basis_state(circuit.n_qubits, 0), circuit, noise,
                                 durations);
}

DensityMatrix simulate_circuit_from(DensityMatrix rho, const Circuit& circuit,
                                    const NoiseParams& noise, const GateDurations& durations) {
    if (circuit.has_measure()) {
        throw std::invalid_argument("simulate_circuit handles measurement-free circuits only");
    }
    if (rho.n_qubits() != circuit.n_qubits) {
        throw std::invalid_argument("state size does not match circuit register");
    }
    std::vector<Moment> moments = schedule(circuit, durations);
    std::optional<ChannelCache> cache;
    if (noise.enabled) cache.emplace(noise);
    return evolve_moments(std::move(rho), moments, 0, moments.size(),
                          cache ? &*cache : nullptr);
}

Distribution run_blind(const Circuit& prep, const NoiseParams& noise,
                       const GateDurations& durations) {
    if (prep.has_measure()) {
        throw std::invalid_argument("run_blind: preparation must not contain measurements");
    }
    Circuit full(prep.n_qubits, prep.name + "_blind");
    for (const Gate& g : prep.gates) full.append(g);
    full.append(Gate::make_barrier());
    for (const Gate& g : inverse_circuit(prep).gates) full.append(g);
    return diagonal_distribution(simulate_circuit(full, noise, durations));
}

MeasuredRunResult run_direct_measure(const Circuit& prep, const NoiseParams& noise,
                                     const GateDurations& durations, bool serial_ancilla) {
    if (prep.has_measure()) {
        throw std::invalid_argument("run_direct_measure: preparation must not contain measurements");
    }
    const int n = prep.n_qubits;
    check_capacity(2 * n, "run_direct_measure");

    std::vector<int> system_idx(n), ancilla_idx(n);
    for (int k = 0; k < n; ++k) {
        system_idx[k] = k;
        ancilla_idx[k] = n + k;
    }
    const QubitSubset system(system_idx);
    const QubitSubset ancillas(ancilla_idx);

    Circuit staged(2 * n, prep.name + "_direct");
    for (const Gate& g : prep.gates) staged.append(g);
    staged.append(Gate::make_barrier());
    Circuit with_measurement = attach_ancilla_measurement(staged, system, ancillas, serial_ancilla);
    with_measurement.append(Gate::make_barrier());
    for (const Gate& g : inverse_circuit(prep).gates) with_measurement.append(g);

    std::vector<Moment> moments = schedule(with_measurement, durations);
    auto [measure_slot, measure_moment] = split_measure(moments);

    std::optional<ChannelCache> cache;
    if (noise.enabled) cache.emplace(noise);
    ChannelCache* cache_ptr = cache ? &*cache : nullptr;

    // Full-register evolution up to and including the gates scheduled beside
    // the readout; then Born branching with the ancillas traced out.
    DensityMatrix rho = evolve_moments(DensityMatrix::basis_state(2 * n, 0), moments, 0,
                                       measure_slot, cache_ptr);
    apply_moment_gates(rho, moments[measure_slot]);
    std::vector<ReducedBranch> branches = measure_and_trace_out(rho, ancillas, kBranchPrune);
    rho = DensityMatrix::basis_state(0, 0);  // release the large buffer

    Distribution p_t1(n);
    std::vector<std::pair<std::string, Distribution>> conds;
    const QubitSubset system_all = all_qubits(n);
    for (ReducedBranch& branch : branches) {
        p_t1.p[index_of_bitstring(branch.label)] = branch.probability;
        DensityMatrix state = std::move(branch.state);
        if (cache_ptr && measure_moment.duration > 0) {
            state = apply_idle_noise(state, cache_ptr->channel_for(measure_moment.duration),
                                     system_all);
        }
        // Remaining moments act on system qubits only, whose indices survive
        // the ancilla trace-out unchanged.
        state = evolve_moments(std::move(state), moments, measure_slot + 1, moments.size(),
                               cache_ptr);
        conds.emplace_back(branch.label, diagonal_distribution(state));
    }
    return combine_branches(n, p_t1, conds, p_t1.sum());
}

MeasuredRunResult run_prepare_and_measure(const Circuit& prep, const NoiseParams& noise,
                                          const GateDurations& durations, double prune_floor) {
    if (prep.has_measure()) {
        throw std::invalid_argument(
            "run_prepare_and_measure: preparation must not contain measurements");
    }
    const int n = prep.n_qubits;
    Distribution p_t1 = diagonal_distribution(simulate_circuit(prep, noise, durations));

    const Circuit inverse = inverse_circuit(prep);
    std::vector<std::pair<std::string, Distribution>> conds;
    double covered = 0.0;
    for (std::size_t i = 0; i < p_t1.p.size(); ++i) {
        if (p_t1.p[i] < prune_floor) continue;
        covered += p_t1.p[i];
        DensityMatrix rho = simulate_circuit_from(DensityMatrix::basis_state(n, i), inverse,
                                                  noise, durations);
        conds.emplace_back(p_t1.label(i), diagonal_distribution(rho));
    }
    return combine_branches(n, p_t1, conds, covered);
}

WitnessResult quantum_witness(const Distribution& p_blind, const Distribution& p_with_measurement,
                              const std::string& target_outcome) {
    if (p_blind.n_qubits != p_with_measurement.n_qubits) {
        throw std::invalid_argument("witness distributions span different outcome spaces");
    }
    WitnessResult result;
    result.p_blind = p_blind;
    result.p_with_measurement = p_with_measurement;
    result.target_outcome = target_outcome;
    result.w = std::abs(p_blind.at(target_outcome) - p_with_measurement.at(target_outcome));
    return result;
}

WitnessResult run_witness(const Circuit& prep, const NoiseParams& noise,
                          const GateDurations& durations, Scenario scenario, bool serial_ancilla,
                          std::string target_outcome, long shots, std::uint64_t seed) {
    const int n = prep.n_qubits;
    if (target_outcome.empty()) target_outcome.assign(n, '0');

    Distribution p_blind = run_blind(prep, noise, durations);
    MeasuredRunResult measured = scenario == Scenario::Direct
                                     ? run_direct_measure(prep, noise, durations, serial_ancilla)
                                     : run_prepare_and_measure(prep, noise, durations);

    WitnessResult result = quantum_witness(p_blind, measured.p_m_t2, target_outcome);
    result.joint = measured.joint;
    if (shots > 0) {
        SampleResult blind_sample = sample_counts(p_blind, shots, derive_seed(seed, 1));
        SampleResult meas_sample = sample_counts(measured.p_m_t2, shots, derive_seed(seed, 2));
        result.p_blind = blind_sample.empirical;
        result.p_with_measurement = meas_sample.empirical;
        result.w = std::abs(blind_sample.empirical.at(target_outcome) -
                            meas_sample.empirical.at(target_outcome));
        const std::size_t j = index_of_bitstring(target_outcome);
        result.sigma = std::hypot(blind_sample.sigma[j], meas_sample.sigma[j]);
        result.shots = shots;
    }
    return result;
}

double analytic_cat_witness(double theta) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    return 1.0 - c * c * c * c - s * s * s * s;
}

InvasivenessRecord invasiveness_test(const std::string& prepared_state, const NoiseParams& noise,
                                     const GateDurations& durations, bool serial_ancilla,
                                     long shots, std::uint64_t seed) {
    const int n = static_cast<int>(prepared_state.size());
    if (n < 1) throw std::invalid_argument("invasiveness_test: empty preparation label");
    check_capacity(2 * n, "invasiveness_test");

    std::vector<int> system_idx(n), ancilla_idx(n);
    for (int k = 0; k < n; ++k) {
        system_idx[k] = k;
        ancilla_idx[k] = n + k;
    }
    Circuit block = attach_ancilla_measurement(Circuit(2 * n, "invasiveness"),
                                               QubitSubset(system_idx), QubitSubset(ancilla_idx),
                                               serial_ancilla);

    std::vector<Moment> moments = schedule(block, durations);
    auto [measure_slot, measure_moment] = split_measure(moments);

    std::optional<ChannelCache> cache;
    if (noise.enabled) cache.emplace(noise);
    ChannelCache* cache_ptr = cache ? &*cache : nullptr;

    const std::size_t prepared_index = index_of_bitstring(prepared_state) << n;  // ancillas |0..0>
    DensityMatrix rho = evolve_moments(DensityMatrix::basis_state(2 * n, prepared_index), moments,
                                       0, measure_slot, cache_ptr);
    apply_moment_gates(rho, moments[measure_slot]);
    if (cache_ptr && measure_moment.duration > 0) {
        rho = apply_idle_noise(rho, cache_ptr->channel_for(measure_moment.duration),
                               all_qubits(2 * n));
    }

    // System read out immediately after the measurement block; the ancilla
    // outcome is summed over so the survival probability is a marginal.
    Distribution system_dist(n);
    for (const ReducedBranch& branch : measure_and_trace_out(rho, QubitSubset(ancilla_idx),
                                                             kBranchPrune)) {
        const std::vector<double> diag = branch.state.diagonal_probabilities();
        for (std::size_t j = 0; j < diag.size(); ++j) {
            system_dist.p[j] += branch.probability * diag[j];
        }
    }

    InvasivenessRecord record;
    record.prepared_state = prepared_state;
    if (shots > 0) {
        SampleResult sample = sample_counts(system_dist, shots, derive_seed(seed, 3));
        record.epsilon_ii = sample.empirical.at(prepared_state);
        record.sigma = sample.sigma[index_of_bitstring(prepared_state)];
    } else {
        record.epsilon_ii = system_dist.at(prepared_state);
    }
    record.invasiveness = std::abs(1.0 - record.epsilon_ii);
    return record;
}

double clumsy_bound(const std::vector<InvasivenessRecord>& records) {
    if (records.empty()) throw std::invalid_argument("clumsy_bound: empty record list");
    double bound = 0.0;
    for (const InvasivenessRecord& r : records) bound = std::max(bound, r.invasiveness);
    return bound;
}

Verdict classify_witness(double w, double bound) {
    return w > bound ? Verdict::NonMacrorealistic : Verdict::CompatibleWithClumsyMacrorealism;
}

std::string verdict_string(Verdict verdict) {
    return verdict == Verdict::NonMacrorealistic ? "non-macrorealistic"
                                                 : "compatible with clumsy-macrorealism";
}

namespace {

double subset_entropy(const DensityMatrix& state, const std::vector<int>& qubits,
                      std::map<std::uint64_t, double>& memo) {
    std::uint64_t key = 0;
    for (int q : qubits) key |= std::uint64_t{1} << q;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    const double s = von_neumann_entropy(partial_trace(state, QubitSubset(qubits)));
    memo.emplace(key, s);
    return s;
}

std::vector<int> prefix(int count) {
    std::vector<int> v(count);
    for (int q = 0; q < count; ++q) v[q] = q;
    return v;
}

double delta_for_subset(const DensityMatrix& state, const std::vector<int>& subset,
                        bool exhaustive, std::map<std::uint64_t, double>& memo) {
    const int size = static_cast<int>(subset.size());
    const double numerator = subset_entropy(state, subset, memo);
    double denominator = std::numeric_limits<double>::infinity();
    if (exhaustive) {
        // min over all bipartitions of the subset
        for (std::uint32_t pick = 1; pick + 1 < (1u << size); ++pick) {
            std::vector<int> left, right;
            for (int k = 0; k < size; ++k) {
                ((pick >> k) & 1u ? left : right).push_back(subset[k]);
            }
            denominator = std::min(denominator, subset_entropy(state, left, memo) +
                                                    subset_entropy(state, right, memo));
        }
    } else {
        for (int m = 1; m < size; ++m) {
            std::vector<int> left(subset.begin(), subset.begin() + m);
            std::vector<int> right(subset.begin() + m, subset.end());
            denominator = std::min(denominator, subset_entropy(state, left, memo) +
                                                    subset_entropy(state, right, memo));
        }
    }
    if (numerator < 1e-12 && denominator < 1e-12) return 1.0;  // 0/0 convention
    if (denominator < 1e-12) return std::numeric_limits<double>::infinity();
    return numerator / denominator;
}

}  // namespace

DisconnectivityReport disconnectivity(const DensityMatrix& state, double eta,
                                      PartitionStrategy strategy) {
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
    const int n = state.n_qubits();
    if (strategy == PartitionStrategy::Exhaustive && n > 8) {
        throw capacity_error("exhaustive disconnectivity limited to 8 qubits");
    }
    DisconnectivityReport report;
    report.eta = eta;
    report.partition_strategy = strategy;
    report.deltas[1] = 0.0;  // by definition

    std::map<std::uint64_t, double> memo;
    for (int size = 2; size <= n; ++size) {
        double delta;
        if (strategy == PartitionStrategy::Prefix) {
            delta = delta_for_subset(state, prefix(size), false, memo);
        } else {
            // best n'-qubit witness of global entanglement: minimum over subsets
            delta = std::numeric_limits<double>::infinity();
            std::vector<int> subset(size);
            std::vector<bool> mask(n, false);
            std::fill(mask.begin(), mask.begin() + size, true);
            do {
                int k = 0;
                for (int q = 0; q < n; ++q) {
                    if (mask[q]) subset[k++] = q;
                }
                delta = std::min(delta, delta_for_subset(state, subset, true, memo));
            } while (std::prev_permutation(mask.begin(), mask.end()));
        }
        report.deltas[size] = delta;
    }
    report.gamma = 1;
    for (int size = 2; size <= n; ++size) {
        if (report.deltas[size] < eta) report.gamma = std::max(report.gamma, size);
    }
    return report;
}

double w_max(int d) {
    if (d < 1) throw std::invalid_argument("w_max requires d >= 1");
    return 1.0 - 1.0 / d;
}

int dimension_estimate(double w) {
    if (w < 0.0 || w >= 1.0) throw std::invalid_argument("dimension_estimate requires w in [0, 1)");
    return static_cast<int>(std::floor(1.0 / (1.0 - w) + 1e-12));
}

SampleResult sample_counts(const Distribution& dist, long shots, std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("sample_counts requires shots >= 1");
    if (std::abs(dist.sum() - 1.0) > 1e-9) {
        throw std::invalid_argument("sample_counts: distribution does not sum to one");
    }
    std::mt19937_64 rng(seed);
    SampleResult result;
    result.counts.assign(dist.p.size(), 0);
    result.empirical = Distribution(dist.n_qubits);
    result.sigma.assign(dist.p.size(), 0.0);

    long remaining = shots;
    double remaining_p = 1.0;
    for (std::size_t k = 0; k < dist.p.size() && remaining > 0; ++k) {
        double conditional = remaining_p > 0 ? std::clamp(dist.p[k] / remaining_p, 0.0, 1.0) : 0.0;
        long draw;
        if (k + 1 == dist.p.size() || conditional >= 1.0) {
            draw = remaining;
        } else if (conditional <= 0.0) {
            draw = 0;
        } else {
            draw = std::binomial_distribution<long>(remaining, conditional)(rng);
        }
        result.counts[k] = draw;
        remaining -= draw;
        remaining_p -= dist.p[k];
    }
    for (std::size_t k = 0; k < dist.p.size(); ++k) {
        const double p_hat = static_cast<double>(result.counts[k]) / shots;
        result.empirical.p[k] = p_hat;
        result.sigma[k] = std::sqrt(p_hat * (1.0 - p_hat) / shots);
    }
    return result;
}

std::uint64_t derive_seed(std::uint64_t root, std::uint64_t stream) {
    return splitmix64(root ^ splitmix64(stream));
}

}  // namespace macrowitness
