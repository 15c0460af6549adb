// End-to-end acceptance gate. Each numbered check prints exactly one
// PASS/FAIL line; the exit code is the number of failed checks.

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "macrowitness/protocols.hpp"

using namespace macrowitness;

namespace {

const std::vector<double> kThetaGrid = {0.0, M_PI / 8, M_PI / 4, 3 * M_PI / 8, M_PI / 2};
const NoiseParams kNoiseless = NoiseParams::disabled_params();
const GateDurations kDurations{};

int g_failures = 0;

void report(int number, const std::string& description, bool passed,
            const std::string& detail = "") {
    std::printf("criterion %2d: %s — %s%s%s\n", number, passed ? "PASS" : "FAIL",
                description.c_str(), detail.empty() ? "" : "; ", detail.c_str());
    std::fflush(stdout);
    if (!passed) ++g_failures;
}

Circuit empty_prep(int n) { return Circuit(n, "idle"); }

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.entries() - b.entries());
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

void criterion_1() {
    bool ok = true;
    char detail[128] = "";
    for (int n : {2, 3, 4, 5, 6}) {
        for (double theta : kThetaGrid) {
            WitnessResult result = run_witness(cat_preparation_circuit(n, theta), kNoiseless,
                                               kDurations, Scenario::Direct);
            const double err = std::abs(result.w - analytic_cat_witness(theta));
            if (err > 1e-10) {
                ok = false;
                std::snprintf(detail, sizeof(detail), "n=%d theta=%.3f err=%.2e", n, theta, err);
            }
        }
    }
    report(1, "noiseless cat witness matches the analytic curve", ok, detail);
}

void criterion_2() {
    bool ok = true;
    char detail[128] = "";
    for (int n : {2, 3, 4, 6}) {
        WitnessResult result = run_witness(product_preparation_circuit(n), kNoiseless,
                                           kDurations, Scenario::Direct);
        const double expected = 1.0 - std::pow(2.0, -n);
        if (std::abs(result.w - expected) > 1e-10) {
            ok = false;
            std::snprintf(detail, sizeof(detail), "n=%d W=%.12f expected %.12f", n, result.w,
                          expected);
        }
    }
    report(2, "noiseless product witness reaches 1 - 2^-n", ok, detail);
}

void criterion_3() {
    const std::vector<std::pair<double, int>> cases = {
        {0.746, 3}, {0.857, 6}, {0.902, 10}, {0.940, 16}};
    bool ok = true;
    char detail[128] = "";
    for (const auto& [w, d] : cases) {
        if (dimension_estimate(w) != d) {
            ok = false;
            std::snprintf(detail, sizeof(detail), "W=%.3f gave %d, expected %d", w,
                          dimension_estimate(w), d);
        }
    }
    report(3, "dimension estimates for the reference witness values", ok, detail);
}

void criterion_4() {
    const double i1 = invasiveness_test("0", NoiseParams{}, kDurations).invasiveness;
    const double i2 = invasiveness_test("00", NoiseParams{}, kDurations).invasiveness;
    const bool ok = std::abs(i1 - 0.031) <= 0.010 && std::abs(i2 - 0.061) <= 0.015;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "I(0)=%.4f (0.031±0.010), I(00)=%.4f (0.061±0.015)",
                  i1, i2);
    report(4, "invasiveness of the idle readout at the fitted noise point", ok, detail);
}

void criterion_5() {
    std::vector<double> w;
    for (double theta : kThetaGrid) {
        w.push_back(run_witness(cat_preparation_circuit(2, theta), NoiseParams{}, kDurations,
                                Scenario::Direct)
                        .w);
    }
    bool monotone = true;
    for (std::size_t k = 1; k < w.size(); ++k) monotone &= w[k] > w[k - 1];
    const bool ok = monotone && w.front() > 0.0 && std::abs(w.front() - 0.058) <= 0.03 &&
                    std::abs(w.back() - 0.453) <= 0.05;
    char detail[128];
    std::snprintf(detail, sizeof(detail), "W(0)=%.4f, W(pi/2)=%.4f, monotone=%s", w.front(),
                  w.back(), monotone ? "yes" : "no");
    report(5, "noisy two-qubit witness curve", ok, detail);
}

void criterion_6() {
    bool ok = true;
    char detail[128] = "";
    for (int n : {1, 2, 4}) {
        const double w = run_witness(empty_prep(n), NoiseParams{}, kDurations, Scenario::Direct).w;
        const double inv =
            invasiveness_test(std::string(n, '0'), NoiseParams{}, kDurations).invasiveness;
        if (std::abs(w - inv) > 1e-9) {
            ok = false;
            std::snprintf(detail, sizeof(detail), "n=%d |W-I|=%.2e", n, std::abs(w - inv));
        }
    }
    report(6, "zero-angle witness reproduces the invasiveness calibration", ok, detail);
}

void criterion_7() {
    std::vector<NoiseParams> sets(3);
    sets[1].gamma_errors = 0.0;
    sets[2].t1 = 100.0;
    sets[2].t2 = 60.0;
    sets[2].gamma_errors = 0.02;

    bool ok = true;
    char detail[128] = "";
    for (const NoiseParams& params : sets) {
        for (int n : {1, 2}) {
            std::vector<int> all(n);
            for (int q = 0; q < n; ++q) all[q] = q;
            // a coherent, correlated start: an n-qubit cat at pi/3
            DensityMatrix start =
                simulate_circuit(n == 1 ? empty_prep(1) : cat_preparation_circuit(n, M_PI / 3),
                                 kNoiseless, kDurations);
            if (n == 1) {
                start = apply_local_unitary(start, hadamard(), {0});
            }
            for (double t : {0.1, 0.4, 1.0, 5.0}) {
                DensityMatrix fast =
                    apply_idle_noise(start, idle_channel(params, t), QubitSubset(all));
                DensityMatrix slow = brute_force_evolve(start, params, t);
                const double dist = trace_distance(fast, slow);
                if (dist > 1e-8) {
                    ok = false;
                    std::snprintf(detail, sizeof(detail), "n=%d t=%.1f dist=%.2e", n, t, dist);
                }
            }
        }
    }
    report(7, "matrix-exponential channel matches the integrated master equation", ok, detail);
}

void criterion_8() {
    bool ok = true;
    char detail[128] = "";
    for (int n = 2; n <= 6; ++n) {
        DensityMatrix ghz =
            simulate_circuit(cat_preparation_circuit(n, M_PI / 2), kNoiseless, kDurations);
        const int gamma = disconnectivity(ghz).gamma;
        if (gamma != n) {
            ok = false;
            std::snprintf(detail, sizeof(detail), "GHZ_%d gave Gamma=%d", n, gamma);
        }
    }
    for (int n : {2, 4}) {
        DensityMatrix plus =
            simulate_circuit(product_preparation_circuit(n), kNoiseless, kDurations);
        if (disconnectivity(plus).gamma != 1) {
            ok = false;
            std::snprintf(detail, sizeof(detail), "plus^%d gave Gamma!=1", n);
        }
    }
    Matrix mix = Matrix::Zero(4, 4);
    mix(0, 0) = 0.5;
    mix(3, 3) = 0.5;
    const double delta2 = disconnectivity(DensityMatrix(2, mix)).deltas.at(2);
    if (std::abs(delta2 - 0.5) > 1e-10) {
        ok = false;
        std::snprintf(detail, sizeof(detail), "classical mixture delta_2=%.12f", delta2);
    }
    report(8, "disconnectivity of cat, product and classical-mixture states", ok, detail);
}

void criterion_9() {
    bool noiseless_ok = true;
    for (double theta : kThetaGrid) {
        Circuit prep = cat_preparation_circuit(2, theta);
        const double dm = run_witness(prep, kNoiseless, kDurations, Scenario::Direct).w;
        const double pm = run_witness(prep, kNoiseless, kDurations, Scenario::PrepareMeasure).w;
        noiseless_ok &= std::abs(dm - pm) <= 1e-10;
    }

    bool noisy_ok = true;
    double worst_gap = 0.0;
    for (double theta : kThetaGrid) {
        Circuit prep = cat_preparation_circuit(2, theta);
        const double dm = run_witness(prep, NoiseParams{}, kDurations, Scenario::Direct).w;
        const double pm = run_witness(prep, NoiseParams{}, kDurations,
                                      Scenario::PrepareMeasure).w;
        worst_gap = std::min(worst_gap, pm - dm);
        noisy_ok &= pm >= dm - 0.01;
    }
    {
        Circuit prep = cat_preparation_circuit(4, M_PI / 2);
        const double dm = run_witness(prep, NoiseParams{}, kDurations, Scenario::Direct).w;
        const double pm = run_witness(prep, NoiseParams{}, kDurations,
                                      Scenario::PrepareMeasure).w;
        worst_gap = std::min(worst_gap, pm - dm);
        noisy_ok &= pm >= dm - 0.01;
    }

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "noiseless agreement %s; noisy worst W_PM-W_DM=%.4f (needs >= -0.01)",
                  noiseless_ok ? "holds" : "broken", worst_gap);
    report(9, "prepare-and-measure versus direct-measure equivalence", noiseless_ok && noisy_ok,
           detail);
}

void criterion_10() {
    const Circuit prep = cat_preparation_circuit(2, M_PI / 2);
    const double exact = run_witness(prep, NoiseParams{}, kDurations, Scenario::Direct).w;

    int within = 0;
    bool sigma_ok = true;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        WitnessResult sampled = run_witness(prep, NoiseParams{}, kDurations, Scenario::Direct,
                                            false, "", 8192, seed);
        if (std::abs(sampled.w - exact) <= 3.0 * sampled.sigma) ++within;
        const std::size_t j = index_of_bitstring("00");
        const double pb = sampled.p_blind.p[j];
        const double pm = sampled.p_with_measurement.p[j];
        const double expected = std::sqrt(pb * (1 - pb) / 8192 + pm * (1 - pm) / 8192);
        sigma_ok &= std::abs(sampled.sigma - expected) <= 1e-12;
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d/100 seeds within 3 sigma (needs >= 95), sigma %s",
                  within, sigma_ok ? "exact" : "wrong");
    report(10, "sampled witness statistics", within >= 95 && sigma_ok, detail);
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (g_failures) std::printf("%d criterion(s) failed\n", g_failures);
    return g_failures == 0 ? 0 : 1;
}
