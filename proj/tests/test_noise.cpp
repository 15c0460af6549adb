#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "macrowitness/noise.hpp"
#include "oracles.hpp"

using namespace macrowitness;

namespace {

const std::vector<NoiseParams> kParamSets = [] {
    NoiseParams fitted;  // defaults
    NoiseParams no_excitation;
    no_excitation.gamma_errors = 0.0;
    NoiseParams slow;
    slow.t1 = 120.0;
    slow.t2 = 80.0;
    slow.gamma_errors = 0.01;
    return std::vector<NoiseParams>{fitted, no_excitation, slow};
}();

}  // namespace

TEST_CASE("derived rates arithmetic") {
    DerivedRates rates = derived_rates(NoiseParams{});
    CHECK(rates.gamma_t1 == doctest::Approx(1.0 / 46.0).epsilon(1e-12));
    CHECK(rates.gamma_t2 ==
          doctest::Approx((1.0 / 13.5 - 1.0 / 92.0) / 2.0).epsilon(1e-12));
}

TEST_CASE("parameter validation") {
    NoiseParams bad;
    bad.t2 = 2.1 * bad.t1;  // T2 can exceed neither 2 T1 nor physics
    CHECK_THROWS(bad.validate());
    bad = NoiseParams{};
    bad.t1 = 0.0;
    CHECK_THROWS(bad.validate());
    bad = NoiseParams{};
    bad.gamma_errors = -0.1;
    CHECK_THROWS(bad.validate());
}

TEST_CASE("idle channels are CPTP across parameters and durations") {
    for (const NoiseParams& params : kParamSets) {
        for (double t : {0.0, 0.1, 0.4, 1.0, 5.0}) {
            CHECK(is_cptp(idle_channel(params, t)));
        }
    }
}

TEST_CASE("zero duration and disabled noise are the identity") {
    CHECK((idle_channel(NoiseParams{}, 0.0).superoperator - Eigen::Matrix4cd::Identity())
              .norm() < 1e-14);
    DensityMatrix plus = DensityMatrix::from_statevector(
        1, (Eigen::VectorXcd(2) << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished());
    DensityMatrix unchanged =
        apply_idle_noise(plus, idle_channel(NoiseParams::disabled_params(), 3.0), {0});
    CHECK((unchanged.entries() - plus.entries()).norm() < 1e-14);
}

TEST_CASE("semigroup property of the idle channel") {
    for (const NoiseParams& params : kParamSets) {
        Eigen::Matrix4cd a = idle_channel(params, 0.3).superoperator;
        Eigen::Matrix4cd b = idle_channel(params, 0.5).superoperator;
        Eigen::Matrix4cd ab = idle_channel(params, 0.8).superoperator;
        CHECK((a * b - ab).norm() < 1e-11);
    }
}

TEST_CASE("pure relaxation follows exp(-t/T1)") {
    NoiseParams params;
    params.gamma_errors = 0.0;
    DensityMatrix excited = DensityMatrix::basis_state("1");
    for (double t : {0.5, 2.0, 10.0}) {
        DensityMatrix rho = apply_idle_noise(excited, idle_channel(params, t), {0});
        CHECK(rho.diagonal_probabilities()[1] ==
              doctest::Approx(std::exp(-t / params.t1)).epsilon(1e-10));
    }
}

TEST_CASE("coherence decays as exp(-t/T2)") {
    NoiseParams params;
    params.gamma_errors = 0.0;
    DensityMatrix plus = DensityMatrix::from_statevector(
        1, (Eigen::VectorXcd(2) << 1 / std::sqrt(2.0), 1 / std::sqrt(2.0)).finished());
    for (double t : {0.5, 2.0, 10.0}) {
        DensityMatrix rho = apply_idle_noise(plus, idle_channel(params, t), {0});
        CHECK(std::abs(rho.entries()(0, 1)) ==
              doctest::Approx(0.5 * std::exp(-t / params.t2)).epsilon(1e-10));
    }
}

TEST_CASE("excitation term raises the ground state") {
    DensityMatrix ground = DensityMatrix::basis_state("0");
    DensityMatrix rho = apply_idle_noise(ground, idle_channel(NoiseParams{}, 1.0), {0});
    CHECK(rho.diagonal_probabilities()[1] > 0.0);
    rho.validate();
}

TEST_CASE("per-qubit channel matches the integrated Lindblad equation") {
    std::mt19937_64 rng(17);
    for (const NoiseParams& params : kParamSets) {
        for (int n : {1, 2}) {
            DensityMatrix start(n, oracles::random_density(n, rng));
            for (double t : {0.1, 0.4, 1.0}) {
                std::vector<int> all(n);
                for (int q = 0; q < n; ++q) all[q] = q;
                DensityMatrix fast =
                    apply_idle_noise(start, idle_channel(params, t), QubitSubset(all));
                DensityMatrix slow = brute_force_evolve(start, params, t);
                Eigen::MatrixXcd diff = fast.entries() - slow.entries();
                Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(diff);
                CHECK(0.5 * solver.eigenvalues().cwiseAbs().sum() < 1e-8);
            }
        }
    }
}

TEST_CASE("channel cache returns identical operators for repeated durations") {
    ChannelCache cache(NoiseParams{});
    const IdleChannel& a = cache.channel_for(0.4);
    const IdleChannel& b = cache.channel_for(0.4);
    CHECK(&a == &b);
    CHECK(cache.channel_for(0.1).duration == doctest::Approx(0.1));
}
