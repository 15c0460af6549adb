#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "macrowitness/circuits.hpp"
#include "oracles.hpp"

using namespace macrowitness;

TEST_CASE("cat preparation makes cos|0..0> + sin|1..1>") {
    for (int n : {2, 3, 5}) {
        const double theta = 0.9;
        Eigen::VectorXcd psi = oracles::statevector(cat_preparation_circuit(n, theta));
        CHECK(std::abs(psi(0) - Complex(std::cos(theta / 2))) < 1e-12);
        CHECK(std::abs(psi(psi.size() - 1) - Complex(std::sin(theta / 2))) < 1e-12);
        CHECK(psi.segment(1, psi.size() - 2).norm() < 1e-12);
    }
    CHECK_THROWS(cat_preparation_circuit(1, 0.5));
}

TEST_CASE("product preparation is the uniform superposition") {
    Eigen::VectorXcd psi = oracles::statevector(product_preparation_circuit(3));
    for (int i = 0; i < 8; ++i) {
        CHECK(std::abs(psi(i) - Complex(1.0 / std::sqrt(8.0))) < 1e-12);
    }
}

TEST_CASE("inverse circuit undoes the preparation") {
    Circuit prep = cat_preparation_circuit(3, 1.234);
    Circuit round_trip(3, "round_trip");
    for (const Gate& g : prep.gates) round_trip.append(g);
    for (const Gate& g : inverse_circuit(prep).gates) round_trip.append(g);
    Eigen::VectorXcd psi = oracles::statevector(round_trip);
    CHECK(std::abs(psi(0) - Complex(1.0)) < 1e-12);

    // u3 inversion identity on the raw matrices
    Matrix u = u3(0.3, -0.7, 1.9).entries();
    Matrix v = u3(0.7, -0.3, -1.9).entries();
    CHECK((v * u - Matrix::Identity(2, 2)).norm() < 1e-12);

    Circuit measured(1, "m");
    measured.append(Gate::make_measure({0}, "c"));
    CHECK_THROWS(inverse_circuit(measured));
}

TEST_CASE("append validation") {
    Circuit c(2, "guard");
    CHECK_THROWS(c.append(Gate::make_h(2)));
    c.append(Gate::make_measure({0}, "c"));
    CHECK_THROWS(c.append(Gate::make_measure({0}, "d")));  // one readout per qubit
}

TEST_CASE("greedy scheduling packs disjoint gates and honours barriers") {
    GateDurations durations;
    Circuit c(3, "sched");
    c.append(Gate::make_h(0));
    c.append(Gate::make_h(1));          // packs beside the first H
    c.append(Gate::make_cnot(1, 2));    // waits for qubit 1
    c.append(Gate::make_barrier());
    c.append(Gate::make_h(0));          // pushed past the barrier

    auto moments = schedule(c, durations);
    REQUIRE(moments.size() == 3);
    CHECK(moments[0].gates.size() == 2);
    CHECK(moments[0].duration == doctest::Approx(0.1));
    CHECK(moments[1].duration == doctest::Approx(0.4));
    CHECK(moments[2].gates.size() == 1);
    CHECK(total_duration(moments) == doctest::Approx(0.6));
}

TEST_CASE("blind cat schedule duration with defaults") {
    // u3 + cnot + cnot + u3 with a barrier in the middle: 0.1+0.4+0.4+0.1
    GateDurations durations;
    Circuit prep = cat_preparation_circuit(2, M_PI / 2);
    Circuit blind(2, "blind");
    for (const Gate& g : prep.gates) blind.append(g);
    blind.append(Gate::make_barrier());
    for (const Gate& g : inverse_circuit(prep).gates) blind.append(g);
    CHECK(total_duration(schedule(blind, durations)) == doctest::Approx(1.0));
}

TEST_CASE("ancilla fan-out packs into one moment unless serialized") {
    GateDurations durations;
    Circuit base(4, "base");
    base.append(Gate::make_barrier());
    Circuit parallel = attach_ancilla_measurement(base, {0, 1}, {2, 3}, false);
    auto moments = schedule(parallel, durations);
    // one moment with both CNOTs, one with the readout
    std::size_t cnot_moments = 0;
    for (const auto& moment : moments) {
        if (!moment.gates.empty() && moment.gates[0].kind == GateKind::CNOT) ++cnot_moments;
    }
    CHECK(cnot_moments == 1);

    Circuit serial = attach_ancilla_measurement(base, {0, 1}, {2, 3}, true);
    auto serial_moments = schedule(serial, durations);
    cnot_moments = 0;
    for (const auto& moment : serial_moments) {
        if (!moment.gates.empty() && moment.gates[0].kind == GateKind::CNOT) ++cnot_moments;
    }
    CHECK(cnot_moments == 2);
}

TEST_CASE("gate duration validation") {
    GateDurations durations;
    durations.cnot_time = -1.0;
    CHECK_THROWS(durations.validate());
}

TEST_CASE("qasm output is byte exact for a known circuit") {
    Circuit c(2, "golden");
    c.append(Gate::make_u3(0, 0.0, 0.0, M_PI / 2));
    c.append(Gate::make_cnot(0, 1));
    c.append(Gate::make_barrier());
    c.append(Gate::make_h(1));
    c.append(Gate::make_measure({0, 1}, "c"));
    const std::string expected =
        "OPENQASM 2.0;\n"
        "include \"qelib1.inc\";\n"
        "qreg q[2];\n"
        "creg c[2];\n"
        "u3(pi/2,0,0) q[0];\n"
        "cx q[0],q[1];\n"
        "barrier q;\n"
        "h q[1];\n"
        "measure q[0] -> c[0];\n"
        "measure q[1] -> c[1];\n";
    CHECK(to_qasm(c) == expected);
}

TEST_CASE("qasm angle formatting falls back to decimals") {
    Circuit c(1, "angles");
    c.append(Gate::make_u3(0, 0.0, 0.25, -M_PI / 4));
    std::string text = to_qasm(c);
    CHECK(text.find("u3(-pi/4,0.25,0)") != std::string::npos);
}
