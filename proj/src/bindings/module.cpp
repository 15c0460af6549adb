#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "macrowitness/circuits.hpp"
#include "macrowitness/noise.hpp"
#include "macrowitness/protocols.hpp"
#include "macrowitness/qstate.hpp"

namespace py = pybind11;
using namespace macrowitness;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Density-matrix simulator for quantum-witness experiments";

    py::class_<NoiseParams>(m, "NoiseParams")
        .def(py::init<>())
        .def_readwrite("t1", &NoiseParams::t1)
        .def_readwrite("t2", &NoiseParams::t2)
        .def_readwrite("gamma_errors", &NoiseParams::gamma_errors)
        .def_readwrite("enabled", &NoiseParams::enabled)
        .def_static("disabled", &NoiseParams::disabled_params);

    py::class_<GateDurations>(m, "GateDurations")
        .def(py::init<>())
        .def_readwrite("u3_time", &GateDurations::u3_time)
        .def_readwrite("cnot_time", &GateDurations::cnot_time)
        .def_readwrite("h_time", &GateDurations::h_time)
        .def_readwrite("measure_time", &GateDurations::measure_time);

    py::enum_<Scenario>(m, "Scenario")
        .value("DIRECT", Scenario::Direct)
        .value("PREPARE_MEASURE", Scenario::PrepareMeasure);

    py::enum_<PartitionStrategy>(m, "PartitionStrategy")
        .value("PREFIX", PartitionStrategy::Prefix)
        .value("EXHAUSTIVE", PartitionStrategy::Exhaustive);

    py::class_<Circuit>(m, "Circuit")
        .def_readonly("n_qubits", &Circuit::n_qubits)
        .def_readonly("name", &Circuit::name)
        .def("__len__", [](const Circuit& c) { return c.gates.size(); });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init([](int n_qubits, const Eigen::MatrixXcd& entries) {
                 return DensityMatrix(n_qubits, entries);
             }),
             py::arg("n_qubits"), py::arg("entries"))
        .def_static("basis_state",
                    py::overload_cast<int, std::size_t>(&DensityMatrix::basis_state),
                    py::arg("n_qubits"), py::arg("index"))
        .def_static("from_bits",
                    py::overload_cast<const std::string&>(&DensityMatrix::basis_state),
                    py::arg("bits"))
        .def_property_readonly("n_qubits", &DensityMatrix::n_qubits)
        .def_property_readonly("entries",
                               [](const DensityMatrix& rho) { return rho.entries(); })
        .def("diagonal_probabilities", &DensityMatrix::diagonal_probabilities)
        .def("validate", &DensityMatrix::validate);

    py::class_<Distribution>(m, "Distribution")
        .def_readonly("n_qubits", &Distribution::n_qubits)
        .def_readonly("p", &Distribution::p)
        .def("at", &Distribution::at)
        .def("label", &Distribution::label)
        .def("sum", &Distribution::sum);

    py::class_<WitnessResult>(m, "WitnessResult")
        .def_readonly("w", &WitnessResult::w)
        .def_readonly("sigma", &WitnessResult::sigma)
        .def_readonly("p_blind", &WitnessResult::p_blind)
        .def_readonly("p_with_measurement", &WitnessResult::p_with_measurement)
        .def_readonly("target_outcome", &WitnessResult::target_outcome)
        .def_readonly("shots", &WitnessResult::shots);

    py::class_<InvasivenessRecord>(m, "InvasivenessRecord")
        .def_readonly("prepared_state", &InvasivenessRecord::prepared_state)
        .def_readonly("epsilon_ii", &InvasivenessRecord::epsilon_ii)
        .def_readonly("invasiveness", &InvasivenessRecord::invasiveness)
        .def_readonly("sigma", &InvasivenessRecord::sigma);

    py::class_<DisconnectivityReport>(m, "DisconnectivityReport")
        .def_readonly("gamma", &DisconnectivityReport::gamma)
        .def_readonly("deltas", &DisconnectivityReport::deltas)
        .def_readonly("eta", &DisconnectivityReport::eta);

    py::class_<SampleResult>(m, "SampleResult")
        .def_readonly("counts", &SampleResult::counts)
        .def_readonly("empirical", &SampleResult::empirical)
        .def_readonly("sigma", &SampleResult::sigma);

    m.def("cat_preparation_circuit", &cat_preparation_circuit, py::arg("n"), py::arg("theta"));
    m.def("product_preparation_circuit", &product_preparation_circuit, py::arg("n"));
    m.def("inverse_circuit", &inverse_circuit);
    m.def("to_qasm", &to_qasm);

    m.def("simulate_circuit", &simulate_circuit, py::arg("circuit"),
          py::arg("noise") = NoiseParams{}, py::arg("durations") = GateDurations{});
    m.def("run_witness", &run_witness, py::arg("prep"), py::arg("noise") = NoiseParams{},
          py::arg("durations") = GateDurations{}, py::arg("scenario") = Scenario::Direct,
          py::arg("serial_ancilla") = false, py::arg("target") = std::string(),
          py::arg("shots") = 0L, py::arg("seed") = std::uint64_t{0});
    m.def("analytic_cat_witness", &analytic_cat_witness, py::arg("theta"));
    m.def("invasiveness_test", &invasiveness_test, py::arg("prepared_state"),
          py::arg("noise") = NoiseParams{}, py::arg("durations") = GateDurations{},
          py::arg("serial_ancilla") = false, py::arg("shots") = 0L,
          py::arg("seed") = std::uint64_t{0});
    m.def("disconnectivity", &disconnectivity, py::arg("state"), py::arg("eta") = 0.5,
          py::arg("strategy") = PartitionStrategy::Prefix);
    m.def("von_neumann_entropy", &von_neumann_entropy);
    m.def("sample_counts", &sample_counts, py::arg("dist"), py::arg("shots"), py::arg("seed"));
    m.def("w_max", &w_max, py::arg("d"));
    m.def("dimension_estimate", &dimension_estimate, py::arg("w"));
    m.def("derive_seed", &derive_seed, py::arg("root"), py::arg("stream"));
}
