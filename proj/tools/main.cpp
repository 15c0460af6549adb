// macrowitness command-line front end.

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "macrowitness/config.hpp"
#include "macrowitness/protocols.hpp"

namespace {

using namespace macrowitness;
using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string fmt(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.12g", value);
    return buffer;
}

Circuit build_preparation(const ExperimentConfig& config, double theta) {
    if (config.protocol == Protocol::ProductWitness ||
        (config.protocol == Protocol::Disconnectivity && config.state_kind == "product")) {
        return product_preparation_circuit(config.n);
    }
    if (config.n == 1) {
        // Single qubit: the ladder degenerates to the rotation alone.
        Circuit prep(1, "cat1");
        prep.append(Gate::make_u3(0, 0.0, 0.0, theta));
        return prep;
    }
    return cat_preparation_circuit(config.n, theta);
}

struct WitnessRow {
    double theta = 0.0;
    WitnessResult result;
    double bound = 0.0;
    std::uint64_t seed = 0;
};

std::vector<WitnessRow> run_witness_rows(const ExperimentConfig& config) {
    std::vector<double> thetas = config.thetas;
    if (config.protocol == Protocol::ProductWitness) thetas = {0.0};

    InvasivenessRecord reference = invasiveness_test(
        std::string(static_cast<std::size_t>(config.n), '0'), config.noise, config.durations,
        config.serial_ancilla);
    const double bound = reference.invasiveness;

    std::vector<WitnessRow> rows(thetas.size());
    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            WitnessRow& row = rows[i];
            row.theta = thetas[i];
            row.seed = derive_seed(config.seed, i);
            row.bound = bound;
            Circuit prep = build_preparation(config, thetas[i]);
            row.result = run_witness(prep, config.noise, config.durations, config.scenario,
                                     config.serial_ancilla, config.target, config.shots, row.seed);
        }
    };

    const std::size_t workers =
        std::min<std::size_t>(std::max(config.workers, 1), std::max<std::size_t>(rows.size(), 1));
    if (workers <= 1) {
        work(0, rows.size());
    } else {
        std::vector<std::thread> pool;
        const std::size_t chunk = (rows.size() + workers - 1) / workers;
        for (std::size_t w = 0; w < workers; ++w) {
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(rows.size(), begin + chunk);
            if (begin < end) pool.emplace_back(work, begin, end);
        }
        for (auto& t : pool) t.join();
    }
    return rows;
}

json config_echo(const ExperimentConfig& config) {
    json doc;
    doc["protocol"] = protocol_name(config.protocol);
    doc["n"] = config.n;
    doc["theta"] = config.thetas;
    doc["noise"] = {{"enabled", config.noise.enabled},
                    {"t1", config.noise.t1},
                    {"t2", config.noise.t2},
                    {"gamma_errors", config.noise.gamma_errors}};
    doc["durations"] = {{"u3_time", config.durations.u3_time},
                        {"cnot_time", config.durations.cnot_time},
                        {"h_time", config.durations.h_time},
                        {"measure_time", config.durations.measure_time}};
    if (config.shots > 0) {
        doc["shots"] = config.shots;
    } else {
        doc["shots"] = "exact";
    }
    doc["seed"] = config.seed;
    doc["scenario"] = config.scenario == Scenario::Direct ? "direct" : "pm";
    doc["serial_ancilla"] = config.serial_ancilla;
    doc["eta"] = config.eta;
    doc["strategy"] = config.strategy == PartitionStrategy::Prefix ? "prefix" : "exhaustive";
    doc["target"] = config.target.empty()
                        ? std::string(static_cast<std::size_t>(config.n), '0')
                        : config.target;
    return doc;
}

void emit(const ExperimentConfig& config, const std::string& text) {
    if (config.output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open output file '" + config.output + "'");
    out << text;
}

std::string render_witness(const ExperimentConfig& config, const std::vector<WitnessRow>& rows) {
    if (config.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "theta,n,W,sigma,bound,verdict,shots,seed\n";
        for (const WitnessRow& row : rows) {
            out << fmt(row.theta) << ',' << config.n << ',' << fmt(row.result.w) << ','
                << fmt(row.result.sigma) << ',' << fmt(row.bound) << ','
                << verdict_string(classify_witness(row.result.w, row.bound)) << ','
                << config.shots << ',' << row.seed << '\n';
        }
        return out.str();
    }
    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_echo(config);
    doc["results"] = json::array();
    for (const WitnessRow& row : rows) {
        json record;
        record["theta"] = row.theta;
        record["n"] = config.n;
        record["W"] = row.result.w;
        record["sigma"] = row.result.sigma;
        record["bound"] = row.bound;
        record["verdict"] = verdict_string(classify_witness(row.result.w, row.bound));
        record["shots"] = row.result.shots;
        record["seed"] = row.seed;
        record["target"] = row.result.target_outcome;
        record["p_blind_target"] = row.result.p_blind.at(row.result.target_outcome);
        record["p_measured_target"] =
            row.result.p_with_measurement.at(row.result.target_outcome);
        record["dimension_estimate"] = dimension_estimate(row.result.w);
        doc["results"].push_back(record);
    }
    return doc.dump(2) + "\n";
}

std::string render_invasiveness(const ExperimentConfig& config) {
    std::vector<std::string> preparations;
    if (config.preparation == "all") {
        for (std::size_t i = 0; i < (std::size_t{1} << config.n); ++i) {
            preparations.push_back(bitstring(i, config.n));
        }
    } else {
        preparations.push_back(config.preparation);
    }

    std::vector<InvasivenessRecord> records;
    for (std::size_t i = 0; i < preparations.size(); ++i) {
        records.push_back(invasiveness_test(preparations[i], config.noise, config.durations,
                                            config.serial_ancilla, config.shots,
                                            derive_seed(config.seed, i)));
    }
    const double bound = clumsy_bound(records);

    if (config.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "state,epsilon,invasiveness,sigma,bound,shots,seed\n";
        for (std::size_t i = 0; i < records.size(); ++i) {
            out << records[i].prepared_state << ',' << fmt(records[i].epsilon_ii) << ','
                << fmt(records[i].invasiveness) << ',' << fmt(records[i].sigma) << ','
                << fmt(bound) << ',' << config.shots << ',' << derive_seed(config.seed, i)
                << '\n';
        }
        return out.str();
    }
    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_echo(config);
    doc["clumsy_bound"] = bound;
    doc["results"] = json::array();
    for (const InvasivenessRecord& record : records) {
        doc["results"].push_back({{"state", record.prepared_state},
                                  {"epsilon", record.epsilon_ii},
                                  {"invasiveness", record.invasiveness},
                                  {"sigma", record.sigma}});
    }
    return doc.dump(2) + "\n";
}

std::string render_disconnectivity(const ExperimentConfig& config) {
    Circuit prep = build_preparation(config, config.thetas.front());
    DensityMatrix rho = simulate_circuit(prep, config.noise, config.durations);
    DisconnectivityReport report = disconnectivity(rho, config.eta, config.strategy);

    if (config.format == OutputFormat::Csv) {
        std::ostringstream out;
        out << "n_prime,delta,gamma,eta\n";
        for (const auto& [n_prime, delta] : report.deltas) {
            out << n_prime << ',' << fmt(delta) << ',' << report.gamma << ',' << fmt(report.eta)
                << '\n';
        }
        return out.str();
    }
    json doc;
    doc["version"] = kVersion;
    doc["config"] = config_echo(config);
    doc["gamma"] = report.gamma;
    doc["eta"] = report.eta;
    doc["deltas"] = json::object();
    for (const auto& [n_prime, delta] : report.deltas) {
        doc["deltas"][std::to_string(n_prime)] = delta;
    }
    return doc.dump(2) + "\n";
}

int command_run(const ExperimentConfig& config) {
    switch (config.protocol) {
        case Protocol::CatWitness:
        case Protocol::ProductWitness:
        case Protocol::Sweep:
            emit(config, render_witness(config, run_witness_rows(config)));
            return 0;
        case Protocol::Invasiveness:
            emit(config, render_invasiveness(config));
            return 0;
        case Protocol::Disconnectivity:
            emit(config, render_disconnectivity(config));
            return 0;
    }
    return 1;
}

void write_qasm_file(const std::filesystem::path& dir, const std::string& stem,
                     const Circuit& circuit) {
    std::ofstream out(dir / (stem + ".qasm"), std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + (dir / (stem + ".qasm")).string());
    out << to_qasm(circuit);
}

Circuit basis_preparation(int n, std::size_t index, const std::string& name) {
    Circuit prep(n, name);
    for (int q = 0; q < n; ++q) {
        if (bit_of(index, q, n)) prep.append(Gate::make_u3(q, M_PI, 0.0, M_PI));
    }
    return prep;
}

int command_export_qasm(const ExperimentConfig& config) {
    const std::filesystem::path dir = config.output.empty() ? "." : config.output;
    std::filesystem::create_directories(dir);

    for (std::size_t t = 0; t < config.thetas.size(); ++t) {
        const std::string suffix =
            config.thetas.size() > 1 ? "_" + std::to_string(t) : std::string();
        Circuit prep = build_preparation(config, config.thetas[t]);

        Circuit blind(config.n, "blind" + suffix);
        for (const Gate& gate : prep.gates) blind.append(gate);
        blind.append(Gate::make_barrier());
        Circuit inverse = inverse_circuit(prep);
        for (const Gate& gate : inverse.gates) blind.append(gate);
        blind.append(Gate::make_measure([&] {
            std::vector<int> all(config.n);
            for (int q = 0; q < config.n; ++q) all[q] = q;
            return all;
        }(), "c"));
        write_qasm_file(dir, blind.name, blind);

        if (config.scenario == Scenario::Direct) {
            QubitSubset system = [&] {
                std::vector<int> q(config.n);
                for (int i = 0; i < config.n; ++i) q[i] = i;
                return QubitSubset(q);
            }();
            QubitSubset ancillas = [&] {
                std::vector<int> q(config.n);
                for (int i = 0; i < config.n; ++i) q[i] = config.n + i;
                return QubitSubset(q);
            }();
            Circuit staged(2 * config.n, "direct" + suffix);
            for (const Gate& gate : prep.gates) staged.append(gate);
            staged.append(Gate::make_barrier());
            Circuit measured =
                attach_ancilla_measurement(staged, system, ancillas, config.serial_ancilla);
            measured.append(Gate::make_barrier());
            for (const Gate& gate : inverse.gates) measured.append(gate);
            measured.append(Gate::make_measure([&] {
                std::vector<int> all(config.n);
                for (int q = 0; q < config.n; ++q) all[q] = q;
                return all;
            }(), "c"));
            measured.name = "direct" + suffix;
            write_qasm_file(dir, measured.name, measured);
        } else {
            Circuit stage1(config.n, "pm_stage1" + suffix);
            for (const Gate& gate : prep.gates) stage1.append(gate);
            stage1.append(Gate::make_barrier());
            stage1.append(Gate::make_measure([&] {
                std::vector<int> all(config.n);
                for (int q = 0; q < config.n; ++q) all[q] = q;
                return all;
            }(), "c"));
            write_qasm_file(dir, stage1.name, stage1);

            for (std::size_t i = 0; i < (std::size_t{1} << config.n); ++i) {
                const std::string bits = bitstring(i, config.n);
                Circuit stage2 = basis_preparation(config.n, i, "pm_reprep_" + bits + suffix);
                stage2.append(Gate::make_barrier());
                for (const Gate& gate : inverse.gates) stage2.append(gate);
                stage2.append(Gate::make_measure([&] {
                    std::vector<int> all(config.n);
                    for (int q = 0; q < config.n; ++q) all[q] = q;
                    return all;
                }(), "c"));
                write_qasm_file(dir, stage2.name, stage2);
            }
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Quantum-witness simulator for superposition macroscopicity experiments"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path;
    std::string shots_text;
    std::string scenario_text;
    std::string format_text;
    std::string output_path;
    std::string protocol_text;
    std::uint64_t seed = 0;
    int n_override = 0;
    bool serial_ancilla = false;
    bool seed_set = false;

    auto add_common = [&](CLI::App* cmd, bool with_run_flags) {
        cmd->add_option("--config", config_path, "JSON experiment description");
        cmd->add_option("--output", output_path, "Output path (default: stdout)");
        cmd->add_option("--scenario", scenario_text,
                        "Intermediate measurement scenario: direct | pm");
        cmd->add_flag("--serial-ancilla", serial_ancilla,
                      "Run ancilla fan-out CNOTs sequentially");
        cmd->add_option("--protocol", protocol_text,
                        "cat-witness | product-witness | invasiveness | disconnectivity | sweep");
        cmd->add_option("-n,--qubits", n_override, "System register size");
        if (with_run_flags) {
            cmd->add_option("--seed", seed, "Root RNG seed")->each([&](const std::string&) {
                seed_set = true;
            });
            cmd->add_option("--shots", shots_text, "Shot count, or \"exact\"");
            cmd->add_option("--format", format_text, "Output format: csv | json");
        }
    };

    CLI::App* run = app.add_subcommand("run", "Execute the configured experiment");
    add_common(run, true);
    CLI::App* export_qasm =
        app.add_subcommand("export-qasm", "Write the experiment circuits as OpenQASM 2.0");
    add_common(export_qasm, false);
    CLI::App* validate = app.add_subcommand("validate", "Check a config file and exit");
    validate->add_option("--config", config_path, "JSON experiment description")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        ExperimentConfig config =
            config_path.empty() ? ExperimentConfig{} : load_config_file(config_path);
        if (!protocol_text.empty()) config.protocol = parse_protocol(protocol_text);
        if (n_override > 0) config.n = n_override;
        if (seed_set) config.seed = seed;
        if (!shots_text.empty()) {
            config.shots = shots_text == "exact" ? 0 : std::stol(shots_text);
        }
        if (!scenario_text.empty()) config.scenario = parse_scenario(scenario_text);
        if (!format_text.empty()) config.format = parse_format(format_text);
        if (!output_path.empty()) config.output = output_path;
        if (serial_ancilla) config.serial_ancilla = true;
        config.validate();

        if (validate->parsed()) {
            std::cout << "ok: " << protocol_name(config.protocol) << ", n=" << config.n << "\n";
            return 0;
        }
        if (export_qasm->parsed()) return command_export_qasm(config);
        return command_run(config);
    } catch (const std::exception& error) {
        std::cerr << "error: " << error.what() << "\n";
        return 1;
    }
}
