#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "macrowitness/protocols.hpp"

namespace macrowitness {

enum class Protocol { CatWitness, ProductWitness, Invasiveness, Disconnectivity, Sweep };

enum class OutputFormat { Csv, Json };

/// Experiment description loaded from a JSON document; CLI flags override
/// individual fields after loading.
struct ExperimentConfig {
    Protocol protocol = Protocol::CatWitness;
    int n = 2;
    std::vector<double> thetas = {M_PI / 2};
    NoiseParams noise;
    GateDurations durations;
    long shots = 0;  // 0 => exact
    std::uint64_t seed = 8192;
    Scenario scenario = Scenario::Direct;
    bool serial_ancilla = false;
    std::string preparation = "all";      // invasiveness: bit-string or "all"
    std::string state_kind = "cat";       // disconnectivity: cat | product
    double eta = 0.5;
    PartitionStrategy strategy = PartitionStrategy::Prefix;
    std::string target;                   // empty => {0}^n
    double prune_floor = 1e-3;
    int workers = 1;
    std::string output;                   // empty => stdout
    OutputFormat format = OutputFormat::Csv;

    void validate() const;
};

ExperimentConfig load_config_file(const std::string& path);
ExperimentConfig load_config_text(const std::string& json_text);

std::string protocol_name(Protocol protocol);
Protocol parse_protocol(const std::string& name);
Scenario parse_scenario(const std::string& name);
OutputFormat parse_format(const std::string& name);

}  // namespace macrowitness
