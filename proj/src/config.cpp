#include "macrowitness/config.hpp"

#include <fstream>
#include <set>

#include <json.hpp>

namespace macrowitness {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& object, const std::set<std::string>& known,
                         const std::string& scope) {
    for (const auto& [key, value] : object.items()) {
        if (!known.count(key)) {
            throw std::invalid_argument("unknown config key '" +
                                        (scope.empty() ? key : scope + "." + key) + "'");
        }
    }
}

}  // namespace

void ExperimentConfig::validate() const {
    if (n < 1) throw std::invalid_argument("n must be at least 1");
    check_capacity(protocol == Protocol::Disconnectivity ? n : 2 * n, "config");
    noise.validate();
    durations.validate();
    if (shots < 0) throw std::invalid_argument("shots must be positive or \"exact\"");
    if (!(eta > 0.0 && eta <= 1.0)) throw std::invalid_argument("eta must lie in (0, 1]");
    if (prune_floor < 0.0 || prune_floor > 1.0) {
        throw std::invalid_argument("prune_floor must lie in [0, 1]");
    }
    if (workers < 1) throw std::invalid_argument("workers must be at least 1");
    if (!target.empty()) {
        if (static_cast<int>(target.size()) != n) {
            throw std::invalid_argument("target length must equal n");
        }
        index_of_bitstring(target);  // character check
    }
    if (preparation != "all") index_of_bitstring(preparation);
    if (state_kind != "cat" && state_kind != "product") {
        throw std::invalid_argument("state must be 'cat' or 'product'");
    }
}

Protocol parse_protocol(const std::string& name) {
    if (name == "cat-witness") return Protocol::CatWitness;
    if (name == "product-witness") return Protocol::ProductWitness;
    if (name == "invasiveness") return Protocol::Invasiveness;
    if (name == "disconnectivity") return Protocol::Disconnectivity;
    if (name == "sweep") return Protocol::Sweep;
    throw std::invalid_argument("unknown protocol '" + name + "'");
}

std::string protocol_name(Protocol protocol) {
    switch (protocol) {
        case Protocol::CatWitness: return "cat-witness";
        case Protocol::ProductWitness: return "product-witness";
        case Protocol::Invasiveness: return "invasiveness";
        case Protocol::Disconnectivity: return "disconnectivity";
        case Protocol::Sweep: return "sweep";
    }
    return "cat-witness";
}

Scenario parse_scenario(const std::string& name) {
    if (name == "direct") return Scenario::Direct;
    if (name == "pm" || name == "prepare-measure") return Scenario::PrepareMeasure;
    throw std::invalid_argument("scenario must be 'direct' or 'pm'");
}

OutputFormat parse_format(const std::string& name) {
    if (name == "csv") return OutputFormat::Csv;
    if (name == "json") return OutputFormat::Json;
    throw std::invalid_argument("format must be 'csv' or 'json'");
}

ExperimentConfig load_config_text(const std::string& json_text) {
    json doc = json::parse(json_text);
    if (!doc.is_object()) throw std::invalid_argument("config root must be a JSON object");
    reject_unknown_keys(doc,
                        {"protocol", "n", "theta", "noise", "durations", "shots", "seed",
                         "scenario", "serial_ancilla", "preparation", "state", "eta", "strategy",
                         "target", "prune_floor", "workers", "output", "format"},
                        "");

    ExperimentConfig config;
    if (doc.contains("protocol")) config.protocol = parse_protocol(doc["protocol"]);
    if (doc.contains("n")) config.n = doc["n"].get<int>();
    if (doc.contains("theta")) {
        config.thetas.clear();
        if (doc["theta"].is_array()) {
            for (const auto& v : doc["theta"]) config.thetas.push_back(v.get<double>());
        } else {
            config.thetas.push_back(doc["theta"].get<double>());
        }
        if (config.thetas.empty()) throw std::invalid_argument("theta list must be nonempty");
    }
    if (doc.contains("noise")) {
        const json& noise = doc["noise"];
        reject_unknown_keys(noise, {"enabled", "t1", "t2", "gamma_errors"}, "noise");
        if (noise.contains("enabled")) config.noise.enabled = noise["enabled"].get<bool>();
        if (noise.contains("t1")) config.noise.t1 = noise["t1"].get<double>();
        if (noise.contains("t2")) config.noise.t2 = noise["t2"].get<double>();
        if (noise.contains("gamma_errors")) {
            config.noise.gamma_errors = noise["gamma_errors"].get<double>();
        }
    }
    if (doc.contains("durations")) {
        const json& durations = doc["durations"];
        reject_unknown_keys(durations, {"u3_time", "cnot_time", "h_time", "measure_time"},
                            "durations");
        if (durations.contains("u3_time")) config.durations.u3_time = durations["u3_time"];
        if (durations.contains("cnot_time")) config.durations.cnot_time = durations["cnot_time"];
        if (durations.contains("h_time")) config.durations.h_time = durations["h_time"];
        if (durations.contains("measure_time")) {
            config.durations.measure_time = durations["measure_time"];
        }
    }
    if (doc.contains("shots")) {
        if (doc["shots"].is_string()) {
            if (doc["shots"] != "exact") throw std::invalid_argument("shots must be N or \"exact\"");
            config.shots = 0;
        } else {
            config.shots = doc["shots"].get<long>();
            if (config.shots < 1) throw std::invalid_argument("shots must be at least 1");
        }
    }
    if (doc.contains("seed")) config.seed = doc["seed"].get<std::uint64_t>();
    if (doc.contains("scenario")) config.scenario = parse_scenario(doc["scenario"]);
    if (doc.contains("serial_ancilla")) config.serial_ancilla = doc["serial_ancilla"].get<bool>();
    if (doc.contains("preparation")) config.preparation = doc["preparation"].get<std::string>();
    if (doc.contains("state")) config.state_kind = doc["state"].get<std::string>();
    if (doc.contains("eta")) config.eta = doc["eta"].get<double>();
    if (doc.contains("strategy")) {
        const std::string s = doc["strategy"].get<std::string>();
        if (s == "prefix") {
            config.strategy = PartitionStrategy::Prefix;
        } else if (s == "exhaustive") {
            config.strategy = PartitionStrategy::Exhaustive;
        } else {
            throw std::invalid_argument("strategy must be 'prefix' or 'exhaustive'");
        }
    }
    if (doc.contains("target")) config.target = doc["target"].get<std::string>();
    if (doc.contains("prune_floor")) config.prune_floor = doc["prune_floor"].get<double>();
    if (doc.contains("workers")) config.workers = doc["workers"].get<int>();
    if (doc.contains("output")) config.output = doc["output"].get<std::string>();
    if (doc.contains("format")) config.format = parse_format(doc["format"].get<std::string>());
    config.validate();
    return config;
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return load_config_text(text);
}

}  // namespace macrowitness
