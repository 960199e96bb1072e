#include "ssmap/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ssmap/errors.hpp"

namespace ssmap {

namespace {

using json = nlohmann::json;

void expect_object(const json& node, const std::string& path) {
    if (!node.is_object())
        throw ConfigError(path + ": expected an object");
}

void reject_unknown(const json& obj, std::initializer_list<const char*> keys,
                    const std::string& path) {
    for (const auto& [key, value] : obj.items()) {
        bool known = false;
        for (const char* k : keys)
            if (key == k) known = true;
        if (!known) throw ConfigError(path + ": unknown key '" + key + "'");
    }
}

double get_number(const json& obj, const char* key, double fallback,
                  const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_number())
        throw ConfigError(path + "." + key + ": expected a number");
    return it->get<double>();
}

bool get_bool(const json& obj, const char* key, bool fallback,
              const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_boolean())
        throw ConfigError(path + "." + key + ": expected a boolean");
    return it->get<bool>();
}

std::string get_string(const json& obj, const char* key,
                       const std::string& fallback, const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_string())
        throw ConfigError(path + "." + key + ": expected a string");
    return it->get<std::string>();
}

std::vector<double> get_number_list(const json& obj, const char* key,
                                    std::vector<double> fallback,
                                    const std::string& path) {
    const auto it = obj.find(key);
    if (it == obj.end()) return fallback;
    if (!it->is_array())
        throw ConfigError(path + "." + key + ": expected an array of numbers");
    std::vector<double> out;
    out.reserve(it->size());
    for (const auto& v : *it) {
        if (!v.is_number())
            throw ConfigError(path + "." + key + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

void parse_collector(const json& node, CollectorParams& p) {
    const std::string path = "collector";
    expect_object(node, path);
    reject_unknown(node,
                   {"mdot_kg_s", "c_j_per_kg_k", "a1", "h_w_per_m2_k", "area_m2",
                    "d1_m", "d2_m", "k_w_per_m_k", "c1_j_per_k", "c2_j_per_k",
                    "c3_j_per_k", "t_sup_c"},
                   path);
    p.mdot = get_number(node, "mdot_kg_s", p.mdot, path);
    p.c = get_number(node, "c_j_per_kg_k", p.c, path);
    p.a1 = get_number(node, "a1", p.a1, path);
    p.h = get_number(node, "h_w_per_m2_k", p.h, path);
    p.area = get_number(node, "area_m2", p.area, path);
    p.d1 = get_number(node, "d1_m", p.d1, path);
    p.d2 = get_number(node, "d2_m", p.d2, path);
    p.k = get_number(node, "k_w_per_m_k", p.k, path);
    // null = unset: the capacity is derived from the geometry instead.
    if (node.contains("c1_j_per_k") && !node.at("c1_j_per_k").is_null())
        p.c1 = get_number(node, "c1_j_per_k", 0.0, path);
    if (node.contains("c2_j_per_k") && !node.at("c2_j_per_k").is_null())
        p.c2 = get_number(node, "c2_j_per_k", 0.0, path);
    if (node.contains("c3_j_per_k") && !node.at("c3_j_per_k").is_null())
        p.c3 = get_number(node, "c3_j_per_k", 0.0, path);
    p.t_sup = get_number(node, "t_sup_c", p.t_sup, path);
}

void parse_sweep(const json& node, RunConfig& cfg) {
    const std::string path = "sweep";
    expect_object(node, path);
    reject_unknown(node, {"d1_values_m", "mdot_values_kg_s", "rederive_capacities"},
                   path);
    cfg.sweep_grid.d1_values =
        get_number_list(node, "d1_values_m", cfg.sweep_grid.d1_values, path);
    cfg.sweep_grid.mdot_values = get_number_list(
        node, "mdot_values_kg_s", cfg.sweep_grid.mdot_values, path);
    cfg.rederive_capacities =
        get_bool(node, "rederive_capacities", cfg.rederive_capacities, path);
}

void parse_map(const json& node, RunConfig& cfg) {
    const std::string path = "map";
    expect_object(node, path);
    reject_unknown(node,
                   {"lat_min", "lat_max", "lon_min", "lon_max", "resolution_deg",
                    "power", "cutoff_deg", "input_csv"},
                   path);
    cfg.map_grid.lat_min = get_number(node, "lat_min", cfg.map_grid.lat_min, path);
    cfg.map_grid.lat_max = get_number(node, "lat_max", cfg.map_grid.lat_max, path);
    cfg.map_grid.lon_min = get_number(node, "lon_min", cfg.map_grid.lon_min, path);
    cfg.map_grid.lon_max = get_number(node, "lon_max", cfg.map_grid.lon_max, path);
    cfg.map_grid.resolution =
        get_number(node, "resolution_deg", cfg.map_grid.resolution, path);
    cfg.idw_power = get_number(node, "power", cfg.idw_power, path);
    cfg.idw_cutoff_deg = get_number(node, "cutoff_deg", cfg.idw_cutoff_deg, path);
    if (node.contains("input_csv") && !node.at("input_csv").is_null())
        cfg.map_input_csv = get_string(node, "input_csv", "", path);
}

void parse_synth(const json& node, SynthConfig& s) {
    const std::string path = "synth";
    expect_object(node, path);
    reject_unknown(node, {"count", "lat_min", "lat_max", "lon_min", "lon_max", "seed"},
                   path);
    if (node.contains("count")) {
        const auto& v = node.at("count");
        if (!v.is_number_unsigned())
            throw ConfigError(path + ".count: expected a non-negative integer");
        s.count = v.get<std::size_t>();
    }
    s.lat_min = get_number(node, "lat_min", s.lat_min, path);
    s.lat_max = get_number(node, "lat_max", s.lat_max, path);
    s.lon_min = get_number(node, "lon_min", s.lon_min, path);
    s.lon_max = get_number(node, "lon_max", s.lon_max, path);
    if (node.contains("seed")) {
        const auto& v = node.at("seed");
        if (!v.is_number_unsigned())
            throw ConfigError(path + ".seed: expected a non-negative integer");
        s.seed = v.get<std::uint64_t>();
    }
}

} // namespace

RunConfig parse_config(const std::string& json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("invalid JSON: ") + e.what());
    }
    expect_object(root, "config");
    reject_unknown(root,
                   {"climate_dir", "output_dir", "threshold_w_m2", "workers",
                    "collector", "sweep", "map", "synth"},
                   "config");

    RunConfig cfg;
    cfg.climate_dir = get_string(root, "climate_dir",
                                 cfg.climate_dir.string(), "config");
    cfg.output_dir = get_string(root, "output_dir", cfg.output_dir.string(),
                                "config");
    cfg.threshold = get_number(root, "threshold_w_m2", cfg.threshold, "config");
    if (cfg.climate_dir.empty()) throw ConfigError("climate_dir must be non-empty");
    if (cfg.output_dir.empty()) throw ConfigError("output_dir must be non-empty");
    if (!(cfg.threshold >= 0.0) || !std::isfinite(cfg.threshold))
        throw ConfigError("threshold_w_m2 must be >= 0");

    if (root.contains("workers")) {
        const auto& w = root.at("workers");
        if (w.is_string() && w.get<std::string>() == "auto") {
            cfg.workers = 0;
        } else if (w.is_number_integer() && w.get<long>() >= 1) {
            cfg.workers = static_cast<int>(w.get<long>());
        } else {
            throw ConfigError("workers: expected a positive integer or \"auto\"");
        }
    }

    if (root.contains("collector")) parse_collector(root.at("collector"), cfg.collector);
    if (root.contains("sweep")) parse_sweep(root.at("sweep"), cfg);
    if (root.contains("map")) parse_map(root.at("map"), cfg);
    if (root.contains("synth")) parse_synth(root.at("synth"), cfg.synth);

    validate_params(derive_capacities(cfg.collector));
    validate_grid(cfg.sweep_grid);
    if (cfg.synth.count > 0 &&
        (!(cfg.synth.lat_min < cfg.synth.lat_max) ||
         !(cfg.synth.lon_min < cfg.synth.lon_max)))
        throw ConfigError("synth bounds must be ordered (min < max)");
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw ConfigError("read failure on config file " + path.string());
    return parse_config(std::move(buf).str());
}

std::string default_config_json() {
    const RunConfig cfg;
    nlohmann::ordered_json root;
    root["climate_dir"] = cfg.climate_dir.string();
    root["output_dir"] = cfg.output_dir.string();
    root["threshold_w_m2"] = cfg.threshold;
    root["workers"] = "auto";
    root["collector"] = {{"mdot_kg_s", cfg.collector.mdot},
                         {"c_j_per_kg_k", cfg.collector.c},
                         {"a1", cfg.collector.a1},
                         {"h_w_per_m2_k", cfg.collector.h},
                         {"area_m2", cfg.collector.area},
                         {"d1_m", cfg.collector.d1},
                         {"d2_m", cfg.collector.d2},
                         {"k_w_per_m_k", cfg.collector.k},
                         {"t_sup_c", cfg.collector.t_sup}};
    root["sweep"] = {{"d1_values_m", cfg.sweep_grid.d1_values},
                     {"mdot_values_kg_s", cfg.sweep_grid.mdot_values},
                     {"rederive_capacities", cfg.rederive_capacities}};
    root["map"] = {{"lat_min", cfg.map_grid.lat_min},
                   {"lat_max", cfg.map_grid.lat_max},
                   {"lon_min", cfg.map_grid.lon_min},
                   {"lon_max", cfg.map_grid.lon_max},
                   {"resolution_deg", cfg.map_grid.resolution},
                   {"power", cfg.idw_power},
                   {"cutoff_deg", cfg.idw_cutoff_deg}};
    root["synth"] = {{"count", cfg.synth.count},
                     {"lat_min", cfg.synth.lat_min},
                     {"lat_max", cfg.synth.lat_max},
                     {"lon_min", cfg.synth.lon_min},
                     {"lon_max", cfg.synth.lon_max},
                     {"seed", cfg.synth.seed}};
    return root.dump(2) + "\n";
}

} // namespace ssmap
