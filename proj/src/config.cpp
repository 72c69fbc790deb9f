#include "gaze/config.hpp"

#include <charconv>
#include <fstream>
#include <string>

#include "gaze/errors.hpp"

namespace gaze {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw config_error(key + ": expected a number, got '" + value + "'");
    }
}

int parse_int(const std::string& key, const std::string& value) {
    int v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw config_error(key + ": expected an integer, got '" + value + "'");
    }
    return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
    if (res.ec != std::errc() || res.ptr != value.data() + value.size()) {
        throw config_error(key + ": expected a nonnegative integer, got '" + value + "'");
    }
    return v;
}

void apply(RunConfig& cfg, const std::string& key, const std::string& value) {
    // MetricsConfig
    if (key == "grid_w") {
        cfg.metrics.grid_w = parse_int(key, value);
    } else if (key == "grid_h") {
        cfg.metrics.grid_h = parse_int(key, value);
    } else if (key == "sigma") {
        cfg.metrics.sigma = parse_double(key, value);
    } else if (key == "mask_threshold") {
        cfg.metrics.mask_threshold = parse_double(key, value);
    } else if (key == "tau") {
        cfg.metrics.tau = parse_double(key, value);
    } else if (key == "auc_aggregation") {
        cfg.metrics.auc_aggregation = auc_aggregation_from_string(value);
    }
    // SimConfig
    else if (key == "seed") {
        cfg.sim.seed = parse_u64(key, value);
    } else if (key == "image_w") {
        cfg.sim.image_w = parse_int(key, value);
    } else if (key == "image_h") {
        cfg.sim.image_h = parse_int(key, value);
    } else if (key == "n_objects") {
        cfg.sim.n_objects = parse_int(key, value);
    } else if (key == "object_min_size") {
        cfg.sim.object_min_size = parse_double(key, value);
    } else if (key == "object_max_size") {
        cfg.sim.object_max_size = parse_double(key, value);
    } else if (key == "gaze_sigma_frac") {
        cfg.sim.gaze_sigma_frac = parse_double(key, value);
    } else if (key == "gaze_offset_sigma") {
        cfg.sim.gaze_offset_sigma = parse_double(key, value);
    } else if (key == "detection_jitter_sigma") {
        cfg.sim.detection_jitter_sigma = parse_double(key, value);
    } else if (key == "detection_dropout_p") {
        cfg.sim.detection_dropout_p = parse_double(key, value);
    } else if (key == "distractor_p") {
        cfg.sim.distractor_p = parse_double(key, value);
    } else if (key == "noise_floor") {
        cfg.sim.noise_floor = parse_double(key, value);
    }
    // Fusion
    else if (key == "overlap_rule") {
        cfg.overlap_rule = overlap_rule_from_string(value);
    } else {
        throw config_error("unknown config key '" + key + "'");
    }
}

} // namespace

RunConfig parse_run_config(std::istream& in) {
    RunConfig cfg;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#') continue;
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(line_no) +
                               ": expected 'key = value', got '" + text + "'");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) {
            throw config_error("line " + std::to_string(line_no) + ": empty key");
        }
        apply(cfg, key, value);
    }
    validate(cfg.metrics);
    validate(cfg.sim);
    return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path.string());
    try {
        return parse_run_config(in);
    } catch (const config_error& e) {
        throw config_error(path.string() + ": " + e.what());
    }
}

} // namespace gaze
