#pragma once

#include <filesystem>
#include <istream>

#include "gaze/fusion.hpp"
#include "gaze/metrics.hpp"
#include "gaze/simulator.hpp"

namespace gaze {

/// Bundle of all file-configurable knobs. The config file is flat
/// `key = value` text whose keys are exactly the MetricsConfig and SimConfig
/// field names plus overlap_rule; unknown keys are errors, so a run is fully
/// reproducible from the file alone.
struct RunConfig {
    MetricsConfig metrics;
    SimConfig sim;
    OverlapRule overlap_rule = OverlapRule::largest;

    FusionOptions fusion_options() const {
        return {metrics.tau, overlap_rule, CentroidMode::weighted};
    }
};

/// Parses and validates. Throws config_error naming the offending key.
RunConfig parse_run_config(std::istream& in);
RunConfig load_run_config(const std::filesystem::path& path);

} // namespace gaze
