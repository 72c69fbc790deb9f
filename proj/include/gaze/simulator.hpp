#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "gaze/dataset.hpp"
#include "gaze/fusion.hpp"
#include "gaze/heatmap.hpp"
#include "gaze/metrics.hpp"

namespace gaze {

/// Label palette for generated scenes; the last entry is the designated
/// distractor, which participants never gaze at.
inline constexpr std::array<const char*, 5> kSimObjectLabels = {"mug", "ball", "book",
                                                                "bottle", "block"};
inline constexpr const char* kSimDistractorLabel = "crisps";

struct SimConfig {
    std::uint64_t seed = 1;
    int image_w = 200;
    int image_h = 150;
    int n_objects = 3;                   // 1..5, doubles as the session number
    double object_min_size = 20.0;       // pixels, per axis
    double object_max_size = 32.0;
    double gaze_sigma_frac = 0.03;       // blob sigma as a fraction of image width
    double gaze_offset_sigma = 0.0;      // blob-centre noise, normalized units
    double detection_jitter_sigma = 0.0; // detection box-centre noise, pixels
    double detection_dropout_p = 0.0;
    double distractor_p = 0.0;
    double noise_floor = 0.0;            // additive uniform heatmap noise, [0, 1)
};

/// Throws config_error naming the offending field.
void validate(const SimConfig& cfg);

struct SimFrame {
    Heatmap heatmap;
    DetectionSet detections;
    FrameRecord truth;
};

/// Generates one frame. Pure function of (cfg, frame_index): randomness
/// comes from a stream keyed by (cfg.seed, frame_index), so frames replay
/// identically in any order. Throws placement_error when the non-overlap
/// constraint cannot be satisfied within the retry budget.
SimFrame synth_frame(const SimConfig& cfg, std::uint64_t frame_index);

/// Generates n_frames, runs the selection pathway on each, and scores the
/// run. Deterministic for any jobs value.
MetricsReport run_simulation(const SimConfig& cfg, std::size_t n_frames,
                             const MetricsConfig& metrics = {},
                             const FusionOptions& fusion = {}, int jobs = 1);

/// Persists a generated dataset: <frame_id>.ghm1 per frame plus
/// annotations.jsonl and detections.jsonl, so the evaluate path can consume
/// exactly what the in-memory loop saw.
void persist_dataset(const SimConfig& cfg, std::size_t n_frames,
                     const std::filesystem::path& out_dir);

} // namespace gaze
