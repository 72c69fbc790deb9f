#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "gaze/config.hpp"
#include "gaze/dataset.hpp"
#include "gaze/fusion.hpp"
#include "gaze/metrics.hpp"

namespace gaze {

/// Everything needed to evaluate one frame: the heatmap stays on disk until
/// a worker scores the frame.
struct FrameBundle {
    std::string frame_id;
    std::filesystem::path heatmap_path;
    DetectionSet detections;
    std::optional<FrameRecord> truth;
};

/// Pairs each record with its <frame_id>.ghm1 heatmap and detections.jsonl
/// entry from data_dir, in frame_id order. Throws data_error listing every
/// frame_id whose heatmap or detections entry is missing, and on duplicate
/// frame ids.
std::vector<FrameBundle> collect_bundles(const std::vector<FrameRecord>& records,
                                         const std::filesystem::path& data_dir);

/// The evaluate pipeline: load records, pair bundles, score every frame
/// (optionally in parallel; the fold runs in frame_id order so the report is
/// identical for any jobs value), aggregate.
MetricsReport evaluate_dataset(const std::filesystem::path& annotations_path,
                               const std::filesystem::path& data_dir, const RunConfig& cfg,
                               const std::optional<std::string>& distractor_label,
                               int jobs = 1);

/// Writes report.json, per_object.csv and per_session.csv atomically.
void write_report_files(const MetricsReport& report, const std::filesystem::path& out_dir);

/// Single-frame selection for the CLI: an empty or whitespace-only
/// detections file behaves as a frame with no detections.
GazeSelection run_select(const std::filesystem::path& heatmap_path,
                         const std::filesystem::path& detections_path,
                         const FusionOptions& opts);

/// Gaze-target density over the unit square from annotated records.
Heatmap density_from_records(const std::vector<FrameRecord>& records, int grid_w, int grid_h);

} // namespace gaze
