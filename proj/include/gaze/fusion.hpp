#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaze/geometry.hpp"
#include "gaze/heatmap.hpp"

namespace gaze {

struct Detection {
    BoundingBox bbox;  // image pixels
    std::string label;
    std::optional<double> score;

    bool operator==(const Detection&) const = default;
};

struct DetectionSet {
    std::string frame_id;
    int image_w = 0;
    int image_h = 0;
    std::vector<Detection> detections;

    bool operator==(const DetectionSet&) const = default;
};

enum class SelectionRule { overlap, nearest, none };

/// Criterion applied among detections whose box intersects the hot-region
/// box. `largest` is the default; `smallest` keeps the literal wording of
/// the selection rule runnable for comparison.
enum class OverlapRule { largest, smallest };

struct GazeSelection {
    std::string frame_id;
    std::optional<int> selected;        // index into the detection list
    std::optional<std::string> label;
    SelectionRule rule_fired = SelectionRule::none;
    HotRegion hot_region;
};

struct FusionOptions {
    double tau = 0.5;
    OverlapRule overlap_rule = OverlapRule::largest;
    CentroidMode centroid_mode = CentroidMode::weighted;
};

/// Throws data_error when a DetectionSet violates its invariants (invalid or
/// out-of-image boxes, empty labels, nonpositive image dimensions).
void validate(const DetectionSet& d);

/// Picks the gazed object for one frame. The heatmap is resampled to the
/// image dimensions when they differ, the hot region is extracted at
/// opts.tau, and a detection is chosen by the overlap criterion when its box
/// intersects the hot-region box, else by nearest box centre to the region
/// centroid. Ties resolve by smaller centre-to-centroid distance, then lower
/// index. An empty detection list yields rule_fired = none. Propagates
/// no_region_error for an all-zero heatmap.
GazeSelection select_gazed_object(const Heatmap& h, const DetectionSet& d,
                                  const FusionOptions& opts = {});

const char* to_string(SelectionRule rule);
const char* to_string(OverlapRule rule);
OverlapRule overlap_rule_from_string(const std::string& name);

void to_json(nlohmann::json& j, const Detection& d);
void from_json(const nlohmann::json& j, Detection& d);
void to_json(nlohmann::json& j, const DetectionSet& d);
void from_json(const nlohmann::json& j, DetectionSet& d);
void to_json(nlohmann::json& j, const GazeSelection& s);

/// JSON Lines reader: one DetectionSet object per line, validated. Errors
/// carry the 1-based line number.
std::vector<DetectionSet> load_detections(const std::filesystem::path& path);
void save_detections(const std::vector<DetectionSet>& sets, const std::filesystem::path& path);

} // namespace gaze
