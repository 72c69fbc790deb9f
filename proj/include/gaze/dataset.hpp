#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gaze/geometry.hpp"

namespace gaze {

struct ObjectAnnotation {
    std::string label;
    BoundingBox bbox;

    bool operator==(const ObjectAnnotation&) const = default;
};

/// One annotated frame. The gaze target point is the centre of the gazed
/// object's box, so validation enforces that the stored point matches the
/// target box centre within a small tolerance.
struct FrameRecord {
    std::string frame_id;
    std::string participant;
    int session = 0;  // 1..5, equals the number of scene objects
    int trial = 0;    // 1..2
    int image_w = 0;
    int image_h = 0;
    BoundingBox head_bbox;
    std::vector<ObjectAnnotation> objects;
    std::string target_label;
    Point gaze_point;  // pixels
    bool distractor_present = false;

    bool operator==(const FrameRecord&) const = default;
};

struct LoadOptions {
    /// Allowed distance between gaze_point and the target box centre.
    double gaze_center_tolerance_px = 2.0;
};

/// Throws data_error naming the record and violated rule.
void validate_record(const FrameRecord& r, const LoadOptions& opts = {});

/// Reads JSON Lines annotations, validating every record. Parse and
/// validation errors carry the 1-based line number.
std::vector<FrameRecord> load_records(const std::filesystem::path& path,
                                      const LoadOptions& opts = {});
void save_records(const std::vector<FrameRecord>& records, const std::filesystem::path& path);

void to_json(nlohmann::json& j, const FrameRecord& r);
void from_json(const nlohmann::json& j, FrameRecord& r);

struct SplitSpec {
    std::set<std::string> train_participants;
    std::set<std::string> test_participants;
    std::uint64_t seed = 0;
};

/// Participant-disjoint split: shuffles the distinct participants with a
/// seeded generator and assigns ceil(N * test_fraction) of them to test.
/// Deterministic given the seed. Throws std::invalid_argument when fewer
/// than two participants exist or test_fraction is outside (0, 1).
SplitSpec split_by_participant(const std::vector<FrameRecord>& records,
                               double test_fraction, std::uint64_t seed);

/// Partitions records into (train, test) according to the split.
std::pair<std::vector<FrameRecord>, std::vector<FrameRecord>> apply_split(
    const std::vector<FrameRecord>& records, const SplitSpec& split);

struct DatasetSummary {
    std::size_t total_frames = 0;
    std::size_t distractor_frames = 0;
    /// Distinct (participant, session, trial, target_label) recordings.
    std::size_t video_count = 0;
    std::map<std::string, std::size_t> frames_per_participant;
    std::map<int, std::size_t> frames_per_session;
    std::map<int, std::size_t> frames_per_trial;
    std::map<std::string, std::size_t> frames_per_label;
};

DatasetSummary dataset_summary(const std::vector<FrameRecord>& records);

} // namespace gaze
