#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "gaze/dataset.hpp"
#include "gaze/fusion.hpp"
#include "gaze/geometry.hpp"
#include "gaze/heatmap.hpp"

namespace gaze {

/// How per-frame ROC data is folded into the reported AUC.
enum class AucAggregation {
    mean,    // arithmetic mean of per-frame AUCs
    pooled,  // one ROC over all (score, label) pairs of the run
};

struct MetricsConfig {
    int grid_w = 64;                // AUC discretization
    int grid_h = 64;
    double sigma = 3.0;             // Gaussian mask width, grid cells
    double mask_threshold = 0.5;    // fraction of the mask peak
    double tau = 0.5;               // hottest-region fraction
    AucAggregation auc_aggregation = AucAggregation::mean;
};

/// Throws config_error naming the offending field.
void validate(const MetricsConfig& cfg);

struct MetricsReport {
    double auc_mean = 0.0;
    double auc_stdev = 0.0;
    double l2_mean = 0.0;
    double accuracy_overall = 0.0;
    std::map<std::string, double> accuracy_per_object;
    std::map<int, double> accuracy_per_session;
    std::map<std::string, std::size_t> frames_per_object;
    std::map<int, std::size_t> frames_per_session;
    std::optional<double> distractor_error_rate;
    std::size_t frame_count = 0;

    bool operator==(const MetricsReport&) const = default;
};

/// Trapezoidal area under the ROC of scores against binary labels, swept
/// over every distinct score. Equals the pairwise ranking statistic with
/// ties counted 1/2. Throws config_error when either class is empty.
double roc_auc(const std::vector<float>& scores, const std::vector<std::uint8_t>& labels);

/// Per-frame AUC: resamples pred to the configured grid, thresholds a
/// Gaussian confidence mask centred at the ground-truth point (normalized
/// unit-square coordinates) to obtain binary cell labels, then scores the
/// prediction values with roc_auc. Throws config_error when sigma /
/// mask_threshold leave zero positive or zero negative cells on the grid.
double auc_frame(const Heatmap& pred, const Point& gt_point, const MetricsConfig& cfg);

/// Normalized L2 distance between the argmax cell centre and the
/// ground-truth point (normalized coordinates), on an image whose width and
/// height count as 1.
double distance_frame(const Heatmap& pred, const Point& gt_point, int image_w, int image_h);

/// Fraction of frames whose selected label equals the ground-truth target
/// label; frames with rule_fired = none count as misses. Lists must be
/// aligned by frame_id (pairing_error otherwise, std::invalid_argument when
/// empty).
double accuracy(const std::vector<GazeSelection>& selections,
                const std::vector<FrameRecord>& truths);

struct AccuracyBreakdown {
    std::map<std::string, double> per_object;
    std::map<int, double> per_session;
    std::map<std::string, std::size_t> object_frames;
    std::map<int, std::size_t> session_frames;
};

AccuracyBreakdown breakdown(const std::vector<GazeSelection>& selections,
                            const std::vector<FrameRecord>& truths);

/// Among frames whose object list contains distractor_label, the fraction
/// where the selection picked the distractor. Absent when no frame contains
/// the distractor.
std::optional<double> distractor_error_rate(const std::vector<GazeSelection>& selections,
                                            const std::vector<FrameRecord>& truths,
                                            const std::string& distractor_label);

/// 2D histogram of normalized unit-square points, scaled by its maximum
/// count; all-zero when points is empty.
Heatmap density_map(const std::vector<Point>& points, int grid_w, int grid_h);

/// Everything the evaluation needs from one frame. pooled_scores /
/// pooled_labels are filled only under AucAggregation::pooled.
struct FrameScore {
    std::string frame_id;
    double auc = 0.0;
    double l2 = 0.0;
    GazeSelection selection;
    std::vector<float> pooled_scores;
    std::vector<std::uint8_t> pooled_labels;
};

/// Scores one frame: AUC + distance against the record's gaze point, and
/// the fused object selection. Shared by the simulator loop and the file
/// evaluation path so both produce identical reports.
FrameScore score_frame(const Heatmap& pred, const DetectionSet& detections,
                       const FrameRecord& truth, const MetricsConfig& cfg,
                       const FusionOptions& fusion);

/// Deterministic fold of per-frame scores (in list order) into a report.
MetricsReport aggregate_scores(const std::vector<FrameScore>& scores,
                               const std::vector<FrameRecord>& truths,
                               const MetricsConfig& cfg,
                               const std::optional<std::string>& distractor_label);

void to_json(nlohmann::json& j, const MetricsReport& r);
std::string report_csv_per_object(const MetricsReport& r);
std::string report_csv_per_session(const MetricsReport& r);

const char* to_string(AucAggregation mode);
AucAggregation auc_aggregation_from_string(const std::string& name);

} // namespace gaze
