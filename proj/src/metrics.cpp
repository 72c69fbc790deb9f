#include "gaze/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "gaze/errors.hpp"

namespace gaze {

void validate(const MetricsConfig& cfg) {
    if (cfg.grid_w < 1) throw config_error("grid_w must be positive");
    if (cfg.grid_h < 1) throw config_error("grid_h must be positive");
    if (!(cfg.sigma > 0.0)) throw config_error("sigma must be positive");
    if (!(cfg.mask_threshold > 0.0) || !(cfg.mask_threshold < 1.0)) {
        throw config_error("mask_threshold must lie in (0, 1)");
    }
    if (!(cfg.tau > 0.0) || cfg.tau > 1.0) throw config_error("tau must lie in (0, 1]");
}

double roc_auc(const std::vector<float>& scores, const std::vector<std::uint8_t>& labels) {
    if (scores.size() != labels.size()) {
        throw std::invalid_argument("roc_auc: scores and labels differ in length");
    }
    std::size_t positives = 0;
    for (std::uint8_t l : labels) positives += l ? 1 : 0;
    const std::size_t negatives = labels.size() - positives;
    if (positives == 0 || negatives == 0) {
        throw config_error("roc_auc: ground truth needs both positive and negative cells");
    }

    std::vector<std::size_t> order(scores.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return scores[a] > scores[b]; });

    // Sweep distinct score values from high to low; each group contributes a
    // trapezoid between consecutive ROC points. Ties land in one group, which
    // makes the area equal the pairwise statistic with ties counted 1/2.
    // Rates are computed as plain ratios so the (0,0)->(1,1) endpoints are exact.
    const double p = static_cast<double>(positives);
    const double n = static_cast<double>(negatives);
    double auc = 0.0;
    std::size_t tp = 0, fp = 0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        std::size_t group_tp = 0, group_fp = 0;
        while (j < order.size() && scores[order[j]] == scores[order[i]]) {
            if (labels[order[j]]) {
                ++group_tp;
            } else {
                ++group_fp;
            }
            ++j;
        }
        const double prev_tpr = static_cast<double>(tp) / p;
        tp += group_tp;
        fp += group_fp;
        const double tpr = static_cast<double>(tp) / p;
        auc += static_cast<double>(group_fp) / n * (prev_tpr + tpr) / 2.0;
        i = j;
    }
    return auc;
}

namespace {

struct AucInputs {
    std::vector<float> scores;
    std::vector<std::uint8_t> labels;
};

AucInputs auc_inputs(const Heatmap& pred, const Point& gt_point, const MetricsConfig& cfg) {
    if (!(gt_point.x >= 0.0) || !(gt_point.x <= 1.0) || !(gt_point.y >= 0.0) ||
        !(gt_point.y <= 1.0)) {
        throw std::invalid_argument("auc_frame: gt_point must lie in the unit square");
    }
    const Heatmap grid = resample(pred, cfg.grid_w, cfg.grid_h);
    const Point center{gt_point.x * cfg.grid_w, gt_point.y * cfg.grid_h};
    const Heatmap mask = gaussian_mask(center, cfg.sigma, cfg.grid_w, cfg.grid_h);
    const double cutoff = cfg.mask_threshold * static_cast<double>(mask.max_value());

    AucInputs in;
    in.scores = grid.values;
    in.labels.resize(mask.values.size());
    std::size_t positives = 0;
    for (std::size_t i = 0; i < mask.values.size(); ++i) {
        in.labels[i] = static_cast<double>(mask.values[i]) >= cutoff ? 1 : 0;
        positives += in.labels[i];
    }
    if (positives == 0 || positives == in.labels.size()) {
        throw config_error(
            "auc_frame: sigma/mask_threshold leave no usable ground-truth split on this grid");
    }
    return in;
}

} // namespace

double auc_frame(const Heatmap& pred, const Point& gt_point, const MetricsConfig& cfg) {
    validate(cfg);
    const AucInputs in = auc_inputs(pred, gt_point, cfg);
    return roc_auc(in.scores, in.labels);
}

double distance_frame(const Heatmap& pred, const Point& gt_point, int image_w, int image_h) {
    const Point cell = argmax(pred);
    const Point p{(cell.x + 0.5) / pred.width * image_w,
                  (cell.y + 0.5) / pred.height * image_h};
    const Point q{gt_point.x * image_w, gt_point.y * image_h};
    return normalized_distance(p, q, image_w, image_h);
}

namespace {

void require_aligned(const std::vector<GazeSelection>& selections,
                     const std::vector<FrameRecord>& truths) {
    if (selections.empty()) {
        throw std::invalid_argument("no frames to score");
    }
    if (selections.size() != truths.size()) {
        throw pairing_error("selections and truths differ in length (" +
                            std::to_string(selections.size()) + " vs " +
                            std::to_string(truths.size()) + ")");
    }
    for (std::size_t i = 0; i < selections.size(); ++i) {
        if (selections[i].frame_id != truths[i].frame_id) {
            throw pairing_error("frame_id mismatch at position " + std::to_string(i) + ": '" +
                                selections[i].frame_id + "' vs '" + truths[i].frame_id + "'");
        }
    }
}

bool is_correct(const GazeSelection& s, const FrameRecord& t) {
    return s.rule_fired != SelectionRule::none && s.label && *s.label == t.target_label;
}

} // namespace

double accuracy(const std::vector<GazeSelection>& selections,
                const std::vector<FrameRecord>& truths) {
    require_aligned(selections, truths);
    std::size_t correct = 0;
    for (std::size_t i = 0; i < selections.size(); ++i) {
        if (is_correct(selections[i], truths[i])) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(selections.size());
}

AccuracyBreakdown breakdown(const std::vector<GazeSelection>& selections,
                            const std::vector<FrameRecord>& truths) {
    require_aligned(selections, truths);
    std::map<std::string, std::size_t> object_hits;
    std::map<int, std::size_t> session_hits;
    AccuracyBreakdown out;
    for (std::size_t i = 0; i < selections.size(); ++i) {
        const FrameRecord& t = truths[i];
        const std::size_t hit = is_correct(selections[i], t) ? 1 : 0;
        out.object_frames[t.target_label] += 1;
        out.session_frames[t.session] += 1;
        object_hits[t.target_label] += hit;
        session_hits[t.session] += hit;
    }
    for (const auto& [label, frames] : out.object_frames) {
        out.per_object[label] =
            static_cast<double>(object_hits[label]) / static_cast<double>(frames);
    }
    for (const auto& [session, frames] : out.session_frames) {
        out.per_session[session] =
            static_cast<double>(session_hits[session]) / static_cast<double>(frames);
    }
    return out;
}

std::optional<double> distractor_error_rate(const std::vector<GazeSelection>& selections,
                                            const std::vector<FrameRecord>& truths,
                                            const std::string& distractor_label) {
    require_aligned(selections, truths);
    std::size_t present = 0, picked = 0;
    for (std::size_t i = 0; i < selections.size(); ++i) {
        const bool in_scene =
            std::any_of(truths[i].objects.begin(), truths[i].objects.end(),
                        [&](const ObjectAnnotation& o) { return o.label == distractor_label; });
        if (!in_scene) continue;
        ++present;
        if (selections[i].label && *selections[i].label == distractor_label) ++picked;
    }
    if (present == 0) return std::nullopt;
    return static_cast<double>(picked) / static_cast<double>(present);
}

Heatmap density_map(const std::vector<Point>& points, int grid_w, int grid_h) {
    if (grid_w < 1 || grid_h < 1) {
        throw std::invalid_argument("density_map: grid dimensions must be at least 1");
    }
    std::vector<std::size_t> counts(static_cast<std::size_t>(grid_w) * grid_h, 0);
    for (const Point& p : points) {
        if (!(p.x >= 0.0) || !(p.x <= 1.0) || !(p.y >= 0.0) || !(p.y <= 1.0)) {
            throw std::invalid_argument("density_map: points must lie in the unit square");
        }
        const int x = std::min(static_cast<int>(p.x * grid_w), grid_w - 1);
        const int y = std::min(static_cast<int>(p.y * grid_h), grid_h - 1);
        ++counts[static_cast<std::size_t>(y) * grid_w + x];
    }
    const std::size_t max = points.empty() ? 0 : *std::max_element(counts.begin(), counts.end());
    Heatmap out(grid_w, grid_h);
    if (max == 0) return out;
    for (std::size_t i = 0; i < counts.size(); ++i) {
        out.values[i] = static_cast<float>(static_cast<double>(counts[i]) / static_cast<double>(max));
    }
    return out;
}

FrameScore score_frame(const Heatmap& pred, const DetectionSet& detections,
                       const FrameRecord& truth, const MetricsConfig& cfg,
                       const FusionOptions& fusion) {
    FrameScore score;
    score.frame_id = truth.frame_id;
    const Point gt_norm{truth.gaze_point.x / truth.image_w, truth.gaze_point.y / truth.image_h};
    if (cfg.auc_aggregation == AucAggregation::pooled) {
        AucInputs in = auc_inputs(pred, gt_norm, cfg);
        score.auc = roc_auc(in.scores, in.labels);
        score.pooled_scores = std::move(in.scores);
        score.pooled_labels = std::move(in.labels);
    } else {
        score.auc = auc_frame(pred, gt_norm, cfg);
    }
    score.l2 = distance_frame(pred, gt_norm, truth.image_w, truth.image_h);
    score.selection = select_gazed_object(pred, detections, fusion);
    return score;
}

MetricsReport aggregate_scores(const std::vector<FrameScore>& scores,
                               const std::vector<FrameRecord>& truths,
                               const MetricsConfig& cfg,
                               const std::optional<std::string>& distractor_label) {
    if (scores.size() != truths.size()) {
        throw pairing_error("scores and truths differ in length");
    }
    std::vector<GazeSelection> selections;
    selections.reserve(scores.size());
    for (const FrameScore& s : scores) selections.push_back(s.selection);

    MetricsReport report;
    report.frame_count = scores.size();

    if (cfg.auc_aggregation == AucAggregation::pooled) {
        std::vector<float> all_scores;
        std::vector<std::uint8_t> all_labels;
        for (const FrameScore& s : scores) {
            all_scores.insert(all_scores.end(), s.pooled_scores.begin(), s.pooled_scores.end());
            all_labels.insert(all_labels.end(), s.pooled_labels.begin(), s.pooled_labels.end());
        }
        report.auc_mean = roc_auc(all_scores, all_labels);
        report.auc_stdev = 0.0;
    } else {
        double sum = 0.0;
        for (const FrameScore& s : scores) sum += s.auc;
        const double mean = sum / static_cast<double>(scores.size());
        double sq = 0.0;
        for (const FrameScore& s : scores) sq += (s.auc - mean) * (s.auc - mean);
        report.auc_mean = mean;
        report.auc_stdev = std::sqrt(sq / static_cast<double>(scores.size()));
    }

    double l2_sum = 0.0;
    for (const FrameScore& s : scores) l2_sum += s.l2;
    report.l2_mean = l2_sum / static_cast<double>(scores.size());

    report.accuracy_overall = accuracy(selections, truths);
    AccuracyBreakdown groups = breakdown(selections, truths);
    report.accuracy_per_object = std::move(groups.per_object);
    report.accuracy_per_session = std::move(groups.per_session);
    report.frames_per_object = std::move(groups.object_frames);
    report.frames_per_session = std::move(groups.session_frames);
    if (distractor_label) {
        report.distractor_error_rate = distractor_error_rate(selections, truths, *distractor_label);
    }
    return report;
}

void to_json(nlohmann::json& j, const MetricsReport& r) {
    nlohmann::json per_session = nlohmann::json::object();
    nlohmann::json session_frames = nlohmann::json::object();
    for (const auto& [session, value] : r.accuracy_per_session) {
        per_session[std::to_string(session)] = value;
    }
    for (const auto& [session, value] : r.frames_per_session) {
        session_frames[std::to_string(session)] = value;
    }
    j = nlohmann::json{
        {"auc", {{"mean", r.auc_mean}, {"stdev", r.auc_stdev}}},
        {"l2_mean", r.l2_mean},
        {"accuracy_overall", r.accuracy_overall},
        {"accuracy_per_object", r.accuracy_per_object},
        {"accuracy_per_session", per_session},
        {"frames_per_object", r.frames_per_object},
        {"frames_per_session", session_frames},
        {"distractor_error_rate", r.distractor_error_rate
                                      ? nlohmann::json(*r.distractor_error_rate)
                                      : nlohmann::json(nullptr)},
        {"frame_count", r.frame_count}};
}

namespace {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

} // namespace

std::string report_csv_per_object(const MetricsReport& r) {
    std::ostringstream out;
    out << "label,frames,accuracy\n";
    for (const auto& [label, value] : r.accuracy_per_object) {
        out << label << ',' << r.frames_per_object.at(label) << ',' << format_double(value)
            << '\n';
    }
    return out.str();
}

std::string report_csv_per_session(const MetricsReport& r) {
    std::ostringstream out;
    out << "session,frames,accuracy\n";
    for (const auto& [session, value] : r.accuracy_per_session) {
        out << session << ',' << r.frames_per_session.at(session) << ','
            << format_double(value) << '\n';
    }
    return out.str();
}

const char* to_string(AucAggregation mode) {
    return mode == AucAggregation::mean ? "mean" : "pooled";
}

AucAggregation auc_aggregation_from_string(const std::string& name) {
    if (name == "mean") return AucAggregation::mean;
    if (name == "pooled") return AucAggregation::pooled;
    throw config_error("auc_aggregation must be 'mean' or 'pooled', got '" + name + "'");
}

} // namespace gaze
