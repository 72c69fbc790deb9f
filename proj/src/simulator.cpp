#include "gaze/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "gaze/errors.hpp"
#include "gaze/heatmap_io.hpp"
#include "gaze/parallel.hpp"
#include "gaze/rng.hpp"

namespace gaze {

namespace {

constexpr int kPlacementRetries = 1000;
constexpr double kMaxPlacementIou = 0.05;

// Table band: the horizontal strip in front of the camera where objects sit.
struct Band {
    double x0, x1, y0, y1;
};

Band table_band(const SimConfig& cfg) {
    return {0.05 * cfg.image_w, 0.95 * cfg.image_w, 0.45 * cfg.image_h, 0.90 * cfg.image_h};
}

void check_probability(double v, const char* field) {
    if (!(v >= 0.0) || !(v <= 1.0)) {
        throw config_error(std::string(field) + " must lie in [0, 1]");
    }
}

std::string frame_name(std::uint64_t frame_index) {
    std::string digits = std::to_string(frame_index);
    if (digits.size() < 6) digits.insert(0, 6 - digits.size(), '0');
    return "f" + digits;
}

} // namespace

void validate(const SimConfig& cfg) {
    if (cfg.image_w < 16) throw config_error("image_w must be at least 16");
    if (cfg.image_h < 16) throw config_error("image_h must be at least 16");
    if (cfg.n_objects < 1 || cfg.n_objects > 5) {
        throw config_error("n_objects must lie in 1..5");
    }
    if (!(cfg.object_min_size > 0.0)) throw config_error("object_min_size must be positive");
    if (!(cfg.object_max_size >= cfg.object_min_size)) {
        throw config_error("object_max_size must be >= object_min_size");
    }
    const Band band = table_band(cfg);
    if (cfg.object_max_size > band.x1 - band.x0 || cfg.object_max_size > band.y1 - band.y0) {
        throw config_error("object_max_size does not fit in the table band");
    }
    if (!(cfg.gaze_sigma_frac > 0.0)) throw config_error("gaze_sigma_frac must be positive");
    if (!(cfg.gaze_offset_sigma >= 0.0)) throw config_error("gaze_offset_sigma must be >= 0");
    if (!(cfg.detection_jitter_sigma >= 0.0)) {
        throw config_error("detection_jitter_sigma must be >= 0");
    }
    check_probability(cfg.detection_dropout_p, "detection_dropout_p");
    check_probability(cfg.distractor_p, "distractor_p");
    if (!(cfg.noise_floor >= 0.0) || !(cfg.noise_floor < 1.0)) {
        throw config_error("noise_floor must lie in [0, 1)");
    }
}

namespace {

BoundingBox place_box(const SimConfig& cfg, const Band& band,
                      const std::vector<BoundingBox>& placed, SplitMix64& rng,
                      std::uint64_t frame_index) {
    for (int attempt = 0; attempt < kPlacementRetries; ++attempt) {
        const double w = rng.uniform(cfg.object_min_size, cfg.object_max_size);
        const double h = rng.uniform(cfg.object_min_size, cfg.object_max_size);
        const double x0 = rng.uniform(band.x0, band.x1 - w);
        const double y0 = rng.uniform(band.y0, band.y1 - h);
        const BoundingBox box{x0, y0, x0 + w, y0 + h};
        const bool clear = std::all_of(placed.begin(), placed.end(), [&](const BoundingBox& b) {
            return iou(box, b) <= kMaxPlacementIou;
        });
        if (clear) return box;
    }
    throw placement_error("frame " + frame_name(frame_index) + ": could not place " +
                          std::to_string(placed.size() + 1) + " non-overlapping objects");
}

Heatmap render_gaze_heatmap(const SimConfig& cfg, const Point& blob_center, SplitMix64& rng) {
    const int w = cfg.image_w;
    const int h = cfg.image_h;
    const double sigma = cfg.gaze_sigma_frac * cfg.image_w;
    const double inv = 1.0 / (2.0 * sigma * sigma);

    std::vector<double> col(w), row(h);
    for (int x = 0; x < w; ++x) {
        const double dx = (x + 0.5) - blob_center.x;
        col[x] = std::exp(-dx * dx * inv);
    }
    for (int y = 0; y < h; ++y) {
        const double dy = (y + 0.5) - blob_center.y;
        row[y] = std::exp(-dy * dy * inv);
    }
    double col_max = *std::max_element(col.begin(), col.end());
    double row_max = *std::max_element(row.begin(), row.end());
    if (col_max <= 0.0 || row_max <= 0.0) {
        // Blob centre so far outside the image that the separable factors
        // underflow; degrade to a delta at the nearest cell.
        const int nx = std::clamp(static_cast<int>(std::floor(blob_center.x)), 0, w - 1);
        const int ny = std::clamp(static_cast<int>(std::floor(blob_center.y)), 0, h - 1);
        std::fill(col.begin(), col.end(), 0.0);
        std::fill(row.begin(), row.end(), 0.0);
        col[nx] = 1.0;
        row[ny] = 1.0;
        col_max = row_max = 1.0;
    }
    const double blob_peak = col_max * row_max;

    std::vector<double> cells(static_cast<std::size_t>(w) * h);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            cells[static_cast<std::size_t>(y) * w + x] = col[x] * row[y] / blob_peak;
        }
    }
    double max = 1.0;  // peak cell is exactly 1 after the division above
    if (cfg.noise_floor > 0.0) {
        max = 0.0;
        for (double& v : cells) {
            v += cfg.noise_floor * rng.uniform();
            max = std::max(max, v);
        }
    }
    Heatmap out(w, h);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        out.values[i] = static_cast<float>(cells[i] / max);
    }
    return out;
}

} // namespace

SimFrame synth_frame(const SimConfig& cfg, std::uint64_t frame_index) {
    validate(cfg);
    SplitMix64 rng(stream_seed(cfg.seed, frame_index));
    const Band band = table_band(cfg);

    const bool with_distractor = rng.uniform() < cfg.distractor_p;

    std::array<const char*, kSimObjectLabels.size()> labels = kSimObjectLabels;
    for (std::size_t i = labels.size() - 1; i > 0; --i) {
        std::swap(labels[i], labels[rng.bounded(i + 1)]);
    }

    const int total_boxes = cfg.n_objects + (with_distractor ? 1 : 0);
    std::vector<BoundingBox> boxes;
    boxes.reserve(total_boxes);
    for (int i = 0; i < total_boxes; ++i) {
        boxes.push_back(place_box(cfg, band, boxes, rng, frame_index));
    }

    const int target = static_cast<int>(rng.bounded(static_cast<std::uint64_t>(cfg.n_objects)));

    FrameRecord truth;
    truth.frame_id = frame_name(frame_index);
    truth.participant = "p0" + std::to_string(frame_index % 10);
    truth.session = cfg.n_objects;
    truth.trial = 1 + static_cast<int>((frame_index / 10) % 2);
    truth.image_w = cfg.image_w;
    truth.image_h = cfg.image_h;
    truth.head_bbox = {0.41 * cfg.image_w, 0.08 * cfg.image_h, 0.59 * cfg.image_w,
                       0.32 * cfg.image_h};
    for (int i = 0; i < cfg.n_objects; ++i) {
        truth.objects.push_back({labels[i], boxes[i]});
    }
    if (with_distractor) {
        truth.objects.push_back({kSimDistractorLabel, boxes[cfg.n_objects]});
    }
    truth.target_label = labels[target];
    truth.gaze_point = center(boxes[target]);
    truth.distractor_present = with_distractor;

    const Point blob_center{
        truth.gaze_point.x + rng.gaussian() * cfg.gaze_offset_sigma * cfg.image_w,
        truth.gaze_point.y + rng.gaussian() * cfg.gaze_offset_sigma * cfg.image_h};
    Heatmap heatmap = render_gaze_heatmap(cfg, blob_center, rng);

    DetectionSet detections;
    detections.frame_id = truth.frame_id;
    detections.image_w = cfg.image_w;
    detections.image_h = cfg.image_h;
    for (const ObjectAnnotation& obj : truth.objects) {
        const double dx = rng.gaussian() * cfg.detection_jitter_sigma;
        const double dy = rng.gaussian() * cfg.detection_jitter_sigma;
        const bool dropped = rng.uniform() < cfg.detection_dropout_p;
        const double score = 0.75 + 0.25 * rng.uniform();
        if (dropped) continue;
        BoundingBox box{obj.bbox.x_min + dx, obj.bbox.y_min + dy, obj.bbox.x_max + dx,
                        obj.bbox.y_max + dy};
        box.x_min = std::clamp(box.x_min, 0.0, static_cast<double>(cfg.image_w));
        box.x_max = std::clamp(box.x_max, 0.0, static_cast<double>(cfg.image_w));
        box.y_min = std::clamp(box.y_min, 0.0, static_cast<double>(cfg.image_h));
        box.y_max = std::clamp(box.y_max, 0.0, static_cast<double>(cfg.image_h));
        detections.detections.push_back({box, obj.label, score});
    }

    return {std::move(heatmap), std::move(detections), std::move(truth)};
}

MetricsReport run_simulation(const SimConfig& cfg, std::size_t n_frames,
                             const MetricsConfig& metrics, const FusionOptions& fusion,
                             int jobs) {
    validate(cfg);
    validate(metrics);
    if (n_frames < 1) throw std::invalid_argument("run_simulation: n_frames must be >= 1");

    std::vector<FrameScore> scores(n_frames);
    std::vector<FrameRecord> truths(n_frames);
    parallel_for(n_frames, jobs, [&](std::size_t i) {
        SimFrame frame = synth_frame(cfg, i);
        scores[i] = score_frame(frame.heatmap, frame.detections, frame.truth, metrics, fusion);
        truths[i] = std::move(frame.truth);
    });
    return aggregate_scores(scores, truths, metrics, kSimDistractorLabel);
}

void persist_dataset(const SimConfig& cfg, std::size_t n_frames,
                     const std::filesystem::path& out_dir) {
    validate(cfg);
    if (n_frames < 1) throw std::invalid_argument("persist_dataset: n_frames must be >= 1");
    std::filesystem::create_directories(out_dir);

    std::vector<FrameRecord> records;
    std::vector<DetectionSet> detections;
    records.reserve(n_frames);
    detections.reserve(n_frames);
    for (std::size_t i = 0; i < n_frames; ++i) {
        SimFrame frame = synth_frame(cfg, i);
        write_ghm1(frame.heatmap, out_dir / (frame.truth.frame_id + ".ghm1"));
        records.push_back(std::move(frame.truth));
        detections.push_back(std::move(frame.detections));
    }
    save_records(records, out_dir / "annotations.jsonl");
    save_detections(detections, out_dir / "detections.jsonl");
}

} // namespace gaze
