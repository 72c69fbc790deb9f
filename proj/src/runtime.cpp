#include "gaze/runtime.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "gaze/errors.hpp"
#include "gaze/heatmap_io.hpp"
#include "gaze/parallel.hpp"

namespace gaze {

std::vector<FrameBundle> collect_bundles(const std::vector<FrameRecord>& records,
                                         const std::filesystem::path& data_dir) {
    const std::vector<DetectionSet> detection_sets = load_detections(data_dir / "detections.jsonl");
    std::map<std::string, const DetectionSet*> by_frame;
    for (const DetectionSet& d : detection_sets) {
        if (!by_frame.emplace(d.frame_id, &d).second) {
            throw data_error("duplicate frame_id '" + d.frame_id + "' in detections.jsonl");
        }
    }

    std::vector<FrameBundle> bundles;
    bundles.reserve(records.size());
    std::vector<std::string> missing;
    std::map<std::string, bool> seen;
    for (const FrameRecord& r : records) {
        if (!seen.emplace(r.frame_id, true).second) {
            throw data_error("duplicate frame_id '" + r.frame_id + "' in annotations");
        }
        const auto it = by_frame.find(r.frame_id);
        const std::filesystem::path heatmap = data_dir / (r.frame_id + ".ghm1");
        if (it == by_frame.end() || !std::filesystem::exists(heatmap)) {
            missing.push_back(r.frame_id);
            continue;
        }
        FrameBundle bundle;
        bundle.frame_id = r.frame_id;
        bundle.heatmap_path = heatmap;
        bundle.detections = *it->second;
        bundle.truth = r;
        bundles.push_back(std::move(bundle));
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "missing heatmap or detections bundle for " << missing.size() << " frame(s):";
        for (const std::string& id : missing) msg << ' ' << id;
        throw data_error(msg.str());
    }
    std::sort(bundles.begin(), bundles.end(),
              [](const FrameBundle& a, const FrameBundle& b) { return a.frame_id < b.frame_id; });
    return bundles;
}

MetricsReport evaluate_dataset(const std::filesystem::path& annotations_path,
                               const std::filesystem::path& data_dir, const RunConfig& cfg,
                               const std::optional<std::string>& distractor_label, int jobs) {
    const std::vector<FrameRecord> records = load_records(annotations_path);
    if (records.empty()) {
        throw data_error("no frames in " + annotations_path.string());
    }
    std::vector<FrameBundle> bundles = collect_bundles(records, data_dir);

    std::vector<FrameScore> scores(bundles.size());
    std::vector<FrameRecord> truths(bundles.size());
    const FusionOptions fusion = cfg.fusion_options();
    parallel_for(bundles.size(), jobs, [&](std::size_t i) {
        const FrameBundle& bundle = bundles[i];
        const Heatmap heatmap = read_ghm1(bundle.heatmap_path);
        scores[i] = score_frame(heatmap, bundle.detections, *bundle.truth, cfg.metrics, fusion);
        truths[i] = *bundle.truth;
    });
    return aggregate_scores(scores, truths, cfg.metrics, distractor_label);
}

void write_report_files(const MetricsReport& report, const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    atomic_write(out_dir / "report.json", nlohmann::json(report).dump(2) + "\n");
    atomic_write(out_dir / "per_object.csv", report_csv_per_object(report));
    atomic_write(out_dir / "per_session.csv", report_csv_per_session(report));
}

GazeSelection run_select(const std::filesystem::path& heatmap_path,
                         const std::filesystem::path& detections_path,
                         const FusionOptions& opts) {
    const Heatmap heatmap = read_ghm1(heatmap_path);

    std::ifstream in(detections_path);
    if (!in) throw data_error("cannot open file: " + detections_path.string());
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    DetectionSet detections;
    if (text.find_first_not_of(" \t\r\n") == std::string::npos) {
        detections.image_w = heatmap.width;
        detections.image_h = heatmap.height;
    } else {
        try {
            detections = nlohmann::json::parse(text).get<DetectionSet>();
        } catch (const nlohmann::json::exception& e) {
            throw data_error(detections_path.string() + ": " + e.what());
        }
        validate(detections);
    }
    return select_gazed_object(heatmap, detections, opts);
}

Heatmap density_from_records(const std::vector<FrameRecord>& records, int grid_w, int grid_h) {
    std::vector<Point> points;
    points.reserve(records.size());
    for (const FrameRecord& r : records) {
        points.push_back({r.gaze_point.x / r.image_w, r.gaze_point.y / r.image_h});
    }
    return density_map(points, grid_w, grid_h);
}

} // namespace gaze
