#include "gaze/fusion.hpp"

#include <fstream>
#include <sstream>

#include "gaze/errors.hpp"
#include "gaze/heatmap_io.hpp"

namespace gaze {

void validate(const DetectionSet& d) {
    if (d.image_w < 1 || d.image_h < 1) {
        throw data_error("detection set '" + d.frame_id + "': image dimensions must be positive");
    }
    for (std::size_t i = 0; i < d.detections.size(); ++i) {
        const Detection& det = d.detections[i];
        if (!det.bbox.valid()) {
            throw data_error("detection set '" + d.frame_id + "': detection " +
                             std::to_string(i) + " has an invalid bbox");
        }
        if (det.bbox.x_min < 0 || det.bbox.y_min < 0 || det.bbox.x_max > d.image_w ||
            det.bbox.y_max > d.image_h) {
            throw data_error("detection set '" + d.frame_id + "': detection " +
                             std::to_string(i) + " lies outside the image");
        }
        if (det.label.empty()) {
            throw data_error("detection set '" + d.frame_id + "': detection " +
                             std::to_string(i) + " has an empty label");
        }
        if (det.score && (!(*det.score >= 0.0) || !(*det.score <= 1.0))) {
            throw data_error("detection set '" + d.frame_id + "': detection " +
                             std::to_string(i) + " score outside [0, 1]");
        }
    }
}

GazeSelection select_gazed_object(const Heatmap& h, const DetectionSet& d,
                                  const FusionOptions& opts) {
    validate(d);
    Heatmap scaled;
    const Heatmap* grid = &h;
    if (h.width != d.image_w || h.height != d.image_h) {
        scaled = resample(h, d.image_w, d.image_h);
        grid = &scaled;
    }
    const HotRegion hot = hottest_region(*grid, opts.tau, opts.centroid_mode);

    GazeSelection out;
    out.frame_id = d.frame_id;
    out.hot_region = hot;
    if (d.detections.empty()) {
        out.rule_fired = SelectionRule::none;
        return out;
    }

    // Overlap rule over detections whose box intersects the hot-region box.
    int best = -1;
    double best_iou = 0.0;
    double best_dist = 0.0;
    for (std::size_t i = 0; i < d.detections.size(); ++i) {
        const double v = iou(hot.bbox, d.detections[i].bbox);
        if (!(v > 0.0)) continue;
        const double dist = distance(center(d.detections[i].bbox), hot.centroid);
        bool better = false;
        if (best < 0) {
            better = true;
        } else if (opts.overlap_rule == OverlapRule::largest) {
            better = v > best_iou || (v == best_iou && dist < best_dist);
        } else {
            better = v < best_iou || (v == best_iou && dist < best_dist);
        }
        if (better) {
            best = static_cast<int>(i);
            best_iou = v;
            best_dist = dist;
        }
    }
    if (best >= 0) {
        out.rule_fired = SelectionRule::overlap;
        out.selected = best;
        out.label = d.detections[best].label;
        return out;
    }

    // No intersection anywhere: nearest box centre to the region centroid.
    best = 0;
    best_dist = distance(center(d.detections[0].bbox), hot.centroid);
    for (std::size_t i = 1; i < d.detections.size(); ++i) {
        const double dist = distance(center(d.detections[i].bbox), hot.centroid);
        if (dist < best_dist) {
            best = static_cast<int>(i);
            best_dist = dist;
        }
    }
    out.rule_fired = SelectionRule::nearest;
    out.selected = best;
    out.label = d.detections[best].label;
    return out;
}

const char* to_string(SelectionRule rule) {
    switch (rule) {
        case SelectionRule::overlap: return "overlap";
        case SelectionRule::nearest: return "nearest";
        default: return "none";
    }
}

const char* to_string(OverlapRule rule) {
    return rule == OverlapRule::largest ? "largest" : "smallest";
}

OverlapRule overlap_rule_from_string(const std::string& name) {
    if (name == "largest") return OverlapRule::largest;
    if (name == "smallest") return OverlapRule::smallest;
    throw config_error("overlap_rule must be 'largest' or 'smallest', got '" + name + "'");
}

namespace {

nlohmann::json bbox_to_json(const BoundingBox& b) {
    return nlohmann::json::array({b.x_min, b.y_min, b.x_max, b.y_max});
}

BoundingBox bbox_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 4) {
        throw data_error("bbox must be an array [x_min, y_min, x_max, y_max]");
    }
    return {j[0].get<double>(), j[1].get<double>(), j[2].get<double>(), j[3].get<double>()};
}

} // namespace

void to_json(nlohmann::json& j, const Detection& d) {
    j = nlohmann::json{{"label", d.label}, {"bbox", bbox_to_json(d.bbox)}};
    if (d.score) j["score"] = *d.score;
}

void from_json(const nlohmann::json& j, Detection& d) {
    d.label = j.at("label").get<std::string>();
    d.bbox = bbox_from_json(j.at("bbox"));
    d.score = j.contains("score") ? std::optional<double>(j.at("score").get<double>())
                                  : std::nullopt;
}

void to_json(nlohmann::json& j, const DetectionSet& d) {
    j = nlohmann::json{{"frame_id", d.frame_id},
                       {"image_w", d.image_w},
                       {"image_h", d.image_h},
                       {"detections", d.detections}};
}

void from_json(const nlohmann::json& j, DetectionSet& d) {
    d.frame_id = j.at("frame_id").get<std::string>();
    d.image_w = j.at("image_w").get<int>();
    d.image_h = j.at("image_h").get<int>();
    d.detections = j.at("detections").get<std::vector<Detection>>();
}

void to_json(nlohmann::json& j, const GazeSelection& s) {
    j = nlohmann::json{
        {"frame_id", s.frame_id},
        {"selected", s.selected ? nlohmann::json(*s.selected) : nlohmann::json(nullptr)},
        {"label", s.label ? nlohmann::json(*s.label) : nlohmann::json(nullptr)},
        {"rule_fired", to_string(s.rule_fired)},
        {"hot_region",
         {{"threshold_used", s.hot_region.threshold_used},
          {"bbox", bbox_to_json(s.hot_region.bbox)},
          {"centroid", nlohmann::json::array({s.hot_region.centroid.x, s.hot_region.centroid.y})},
          {"cell_count", s.hot_region.cell_count}}}};
}

std::vector<DetectionSet> load_detections(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path.string());
    std::vector<DetectionSet> sets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        DetectionSet d;
        try {
            d = nlohmann::json::parse(line).get<DetectionSet>();
        } catch (const nlohmann::json::exception& e) {
            throw data_error(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            validate(d);
        } catch (const data_error& e) {
            throw data_error(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
        sets.push_back(std::move(d));
    }
    return sets;
}

void save_detections(const std::vector<DetectionSet>& sets, const std::filesystem::path& path) {
    std::ostringstream out;
    for (const DetectionSet& d : sets) {
        out << nlohmann::json(d).dump() << '\n';
    }
    atomic_write(path, out.str());
}

} // namespace gaze
