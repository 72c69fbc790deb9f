#include "gaze/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "gaze/errors.hpp"
#include "gaze/heatmap_io.hpp"
#include "gaze/rng.hpp"

namespace gaze {

namespace {

[[noreturn]] void fail(const FrameRecord& r, const std::string& rule) {
    throw data_error("record '" + r.frame_id + "': " + rule);
}

void check_box_inside(const FrameRecord& r, const BoundingBox& b, const std::string& name) {
    if (!b.valid()) fail(r, name + " is not a valid box");
    if (b.x_min < 0 || b.y_min < 0 || b.x_max > r.image_w || b.y_max > r.image_h) {
        fail(r, name + " lies outside the image");
    }
}

} // namespace

void validate_record(const FrameRecord& r, const LoadOptions& opts) {
    if (r.frame_id.empty()) throw data_error("record with empty frame_id");
    if (r.participant.empty()) fail(r, "participant is empty");
    if (r.session < 1 || r.session > 5) fail(r, "session must be in 1..5");
    if (r.trial < 1 || r.trial > 2) fail(r, "trial must be in 1..2");
    if (r.image_w < 1 || r.image_h < 1) fail(r, "image dimensions must be positive");
    check_box_inside(r, r.head_bbox, "head_bbox");

    std::size_t target_hits = 0;
    const ObjectAnnotation* target = nullptr;
    for (std::size_t i = 0; i < r.objects.size(); ++i) {
        const ObjectAnnotation& obj = r.objects[i];
        if (obj.label.empty()) fail(r, "object " + std::to_string(i) + " has an empty label");
        check_box_inside(r, obj.bbox, "object " + std::to_string(i) + " bbox");
        if (obj.label == r.target_label) {
            ++target_hits;
            target = &obj;
        }
    }
    if (target_hits != 1) {
        fail(r, "target_label '" + r.target_label + "' must appear exactly once among objects (found " +
                    std::to_string(target_hits) + ")");
    }
    // The per-session object count rule is suspended when a distractor is in
    // the scene, since the distractor may or may not count toward it.
    if (!r.distractor_present &&
        r.objects.size() != static_cast<std::size_t>(r.session)) {
        fail(r, "session " + std::to_string(r.session) + " expects " + std::to_string(r.session) +
                    " objects, found " + std::to_string(r.objects.size()));
    }
    const Point c = center(target->bbox);
    if (distance(c, r.gaze_point) > opts.gaze_center_tolerance_px) {
        fail(r, "gaze_point must coincide with the target object's bbox centre (tolerance " +
                    std::to_string(opts.gaze_center_tolerance_px) + " px)");
    }
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

void to_json(nlohmann::json& j, const FrameRecord& r) {
    nlohmann::json objects = nlohmann::json::array();
    for (const ObjectAnnotation& obj : r.objects) {
        objects.push_back({{"label", obj.label}, {"bbox", bbox_to_json(obj.bbox)}});
    }
    j = nlohmann::json{{"frame_id", r.frame_id},
                       {"participant", r.participant},
                       {"session", r.session},
                       {"trial", r.trial},
                       {"image_w", r.image_w},
                       {"image_h", r.image_h},
                       {"head_bbox", bbox_to_json(r.head_bbox)},
                       {"objects", objects},
                       {"target_label", r.target_label},
                       {"gaze_point", nlohmann::json::array({r.gaze_point.x, r.gaze_point.y})},
                       {"distractor_present", r.distractor_present}};
}

void from_json(const nlohmann::json& j, FrameRecord& r) {
    r.frame_id = j.at("frame_id").get<std::string>();
    r.participant = j.at("participant").get<std::string>();
    r.session = j.at("session").get<int>();
    r.trial = j.at("trial").get<int>();
    r.image_w = j.at("image_w").get<int>();
    r.image_h = j.at("image_h").get<int>();
    r.head_bbox = bbox_from_json(j.at("head_bbox"));
    r.objects.clear();
    for (const auto& obj : j.at("objects")) {
        r.objects.push_back({obj.at("label").get<std::string>(), bbox_from_json(obj.at("bbox"))});
    }
    r.target_label = j.at("target_label").get<std::string>();
    const auto& gp = j.at("gaze_point");
    if (!gp.is_array() || gp.size() != 2) throw data_error("gaze_point must be an array [x, y]");
    r.gaze_point = {gp[0].get<double>(), gp[1].get<double>()};
    r.distractor_present = j.at("distractor_present").get<bool>();
}

std::vector<FrameRecord> load_records(const std::filesystem::path& path, const LoadOptions& opts) {
    std::ifstream in(path);
    if (!in) throw data_error("cannot open file: " + path.string());
    std::vector<FrameRecord> records;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        FrameRecord r;
        try {
            r = nlohmann::json::parse(line).get<FrameRecord>();
        } catch (const nlohmann::json::exception& e) {
            throw data_error(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
        try {
            validate_record(r, opts);
        } catch (const data_error& e) {
            throw data_error(path.string() + " line " + std::to_string(line_no) + ": " + e.what());
        }
        records.push_back(std::move(r));
    }
    return records;
}

void save_records(const std::vector<FrameRecord>& records, const std::filesystem::path& path) {
    std::ostringstream out;
    for (const FrameRecord& r : records) {
        out << nlohmann::json(r).dump() << '\n';
    }
    atomic_write(path, out.str());
}

SplitSpec split_by_participant(const std::vector<FrameRecord>& records,
                               double test_fraction, std::uint64_t seed) {
    std::set<std::string> unique;
    for (const FrameRecord& r : records) unique.insert(r.participant);
    if (unique.size() < 2) {
        throw std::invalid_argument("split_by_participant: need at least 2 participants");
    }
    if (!(test_fraction > 0.0) || !(test_fraction < 1.0)) {
        throw std::invalid_argument("split_by_participant: test_fraction must lie in (0, 1)");
    }
    std::vector<std::string> order(unique.begin(), unique.end());
    SplitMix64 rng(seed);
    for (std::size_t i = order.size() - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng.bounded(i + 1));
        std::swap(order[i], order[j]);
    }
    const std::size_t n = order.size();
    std::size_t n_test = static_cast<std::size_t>(
        std::ceil(static_cast<double>(n) * test_fraction));
    n_test = std::clamp<std::size_t>(n_test, 1, n - 1);

    SplitSpec split;
    split.seed = seed;
    for (std::size_t i = 0; i < n; ++i) {
        if (i < n_test) {
            split.test_participants.insert(order[i]);
        } else {
            split.train_participants.insert(order[i]);
        }
    }
    return split;
}

std::pair<std::vector<FrameRecord>, std::vector<FrameRecord>> apply_split(
    const std::vector<FrameRecord>& records, const SplitSpec& split) {
    std::vector<FrameRecord> train, test;
    for (const FrameRecord& r : records) {
        if (split.test_participants.count(r.participant)) {
            test.push_back(r);
        } else if (split.train_participants.count(r.participant)) {
            train.push_back(r);
        } else {
            throw data_error("apply_split: participant '" + r.participant +
                             "' is in neither side of the split");
        }
    }
    return {std::move(train), std::move(test)};
}

DatasetSummary dataset_summary(const std::vector<FrameRecord>& records) {
    DatasetSummary s;
    std::set<std::tuple<std::string, int, int, std::string>> videos;
    for (const FrameRecord& r : records) {
        ++s.total_frames;
        if (r.distractor_present) ++s.distractor_frames;
        ++s.frames_per_participant[r.participant];
        ++s.frames_per_session[r.session];
        ++s.frames_per_trial[r.trial];
        ++s.frames_per_label[r.target_label];
        videos.emplace(r.participant, r.session, r.trial, r.target_label);
    }
    s.video_count = videos.size();
    return s;
}

} // namespace gaze
