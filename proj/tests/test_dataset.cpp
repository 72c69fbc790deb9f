#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "gaze/dataset.hpp"
#include "gaze/errors.hpp"

using namespace gaze;

namespace {

FrameRecord make_record(const std::string& frame_id, const std::string& participant,
                        int session, int trial) {
    FrameRecord r;
    r.frame_id = frame_id;
    r.participant = participant;
    r.session = session;
    r.trial = trial;
    r.image_w = 320;
    r.image_h = 240;
    r.head_bbox = {130, 20, 190, 80};
    for (int i = 0; i < session; ++i) {
        const double x0 = 20 + 55.0 * i;
        r.objects.push_back({"obj" + std::to_string(i), {x0, 140, x0 + 40, 180}});
    }
    r.target_label = "obj0";
    r.gaze_point = {40, 160};
    return r;
}

struct TempDir {
    std::filesystem::path path;
    explicit TempDir(const std::string& name)
        : path(std::filesystem::temp_directory_path() / name) {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("validate_record accepts a well-formed record") {
    CHECK_NOTHROW(validate_record(make_record("f0", "p00", 3, 1)));
}

TEST_CASE("gaze point must sit at the target box centre") {
    FrameRecord r = make_record("f0", "p00", 2, 1);
    r.gaze_point = {41.5, 161.0};  // within the 2 px default
    CHECK_NOTHROW(validate_record(r));
    r.gaze_point = {45, 160};
    CHECK_THROWS_WITH_AS(validate_record(r), doctest::Contains("centre"), data_error);
    CHECK_NOTHROW(validate_record(r, {6.0}));  // configurable tolerance
}

TEST_CASE("target label must appear exactly once") {
    FrameRecord r = make_record("f0", "p00", 2, 1);
    r.target_label = "missing";
    CHECK_THROWS_WITH_AS(validate_record(r), doctest::Contains("exactly once"), data_error);
    r = make_record("f1", "p00", 2, 1);
    r.objects[1].label = "obj0";
    CHECK_THROWS_AS(validate_record(r), data_error);
}

TEST_CASE("session rules") {
    FrameRecord r = make_record("f0", "p00", 3, 1);
    r.session = 6;
    CHECK_THROWS_AS(validate_record(r), data_error);
    r = make_record("f0", "p00", 3, 1);
    r.trial = 3;
    CHECK_THROWS_AS(validate_record(r), data_error);

    // object count must match the session number...
    r = make_record("f0", "p00", 3, 1);
    r.objects.pop_back();
    r.objects[1].label = "obj_extra";
    CHECK_THROWS_WITH_AS(validate_record(r), doctest::Contains("objects"), data_error);

    // ...unless a distractor is in the scene
    r = make_record("f0", "p00", 2, 2);
    r.objects.push_back({"crisps", {250, 140, 290, 180}});
    r.distractor_present = true;
    CHECK_NOTHROW(validate_record(r));
}

TEST_CASE("boxes must stay inside the image") {
    FrameRecord r = make_record("f0", "p00", 1, 1);
    r.head_bbox.x_max = 500;
    CHECK_THROWS_WITH_AS(validate_record(r), doctest::Contains("outside"), data_error);
    r = make_record("f0", "p00", 1, 1);
    r.objects[0].bbox.y_min = -3;
    CHECK_THROWS_AS(validate_record(r), data_error);
}

TEST_CASE("load_records round-trips save_records") {
    TempDir dir("gaze_dataset_roundtrip");
    std::vector<FrameRecord> records;
    for (int i = 0; i < 6; ++i) {
        records.push_back(make_record("f" + std::to_string(i), "p0" + std::to_string(i % 3),
                                      1 + i % 5, 1 + i % 2));
    }
    records[3].objects.push_back({"crisps", {250, 140, 290, 180}});
    records[3].distractor_present = true;
    save_records(records, dir.path / "ann.jsonl");
    CHECK(load_records(dir.path / "ann.jsonl") == records);
}

TEST_CASE("load_records reports the line number on parse errors") {
    TempDir dir("gaze_dataset_parse");
    std::ofstream out(dir.path / "bad.jsonl");
    out << nlohmann::json(make_record("f0", "p00", 1, 1)).dump() << "\n";
    out << "{\"frame_id\": \"f1\", \"truncated\n";
    out.close();
    CHECK_THROWS_WITH_AS(load_records(dir.path / "bad.jsonl"), doctest::Contains("line 2"),
                         data_error);
}

TEST_CASE("load_records reports the line number on invariant violations") {
    TempDir dir("gaze_dataset_invariant");
    FrameRecord bad = make_record("f1", "p00", 1, 1);
    bad.gaze_point = {100, 100};
    std::ofstream out(dir.path / "bad.jsonl");
    out << nlohmann::json(make_record("f0", "p00", 1, 1)).dump() << "\n";
    out << nlohmann::json(bad).dump() << "\n";
    out.close();
    try {
        load_records(dir.path / "bad.jsonl");
        FAIL("expected data_error");
    } catch (const data_error& e) {
        const std::string what = e.what();
        CHECK(what.find("line 2") != std::string::npos);
        CHECK(what.find("f1") != std::string::npos);
        CHECK(what.find("centre") != std::string::npos);
    }
}

TEST_CASE("split_by_participant honours the 7/3 protocol") {
    std::vector<FrameRecord> records;
    for (int p = 0; p < 10; ++p) {
        for (int f = 0; f < 4; ++f) {
            records.push_back(
                make_record("f" + std::to_string(p * 4 + f), "p0" + std::to_string(p), 1, 1));
        }
    }
    const SplitSpec split = split_by_participant(records, 0.3, 42);
    CHECK(split.train_participants.size() == 7);
    CHECK(split.test_participants.size() == 3);

    std::set<std::string> overlap;
    for (const auto& p : split.test_participants) {
        if (split.train_participants.count(p)) overlap.insert(p);
    }
    CHECK(overlap.empty());

    const auto [train, test] = apply_split(records, split);
    CHECK(train.size() + test.size() == records.size());
    std::set<std::string> train_ids, test_ids;
    for (const auto& r : train) train_ids.insert(r.frame_id);
    for (const auto& r : test) test_ids.insert(r.frame_id);
    for (const auto& id : test_ids) CHECK(train_ids.count(id) == 0);

    // deterministic given the seed
    const SplitSpec again = split_by_participant(records, 0.3, 42);
    CHECK(again.train_participants == split.train_participants);
    CHECK(again.test_participants == split.test_participants);

    const SplitSpec other = split_by_participant(records, 0.3, 43);
    CHECK(other.train_participants.size() == 7);
}

TEST_CASE("split_by_participant rejects bad inputs") {
    std::vector<FrameRecord> records{make_record("f0", "p00", 1, 1),
                                     make_record("f1", "p01", 1, 1)};
    CHECK_THROWS_AS(split_by_participant(records, 0.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_by_participant(records, 1.0, 1), std::invalid_argument);
    CHECK_THROWS_AS(split_by_participant({make_record("f0", "p00", 1, 1)}, 0.3, 1),
                    std::invalid_argument);
}

TEST_CASE("dataset_summary on an empty list is all zero") {
    const DatasetSummary s = dataset_summary({});
    CHECK(s.total_frames == 0);
    CHECK(s.video_count == 0);
    CHECK(s.distractor_frames == 0);
    CHECK(s.frames_per_participant.empty());
}

TEST_CASE("dataset_summary reproduces the 250-video structure") {
    // 10 participants x 5 sessions x 2 trials; the second trial carries the
    // distractor as one of the session's objects, so it contributes one
    // fewer gazed-object recording: 10 * ((1+2+3+4+5) + (0+1+2+3+4)) = 250.
    std::vector<FrameRecord> records;
    int frame = 0;
    for (int p = 0; p < 10; ++p) {
        const std::string participant = "p0" + std::to_string(p);
        for (int session = 1; session <= 5; ++session) {
            for (int trial = 1; trial <= 2; ++trial) {
                const int gazed = trial == 1 ? session : session - 1;
                for (int target = 0; target < gazed; ++target) {
                    for (int i = 0; i < 3; ++i) {  // a few frames per video
                        FrameRecord r = make_record("f" + std::to_string(frame++), participant,
                                                    session, trial);
                        if (trial == 2) {
                            r.objects.back().label = "crisps";
                            r.distractor_present = true;
                        }
                        r.target_label = "obj" + std::to_string(target);
                        r.gaze_point = center(r.objects[target].bbox);
                        validate_record(r);
                        records.push_back(std::move(r));
                    }
                }
            }
        }
    }
    const DatasetSummary s = dataset_summary(records);
    CHECK(s.video_count == 250);
    CHECK(s.total_frames == records.size());
    CHECK(s.frames_per_participant.size() == 10);
    CHECK(s.frames_per_session.size() == 5);
    CHECK(s.frames_per_trial.size() == 2);

    // totals equal the sum of the per-group counts
    std::size_t sum = 0;
    for (const auto& [participant, count] : s.frames_per_participant) sum += count;
    CHECK(sum == s.total_frames);
    sum = 0;
    for (const auto& [session, count] : s.frames_per_session) sum += count;
    CHECK(sum == s.total_frames);

    // brute-force recount of one slice
    std::size_t session3 = 0;
    for (const auto& r : records) {
        if (r.session == 3) ++session3;
    }
    CHECK(s.frames_per_session.at(3) == session3);
}
