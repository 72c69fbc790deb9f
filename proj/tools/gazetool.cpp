// Command-line front end: select / evaluate / simulate / density.
// Exit codes: 0 success, 1 input or validation error, 2 no hottest region.

#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "gaze/config.hpp"
#include "gaze/errors.hpp"
#include "gaze/heatmap_io.hpp"
#include "gaze/runtime.hpp"
#include "gaze/simulator.hpp"

namespace {

gaze::RunConfig load_config_or_default(const std::string& path) {
    if (path.empty()) return {};
    return gaze::load_run_config(path);
}

int cmd_select(const std::string& heatmap_path, const std::string& detections_path,
               const std::string& config_path, const std::optional<double>& tau) {
    gaze::RunConfig cfg = load_config_or_default(config_path);
    gaze::FusionOptions opts = cfg.fusion_options();
    if (tau) {
        if (!(*tau > 0.0) || *tau > 1.0) throw gaze::config_error("tau must lie in (0, 1]");
        opts.tau = *tau;
    }
    const gaze::GazeSelection selection = gaze::run_select(heatmap_path, detections_path, opts);
    std::cout << nlohmann::json(selection).dump(2) << "\n";
    return 0;
}

int cmd_evaluate(const std::string& annotations_path, const std::string& data_dir,
                 const std::string& config_path, const std::string& out_dir,
                 const std::optional<std::string>& distractor_label, int jobs) {
    const gaze::RunConfig cfg = load_config_or_default(config_path);
    const gaze::MetricsReport report =
        gaze::evaluate_dataset(annotations_path, data_dir, cfg, distractor_label, jobs);
    gaze::write_report_files(report, out_dir);
    std::cout << nlohmann::json(report).dump(2) << "\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, std::size_t n_frames,
                 const std::string& out_dir) {
    const gaze::RunConfig cfg = load_config_or_default(config_path);
    gaze::persist_dataset(cfg.sim, n_frames, out_dir);
    std::cout << "wrote " << n_frames << " frame(s) to " << out_dir << "\n";
    return 0;
}

int cmd_density(const std::string& annotations_path, int grid_w, int grid_h,
                const std::string& out_pgm) {
    const std::vector<gaze::FrameRecord> records = gaze::load_records(annotations_path);
    if (records.empty()) {
        throw gaze::data_error("no frames in " + annotations_path);
    }
    const gaze::Heatmap density = gaze::density_from_records(records, grid_w, grid_h);
    gaze::write_pgm(density, out_pgm);
    std::filesystem::path ghm = out_pgm;
    ghm.replace_extension(".ghm1");
    gaze::write_ghm1(density, ghm);
    std::cout << "wrote " << out_pgm << " and " << ghm.string() << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Gazed-object selection and evaluation toolkit"};
    app.require_subcommand(1);

    std::string heatmap_path, detections_path, annotations_path, data_dir;
    std::string config_path, out_path;
    std::optional<double> tau;
    std::optional<std::string> distractor_label;
    int jobs = 1;
    int grid_w = 64, grid_h = 64;
    std::size_t n_frames = 0;

    CLI::App* select = app.add_subcommand("select", "Select the gazed object for one frame");
    select->add_option("heatmap", heatmap_path, "GHM1 heatmap file")->required();
    select->add_option("detections", detections_path, "DetectionSet JSON file")->required();
    select->add_option("--tau", tau, "hottest-region fraction of the maximum");
    select->add_option("--config", config_path, "run configuration file");

    CLI::App* evaluate = app.add_subcommand("evaluate", "Score an annotated dataset");
    evaluate->add_option("annotations", annotations_path, "JSON Lines annotations")->required();
    evaluate->add_option("data_dir", data_dir, "directory with <frame_id>.ghm1 and detections.jsonl")
        ->required();
    evaluate->add_option("--config", config_path, "run configuration file");
    evaluate->add_option("--out", out_path, "output directory")->default_val(".");
    evaluate->add_option("--jobs", jobs, "worker threads")->default_val(1);
    evaluate->add_option("--distractor-label", distractor_label,
                         "label whose false selections are reported separately");

    CLI::App* simulate = app.add_subcommand("simulate", "Generate a synthetic dataset");
    simulate->add_option("--config", config_path, "run configuration file");
    simulate->add_option("--frames", n_frames, "number of frames")->required();
    simulate->add_option("--out", out_path, "output directory")->required();

    CLI::App* density = app.add_subcommand("density", "Gaze-target density map");
    density->add_option("annotations", annotations_path, "JSON Lines annotations")->required();
    density->add_option("--grid-w", grid_w, "density grid width")->default_val(64);
    density->add_option("--grid-h", grid_h, "density grid height")->default_val(64);
    density->add_option("--out", out_path, "output PGM path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (select->parsed()) {
            return cmd_select(heatmap_path, detections_path, config_path, tau);
        }
        if (evaluate->parsed()) {
            if (jobs < 1) throw gaze::config_error("--jobs must be >= 1");
            return cmd_evaluate(annotations_path, data_dir, config_path, out_path,
                                distractor_label, jobs);
        }
        if (simulate->parsed()) {
            if (n_frames < 1) throw gaze::config_error("--frames must be >= 1");
            return cmd_simulate(config_path, n_frames, out_path);
        }
        if (density->parsed()) {
            if (grid_w < 1 || grid_h < 1) throw gaze::config_error("grid must be at least 1x1");
            return cmd_density(annotations_path, grid_w, grid_h, out_path);
        }
    } catch (const gaze::no_region_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
