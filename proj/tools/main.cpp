#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <vector>

#include "rqk/bench.hpp"
#include "rqk/dataset.hpp"
#include "rqk/dataset_io.hpp"
#include "rqk/report.hpp"
#include "rqk/selftest.hpp"

namespace fs = std::filesystem;

namespace {

struct GenerateOptions {
    std::string track = "both";
    std::string out_dir;
    int per_class = 200;
    int clips = 16;
    int frames_per_clip = 0;
    std::uint64_t seed = 7;
    int threads = 0;
};

struct BenchOptions {
    std::string data_dir;
    std::string out_dir;
    std::string track = "both";
    std::vector<std::uint64_t> seeds{7, 11, 21, 42, 84};
    std::vector<int> dims{2, 4, 6, 8};
    std::vector<int> noise_dims{4, 6, 8};
    std::vector<double> sigmas{0.0, 0.10, 0.25, 0.50};
    std::string kernels = "both";
    double c_param = 1.0;
    double test_fraction = 0.25;
    int threads = 0;
};

int run_generate(const GenerateOptions& opt) {
    const fs::path out(opt.out_dir);
    if (opt.track == "uav" || opt.track == "both") {
        std::cout << "generating uav track (" << 3 * opt.per_class << " samples)..." << std::endl;
        const rqk::Dataset ds = rqk::build_uav_dataset(opt.per_class, opt.seed, opt.threads);
        rqk::write_container(opt.track == "both" ? out / "uav" : out, ds);
    }
    if (opt.track == "fall" || opt.track == "both") {
        std::cout << "generating fall track (" << opt.clips << " clips)..." << std::endl;
        const rqk::Dataset ds =
            rqk::build_fall_dataset(opt.clips, opt.seed, opt.frames_per_clip, opt.threads);
        std::cout << "  " << ds.n_samples() << " spectrogram windows" << std::endl;
        rqk::write_container(opt.track == "both" ? out / "fall" : out, ds);
    }
    std::cout << "wrote dataset container(s) under " << out.string() << std::endl;
    return 0;
}

rqk::BenchConfig to_bench_config(const BenchOptions& opt) {
    rqk::BenchConfig cfg;
    cfg.seeds = opt.seeds;
    cfg.dims = opt.dims;
    cfg.noise_dims = opt.noise_dims;
    cfg.sigmas = opt.sigmas;
    cfg.run_rbf = opt.kernels == "rbf" || opt.kernels == "both";
    cfg.run_quantum = opt.kernels == "quantum" || opt.kernels == "both";
    cfg.C = opt.c_param;
    cfg.test_fraction = opt.test_fraction;
    cfg.threads = opt.threads;
    return cfg;
}

int run_bench(const BenchOptions& opt) {
    std::vector<rqk::Dataset> datasets;
    const fs::path data(opt.data_dir);
    if (opt.track == "uav" || opt.track == "both")
        datasets.push_back(rqk::load_container(opt.track == "both" ? data / "uav" : data));
    if (opt.track == "fall" || opt.track == "both")
        datasets.push_back(rqk::load_container(opt.track == "both" ? data / "fall" : data));

    std::vector<const rqk::Dataset*> views;
    for (const auto& ds : datasets) views.push_back(&ds);

    const rqk::BenchConfig cfg = to_bench_config(opt);
    std::cout << "running " << views.size() << " task(s) x " << cfg.seeds.size() << " seeds..."
              << std::endl;
    const rqk::BenchmarkReport report = rqk::run_benchmark(views, cfg);
    rqk::emit_report(fs::path(opt.out_dir), report.records);
    std::cout << report.records.size() << " records -> " << opt.out_dir << std::endl;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"matched classical / quantum kernel benchmark on simulated FMCW radar products"};
    app.require_subcommand(1);

    GenerateOptions gen;
    CLI::App* generate = app.add_subcommand("generate", "synthesize dataset containers");
    generate->add_option("--track", gen.track, "uav, fall or both")
        ->check(CLI::IsMember({"uav", "fall", "both"}));
    generate->add_option("--out", gen.out_dir, "output directory")->required();
    generate->add_option("--per-class", gen.per_class, "UAV samples per class (default 200)");
    generate->add_option("--clips", gen.clips, "fall clips (default 16)");
    generate->add_option("--frames-per-clip", gen.frames_per_clip,
                         "fixed frames per fall clip (0 = default schedule)");
    generate->add_option("--seed", gen.seed, "generator seed (default 7)");
    generate->add_option("--threads", gen.threads, "worker threads (0 = all cores)");

    BenchOptions bench;
    CLI::App* bench_cmd =
        app.add_subcommand("bench", "run the full benchmark protocol (clean + noise cells)");
    bench_cmd->add_option("--data", bench.data_dir, "dataset directory from 'generate'")
        ->required();
    bench_cmd->add_option("--out", bench.out_dir, "report output directory")->required();
    bench_cmd->add_option("--track", bench.track, "uav, fall or both")
        ->check(CLI::IsMember({"uav", "fall", "both"}));
    bench_cmd->add_option("--seeds", bench.seeds, "evaluation seeds (default 7 11 21 42 84)");
    bench_cmd->add_option("--dims", bench.dims, "PCA dimensions for clean cells (default 2 4 6 8)");
    bench_cmd->add_option("--noise-dims", bench.noise_dims,
                          "PCA dimensions for noise cells (default 4 6 8)");
    bench_cmd->add_option("--sigmas", bench.sigmas,
                          "noise fractions (default 0 0.1 0.25 0.5)");
    bench_cmd->add_option("--kernels", bench.kernels, "rbf, quantum or both")
        ->check(CLI::IsMember({"rbf", "quantum", "both"}));
    bench_cmd->add_option("--c", bench.c_param, "SVC regularization C (default 1.0)");
    bench_cmd->add_option("--test-fraction", bench.test_fraction, "holdout fraction (default 0.25)");
    bench_cmd->add_option("--threads", bench.threads, "parallel grid cells (0 = all cores)");

    BenchOptions sweep = bench;
    CLI::App* sweep_cmd = app.add_subcommand("noise-sweep", "run only the test-noise cells");
    sweep_cmd->add_option("--data", sweep.data_dir, "dataset directory")->required();
    sweep_cmd->add_option("--out", sweep.out_dir, "report output directory")->required();
    sweep_cmd->add_option("--track", sweep.track, "uav, fall or both")
        ->check(CLI::IsMember({"uav", "fall", "both"}));
    sweep_cmd->add_option("--seeds", sweep.seeds, "evaluation seeds");
    sweep_cmd->add_option("--dims", sweep.noise_dims, "PCA dimensions (default 4 6 8)");
    sweep_cmd->add_option("--sigmas", sweep.sigmas, "noise fractions (default 0 0.1 0.25 0.5)");
    sweep_cmd->add_option("--kernels", sweep.kernels, "rbf, quantum or both")
        ->check(CLI::IsMember({"rbf", "quantum", "both"}));
    sweep_cmd->add_option("--c", sweep.c_param, "SVC regularization C");
    sweep_cmd->add_option("--test-fraction", sweep.test_fraction, "holdout fraction");
    sweep_cmd->add_option("--threads", sweep.threads, "parallel grid cells");

    std::string report_raw, report_out;
    std::vector<std::string> report_formats{"csv", "markdown", "svg"};
    CLI::App* report_cmd =
        app.add_subcommand("report", "re-render tables and plots from an existing raw CSV");
    report_cmd->add_option("--raw", report_raw, "raw.csv produced by 'bench'")->required();
    report_cmd->add_option("--out", report_out, "output directory")->required();
    report_cmd->add_option("--format", report_formats, "csv, markdown, svg (default all)")
        ->check(CLI::IsMember({"csv", "markdown", "svg"}));

    bool selftest_quick = false;
    CLI::App* selftest_cmd =
        app.add_subcommand("selftest", "run the oracle-equivalence and invariant checks");
    selftest_cmd->add_flag("--quick", selftest_quick, "smaller randomized sample counts");

    CLI11_PARSE(app, argc, argv);

    try {
        if (generate->parsed()) return run_generate(gen);
        if (bench_cmd->parsed()) return run_bench(bench);
        if (sweep_cmd->parsed()) {
            sweep.dims = sweep.noise_dims;  // sigma=0 column comes from the clean cells
            return run_bench(sweep);
        }
        if (report_cmd->parsed()) {
            std::vector<rqk::ReportFormat> formats;
            for (const std::string& f : report_formats) {
                if (f == "csv") formats.push_back(rqk::ReportFormat::csv);
                if (f == "markdown") formats.push_back(rqk::ReportFormat::markdown);
                if (f == "svg") formats.push_back(rqk::ReportFormat::svg);
            }
            rqk::render_from_raw_csv(report_raw, report_out, formats);
            std::cout << "re-rendered report into " << report_out << std::endl;
            return 0;
        }
        if (selftest_cmd->parsed()) return rqk::run_selftest(std::cout, selftest_quick) ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << std::endl;
        return 1;
    }
    return 0;
}
