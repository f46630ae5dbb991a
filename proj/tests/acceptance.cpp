// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 1-5 exercise the oracle and physics checks; 6-9 run the
// full default protocol on the built-in simulator twice (parallel and
// serial) and verify protocol shape, noise statistics, qualitative trends,
// and byte-identical outputs.

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <vector>

#include "rqk/bench.hpp"
#include "rqk/dataset.hpp"
#include "rqk/kernels.hpp"
#include "rqk/oracles.hpp"
#include "rqk/products.hpp"
#include "rqk/radar_sim.hpp"
#include "rqk/report.hpp"
#include "rqk/rng.hpp"
#include "rqk/statevector.hpp"
#include "rqk/svm.hpp"

using namespace rqk;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report_check(int index, const char* name, bool passed, const std::string& detail) {
    std::printf("[%s] C%d %s (%s)\n", passed ? "PASS" : "FAIL", index, name, detail.c_str());
    std::fflush(stdout);
    if (!passed) ++failures;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) return "<missing:" + p.string() + ">";
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---- C1: closed-form vs gate-level oracle ----
void criterion_1() {
    Rng rng(20250101);
    double worst = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (int d = 1; d <= 8; ++d) {
        for (int rep = 0; rep < 200; ++rep) {
            std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
            for (double& v : x) v = rng.uniform(0.0, std::numbers::pi);
            for (double& v : y) v = rng.uniform(0.0, std::numbers::pi);
            FeatureMatrix fx, fy;
            fx.values = Eigen::Map<Eigen::MatrixXd>(x.data(), 1, d);
            fy.values = Eigen::Map<Eigen::MatrixXd>(y.data(), 1, d);
            worst = std::max(worst,
                             std::abs(fidelity_kernel(fx, fy).values(0, 0) - oracle_kernel(x, y)));
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max gap %.3g over 1600 pairs, %.2f s", worst, seconds);
    report_check(1, "quantum-kernel oracle equivalence", worst < 1e-10 && seconds < 10.0, detail);
}

// ---- C2: analytic single-qubit kernel ----
void criterion_2() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = std::numbers::pi * i / 99.0;
        const double y = std::numbers::pi * ((i * 53) % 100) / 99.0;
        FeatureMatrix fx, fy;
        fx.values.resize(1, 1);
        fx.values(0, 0) = x;
        fy.values.resize(1, 1);
        fy.values(0, 0) = y;
        worst = std::max(worst, std::abs(fidelity_kernel(fx, fy).values(0, 0) -
                                         std::cos(y - x) * std::cos(y - x)));
    }
    char detail[64];
    std::snprintf(detail, sizeof(detail), "max |K - cos^2| = %.3g", worst);
    report_check(2, "single-qubit analytic kernel", worst < 1e-12, detail);
}

// ---- C3: Gram validity for both kernels ----
void criterion_3() {
    Rng rng(33);
    double min_eig = 0.0, worst_diag = 0.0, worst_sym = 0.0;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 8 + rng.pick(57);   // <= 64
        const int d = 1 + rng.pick(8);    // <= 8
        FeatureMatrix f;
        f.values.resize(n, d);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < d; ++j) f.values(i, j) = rng.uniform(0.0, std::numbers::pi);
        f.labels.assign(static_cast<std::size_t>(n), 0);
        const KernelMatrix grams[2] = {rbf_gram(f, f, rng.uniform(0.1, 1.5)),
                                       fidelity_kernel(f, f)};
        for (const KernelMatrix& k : grams) {
            worst_sym =
                std::max(worst_sym, (k.values - k.values.transpose()).cwiseAbs().maxCoeff());
            worst_diag =
                std::max(worst_diag, (k.values.diagonal().array() - 1.0).abs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(k.values);
            min_eig = std::min(min_eig, eig.eigenvalues().minCoeff());
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "min eig %.3g, |diag-1| %.3g, asym %.3g", min_eig,
                  worst_diag, worst_sym);
    report_check(3, "Gram validity (50 random sets, both kernels)",
                 min_eig >= -1e-9 && worst_diag < 1e-12 && worst_sym < 1e-12, detail);
}

// ---- C4: SMO vs brute-force QP ----
void criterion_4() {
    Rng rng(44);
    double worst_rel = 0.0, worst_kkt = 0.0;
    const double tol = 1e-8;
    for (int rep = 0; rep < 50; ++rep) {
        const int n = 6 + rng.pick(15);  // <= 20
        const int d = 1 + rng.pick(4);
        FeatureMatrix f;
        f.values.resize(n, d);
        BinaryProblem p;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) f.values(i, j) = rng.uniform(-2.0, 2.0);
            p.y.push_back(i % 2 == 0 ? 1.0 : -1.0);
        }
        f.labels.assign(static_cast<std::size_t>(n), 0);
        p.gram = rbf_gram(f, f, rng.uniform(0.2, 2.0)).values;
        p.C = (rep % 3 == 0) ? 10.0 : 1.0;

        const SvmModel model = solve_smo(p, tol, 20000);
        worst_kkt = std::max(worst_kkt, max_kkt_violation(p, model));
        const double ref = qp_reference_solve(p).objective;
        worst_rel = std::max(worst_rel, std::abs(dual_objective(p, model) - ref) /
                                            std::max(1.0, std::abs(ref)));
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst relative gap %.3g, worst KKT %.3g (tol %.0e)",
                  worst_rel, worst_kkt, tol);
    report_check(4, "SVM oracle equivalence (50 random problems)",
                 worst_rel < 1e-6 && worst_kkt < tol * 10, detail);
}

// ---- C5: radar physics placement ----
void criterion_5() {
    const RadarConfig config = RadarConfig::uav_track();
    Rng rng(55);
    int worst_range = 0, worst_doppler = 0;
    for (int rep = 0; rep < 100; ++rep) {
        const double range = rng.uniform(5.0, 0.9 * config.max_range_m());
        const double speed = rng.uniform(-0.9, 0.9) * config.max_speed_mps();
        Scene scene;
        Scatterer s;
        s.position_m = {range, 0.0, 0.0};
        s.velocity_mps = {speed, 0.0, 0.0};
        s.rcs = 1.0;
        scene.scatterers.push_back(s);
        scene.label = 0;
        const RadarProduct rdm = form_rdm(synthesize_cube(scene, config, 1, std::nullopt));

        const double beat_hz = 2.0 * range * config.sweep_slope_hz_per_s() / kSpeedOfLight;
        const int col = static_cast<int>(std::lround(beat_hz / config.fast_bin_hz()));
        const int row = config.n_chirps / 2 +
                        static_cast<int>(std::lround(2.0 * speed / config.wavelength_m() /
                                                     config.doppler_bin_hz()));
        int best_r = 0, best_c = 0;
        double best = -1.0;
        for (int r = 0; r < rdm.rows; ++r)
            for (int c = 0; c < rdm.cols; ++c)
                if (rdm.at(r, c) > best) {
                    best = rdm.at(r, c);
                    best_r = r;
                    best_c = c;
                }
        worst_range = std::max(worst_range, std::abs(best_c - col));
        worst_doppler = std::max(worst_doppler, std::abs(best_r - row));
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "worst offsets: range %d, Doppler %d (bins)",
                  worst_range, worst_doppler);
    report_check(5, "radar physics placement (100 scenes)", worst_range <= 1 && worst_doppler <= 1,
                 detail);
}

struct ProtocolRun {
    BenchmarkReport report;
    fs::path out_dir;
};

// ---- C6-C9 share one full protocol run ----
void criteria_6_to_9() {
    const auto t0 = std::chrono::steady_clock::now();

    std::cout << "building datasets (UAV 600 RDMs + 16 fall clips)..." << std::endl;
    const Dataset uav = build_uav_dataset(200, 7);
    const Dataset fall = build_fall_dataset(16, 7);
    std::cout << "  fall windows: " << fall.n_samples() << std::endl;

    BenchConfig cfg;  // protocol defaults
    std::cout << "running protocol (parallel)..." << std::endl;
    const BenchmarkReport parallel_report = run_benchmark({&uav, &fall}, cfg);

    // C6: protocol shape
    {
        int clean = 0, noise = 0;
        std::set<int> noise_dims;
        for (const RunRecord& r : parallel_report.records) {
            if (r.sigma == 0.0) ++clean;
            else {
                ++noise;
                noise_dims.insert(r.d);
            }
        }
        const SplitPlan uav_plan = make_split(uav, 7, SplitMode::stratified_sample);
        std::map<int, int> test_per_class;
        for (int id : uav_plan.test_ids) test_per_class[uav.labels[static_cast<std::size_t>(id)]]++;
        bool uav_split_ok = uav_plan.train_ids.size() == 450 && uav_plan.test_ids.size() == 150;
        for (const auto& [cls, count] : test_per_class) uav_split_ok = uav_split_ok && count == 50;

        bool clip_ok = true;
        for (std::uint64_t seed : cfg.seeds) {
            const SplitPlan plan = make_split(fall, seed, SplitMode::clip_level);
            std::set<int> train_clips, test_clips;
            for (int id : plan.train_ids) train_clips.insert(fall.clip_ids[static_cast<std::size_t>(id)]);
            for (int id : plan.test_ids) test_clips.insert(fall.clip_ids[static_cast<std::size_t>(id)]);
            clip_ok = clip_ok && test_clips.size() == 4 && train_clips.size() == 12;
            for (int c : test_clips) clip_ok = clip_ok && train_clips.count(c) == 0;
        }

        const bool shape_ok = clean == 80 && noise == 180 &&
                              noise_dims == std::set<int>{4, 6, 8} && uav_split_ok && clip_ok;
        char detail[160];
        std::snprintf(detail, sizeof(detail),
                      "80 clean? %d=%s, noise cells %d (dims 4/6/8), uav 450/150+50pc %s, clips 4/16 %s",
                      clean, clean == 80 ? "yes" : "NO", noise, uav_split_ok ? "ok" : "BAD",
                      clip_ok ? "ok" : "BAD");
        report_check(6, "protocol shape", shape_ok, detail);
    }

    // C7: noise statistics + passthrough + model reuse
    {
        const SplitPlan plan = make_split(uav, 7, SplitMode::stratified_sample);
        const double s_train = pixel_std(uav, plan.train_ids);
        Eigen::MatrixXd test_rows(static_cast<Eigen::Index>(plan.test_ids.size()),
                                  uav.values.cols());
        for (std::size_t k = 0; k < plan.test_ids.size(); ++k)
            test_rows.row(static_cast<Eigen::Index>(k)) = uav.values.row(plan.test_ids[k]);

        const double sigma = 0.25;
        const Eigen::MatrixXd noisy =
            inject_noise(test_rows, plan.test_ids, s_train, sigma, 7);
        const Eigen::MatrixXd diff = noisy - test_rows;
        const double mean = diff.mean();
        const double std_dev = std::sqrt((diff.array() - mean).square().mean());
        const double target = sigma * s_train;
        const bool stats_ok = std::abs(std_dev - target) <= 0.02 * target &&
                              diff.size() >= 100000;

        const Eigen::MatrixXd clean = inject_noise(test_rows, plan.test_ids, s_train, 0.0, 7);
        const bool passthrough_ok = (clean - test_rows).cwiseAbs().maxCoeff() == 0.0;

        bool reuse_ok = true;
        for (const RunRecord& r : parallel_report.records) {
            if (r.sigma == 0.0) continue;
            bool matched = false;
            for (const RunRecord& c : parallel_report.records)
                if (c.sigma == 0.0 && c.task == r.task && c.seed == r.seed && c.d == r.d &&
                    c.kernel == r.kernel) {
                    matched = true;
                    reuse_ok = reuse_ok && c.model_tag == r.model_tag;
                }
            reuse_ok = reuse_ok && matched;
        }
        char detail[160];
        std::snprintf(detail, sizeof(detail),
                      "empirical/target std %.4f/%.4f over %lld px, sigma0 passthrough %s, reuse %s",
                      std_dev, target, static_cast<long long>(diff.size()),
                      passthrough_ok ? "exact" : "BAD", reuse_ok ? "ok" : "BAD");
        report_check(7, "noise statistics and model reuse", stats_ok && passthrough_ok && reuse_ok,
                     detail);
    }

    // C8: qualitative trend
    double minutes = 0.0;
    {
        auto mean_of = [&](Task task, int d, KernelKind kernel) {
            double sum = 0.0;
            int count = 0;
            for (const RunRecord& r : parallel_report.records)
                if (r.task == task && r.d == d && r.kernel == kernel && r.sigma == 0.0) {
                    sum += r.accuracy;
                    ++count;
                }
            return count > 0 ? sum / count : 0.0;
        };
        const double uav_rbf8 = mean_of(Task::uav, 8, KernelKind::rbf);
        const double uav_q8 = mean_of(Task::uav, 8, KernelKind::quantum);
        const double fall_rbf8 = mean_of(Task::fall, 8, KernelKind::rbf);
        const double fall_q8 = mean_of(Task::fall, 8, KernelKind::quantum);
        const bool monotone = uav_rbf8 >= mean_of(Task::uav, 2, KernelKind::rbf) &&
                              uav_q8 >= mean_of(Task::uav, 2, KernelKind::quantum) &&
                              fall_rbf8 >= mean_of(Task::fall, 2, KernelKind::rbf) &&
                              fall_q8 >= mean_of(Task::fall, 2, KernelKind::quantum);
        minutes = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 60.0;
        const bool trend_ok = uav_rbf8 > 0.70 && uav_q8 > 0.70 && fall_rbf8 > 0.65 &&
                              fall_q8 > 0.65 && monotone && minutes < 30.0;
        char detail[200];
        std::snprintf(detail, sizeof(detail),
                      "d=8 means uav %.3f/%.3f fall %.3f/%.3f (rbf/quantum), d8>=d2 %s, %.1f min",
                      uav_rbf8, uav_q8, fall_rbf8, fall_q8, monotone ? "yes" : "NO", minutes);
        report_check(8, "qualitative trend on built-in data", trend_ok, detail);
    }

    // C9: byte-identical outputs, serial vs parallel
    {
        BenchConfig serial = cfg;
        serial.threads = 1;
        std::cout << "running protocol again (serial) for the determinism check..." << std::endl;
        const BenchmarkReport serial_report = run_benchmark({&uav, &fall}, serial);

        const fs::path dir_a = fs::temp_directory_path() / "rqk_acceptance_a";
        const fs::path dir_b = fs::temp_directory_path() / "rqk_acceptance_b";
        fs::remove_all(dir_a);
        fs::remove_all(dir_b);
        emit_report(dir_a, parallel_report.records);
        emit_report(dir_b, serial_report.records);

        std::vector<std::string> names{"raw.csv", "aggregate.csv", "tables.md"};
        for (const char* task : {"uav", "fall"}) {
            names.push_back(std::string("accuracy_vs_d_") + task + ".svg");
            for (int d : {4, 6, 8})
                names.push_back(std::string("accuracy_vs_sigma_") + task + "_d" +
                                std::to_string(d) + ".svg");
        }
        bool identical = true;
        std::string first_diff;
        for (const std::string& name : names) {
            if (slurp(dir_a / name) != slurp(dir_b / name)) {
                identical = false;
                if (first_diff.empty()) first_diff = name;
            }
        }
        fs::remove_all(dir_a);
        fs::remove_all(dir_b);
        char detail[160];
        std::snprintf(detail, sizeof(detail), "%zu artifacts compared%s%s", names.size(),
                      identical ? ", all byte-identical" : ", FIRST DIFF: ",
                      identical ? "" : first_diff.c_str());
        report_check(9, "determinism under parallel execution", identical, detail);
    }
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criteria_6_to_9();
    if (failures == 0) {
        std::printf("acceptance: all 9 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", failures);
    return 1;
}
