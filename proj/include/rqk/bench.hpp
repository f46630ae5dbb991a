#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "rqk/dataset.hpp"
#include "rqk/kernels.hpp"

namespace rqk {

enum class SplitMode { stratified_sample, clip_level };

// Disjoint train/test partition of a dataset. stratified_sample holds out
// 25% of rows per class (rounded half-up); clip_level holds out 25% of
// clips with held-out clip classes balanced as evenly as possible, so no
// clip contributes windows to both sides.
struct SplitPlan {
    std::uint64_t seed = 0;
    double test_fraction = 0.25;
    SplitMode mode = SplitMode::stratified_sample;
    std::vector<int> train_ids;
    std::vector<int> test_ids;
};

SplitPlan make_split(const Dataset& dataset, std::uint64_t seed, SplitMode mode,
                     double test_fraction = 0.25);

// Population standard deviation over every pixel of the given rows.
double pixel_std(const Dataset& dataset, const std::vector<int>& row_ids);

// Adds independent Gaussian noise with standard deviation sigma * s_train
// to each raw test row. The per-sample stream is derived from (seed, sigma,
// global row id), so a sweep is reproducible regardless of evaluation
// order. sigma == 0 returns the rows bit-identically.
Eigen::MatrixXd inject_noise(const Eigen::MatrixXd& test_rows, const std::vector<int>& row_ids,
                             double s_train, double sigma, std::uint64_t seed);

struct RunRecord {
    Task task = Task::uav;
    int d = 0;
    KernelKind kernel = KernelKind::rbf;
    double sigma = 0.0;
    std::uint64_t seed = 0;
    double accuracy = 0.0;
    int n_test = 0;
    int n_correct = 0;
    // fingerprint of the trained model (support ids + biases); equal tags
    // across a sigma sweep certify that the clean model was reused
    std::uint64_t model_tag = 0;
};

struct CellAggregate {
    Task task = Task::uav;
    int d = 0;
    KernelKind kernel = KernelKind::rbf;
    double sigma = 0.0;
    double mean_accuracy = 0.0;
    std::optional<double> std_accuracy;  // absent for single-seed cells
    int n_seeds = 0;
};

struct BenchConfig {
    std::vector<std::uint64_t> seeds{7, 11, 21, 42, 84};
    std::vector<int> dims{2, 4, 6, 8};        // clean cells
    std::vector<int> noise_dims{4, 6, 8};     // sigma > 0 cells
    std::vector<double> sigmas{0.0, 0.10, 0.25, 0.50};
    bool run_rbf = true;
    bool run_quantum = true;
    double C = 1.0;
    double svm_tol = 1e-3;
    double test_fraction = 0.25;
    int threads = 0;  // 0 = hardware concurrency
};

struct BenchmarkReport {
    std::vector<RunRecord> records;
    std::vector<CellAggregate> aggregates;
};

// Runs the full grid: per (task, seed) fit the standardizer / PCA / angular
// scaler on the training split only, train one model per (d, kernel) on the
// clean data, evaluate it on the clean test split and on every noisy test
// variant, reusing the clean model throughout. (task, seed) jobs run in
// parallel; the report does not depend on the thread count. Records are
// ordered by (task, d, kernel, sigma, seed).
BenchmarkReport run_benchmark(const std::vector<const Dataset*>& datasets,
                              const BenchConfig& config);

// Mean and sample standard deviation (n-1) per (task, d, kernel, sigma).
std::vector<CellAggregate> aggregate(const std::vector<RunRecord>& records);

}  // namespace rqk
