#include "rqk/bench.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>

#include "rqk/features.hpp"
#include "rqk/parallel.hpp"
#include "rqk/rng.hpp"
#include "rqk/svm.hpp"

namespace rqk {
namespace {

int round_half_up(double x) { return static_cast<int>(std::floor(x + 0.5)); }

void check_class_coverage(const Dataset& ds, const SplitPlan& plan) {
    std::set<int> all(ds.labels.begin(), ds.labels.end());
    std::set<int> train, test;
    for (int id : plan.train_ids) train.insert(ds.labels[static_cast<std::size_t>(id)]);
    for (int id : plan.test_ids) test.insert(ds.labels[static_cast<std::size_t>(id)]);
    if (train != all || test != all)
        throw std::runtime_error("make_split: a class is absent from one partition");
}

SplitPlan stratified_split(const Dataset& ds, std::uint64_t seed, double test_fraction) {
    std::map<int, std::vector<int>> by_class;
    for (Eigen::Index i = 0; i < ds.n_samples(); ++i)
        by_class[ds.labels[static_cast<std::size_t>(i)]].push_back(static_cast<int>(i));

    SplitPlan plan;
    for (auto& [label, ids] : by_class) {
        Rng rng(derive_seed(seed, {5, static_cast<std::uint64_t>(label)}));
        rng.shuffle(ids);
        const int n_test = round_half_up(test_fraction * static_cast<double>(ids.size()));
        for (std::size_t k = 0; k < ids.size(); ++k)
            (static_cast<int>(k) < n_test ? plan.test_ids : plan.train_ids).push_back(ids[k]);
    }
    std::sort(plan.train_ids.begin(), plan.train_ids.end());
    std::sort(plan.test_ids.begin(), plan.test_ids.end());
    return plan;
}

SplitPlan clip_level_split(const Dataset& ds, std::uint64_t seed, double test_fraction) {
    if (ds.clip_ids.empty())
        throw std::invalid_argument("make_split: clip_level mode needs clip ids");

    // clip -> label, in clip id order
    std::map<int, int> clip_label;
    for (Eigen::Index i = 0; i < ds.n_samples(); ++i)
        clip_label[ds.clip_ids[static_cast<std::size_t>(i)]] = ds.labels[static_cast<std::size_t>(i)];

    std::map<int, std::vector<int>> clips_by_class;
    for (const auto& [clip, label] : clip_label) clips_by_class[label].push_back(clip);

    const int n_clips = static_cast<int>(clip_label.size());
    const int n_test_clips = round_half_up(test_fraction * n_clips);

    // spread the held-out count as evenly as possible across classes;
    // remainder goes to classes in seed-shuffled order
    std::vector<int> class_order;
    for (const auto& [label, clips] : clips_by_class) class_order.push_back(label);
    Rng rng(derive_seed(seed, {5, 0xc11b5ULL}));
    rng.shuffle(class_order);

    std::map<int, int> take;
    const int k = static_cast<int>(clips_by_class.size());
    int assigned = 0;
    for (int label : class_order) {
        take[label] = std::min<int>(n_test_clips / k,
                                    static_cast<int>(clips_by_class[label].size()));
        assigned += take[label];
    }
    bool progress = true;
    while (assigned < n_test_clips && progress) {
        progress = false;
        for (int label : class_order) {
            if (assigned == n_test_clips) break;
            if (take[label] < static_cast<int>(clips_by_class[label].size())) {
                ++take[label];
                ++assigned;
                progress = true;
            }
        }
    }
    if (assigned < n_test_clips)
        throw std::runtime_error("make_split: not enough clips to hold out " +
                                 std::to_string(n_test_clips));

    std::set<int> test_clips;
    for (auto& [label, clips] : clips_by_class) {
        Rng class_rng(derive_seed(seed, {5, 1, static_cast<std::uint64_t>(label)}));
        class_rng.shuffle(clips);
        for (int c = 0; c < take[label]; ++c) test_clips.insert(clips[static_cast<std::size_t>(c)]);
    }

    SplitPlan plan;
    for (Eigen::Index i = 0; i < ds.n_samples(); ++i) {
        const bool in_test = test_clips.count(ds.clip_ids[static_cast<std::size_t>(i)]) > 0;
        (in_test ? plan.test_ids : plan.train_ids).push_back(static_cast<int>(i));
    }
    return plan;
}

}  // namespace

SplitPlan make_split(const Dataset& dataset, std::uint64_t seed, SplitMode mode,
                     double test_fraction) {
    if (dataset.n_samples() == 0) throw std::invalid_argument("make_split: empty dataset");
    if (!(test_fraction > 0.0 && test_fraction < 1.0))
        throw std::invalid_argument("make_split: test fraction must lie in (0, 1)");
    SplitPlan plan = mode == SplitMode::stratified_sample
                         ? stratified_split(dataset, seed, test_fraction)
                         : clip_level_split(dataset, seed, test_fraction);
    plan.seed = seed;
    plan.test_fraction = test_fraction;
    plan.mode = mode;
    if (plan.train_ids.empty() || plan.test_ids.empty())
        throw std::runtime_error("make_split: a partition came out empty");
    check_class_coverage(dataset, plan);
    return plan;
}

double pixel_std(const Dataset& dataset, const std::vector<int>& row_ids) {
    if (row_ids.empty()) throw std::invalid_argument("pixel_std: no rows given");
    double sum = 0.0;
    const double count =
        static_cast<double>(row_ids.size()) * static_cast<double>(dataset.values.cols());
    for (int id : row_ids) sum += dataset.values.row(id).sum();
    const double mean = sum / count;
    double sq = 0.0;
    for (int id : row_ids) sq += (dataset.values.row(id).array() - mean).square().sum();
    return std::sqrt(sq / count);
}

Eigen::MatrixXd inject_noise(const Eigen::MatrixXd& test_rows, const std::vector<int>& row_ids,
                             double s_train, double sigma, std::uint64_t seed) {
    if (sigma < 0.0) throw std::invalid_argument("inject_noise: sigma must be >= 0");
    if (static_cast<Eigen::Index>(row_ids.size()) != test_rows.rows())
        throw std::invalid_argument("inject_noise: row id count must match matrix rows");
    Eigen::MatrixXd out = test_rows;
    if (sigma == 0.0) return out;

    const double scale = sigma * s_train;
    const std::uint64_t sigma_key = std::bit_cast<std::uint64_t>(sigma);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        Rng rng(derive_seed(seed, {6, sigma_key,
                                   static_cast<std::uint64_t>(row_ids[static_cast<std::size_t>(r)])}));
        for (Eigen::Index c = 0; c < out.cols(); ++c) out(r, c) += scale * rng.normal();
    }
    return out;
}

namespace {

Eigen::MatrixXd gather_rows(const Eigen::MatrixXd& source, const std::vector<int>& ids) {
    Eigen::MatrixXd out(static_cast<Eigen::Index>(ids.size()), source.cols());
    for (std::size_t k = 0; k < ids.size(); ++k) out.row(static_cast<Eigen::Index>(k)) = source.row(ids[k]);
    return out;
}

std::vector<int> gather_labels(const std::vector<int>& labels, const std::vector<int>& ids) {
    std::vector<int> out;
    out.reserve(ids.size());
    for (int id : ids) out.push_back(labels[static_cast<std::size_t>(id)]);
    return out;
}

std::uint64_t model_fingerprint(const MulticlassModel& model) {
    std::uint64_t h = 0x9e3779b97f4a7c15ULL;
    auto mix = [&h](std::uint64_t v) {
        h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    };
    for (const PairwiseModel& pair : model.pairwise) {
        mix(static_cast<std::uint64_t>(pair.class_a));
        mix(static_cast<std::uint64_t>(pair.class_b));
        mix(std::bit_cast<std::uint64_t>(pair.model.bias));
        for (int s : pair.model.support_indices) mix(static_cast<std::uint64_t>(s));
    }
    return h;
}

struct CellOrder {
    bool operator()(const RunRecord& a, const RunRecord& b) const {
        if (a.task != b.task) return a.task < b.task;
        if (a.d != b.d) return a.d < b.d;
        if (a.kernel != b.kernel) return a.kernel < b.kernel;
        if (a.sigma != b.sigma) return a.sigma < b.sigma;
        return a.seed < b.seed;
    }
};

// All records of one (task, seed) job: fit on the clean training split,
// train per (d, kernel), evaluate clean + noisy test variants on the same
// trained model.
std::vector<RunRecord> run_job(const Dataset& ds, std::uint64_t seed, const BenchConfig& cfg) {
    const SplitMode mode =
        ds.task == Task::fall ? SplitMode::clip_level : SplitMode::stratified_sample;
    const SplitPlan plan = make_split(ds, seed, mode, cfg.test_fraction);

    std::vector<int> all_dims = cfg.dims;
    for (int d : cfg.noise_dims)
        if (std::find(all_dims.begin(), all_dims.end(), d) == all_dims.end())
            all_dims.push_back(d);
    std::sort(all_dims.begin(), all_dims.end());
    if (all_dims.empty()) return {};
    const int d_max = all_dims.back();

    std::vector<double> noise_sigmas;
    for (double s : cfg.sigmas)
        if (s > 0.0) noise_sigmas.push_back(s);
    std::sort(noise_sigmas.begin(), noise_sigmas.end());

    // training-side fits (training data only)
    const double s_train = pixel_std(ds, plan.train_ids);
    FeatureMatrix train_raw{gather_rows(ds.values, plan.train_ids),
                            gather_labels(ds.labels, plan.train_ids)};
    const Standardizer standardizer = fit_standardizer(train_raw);
    const FeatureMatrix train_std = apply_standardizer(standardizer, train_raw);
    train_raw.values.resize(0, 0);
    const PcaModel pca_full = fit_pca(train_std, d_max);

    std::map<int, FeatureMatrix> train_by_dim;
    for (int d : all_dims) train_by_dim[d] = project(pca_full.truncated(d), train_std);

    // test variants: sigma = 0 plus each sigma > 0
    FeatureMatrix test_raw{gather_rows(ds.values, plan.test_ids),
                           gather_labels(ds.labels, plan.test_ids)};
    std::map<double, std::map<int, FeatureMatrix>> test_by_sigma_dim;
    auto add_variant = [&](double sigma) {
        FeatureMatrix variant;
        variant.labels = test_raw.labels;
        variant.values = inject_noise(test_raw.values, plan.test_ids, s_train, sigma, seed);
        const FeatureMatrix variant_std = apply_standardizer(standardizer, variant);
        for (int d : all_dims)
            test_by_sigma_dim[sigma][d] = project(pca_full.truncated(d), variant_std);
    };
    add_variant(0.0);
    if (!cfg.noise_dims.empty())
        for (double sigma : noise_sigmas) add_variant(sigma);
    const std::vector<int> test_labels = test_raw.labels;
    test_raw.values.resize(0, 0);

    std::vector<RunRecord> records;
    for (int d : all_dims) {
        const bool clean_cell =
            std::find(cfg.dims.begin(), cfg.dims.end(), d) != cfg.dims.end();
        const bool noise_cell =
            std::find(cfg.noise_dims.begin(), cfg.noise_dims.end(), d) != cfg.noise_dims.end();
        const FeatureMatrix& train_d = train_by_dim[d];

        std::vector<KernelKind> kinds;
        if (cfg.run_rbf) kinds.push_back(KernelKind::rbf);
        if (cfg.run_quantum) kinds.push_back(KernelKind::quantum);

        for (KernelKind kind : kinds) {
            double gamma = 0.0;
            AngularScaler angular;
            FeatureMatrix train_enc;
            KernelMatrix train_gram;
            if (kind == KernelKind::rbf) {
                gamma = rbf_gamma_scale(train_d);
                train_gram = rbf_gram(train_d, train_d, gamma);
            } else {
                angular = fit_angular(train_d);
                train_enc = apply_angular(angular, train_d);
                train_gram = fidelity_kernel(train_enc, train_enc);
            }
            const MulticlassModel model = train_ovo(train_gram, train_d.labels, cfg.C, cfg.svm_tol);
            const std::uint64_t tag = model_fingerprint(model);

            auto evaluate = [&](double sigma) {
                const FeatureMatrix& test_d = test_by_sigma_dim.at(sigma).at(d);
                KernelMatrix k_rows;
                if (kind == KernelKind::rbf) {
                    k_rows = rbf_gram(test_d, train_d, gamma);
                } else {
                    const FeatureMatrix test_enc = apply_angular(angular, test_d);
                    k_rows = fidelity_kernel(test_enc, train_enc);
                }
                const std::vector<int> predicted = predict_ovo(model, k_rows);
                int correct = 0;
                for (std::size_t t = 0; t < predicted.size(); ++t)
                    if (predicted[t] == test_labels[t]) ++correct;
                RunRecord rec;
                rec.task = ds.task;
                rec.d = d;
                rec.kernel = kind;
                rec.sigma = sigma;
                rec.seed = seed;
                rec.n_test = static_cast<int>(predicted.size());
                rec.n_correct = correct;
                rec.accuracy = static_cast<double>(correct) / static_cast<double>(rec.n_test);
                rec.model_tag = tag;
                records.push_back(rec);
            };

            if (clean_cell) evaluate(0.0);
            if (noise_cell)
                for (double sigma : noise_sigmas) evaluate(sigma);
        }
    }
    return records;
}

}  // namespace

BenchmarkReport run_benchmark(const std::vector<const Dataset*>& datasets,
                              const BenchConfig& config) {
    if (datasets.empty()) throw std::invalid_argument("run_benchmark: no datasets given");
    for (const Dataset* ds : datasets)
        if (!ds || ds->n_samples() == 0)
            throw std::invalid_argument("run_benchmark: empty dataset");

    struct Job {
        const Dataset* ds;
        std::uint64_t seed;
    };
    std::vector<Job> jobs;
    for (const Dataset* ds : datasets)
        for (std::uint64_t seed : config.seeds) jobs.push_back({ds, seed});

    std::vector<std::vector<RunRecord>> results(jobs.size());
    try {
        parallel_for(jobs.size(), config.threads, [&](std::size_t k) {
            results[k] = run_job(*jobs[k].ds, jobs[k].seed, config);
        });
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("run_benchmark: a grid cell failed: ") + e.what());
    }

    BenchmarkReport report;
    for (const auto& r : results) report.records.insert(report.records.end(), r.begin(), r.end());
    std::sort(report.records.begin(), report.records.end(), CellOrder{});
    report.aggregates = aggregate(report.records);
    return report;
}

std::vector<CellAggregate> aggregate(const std::vector<RunRecord>& records) {
    std::vector<CellAggregate> out;
    std::map<std::tuple<int, int, int, double>, std::vector<double>> cells;
    std::map<std::tuple<int, int, int, double>, const RunRecord*> heads;
    for (const RunRecord& rec : records) {
        const auto key = std::make_tuple(static_cast<int>(rec.task), rec.d,
                                         static_cast<int>(rec.kernel), rec.sigma);
        cells[key].push_back(rec.accuracy);
        if (!heads.count(key)) heads[key] = &rec;
    }
    for (const auto& [key, accs] : cells) {
        const RunRecord& head = *heads[key];
        CellAggregate agg;
        agg.task = head.task;
        agg.d = head.d;
        agg.kernel = head.kernel;
        agg.sigma = head.sigma;
        agg.n_seeds = static_cast<int>(accs.size());
        double mean = 0.0;
        for (double a : accs) mean += a;
        mean /= static_cast<double>(accs.size());
        agg.mean_accuracy = mean;
        if (accs.size() >= 2) {
            double sq = 0.0;
            for (double a : accs) sq += (a - mean) * (a - mean);
            agg.std_accuracy = std::sqrt(sq / static_cast<double>(accs.size() - 1));
        }
        out.push_back(agg);
    }
    std::sort(out.begin(), out.end(), [](const CellAggregate& a, const CellAggregate& b) {
        if (a.task != b.task) return a.task < b.task;
        if (a.d != b.d) return a.d < b.d;
        if (a.kernel != b.kernel) return a.kernel < b.kernel;
        return a.sigma < b.sigma;
    });
    return out;
}

}  // namespace rqk
