#include "rqk/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rqk/parallel.hpp"
#include "rqk/products.hpp"
#include "rqk/radar_sim.hpp"
#include "rqk/rng.hpp"

namespace rqk {

const char* task_name(Task task) { return task == Task::uav ? "uav" : "fall"; }

Task task_from_name(const std::string& name) {
    if (name == "uav") return Task::uav;
    if (name == "fall") return Task::fall;
    throw std::invalid_argument("unknown task name: " + name);
}

namespace {

double quantize(double v) { return static_cast<double>(static_cast<float>(v)); }

// Stored benchmark inputs are dB magnitudes. Linear radar products are
// peak-dominated, so a pixel-std-scaled noise fraction would bury the
// background structure entirely; log compression keeps the sweep a
// perturbation instead of an erasure.
double to_db(double v) { return 20.0 * std::log10(std::max(v, kDatasetDbFloor)); }

void store_product(Eigen::MatrixXd& values, Eigen::Index row, const RadarProduct& product) {
    for (std::size_t k = 0; k < product.values.size(); ++k)
        values(row, static_cast<Eigen::Index>(k)) = quantize(to_db(product.values[k]));
}

}  // namespace

Dataset build_uav_dataset(int n_per_class, std::uint64_t seed, int threads) {
    const RadarConfig config = RadarConfig::uav_track();
    const std::vector<Scene> scenes = make_uav_scenes(n_per_class, config, seed);

    Dataset ds;
    ds.task = Task::uav;
    ds.rows = config.n_chirps;
    ds.cols = config.n_range_bins;
    ds.generator_seed = seed;
    ds.config = config;
    ds.values.resize(static_cast<Eigen::Index>(scenes.size()),
                     static_cast<Eigen::Index>(ds.rows) * ds.cols);
    ds.labels.resize(scenes.size());

    parallel_for(scenes.size(), threads, [&](std::size_t i) {
        const std::uint64_t cube_seed = derive_seed(seed, {3, static_cast<std::uint64_t>(i)});
        const IqCube cube = synthesize_cube(scenes[i], config, cube_seed, kBuilderNoiseFloorDb);
        const RadarProduct rdm = form_rdm(cube);
        store_product(ds.values, static_cast<Eigen::Index>(i), rdm);
        ds.labels[i] = scenes[i].label;
    });
    return ds;
}

Dataset build_fall_dataset(int n_clips, std::uint64_t seed, int frames_per_clip, int threads) {
    const RadarConfig config = RadarConfig::fall_track();
    const std::vector<FallClip> clips = generate_fall_clips(n_clips, config, seed, frames_per_clip);

    std::vector<std::vector<RadarProduct>> per_clip(clips.size());
    parallel_for(clips.size(), threads, [&](std::size_t c) {
        const FallClip& clip = clips[c];
        std::vector<std::vector<double>> profiles;
        profiles.reserve(clip.frames.size());
        for (std::size_t f = 0; f < clip.frames.size(); ++f) {
            const std::uint64_t cube_seed =
                derive_seed(seed, {4, static_cast<std::uint64_t>(clip.clip_id),
                                   static_cast<std::uint64_t>(f)});
            const IqCube cube =
                synthesize_cube(clip.frames[f], config, cube_seed, kBuilderNoiseFloorDb);
            profiles.push_back(doppler_profile(rx_average(cube)));
        }
        per_clip[c] = cut_spectrogram_windows(profiles, config, kSpectrogramFrames,
                                              kSpectrogramStride);
        for (RadarProduct& window : per_clip[c]) {
            window.label = clip.label;
            window.clip_id = clip.clip_id;
        }
    });

    std::size_t total = 0;
    for (const auto& windows : per_clip) total += windows.size();

    Dataset ds;
    ds.task = Task::fall;
    ds.rows = config.n_chirps;
    ds.cols = kSpectrogramFrames;
    ds.generator_seed = seed;
    ds.config = config;
    ds.values.resize(static_cast<Eigen::Index>(total),
                     static_cast<Eigen::Index>(ds.rows) * ds.cols);
    ds.labels.reserve(total);
    ds.clip_ids.reserve(total);
    ds.window_indices.reserve(total);

    Eigen::Index row = 0;
    for (const auto& windows : per_clip) {
        for (const RadarProduct& window : windows) {
            store_product(ds.values, row, window);
            ds.labels.push_back(window.label);
            ds.clip_ids.push_back(*window.clip_id);
            ds.window_indices.push_back(*window.window_index);
            ++row;
        }
    }
    return ds;
}

}  // namespace rqk
