#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>
#include <vector>

#include "rqk/radar_config.hpp"

namespace rqk {

enum class Task { uav, fall };

const char* task_name(Task task);
Task task_from_name(const std::string& name);

// One benchmark track held in memory: flattened products (row-major pixels,
// one sample per row) plus per-sample metadata. Pixels are dB magnitudes
// (20 log10 of the linear product, floored), float32 quantized at build
// time so the in-memory dataset and the on-disk container are
// bit-identical.
struct Dataset {
    Task task = Task::uav;
    int rows = 0;  // product rows (Doppler bins)
    int cols = 0;  // product cols (range bins or time frames)
    Eigen::MatrixXd values;
    std::vector<int> labels;
    std::vector<int> clip_ids;        // fall track only
    std::vector<int> window_indices;  // fall track only
    std::uint64_t generator_seed = 0;
    RadarConfig config;

    Eigen::Index n_samples() const { return values.rows(); }
};

// Synthesizes the 3-class UAV track: n_per_class range-Doppler maps per
// label. Cube synthesis runs in parallel; outputs do not depend on the
// thread count.
Dataset build_uav_dataset(int n_per_class, std::uint64_t seed, int threads = 0);

// Synthesizes the fall track: n_clips alternating fall/non-fall clips cut
// into 256 x 64 spectrogram windows (stride 16), labelled per clip.
Dataset build_fall_dataset(int n_clips, std::uint64_t seed, int frames_per_clip = 0,
                           int threads = 0);

// Noise floor used by the dataset builders (dB relative to the strongest
// scene scatterer).
inline constexpr double kBuilderNoiseFloorDb = -40.0;

// Linear-magnitude floor applied before the dB conversion of stored pixels.
inline constexpr double kDatasetDbFloor = 1e-6;

}  // namespace rqk
