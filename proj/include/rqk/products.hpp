#pragma once

#include <optional>
#include <vector>

#include "rqk/radar_sim.hpp"

namespace rqk {

enum class AxisKind { range, doppler, time };

// Physical meaning of one product axis: value at index i is origin + i * spacing.
struct Axis {
    AxisKind kind = AxisKind::range;
    double spacing = 0.0;
    double origin = 0.0;
};

// 2D real magnitude product (range-Doppler map or Doppler-time spectrogram),
// row-major, linear magnitude scale. dB conversion is left to presentation.
struct RadarProduct {
    std::vector<double> values;
    int rows = 0;
    int cols = 0;
    Axis row_axis;
    Axis col_axis;
    int label = -1;
    std::optional<int> clip_id;
    std::optional<int> window_index;

    double& at(int r, int c) { return values[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return values[static_cast<std::size_t>(r) * cols + c]; }
};

// Coherent mean over receive channels; output has n_rx = 1.
IqCube rx_average(const IqCube& cube);

// |FFT_slow{FFT_fast{x}}| with Hann windows on both axes. Doppler rows are
// zero-centred (DC at row n_chirps/2); the fast-time axis is truncated to
// config.n_range_bins usable columns. Requires n_rx == 1.
RadarProduct form_rdm(const IqCube& cube);

// Untruncated companion of form_rdm (all n_fast columns); the Parseval
// check needs the full grid because truncation discards energy.
RadarProduct form_rdm_full(const IqCube& cube);

// Zero-centred Doppler magnitude profile of one frame, taken at the usable
// range bin with the largest energy integrated over chirps. Requires n_rx == 1.
std::vector<double> doppler_profile(const IqCube& frame);

// Stacks per-frame Doppler profiles of the first T frames into an
// n_chirps x T spectrogram. Requires n_rx == 1 frames of identical config.
RadarProduct form_spectrogram(const std::vector<IqCube>& frames, int T);

// Cuts overlapping T-column windows out of a clip's per-frame profile
// sequence at the given stride, assigning window_index 0, 1, ...
std::vector<RadarProduct> cut_spectrogram_windows(const std::vector<std::vector<double>>& profiles,
                                                  const RadarConfig& config, int T, int stride);

inline constexpr int kSpectrogramFrames = 64;  // T
inline constexpr int kSpectrogramStride = 16;

}  // namespace rqk
