#include "rqk/products.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "rqk/fft.hpp"

namespace rqk {
namespace {

void require_single_channel(const IqCube& cube, const char* who) {
    cube.config.validate();
    std::size_t expected = static_cast<std::size_t>(cube.config.n_rx) * cube.config.n_chirps *
                           cube.config.n_fast;
    if (cube.samples.size() != expected)
        throw std::invalid_argument(std::string(who) + ": cube shape does not match its config");
    if (cube.config.n_rx != 1)
        throw std::invalid_argument(std::string(who) + ": expected a single receive channel; "
                                    "apply rx_average first");
}

// fast-time FFT of every chirp, Hann-windowed; output [chirp][fast bin]
std::vector<std::complex<double>> fast_time_spectrum(const IqCube& cube) {
    const int n_fast = cube.config.n_fast;
    const int n_chirps = cube.config.n_chirps;
    const std::vector<double> wf = hann_window(n_fast);
    std::vector<std::complex<double>> grid(static_cast<std::size_t>(n_chirps) * n_fast);
    for (int m = 0; m < n_chirps; ++m) {
        std::complex<double>* row = &grid[static_cast<std::size_t>(m) * n_fast];
        for (int n = 0; n < n_fast; ++n)
            row[n] = cube.at(0, m, n) * wf[static_cast<std::size_t>(n)];
        fft_inplace(row, static_cast<std::size_t>(n_fast));
    }
    return grid;
}

// slow-time FFT down one fast-frequency column, Hann-windowed and
// zero-centred: out[l] = |X[(l + N/2) mod N]|
void doppler_column(const std::vector<std::complex<double>>& grid, int n_chirps, int n_fast,
                    int col, const std::vector<double>& ws, std::vector<std::complex<double>>& scratch,
                    double* out, int out_stride) {
    scratch.resize(static_cast<std::size_t>(n_chirps));
    for (int m = 0; m < n_chirps; ++m)
        scratch[static_cast<std::size_t>(m)] =
            grid[static_cast<std::size_t>(m) * n_fast + col] * ws[static_cast<std::size_t>(m)];
    fft_inplace(scratch);
    const int half = n_chirps / 2;
    for (int l = 0; l < n_chirps; ++l)
        out[static_cast<std::size_t>(l) * out_stride] =
            std::abs(scratch[static_cast<std::size_t>((l + half) % n_chirps)]);
}

RadarProduct rdm_with_columns(const IqCube& cube, int n_cols) {
    const RadarConfig& cfg = cube.config;
    std::vector<std::complex<double>> grid = fast_time_spectrum(cube);
    const std::vector<double> ws = hann_window(cfg.n_chirps);

    RadarProduct product;
    product.rows = cfg.n_chirps;
    product.cols = n_cols;
    product.values.resize(static_cast<std::size_t>(product.rows) * product.cols);
    product.row_axis = {AxisKind::doppler, cfg.velocity_bin_mps(),
                        -(cfg.n_chirps / 2) * cfg.velocity_bin_mps()};
    product.col_axis = {AxisKind::range, cfg.range_bin_m(), 0.0};

    std::vector<std::complex<double>> scratch;
    for (int k = 0; k < n_cols; ++k)
        doppler_column(grid, cfg.n_chirps, cfg.n_fast, k, ws, scratch, &product.values[k],
                       product.cols);
    return product;
}

}  // namespace

IqCube rx_average(const IqCube& cube) {
    cube.config.validate();
    std::size_t expected = static_cast<std::size_t>(cube.config.n_rx) * cube.config.n_chirps *
                           cube.config.n_fast;
    if (cube.samples.size() != expected)
        throw std::invalid_argument("rx_average: cube shape does not match its config");
    IqCube out;
    out.config = cube.config;
    out.config.n_rx = 1;
    const std::size_t per_channel =
        static_cast<std::size_t>(cube.config.n_chirps) * cube.config.n_fast;
    out.samples.assign(per_channel, {0.0, 0.0});
    for (int rx = 0; rx < cube.config.n_rx; ++rx)
        for (std::size_t i = 0; i < per_channel; ++i)
            out.samples[i] += cube.samples[static_cast<std::size_t>(rx) * per_channel + i];
    const double inv = 1.0 / cube.config.n_rx;
    for (auto& s : out.samples) s *= inv;
    return out;
}

RadarProduct form_rdm(const IqCube& cube) {
    require_single_channel(cube, "form_rdm");
    return rdm_with_columns(cube, cube.config.n_range_bins);
}

RadarProduct form_rdm_full(const IqCube& cube) {
    require_single_channel(cube, "form_rdm_full");
    return rdm_with_columns(cube, cube.config.n_fast);
}

std::vector<double> doppler_profile(const IqCube& frame) {
    require_single_channel(frame, "doppler_profile");
    const RadarConfig& cfg = frame.config;
    std::vector<std::complex<double>> grid = fast_time_spectrum(frame);

    int best_col = 0;
    double best_energy = -1.0;
    for (int k = 0; k < cfg.n_range_bins; ++k) {
        double energy = 0.0;
        for (int m = 0; m < cfg.n_chirps; ++m)
            energy += std::norm(grid[static_cast<std::size_t>(m) * cfg.n_fast + k]);
        if (energy > best_energy) {
            best_energy = energy;
            best_col = k;
        }
    }

    const std::vector<double> ws = hann_window(cfg.n_chirps);
    std::vector<double> profile(static_cast<std::size_t>(cfg.n_chirps));
    std::vector<std::complex<double>> scratch;
    doppler_column(grid, cfg.n_chirps, cfg.n_fast, best_col, ws, scratch, profile.data(), 1);
    return profile;
}

RadarProduct form_spectrogram(const std::vector<IqCube>& frames, int T) {
    if (T < 1) throw std::invalid_argument("form_spectrogram: T must be >= 1");
    if (static_cast<int>(frames.size()) < T)
        throw std::invalid_argument("form_spectrogram: need at least T frames, got " +
                                    std::to_string(frames.size()));
    const RadarConfig& cfg = frames.front().config;

    RadarProduct product;
    product.rows = cfg.n_chirps;
    product.cols = T;
    product.values.resize(static_cast<std::size_t>(product.rows) * product.cols);
    product.row_axis = {AxisKind::doppler, cfg.velocity_bin_mps(),
                        -(cfg.n_chirps / 2) * cfg.velocity_bin_mps()};
    product.col_axis = {AxisKind::time, cfg.n_chirps * cfg.chirp_duration_s, 0.0};

    for (int t = 0; t < T; ++t) {
        std::vector<double> column = doppler_profile(frames[static_cast<std::size_t>(t)]);
        if (static_cast<int>(column.size()) != product.rows)
            throw std::invalid_argument("form_spectrogram: frames disagree on Doppler length");
        for (int l = 0; l < product.rows; ++l) product.at(l, t) = column[static_cast<std::size_t>(l)];
    }
    return product;
}

std::vector<RadarProduct> cut_spectrogram_windows(const std::vector<std::vector<double>>& profiles,
                                                  const RadarConfig& config, int T, int stride) {
    if (T < 1 || stride < 1)
        throw std::invalid_argument("cut_spectrogram_windows: T and stride must be >= 1");
    if (static_cast<int>(profiles.size()) < T)
        throw std::invalid_argument("cut_spectrogram_windows: clip shorter than one window");

    std::vector<RadarProduct> windows;
    for (int start = 0, index = 0; start + T <= static_cast<int>(profiles.size());
         start += stride, ++index) {
        RadarProduct product;
        product.rows = config.n_chirps;
        product.cols = T;
        product.values.resize(static_cast<std::size_t>(product.rows) * product.cols);
        product.row_axis = {AxisKind::doppler, config.velocity_bin_mps(),
                            -(config.n_chirps / 2) * config.velocity_bin_mps()};
        product.col_axis = {AxisKind::time, config.n_chirps * config.chirp_duration_s,
                            start * config.n_chirps * config.chirp_duration_s};
        for (int t = 0; t < T; ++t) {
            const std::vector<double>& column = profiles[static_cast<std::size_t>(start + t)];
            if (static_cast<int>(column.size()) != product.rows)
                throw std::invalid_argument("cut_spectrogram_windows: profile length mismatch");
            for (int l = 0; l < product.rows; ++l)
                product.at(l, t) = column[static_cast<std::size_t>(l)];
        }
        product.window_index = index;
        windows.push_back(std::move(product));
    }
    return windows;
}

}  // namespace rqk
