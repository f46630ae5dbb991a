#include "rqk/radar_config.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace rqk {

void RadarConfig::validate() const {
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw std::invalid_argument("RadarConfig: bandwidth must be positive");
    if (!(chirp_duration_s > 0.0) || !std::isfinite(chirp_duration_s))
        throw std::invalid_argument("RadarConfig: chirp duration must be positive");
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        throw std::invalid_argument("RadarConfig: carrier must be positive");
    if (!(sample_rate_hz > 0.0) || !std::isfinite(sample_rate_hz))
        throw std::invalid_argument("RadarConfig: sample rate must be positive");
    if (n_fast < 1 || n_chirps < 1 || n_rx < 1)
        throw std::invalid_argument("RadarConfig: sample/chirp/rx counts must be >= 1");
    if (n_range_bins < 1 || n_range_bins > n_fast)
        throw std::invalid_argument("RadarConfig: usable range bins must be in [1, n_fast]");
    double slope = sweep_slope_hz_per_s();
    if (!std::isfinite(slope) || slope <= 0.0)
        throw std::invalid_argument("RadarConfig: sweep slope must be finite and positive");
}

double RadarConfig::range_bin_m() const {
    return kSpeedOfLight * fast_bin_hz() / (2.0 * sweep_slope_hz_per_s());
}

RadarConfig RadarConfig::uav_track() {
    RadarConfig c;
    c.carrier_hz = 77e9;
    c.bandwidth_hz = 300e6;
    // 128 chirps of 38 us give a ~4.86 ms coherent interval and a 0.400 m/s
    // velocity bin; 1024 fast-time samples across the chirp give a 0.4997 m
    // range bin, of which the lowest 510 are kept.
    c.chirp_duration_s = 38e-6;
    c.n_fast = 1024;
    c.n_chirps = 128;
    c.n_rx = 1;
    c.sample_rate_hz = c.n_fast / c.chirp_duration_s;
    c.n_range_bins = 510;
    return c;
}

RadarConfig RadarConfig::fall_track() {
    RadarConfig c;
    c.carrier_hz = 60e9;
    c.bandwidth_hz = 499.7e6;
    // 256 chirps of 102.72 us -> 26.3 ms frames and a 0.0950 m/s velocity
    // bin; 128 fast-time samples with the lower 64 range bins kept (~19 m
    // indoor window).
    c.chirp_duration_s = 102.72e-6;
    c.n_fast = 128;
    c.n_chirps = 256;
    c.n_rx = 2;
    c.sample_rate_hz = c.n_fast / c.chirp_duration_s;
    c.n_range_bins = 64;
    return c;
}

FmcwRelations fmcw_relations(const RadarConfig& config) {
    config.validate();
    FmcwRelations r;
    r.slope_hz_per_s = config.sweep_slope_hz_per_s();
    r.range_resolution_m = kSpeedOfLight / (2.0 * config.bandwidth_hz);
    r.velocity_resolution_mps =
        config.wavelength_m() / (2.0 * config.n_chirps * config.chirp_duration_s);
    return r;
}

double beat_range(const RadarConfig& config, double beat_hz) {
    config.validate();
    if (beat_hz < 0.0) throw std::invalid_argument("beat_range: beat frequency must be >= 0");
    return kSpeedOfLight * beat_hz / (2.0 * config.sweep_slope_hz_per_s());
}

}  // namespace rqk
