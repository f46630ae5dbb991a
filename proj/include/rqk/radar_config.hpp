#pragma once

#include <cstdint>

namespace rqk {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

// FMCW front-end description. One instance per benchmark track; the derived
// quantities below tie the sampled baseband grid to physical range/velocity
// axes.
struct RadarConfig {
    double carrier_hz = 0.0;
    double bandwidth_hz = 0.0;
    double chirp_duration_s = 0.0;
    int n_fast = 0;        // samples per chirp
    int n_chirps = 0;      // chirps per frame (slow-time length)
    int n_rx = 1;          // receive channels
    double sample_rate_hz = 0.0;
    int n_range_bins = 0;  // usable (kept) range bins after the fast-time DFT

    // throws std::invalid_argument when any field is out of contract
    void validate() const;

    double sweep_slope_hz_per_s() const { return bandwidth_hz / chirp_duration_s; }
    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }

    // spacing of one fast-frequency bin, in beat Hz and in metres
    double fast_bin_hz() const { return sample_rate_hz / n_fast; }
    double range_bin_m() const;

    // spacing of one Doppler bin, in Hz and in m/s
    double doppler_bin_hz() const { return 1.0 / (n_chirps * chirp_duration_s); }
    double velocity_bin_mps() const { return wavelength_m() * doppler_bin_hz() / 2.0; }

    // Hard limits of the unambiguous window. Scatterers whose instantaneous
    // range or radial speed leave this window are rejected by the simulator
    // rather than silently aliased.
    double max_range_m() const { return (n_range_bins - 0.5) * range_bin_m(); }
    double max_speed_mps() const { return (n_chirps / 2 - 0.5) * velocity_bin_mps(); }

    // 77 GHz UAV track: 128 x 510 range-Doppler maps
    static RadarConfig uav_track();
    // 60 GHz fall track: 256-bin Doppler profiles, 2 RX channels
    static RadarConfig fall_track();
};

struct FmcwRelations {
    double slope_hz_per_s = 0.0;
    double range_resolution_m = 0.0;
    double velocity_resolution_mps = 0.0;
};

// Basic chirp relations: S = B/Tc, dR = c/(2B), dv = lambda/(2 n_chirps Tc).
FmcwRelations fmcw_relations(const RadarConfig& config);

// Range corresponding to a beat frequency: R = c f_b / (2 S).
double beat_range(const RadarConfig& config, double beat_hz);

}  // namespace rqk
