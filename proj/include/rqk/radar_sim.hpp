#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "rqk/radar_config.hpp"
#include "rqk/scene.hpp"

namespace rqk {

// Dechirped complex baseband samples, [rx][chirp][fast] row-major.
struct IqCube {
    std::vector<std::complex<double>> samples;
    RadarConfig config;

    IqCube() = default;
    explicit IqCube(const RadarConfig& cfg)
        : samples(static_cast<std::size_t>(cfg.n_rx) * cfg.n_chirps * cfg.n_fast), config(cfg) {}

    std::complex<double>& at(int rx, int chirp, int n) {
        return samples[(static_cast<std::size_t>(rx) * config.n_chirps + chirp) * config.n_fast + n];
    }
    const std::complex<double>& at(int rx, int chirp, int n) const {
        return samples[(static_cast<std::size_t>(rx) * config.n_chirps + chirp) * config.n_fast + n];
    }
};

inline constexpr double kDefaultNoiseFloorDb = -40.0;

// Superposes one complex tone per scatterer component (body, blade, limb)
// with beat frequency 2 R S / c in fast time and phase 4 pi R / lambda
// tracking the component's radial trajectory across chirps. The seed drives
// only the thermal noise floor; everything else is fixed by (scene, config).
// Throws std::domain_error when a component can leave the unambiguous
// range/velocity window of the config.
IqCube synthesize_cube(const Scene& scene, const RadarConfig& config, std::uint64_t seed,
                       std::optional<double> noise_floor_db = kDefaultNoiseFloorDb);

// Largest instantaneous |dR/dt| over all scene components.
double peak_radial_speed(const Scene& scene);

// Three UAV classes with distinct rotor signatures:
//   label 0 - one large slow rotor, four long blades (helicopter-like)
//   label 1 - six small fast rotors (hexacopter-like)
//   label 2 - four rotors with the shortest blades (quadcopter-like)
// Scenes are ordered class-major; scene index i has label i / n_per_class.
std::vector<Scene> make_uav_scenes(int n_per_class, const RadarConfig& config, std::uint64_t seed);

// Streams labelled (scene, cube) pairs to the sink in index order. Cube
// synthesis dominates the cost; the sink is invoked serially.
void generate_uav_dataset(int n_per_class, const RadarConfig& config, std::uint64_t seed,
                          const std::function<void(int, const Scene&, const IqCube&)>& sink);

// Materializing variant for small counts (one UAV cube is ~2 MB).
std::vector<std::pair<Scene, IqCube>> generate_uav_dataset(int n_per_class,
                                                           const RadarConfig& config,
                                                           std::uint64_t seed);

// One simulated activity clip: per-frame scenes sharing a clip id and label
// (1 = fall, 0 = non-fall). Frames are consecutive coherent intervals of
// config.n_chirps chirps.
struct FallClip {
    int clip_id = 0;
    int label = 0;
    std::vector<Scene> frames;
};

// Alternating fall / non-fall clips, ids 0..n_clips-1. Fall clips walk, drop
// with a 3.9-4.6 m/s radial pulse, then lie still; non-fall clips walk
// throughout or sit down, never exceeding the fall pulse speeds.
// frames_per_clip == 0 picks the default per-clip schedule (544-640 frames).
std::vector<FallClip> generate_fall_clips(int n_clips, const RadarConfig& config,
                                          std::uint64_t seed, int frames_per_clip = 0);

}  // namespace rqk
