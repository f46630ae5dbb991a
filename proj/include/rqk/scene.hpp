#pragma once

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace rqk {

// Rotor disc attached to a scatterer. Expanded at synthesis time into
// n_blades point reflectors on a ring of radius 0.8 * blade_length whose
// radial coordinate oscillates at the rotation rate. radial_projection
// scales the apparent ring radius for rotor discs not face-on to the radar.
struct RotorMotion {
    double blade_length_m = 0.0;
    double rotation_hz = 0.0;
    int n_blades = 2;
    double phase_rad = 0.0;
    double radial_projection = 1.0;
};

// Sinusoidal radial oscillation around the carrier trajectory (limb swing,
// tremor).
struct OscillationMotion {
    double amplitude_m = 0.0;
    double frequency_hz = 0.0;
    double phase_rad = 0.0;
};

using MicroMotion = std::variant<RotorMotion, OscillationMotion>;

struct Scatterer {
    std::array<double, 3> position_m{0.0, 0.0, 0.0};
    std::array<double, 3> velocity_mps{0.0, 0.0, 0.0};
    double rcs = 1.0;
    std::optional<MicroMotion> micro_motion;
};

struct Scene {
    std::vector<Scatterer> scatterers;
    int label = -1;
    std::optional<int> clip_id;
};

}  // namespace rqk
