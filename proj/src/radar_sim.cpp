#include "rqk/radar_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "rqk/rng.hpp"

namespace rqk {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double norm3(const std::array<double, 3>& v) {
    return std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
}

double dot3(const std::array<double, 3>& a, const std::array<double, 3>& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

// One point component of a scatterer after micro-motion expansion:
// R(t) = base_range + radial_speed * t + swing * trig(omega * t + phase).
struct Component {
    double amplitude = 0.0;
    double base_range = 0.0;
    double radial_speed = 0.0;
    double swing = 0.0;    // metres
    double omega = 0.0;    // rad/s
    double phase = 0.0;
    bool cosine = false;   // rotor rings use cos, oscillators use sin

    double range_at(double t) const {
        double osc = swing == 0.0 ? 0.0
                                  : swing * (cosine ? std::cos(omega * t + phase)
                                                    : std::sin(omega * t + phase));
        return base_range + radial_speed * t + osc;
    }
    double peak_speed() const { return std::abs(radial_speed) + std::abs(swing * omega); }
};

std::vector<Component> expand_scene(const Scene& scene) {
    std::vector<Component> parts;
    for (const Scatterer& s : scene.scatterers) {
        if (s.rcs < 0.0) throw std::domain_error("scatterer rcs must be >= 0");
        double range = norm3(s.position_m);
        double radial = range > 0.0 ? dot3(s.velocity_mps, s.position_m) / range : 0.0;
        if (!s.micro_motion) {
            parts.push_back({s.rcs, range, radial, 0.0, 0.0, 0.0, false});
        } else if (const auto* rotor = std::get_if<RotorMotion>(&*s.micro_motion)) {
            if (rotor->blade_length_m < 0.0 || rotor->rotation_hz < 0.0 || rotor->n_blades < 1)
                throw std::domain_error("rotor descriptor out of range");
            double ring = 0.8 * rotor->blade_length_m * rotor->radial_projection;
            double omega = kTwoPi * rotor->rotation_hz;
            for (int b = 0; b < rotor->n_blades; ++b) {
                double blade_phase = rotor->phase_rad + kTwoPi * b / rotor->n_blades;
                parts.push_back({s.rcs, range, radial, ring, omega, blade_phase, true});
            }
        } else {
            const auto& osc = std::get<OscillationMotion>(*s.micro_motion);
            parts.push_back({s.rcs, range, radial, osc.amplitude_m, kTwoPi * osc.frequency_hz,
                             osc.phase_rad, false});
        }
    }
    return parts;
}

void check_window(const Component& part, const RadarConfig& config, std::size_t index) {
    double frame_span = config.n_chirps * config.chirp_duration_s;
    double r_lo = part.base_range - std::abs(part.swing) - part.peak_speed() * frame_span;
    double r_hi = part.base_range + std::abs(part.swing) + part.peak_speed() * frame_span;
    if (r_lo < 0.0 || r_hi > config.max_range_m())
        throw std::domain_error("scatterer component " + std::to_string(index) +
                                " leaves the unambiguous range window [0, " +
                                std::to_string(config.max_range_m()) + " m] (reaches " +
                                std::to_string(r_lo < 0.0 ? r_lo : r_hi) + " m)");
    if (part.peak_speed() > config.max_speed_mps())
        throw std::domain_error("scatterer component " + std::to_string(index) +
                                " exceeds the unambiguous speed window +-" +
                                std::to_string(config.max_speed_mps()) + " m/s (peak " +
                                std::to_string(part.peak_speed()) + " m/s)");
}

}  // namespace

IqCube synthesize_cube(const Scene& scene, const RadarConfig& config, std::uint64_t seed,
                       std::optional<double> noise_floor_db) {
    config.validate();
    std::vector<Component> parts = expand_scene(scene);
    for (std::size_t i = 0; i < parts.size(); ++i) check_window(parts[i], config, i);

    IqCube cube(config);
    const double slope = config.sweep_slope_hz_per_s();
    const double lambda = config.wavelength_m();
    const double tc = config.chirp_duration_s;
    const double fs = config.sample_rate_hz;

    for (int rx = 0; rx < config.n_rx; ++rx) {
        for (int m = 0; m < config.n_chirps; ++m) {
            const double t = m * tc;
            std::complex<double>* row = &cube.at(rx, m, 0);
            for (const Component& part : parts) {
                if (part.amplitude == 0.0) continue;
                const double r = part.range_at(t);
                const double beat_hz = 2.0 * r * slope / kSpeedOfLight;
                const double phase0 = 2.0 * kTwoPi * r / lambda;
                std::complex<double> tone = std::polar(part.amplitude, phase0);
                const std::complex<double> step = std::polar(1.0, kTwoPi * beat_hz / fs);
                for (int n = 0; n < config.n_fast; ++n) {
                    row[n] += tone;
                    tone *= step;
                }
            }
        }
    }

    if (noise_floor_db) {
        double strongest = 0.0;
        for (const Scatterer& s : scene.scatterers) strongest = std::max(strongest, s.rcs);
        const double sigma = strongest * std::pow(10.0, *noise_floor_db / 20.0);
        if (sigma > 0.0) {
            Rng rng(derive_seed(seed, {0x6e6f6973ULL}));
            const double comp = sigma / std::numbers::sqrt2;
            for (auto& sample : cube.samples)
                sample += std::complex<double>(comp * rng.normal(), comp * rng.normal());
        }
    }
    return cube;
}

double peak_radial_speed(const Scene& scene) {
    double peak = 0.0;
    for (const Component& part : expand_scene(scene)) peak = std::max(peak, part.peak_speed());
    return peak;
}

namespace {

// Per-class UAV airframe parameter ranges. Blade-tip speed bands are
// disjoint (A 14-17, B 8.5-11, C 4.5-6.5 m/s) so the class-conditional
// Doppler spreads order A > B > C by construction.
struct UavClassSpec {
    int n_rotors;
    int n_blades;
    double tip_lo, tip_hi;       // blade-tip radial speed band, m/s
    double rot_lo, rot_hi;       // rotation rate band, Hz
    double body_rcs_lo, body_rcs_hi;
    double blade_rcs_lo, blade_rcs_hi;
};

constexpr UavClassSpec kUavClasses[3] = {
    {1, 4, 14.0, 17.0, 2.0, 2.6, 1.2, 2.2, 0.35, 0.60},   // helicopter-like
    {6, 2, 8.5, 11.0, 10.0, 14.0, 0.7, 1.3, 0.10, 0.18},  // hexacopter-like
    {4, 2, 4.5, 6.5, 9.0, 13.0, 0.5, 0.9, 0.08, 0.15},    // quadcopter-like
};

std::array<double, 3> scaled(const std::array<double, 3>& v, double k) {
    return {v[0] * k, v[1] * k, v[2] * k};
}

Scene make_uav_scene(int label, Rng& rng) {
    const UavClassSpec& spec = kUavClasses[label];
    Scene scene;
    scene.label = label;

    double az = rng.uniform(-0.6, 0.6);
    double el = rng.uniform(0.05, 0.35);
    std::array<double, 3> dir{std::cos(el) * std::cos(az), std::cos(el) * std::sin(az),
                              std::sin(el)};
    double range = rng.uniform(38.0, 56.0);
    double radial_speed = rng.uniform(-5.5, 5.5);

    // transverse drift leaves the radial signature unchanged
    double planar = std::hypot(dir[0], dir[1]);
    std::array<double, 3> across{-dir[1] / planar, dir[0] / planar, 0.0};
    double drift = rng.uniform(-2.0, 2.0);
    std::array<double, 3> velocity{dir[0] * radial_speed + across[0] * drift,
                                   dir[1] * radial_speed + across[1] * drift,
                                   dir[2] * radial_speed + across[2] * drift};

    Scatterer body;
    body.position_m = scaled(dir, range);
    body.velocity_mps = velocity;
    body.rcs = rng.uniform(spec.body_rcs_lo, spec.body_rcs_hi);
    scene.scatterers.push_back(body);

    for (int rotor = 0; rotor < spec.n_rotors; ++rotor) {
        double tip = rng.uniform(spec.tip_lo, spec.tip_hi);
        double rotation = rng.uniform(spec.rot_lo, spec.rot_hi);
        double projection = rng.uniform(0.7, 1.0);
        Scatterer hub;
        double hub_offset = spec.n_rotors == 1 ? 0.0 : rng.uniform(-0.55, 0.55);
        hub.position_m = scaled(dir, range + hub_offset);
        hub.velocity_mps = velocity;
        hub.rcs = rng.uniform(spec.blade_rcs_lo, spec.blade_rcs_hi);
        RotorMotion motion;
        motion.rotation_hz = rotation;
        motion.radial_projection = projection;
        // 0.8 * blade_length * projection * omega reproduces the drawn tip speed
        motion.blade_length_m = tip / (0.8 * kTwoPi * rotation * projection);
        motion.n_blades = spec.n_blades;
        motion.phase_rad = rng.uniform(0.0, kTwoPi);
        hub.micro_motion = motion;
        scene.scatterers.push_back(hub);
    }
    return scene;
}

}  // namespace

std::vector<Scene> make_uav_scenes(int n_per_class, const RadarConfig& config, std::uint64_t seed) {
    config.validate();
    if (n_per_class < 1) throw std::invalid_argument("make_uav_scenes: n_per_class must be >= 1");
    std::vector<Scene> scenes;
    scenes.reserve(static_cast<std::size_t>(n_per_class) * 3);
    for (int label = 0; label < 3; ++label) {
        for (int k = 0; k < n_per_class; ++k) {
            Rng rng(derive_seed(seed, {1, static_cast<std::uint64_t>(label),
                                       static_cast<std::uint64_t>(k)}));
            scenes.push_back(make_uav_scene(label, rng));
        }
    }
    return scenes;
}

void generate_uav_dataset(int n_per_class, const RadarConfig& config, std::uint64_t seed,
                          const std::function<void(int, const Scene&, const IqCube&)>& sink) {
    std::vector<Scene> scenes = make_uav_scenes(n_per_class, config, seed);
    for (std::size_t i = 0; i < scenes.size(); ++i) {
        std::uint64_t cube_seed = derive_seed(seed, {3, static_cast<std::uint64_t>(i)});
        IqCube cube = synthesize_cube(scenes[i], config, cube_seed);
        sink(static_cast<int>(i), scenes[i], cube);
    }
}

std::vector<std::pair<Scene, IqCube>> generate_uav_dataset(int n_per_class,
                                                           const RadarConfig& config,
                                                           std::uint64_t seed) {
    std::vector<std::pair<Scene, IqCube>> out;
    out.reserve(static_cast<std::size_t>(n_per_class) * 3);
    generate_uav_dataset(n_per_class, config, seed,
                         [&](int, const Scene& scene, const IqCube& cube) {
                             out.emplace_back(scene, cube);
                         });
    return out;
}

namespace {

// Radial kinematic profile of a torso over one clip. Velocity is walk /
// event-pulse / still depending on the clip script; position integrates
// frame by frame.
struct TorsoScript {
    double walk_amp = 0.0;
    double walk_period_s = 6.0;
    double walk_phase = 0.0;
    double event_time_s = -1.0;      // fall or sit onset; < 0 means none
    double event_duration_s = 0.0;
    double event_peak_mps = 0.0;
    bool still_after_event = false;

    double speed_at(double t) const {
        if (event_time_s >= 0.0 && t >= event_time_s) {
            if (t < event_time_s + event_duration_s) {
                double u = (t - event_time_s) / event_duration_s;
                return event_peak_mps * std::sin(std::numbers::pi * u);
            }
            if (still_after_event) return 0.0;
        }
        return walk_amp * std::sin(kTwoPi * t / walk_period_s + walk_phase);
    }
};

}  // namespace

std::vector<FallClip> generate_fall_clips(int n_clips, const RadarConfig& config,
                                          std::uint64_t seed, int frames_per_clip) {
    config.validate();
    if (n_clips < 2)
        throw std::invalid_argument("generate_fall_clips: need at least one clip per class");
    if (frames_per_clip < 0)
        throw std::invalid_argument("generate_fall_clips: frames_per_clip must be >= 0");

    const double frame_s = config.n_chirps * config.chirp_duration_s;
    std::vector<FallClip> clips(static_cast<std::size_t>(n_clips));

    for (int id = 0; id < n_clips; ++id) {
        Rng rng(derive_seed(seed, {2, static_cast<std::uint64_t>(id)}));
        FallClip& clip = clips[static_cast<std::size_t>(id)];
        clip.clip_id = id;
        clip.label = (id % 2 == 0) ? 1 : 0;  // even ids are falls

        int n_frames = frames_per_clip > 0 ? frames_per_clip : 544 + rng.pick(97);
        double duration = n_frames * frame_s;

        TorsoScript torso;
        torso.walk_amp = rng.uniform(0.8, 1.3);
        torso.walk_period_s = rng.uniform(5.0, 9.0);
        torso.walk_phase = rng.uniform(0.0, kTwoPi);

        // residual motion once the event completes: a felled body barely
        // trembles, a seated one keeps fidgeting
        double after_torso_amp = 0.0, after_torso_freq = 0.0;
        double after_limb_amp[2] = {0.0, 0.0}, after_limb_freq[2] = {0.0, 0.0};
        if (clip.label == 1) {
            // brief walk-in, fall pulse, then prone stillness
            torso.event_time_s = rng.uniform(0.12, 0.22) * duration;
            torso.event_duration_s = rng.uniform(0.40, 0.50);
            torso.event_peak_mps = rng.uniform(3.9, 4.6);
            torso.still_after_event = true;
            after_torso_amp = 0.008;
            after_torso_freq = 3.5;
            for (int l = 0; l < 2; ++l) {
                after_limb_amp[l] = 0.01;
                after_limb_freq[l] = rng.uniform(1.3, 1.8);
            }
        } else if (id % 4 == 1) {
            // half of the non-fall clips sit down and fidget
            torso.event_time_s = rng.uniform(0.35, 0.60) * duration;
            torso.event_duration_s = rng.uniform(0.8, 1.0);
            torso.event_peak_mps = rng.uniform(0.9, 1.3);
            torso.still_after_event = true;
            after_torso_amp = rng.uniform(0.020, 0.035);
            after_torso_freq = rng.uniform(0.8, 1.4);
            for (int l = 0; l < 2; ++l) {
                after_limb_amp[l] = rng.uniform(0.05, 0.09);
                after_limb_freq[l] = rng.uniform(0.8, 1.3);
            }
        }

        double range = rng.uniform(5.0, 11.0);
        double az = rng.uniform(-0.5, 0.5);
        std::array<double, 3> dir{std::cos(az), std::sin(az), 0.0};
        double torso_rcs = rng.uniform(0.9, 1.4);

        struct Limb {
            double amp, freq, phase, rcs, offset;
        };
        std::array<Limb, 2> limbs{};
        for (int l = 0; l < 2; ++l) {
            limbs[l].amp = rng.uniform(0.12, 0.22);
            limbs[l].freq = rng.uniform(1.3, 1.8);
            limbs[l].phase = rng.uniform(0.0, kTwoPi);
            limbs[l].rcs = rng.uniform(0.25, 0.45);
            limbs[l].offset = rng.uniform(-0.25, 0.25);
        }

        clip.frames.reserve(static_cast<std::size_t>(n_frames));
        for (int f = 0; f < n_frames; ++f) {
            double t = f * frame_s;
            double speed = torso.speed_at(t);

            Scene frame;
            frame.label = clip.label;
            frame.clip_id = id;

            bool settled = torso.event_time_s >= 0.0 && torso.still_after_event &&
                           t >= torso.event_time_s + torso.event_duration_s;
            bool during_event = torso.event_time_s >= 0.0 && t >= torso.event_time_s &&
                                t < torso.event_time_s + torso.event_duration_s;

            Scatterer body;
            body.position_m = scaled(dir, range);
            body.velocity_mps = scaled(dir, speed);
            body.rcs = torso_rcs;
            if (settled && after_torso_amp > 0.0) {
                OscillationMotion residual;
                residual.amplitude_m = after_torso_amp;
                residual.frequency_hz = after_torso_freq;
                residual.phase_rad = std::fmod(kTwoPi * after_torso_freq * t, kTwoPi);
                body.micro_motion = residual;
            }
            frame.scatterers.push_back(body);

            for (int l = 0; l < 2; ++l) {
                const Limb& limb = limbs[static_cast<std::size_t>(l)];
                Scatterer part;
                part.position_m = scaled(dir, range + limb.offset);
                part.velocity_mps = scaled(dir, speed);
                part.rcs = limb.rcs;
                double amp = limb.amp;
                double freq = limb.freq;
                if (clip.label == 1 && during_event) {
                    amp *= 1.6;  // flail
                    freq *= 1.5;
                } else if (settled) {
                    amp = after_limb_amp[l];
                    freq = after_limb_freq[l];
                }
                OscillationMotion osc;
                osc.amplitude_m = amp;
                osc.frequency_hz = freq;
                osc.phase_rad = std::fmod(kTwoPi * freq * t + limb.phase, kTwoPi);
                part.micro_motion = osc;
                frame.scatterers.push_back(part);
            }

            range += speed * frame_s;
            clip.frames.push_back(std::move(frame));
        }
    }
    return clips;
}

}  // namespace rqk
