#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "rqk/oracles.hpp"
#include "rqk/radar_config.hpp"
#include "rqk/radar_sim.hpp"
#include "rqk/rng.hpp"

using namespace rqk;

namespace {

// argmax of |X[k]| over a naive-DFT spectrum
int dft_peak_bin(const std::vector<std::complex<double>>& x) {
    const auto spectrum = naive_dft(x);
    int best = 0;
    double best_mag = -1.0;
    for (std::size_t k = 0; k < spectrum.size(); ++k) {
        if (std::abs(spectrum[k]) > best_mag) {
            best_mag = std::abs(spectrum[k]);
            best = static_cast<int>(k);
        }
    }
    return best;
}

Scene single_scatterer(double range, double speed) {
    Scene scene;
    Scatterer s;
    s.position_m = {range, 0.0, 0.0};
    s.velocity_mps = {speed, 0.0, 0.0};
    s.rcs = 1.0;
    scene.scatterers.push_back(s);
    scene.label = 0;
    return scene;
}

}  // namespace

TEST_CASE("fmcw relations reproduce the track parameters") {
    const RadarConfig uav = RadarConfig::uav_track();
    const FmcwRelations r = fmcw_relations(uav);
    // B = 300 MHz -> 0.5 m range resolution
    CHECK(r.range_resolution_m == doctest::Approx(0.49965).epsilon(1e-4));
    CHECK(std::abs(r.range_resolution_m - 0.5) / 0.5 < 0.02);
    // ~0.4 m/s velocity resolution at 77 GHz
    CHECK(std::abs(r.velocity_resolution_mps - 0.4) / 0.4 < 0.02);
    CHECK(r.slope_hz_per_s == doctest::Approx(uav.bandwidth_hz / uav.chirp_duration_s));

    const RadarConfig fall = RadarConfig::fall_track();
    const FmcwRelations rf = fmcw_relations(fall);
    // B = 499.7 MHz -> ~0.300 m
    CHECK(rf.range_resolution_m == doctest::Approx(0.29996).epsilon(1e-3));
    CHECK(std::abs(rf.velocity_resolution_mps - 0.095) / 0.095 < 0.02);
}

TEST_CASE("fmcw relations unit slope case") {
    RadarConfig c = RadarConfig::uav_track();
    c.bandwidth_hz = 1.0;
    c.chirp_duration_s = 1.0;
    CHECK(fmcw_relations(c).slope_hz_per_s == doctest::Approx(1.0));
}

TEST_CASE("coherent interval recovered from a 60 GHz velocity resolution") {
    // invert v_res = lambda / (2 T_cpi) by hand: 4.99654e-3 / (2 * 0.095)
    const double lambda = kSpeedOfLight / 60e9;
    const double t_cpi = lambda / (2.0 * 0.095);
    CHECK(t_cpi == doctest::Approx(0.0262976).epsilon(1e-4));
    const RadarConfig fall = RadarConfig::fall_track();
    CHECK(fall.n_chirps * fall.chirp_duration_s == doctest::Approx(t_cpi).epsilon(0.02));
}

TEST_CASE("fmcw relations reject non-positive parameters") {
    RadarConfig c = RadarConfig::uav_track();
    c.bandwidth_hz = 0.0;
    CHECK_THROWS_AS(fmcw_relations(c), std::invalid_argument);
    c = RadarConfig::uav_track();
    c.chirp_duration_s = -1e-6;
    CHECK_THROWS_AS(fmcw_relations(c), std::invalid_argument);
}

TEST_CASE("beat_range evaluates c f_b / (2 S)") {
    const RadarConfig c = RadarConfig::uav_track();
    CHECK(beat_range(c, 0.0) == 0.0);

    RadarConfig unit = c;
    unit.bandwidth_hz = 1e12;
    unit.chirp_duration_s = 1.0;  // S = 1e12 Hz/s
    // hand evaluation: 2.99792458e8 * 66.7e3 / 2e12 = 9.99858...
    CHECK(beat_range(unit, 66.7e3) == doctest::Approx(9.99858).epsilon(1e-3));

    // linearity
    const double r1 = beat_range(c, 1e5);
    const double r2 = beat_range(c, 2e5);
    CHECK(r2 == doctest::Approx(2.0 * r1).epsilon(1e-12));

    CHECK_THROWS_AS(beat_range(c, -1.0), std::invalid_argument);
}

TEST_CASE("empty scene with no noise floor gives an all-zero cube") {
    Scene scene;
    scene.label = 0;
    const IqCube cube = synthesize_cube(scene, RadarConfig::fall_track(), 9, std::nullopt);
    for (const auto& s : cube.samples) CHECK(s == std::complex<double>(0.0, 0.0));
}

TEST_CASE("empty scene with default noise floor is still zero (no reference scatterer)") {
    Scene scene;
    scene.label = 0;
    const IqCube cube = synthesize_cube(scene, RadarConfig::fall_track(), 9);
    for (const auto& s : cube.samples) CHECK(s == std::complex<double>(0.0, 0.0));
}

TEST_CASE("static scatterer lands in the predicted fast-time DFT bin") {
    const RadarConfig c = RadarConfig::uav_track();
    const double range = 10.0;
    const IqCube cube = synthesize_cube(single_scatterer(range, 0.0), c, 1, std::nullopt);

    std::vector<std::complex<double>> chirp(static_cast<std::size_t>(c.n_fast));
    for (int n = 0; n < c.n_fast; ++n) chirp[static_cast<std::size_t>(n)] = cube.at(0, 0, n);

    const double beat_hz = 2.0 * range * c.sweep_slope_hz_per_s() / kSpeedOfLight;
    const int expected = static_cast<int>(std::lround(beat_hz * c.n_fast / c.sample_rate_hz));
    CHECK(std::abs(dft_peak_bin(chirp) - expected) <= 1);
}

TEST_CASE("moving scatterer lands in the predicted slow-time DFT bin") {
    const RadarConfig c = RadarConfig::uav_track();
    const double speed = 3.0;
    const IqCube cube = synthesize_cube(single_scatterer(20.0, speed), c, 1, std::nullopt);

    // slow-time series at the strongest fast-time bin of chirp 0
    std::vector<std::complex<double>> chirp(static_cast<std::size_t>(c.n_fast));
    for (int n = 0; n < c.n_fast; ++n) chirp[static_cast<std::size_t>(n)] = cube.at(0, 0, n);
    const int range_bin = dft_peak_bin(chirp);

    std::vector<std::complex<double>> slow(static_cast<std::size_t>(c.n_chirps));
    for (int m = 0; m < c.n_chirps; ++m) {
        std::complex<double> acc(0.0, 0.0);
        for (int n = 0; n < c.n_fast; ++n) {
            const double angle = -2.0 * std::numbers::pi * n * range_bin / c.n_fast;
            acc += cube.at(0, m, n) * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        slow[static_cast<std::size_t>(m)] = acc;
    }

    const double doppler_hz = 2.0 * speed / c.wavelength_m();
    const int expected =
        static_cast<int>(std::lround(doppler_hz * c.n_chirps * c.chirp_duration_s));
    CHECK(std::abs(dft_peak_bin(slow) - expected) <= 1);
}

TEST_CASE("superposition over scenes") {
    const RadarConfig c = RadarConfig::fall_track();
    Rng rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        Scene a, b, both;
        for (int k = 0; k < 2; ++k) {
            Scatterer s;
            s.position_m = {rng.uniform(3.0, 15.0), 0.0, 0.0};
            s.velocity_mps = {rng.uniform(-2.0, 2.0), 0.0, 0.0};
            s.rcs = rng.uniform(0.2, 2.0);
            a.scatterers.push_back(s);
            both.scatterers.push_back(s);
        }
        for (int k = 0; k < 2; ++k) {
            Scatterer s;
            s.position_m = {rng.uniform(3.0, 15.0), 0.0, 0.0};
            s.velocity_mps = {rng.uniform(-2.0, 2.0), 0.0, 0.0};
            s.rcs = rng.uniform(0.2, 2.0);
            b.scatterers.push_back(s);
            both.scatterers.push_back(s);
        }
        const IqCube ca = synthesize_cube(a, c, 1, std::nullopt);
        const IqCube cb = synthesize_cube(b, c, 1, std::nullopt);
        const IqCube cab = synthesize_cube(both, c, 1, std::nullopt);
        double worst = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < cab.samples.size(); ++i) {
            worst = std::max(worst, std::abs(cab.samples[i] - (ca.samples[i] + cb.samples[i])));
            scale = std::max(scale, std::abs(cab.samples[i]));
        }
        CHECK(worst <= 1e-12 * std::max(1.0, scale));
    }
}

TEST_CASE("synthesis is deterministic in (scene, config, seed)") {
    const RadarConfig c = RadarConfig::fall_track();
    const Scene scene = single_scatterer(8.0, 1.0);
    const IqCube c1 = synthesize_cube(scene, c, 42);
    const IqCube c2 = synthesize_cube(scene, c, 42);
    REQUIRE(c1.samples.size() == c2.samples.size());
    for (std::size_t i = 0; i < c1.samples.size(); ++i) CHECK(c1.samples[i] == c2.samples[i]);

    const IqCube c3 = synthesize_cube(scene, c, 43);
    bool any_different = false;
    for (std::size_t i = 0; i < c1.samples.size() && !any_different; ++i)
        any_different = c1.samples[i] != c3.samples[i];
    CHECK(any_different);
}

TEST_CASE("out-of-window scatterers are rejected") {
    const RadarConfig c = RadarConfig::uav_track();
    CHECK_THROWS_AS(synthesize_cube(single_scatterer(c.max_range_m() + 5.0, 0.0), c, 1),
                    std::domain_error);
    CHECK_THROWS_AS(synthesize_cube(single_scatterer(20.0, c.max_speed_mps() + 1.0), c, 1),
                    std::domain_error);
}

TEST_CASE("uav dataset structure and determinism") {
    const RadarConfig c = RadarConfig::uav_track();
    const auto scenes = make_uav_scenes(4, c, 7);
    REQUIRE(scenes.size() == 12);
    for (int label = 0; label < 3; ++label)
        for (int k = 0; k < 4; ++k) CHECK(scenes[static_cast<std::size_t>(label * 4 + k)].label == label);

    const auto pairs1 = generate_uav_dataset(2, c, 7);
    const auto pairs2 = generate_uav_dataset(2, c, 7);
    REQUIRE(pairs1.size() == 6);
    for (std::size_t i = 0; i < pairs1.size(); ++i) {
        REQUIRE(pairs1[i].second.samples.size() == pairs2[i].second.samples.size());
        for (std::size_t j = 0; j < pairs1[i].second.samples.size(); ++j)
            CHECK(pairs1[i].second.samples[j] == pairs2[i].second.samples[j]);
    }
}

TEST_CASE("class-conditional Doppler swing ordering A > B >= C") {
    const RadarConfig c = RadarConfig::uav_track();
    const auto scenes = make_uav_scenes(16, c, 11);
    double spread[3] = {0.0, 0.0, 0.0};
    int count[3] = {0, 0, 0};
    for (const Scene& scene : scenes) {
        spread[scene.label] += peak_radial_speed(scene);
        count[scene.label] += 1;
    }
    for (int k = 0; k < 3; ++k) spread[k] /= count[k];
    CHECK(spread[0] > spread[1]);
    CHECK(spread[1] >= spread[2]);
}

TEST_CASE("fall clips: structure, determinism, fall-speed separation") {
    const RadarConfig c = RadarConfig::fall_track();
    const auto clips = generate_fall_clips(16, c, 7, 96);
    REQUIRE(clips.size() == 16);
    int falls = 0;
    for (int id = 0; id < 16; ++id) {
        CHECK(clips[static_cast<std::size_t>(id)].clip_id == id);
        CHECK(static_cast<int>(clips[static_cast<std::size_t>(id)].frames.size()) >= 64);
        falls += clips[static_cast<std::size_t>(id)].label;
        for (const Scene& frame : clips[static_cast<std::size_t>(id)].frames)
            CHECK(frame.clip_id.value() == id);
    }
    CHECK(falls == 8);

    const auto again = generate_fall_clips(16, c, 7, 96);
    for (std::size_t k = 0; k < clips.size(); ++k)
        CHECK(clips[k].frames.size() == again[k].frames.size());

    // every fall clip reaches a higher peak radial speed than any non-fall clip
    double min_fall_peak = 1e9, max_other_peak = 0.0;
    for (const FallClip& clip : generate_fall_clips(16, c, 7)) {
        double peak = 0.0;
        for (const Scene& frame : clip.frames) peak = std::max(peak, peak_radial_speed(frame));
        if (clip.label == 1) min_fall_peak = std::min(min_fall_peak, peak);
        else max_other_peak = std::max(max_other_peak, peak);
    }
    CHECK(min_fall_peak > max_other_peak);

    CHECK_THROWS_AS(generate_fall_clips(1, c, 7), std::invalid_argument);
}
