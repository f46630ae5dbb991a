#include "rqk/selftest.hpp"

#include <Eigen/Eigenvalues>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <ostream>
#include <string>
#include <vector>

#include "rqk/bench.hpp"
#include "rqk/kernels.hpp"
#include "rqk/oracles.hpp"
#include "rqk/products.hpp"
#include "rqk/radar_sim.hpp"
#include "rqk/rng.hpp"
#include "rqk/statevector.hpp"
#include "rqk/svm.hpp"

namespace rqk {
namespace {

struct Check {
    const char* name;
    bool passed;
    std::string detail;
};

Check check_oracle_equivalence(bool quick) {
    const int pairs = quick ? 50 : 200;
    Rng rng(20240901);
    double worst = 0.0;
    const auto start = std::chrono::steady_clock::now();
    for (int d = 1; d <= 8; ++d) {
        for (int p = 0; p < pairs; ++p) {
            std::vector<double> x(static_cast<std::size_t>(d)), y(static_cast<std::size_t>(d));
            for (double& v : x) v = rng.uniform(0.0, std::numbers::pi);
            for (double& v : y) v = rng.uniform(0.0, std::numbers::pi);
            FeatureMatrix fx, fy;
            fx.values = Eigen::Map<Eigen::MatrixXd>(x.data(), 1, d);
            fy.values = Eigen::Map<Eigen::MatrixXd>(y.data(), 1, d);
            const double closed = fidelity_kernel(fx, fy).values(0, 0);
            const double gate = oracle_kernel(x, y);
            worst = std::max(worst, std::abs(closed - gate));
        }
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max |closed-form - gate oracle| = %.3g in %.2f s",
                  worst, elapsed);
    return {"quantum kernel closed-form vs gate-level oracle", worst < 1e-10 && elapsed < 10.0,
            detail};
}

Check check_single_qubit_analytic() {
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const double x = std::numbers::pi * i / 99.0;
        const double y = std::numbers::pi * ((i * 37) % 100) / 99.0;
        FeatureMatrix fx, fy;
        fx.values.resize(1, 1);
        fx.values(0, 0) = x;
        fy.values.resize(1, 1);
        fy.values(0, 0) = y;
        const double k = fidelity_kernel(fx, fy).values(0, 0);
        const double analytic = std::cos(y - x) * std::cos(y - x);
        worst = std::max(worst, std::abs(k - analytic));
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "max |K - cos^2(y-x)| = %.3g", worst);
    return {"single-qubit kernel matches cos^2(y-x)", worst < 1e-12, detail};
}

Check check_gram_validity(bool quick) {
    const int sets = quick ? 10 : 50;
    Rng rng(777);
    double worst_eig = 0.0, worst_diag = 0.0, worst_sym = 0.0;
    bool in_range = true;
    for (int s = 0; s < sets; ++s) {
        const int n = 8 + rng.pick(57);
        const int d = 1 + rng.pick(8);
        FeatureMatrix f;
        f.values.resize(n, d);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < d; ++j) f.values(i, j) = rng.uniform(0.0, std::numbers::pi);
        for (int kind = 0; kind < 2; ++kind) {
            KernelMatrix gram = kind == 0 ? rbf_gram(f, f, rng.uniform(0.05, 2.0))
                                          : fidelity_kernel(f, f);
            worst_sym = std::max(worst_sym,
                                 (gram.values - gram.values.transpose()).cwiseAbs().maxCoeff());
            worst_diag = std::max(
                worst_diag,
                (gram.values.diagonal().array() - 1.0).abs().maxCoeff());
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eigs(gram.values);
            worst_eig = std::min(worst_eig, eigs.eigenvalues().minCoeff());
            if (gram.values.minCoeff() < -1e-12 || gram.values.maxCoeff() > 1.0 + 1e-12)
                in_range = false;
        }
    }
    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "min eigenvalue %.3g, max |diag-1| %.3g, max asymmetry %.3g", worst_eig,
                  worst_diag, worst_sym);
    return {"kernel Gram validity (symmetry, unit diagonal, PSD, range)",
            worst_eig >= -1e-9 && worst_diag < 1e-12 && worst_sym < 1e-12 && in_range, detail};
}

Check check_smo_oracle(bool quick) {
    const int problems = quick ? 10 : 50;
    Rng rng(4242);
    double worst_rel = 0.0, worst_kkt = 0.0;
    for (int p = 0; p < problems; ++p) {
        const int n = 6 + rng.pick(15);  // 6..20
        const int d = 1 + rng.pick(4);
        FeatureMatrix f;
        f.values.resize(n, d);
        std::vector<double> y(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < d; ++j) f.values(i, j) = rng.uniform(-2.0, 2.0);
            y[static_cast<std::size_t>(i)] = (i % 2 == 0) ? 1.0 : -1.0;
        }
        BinaryProblem problem;
        problem.gram = rbf_gram(f, f, rng.uniform(0.2, 2.0)).values;
        problem.y = y;
        problem.C = (p % 3 == 0) ? 10.0 : 1.0;

        const SvmModel model = solve_smo(problem, 1e-8, 20000);
        const double smo_obj = dual_objective(problem, model);
        const double ref_obj = qp_reference_solve(problem).objective;
        const double rel = std::abs(smo_obj - ref_obj) / std::max(1.0, std::abs(ref_obj));
        worst_rel = std::max(worst_rel, rel);
        worst_kkt = std::max(worst_kkt, max_kkt_violation(problem, model));
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst relative objective gap %.3g, worst KKT %.3g",
                  worst_rel, worst_kkt);
    return {"SMO dual objective vs projected-gradient QP oracle", worst_rel < 1e-6 && worst_kkt < 1e-6,
            detail};
}

Check check_rdm_placement(bool quick) {
    const int scenes = quick ? 20 : 100;
    const RadarConfig config = RadarConfig::uav_track();
    Rng rng(31337);
    int worst_range = 0, worst_doppler = 0;
    for (int s = 0; s < scenes; ++s) {
        const double range = rng.uniform(5.0, 0.9 * config.max_range_m());
        const double speed = rng.uniform(-0.9, 0.9) * config.max_speed_mps();
        Scene scene;
        Scatterer target;
        target.position_m = {range, 0.0, 0.0};
        target.velocity_mps = {speed, 0.0, 0.0};
        target.rcs = 1.0;
        scene.scatterers.push_back(target);
        scene.label = 0;
        const IqCube cube = synthesize_cube(scene, config, 1, std::nullopt);
        const RadarProduct rdm = form_rdm(cube);

        const double beat_hz = 2.0 * range * config.sweep_slope_hz_per_s() / kSpeedOfLight;
        const int expected_col = static_cast<int>(std::lround(beat_hz / config.fast_bin_hz()));
        const double doppler_hz = 2.0 * speed / config.wavelength_m();
        const int expected_row =
            config.n_chirps / 2 + static_cast<int>(std::lround(doppler_hz / config.doppler_bin_hz()));

        int best_r = 0, best_c = 0;
        double best = -1.0;
        for (int r = 0; r < rdm.rows; ++r)
            for (int c = 0; c < rdm.cols; ++c)
                if (rdm.at(r, c) > best) {
                    best = rdm.at(r, c);
                    best_r = r;
                    best_c = c;
                }
        worst_range = std::max(worst_range, std::abs(best_c - expected_col));
        worst_doppler = std::max(worst_doppler, std::abs(best_r - expected_row));
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "worst range offset %d bins, worst Doppler offset %d bins",
                  worst_range, worst_doppler);
    return {"RDM argmax within +-1 bin of the chirp-relation prediction",
            worst_range <= 1 && worst_doppler <= 1, detail};
}

}  // namespace

bool run_selftest(std::ostream& out, bool quick) {
    std::vector<Check> checks;
    checks.push_back(check_oracle_equivalence(quick));
    checks.push_back(check_single_qubit_analytic());
    checks.push_back(check_gram_validity(quick));
    checks.push_back(check_smo_oracle(quick));
    checks.push_back(check_rdm_placement(quick));

    bool all = true;
    for (const Check& c : checks) {
        out << (c.passed ? "[PASS] " : "[FAIL] ") << c.name << ": " << c.detail << "\n";
        all = all && c.passed;
    }
    out << (all ? "selftest: all checks passed\n" : "selftest: FAILURES detected\n");
    return all;
}

}  // namespace rqk
