/// @file test_diagnostics.cpp
/// @brief Oracle tests for budgets, bound margins, decay fits, asymptotics
/// checks, forcing norms, twin distance, and the weak-form residual.
///
/// Closed forms drive every numeric expectation: hand-built exponential
/// series for the fits and budgets, single-mode forcing profiles whose norms
/// are textbook integrals, and envelope integrals checked against fine
/// quadrature. The weak-form residual is checked to vanish for in-band test
/// fields and to reproduce the energy flux when tested against the velocity
/// itself.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anse/diagnostics.hpp"
#include "anse/ops.hpp"
#include "anse/stepper.hpp"
#include "anse/transforms.hpp"
#include "oracles.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <vector>

using namespace anse;
using oracles::kPi;

namespace {

FlowState random_state(const Grid& g, uint64_t seed, int kmax, double amp) {
    FlowState s(g);
    s.psi = random_band_limited(g, YBasis::SineY, kmax, amp, seed);
    s.clear_psi_mean_row();
    std::mt19937_64 rng(seed + 17);
    for (int k = 0; k <= std::min(kmax, g.ky_cut()); ++k)
        s.ubar[static_cast<size_t>(k)] =
            amp * (static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    return s;
}

/// Record of a synthetic trajectory obeying the energy law exactly:
/// E = exp(-2t), dissipation = 2 exp(-2t), no forcing.
DiagnosticsRecord energy_law_record(double t) {
    DiagnosticsRecord r;
    r.t = t;
    r.energy = std::exp(-2.0 * t);
    r.norms.osc_ux2 = 2.0 * std::exp(-2.0 * t);
    return r;
}

/// Same for the enstrophy law: ||omega||^2 = exp(-4t), ||omega_x||^2 = its
/// half-rate partner 2 exp(-4t).
DiagnosticsRecord enstrophy_law_record(double t) {
    DiagnosticsRecord r;
    r.t = t;
    r.enstrophy = std::exp(-4.0 * t);
    r.norms.osc_omega_x2 = 2.0 * std::exp(-4.0 * t);
    return r;
}

double quad_integral(const Envelope& e, double t, bool squared) {
    const int n = 200000;
    double sum = 0.0;
    for (int i = 0; i <= n; ++i) {
        const double ti = t * i / n;
        double v = e(ti);
        if (squared) v *= v;
        sum += (i == 0 || i == n ? 0.5 : 1.0) * v;
    }
    return sum * t / n;
}

}  // namespace

TEST_CASE("fit_exponential_decay: exact exponential is recovered") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i < 100; ++i)
        series.emplace_back(0.01 * i, 5.0 * std::exp(-3.0 * 0.01 * i));
    const DecayFit fit = fit_exponential_decay(series);
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(fit.r_squared >= 1.0 - 1e-12);
    CHECK(fit.n_used == 90);  // first 10% dropped as transient
}

TEST_CASE("fit_exponential_decay: constant series has zero rate, r^2 = 1") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i < 50; ++i) series.emplace_back(0.1 * i, 0.75);
    const DecayFit fit = fit_exponential_decay(series);
    CHECK(std::abs(fit.rate) <= 1e-12);
    CHECK(fit.r_squared == 1.0);
}

TEST_CASE("fit_exponential_decay: noise floor truncates the fit window") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i < 100; ++i) {
        const double t = 0.01 * i;
        series.emplace_back(t, i < 50 ? std::exp(-3.0 * t) : 1e-20);
    }
    const DecayFit fit = fit_exponential_decay(series);
    CHECK(fit.n_used == 40);  // 10..49
    CHECK(fit.rate == doctest::Approx(3.0).epsilon(1e-9));
}

TEST_CASE("fit_exponential_decay: too few usable points throws") {
    std::vector<std::pair<double, double>> series;
    for (int i = 0; i < 5; ++i) series.emplace_back(0.1 * i, 1.0);
    CHECK_THROWS_AS((void)fit_exponential_decay(series), DegenerateSeries);
    series.clear();
    for (int i = 0; i < 40; ++i)
        series.emplace_back(0.1 * i, i < 8 ? 1.0 : 1e-30);
    CHECK_THROWS_AS((void)fit_exponential_decay(series), DegenerateSeries);
}

TEST_CASE("energy_budget: exact law leaves a second-order quadrature defect") {
    // Midpoint expansion gives residual = (2/3) h^2 exp(-2 m) + O(h^4) at
    // interval midpoint m, so halving h divides the defect by four.
    auto defect = [&](double h) {
        return energy_budget(energy_law_record(0.0), energy_law_record(h), 0.0);
    };
    const double r1 = defect(0.01);
    const double r2 = defect(0.005);
    CHECK(r1 == doctest::Approx((2.0 / 3.0) * 1e-4 * std::exp(-0.01)).epsilon(1e-3));
    CHECK(r1 / r2 == doctest::Approx(4.0 * std::exp(-0.005)).epsilon(1e-3));
    CHECK_THROWS_AS(
        (void)energy_budget(energy_law_record(0.1), energy_law_record(0.1), 0.0),
        ValidationError);
}

TEST_CASE("enstrophy_budget: exact law leaves a second-order quadrature defect") {
    auto defect = [&](double h) {
        return enstrophy_budget(enstrophy_law_record(0.0), enstrophy_law_record(h),
                                0.0);
    };
    const double r1 = defect(0.01);
    const double r2 = defect(0.005);
    // Here ||omega||^2/2 has third derivative -32 e^{-4m}/2 and the
    // dissipation curves as 32 e^{-4m}: residual = (8/3) h^2 e^{-4m}.
    CHECK(r1 == doctest::Approx((8.0 / 3.0) * 1e-4 * std::exp(-0.02)).epsilon(1e-3));
    CHECK(r1 / r2 == doctest::Approx(4.0 * std::exp(-0.01)).epsilon(1e-3));
}

TEST_CASE("apply_monitors: margins follow the closed-form right-hand sides") {
    MonitorSet m;
    m.u0_l2 = 2.0;
    m.omega0_l2 = 4.0;
    m.forcing.f_l2 = 3.0;
    m.forcing.curlf_l2 = 5.0;
    m.envelope = {EnvelopeType::Constant, 0.0, 0.0};
    m.int_ux_sq = 1.0;
    m.int_omega_x_sq = 2.0;

    DiagnosticsRecord rec;
    rec.t = 0.5;  // int ||f|| = 1.5, int ||curl f|| = 2.5
    rec.norms.osc_u2 = 0.64;  // ||u|| = 1
    rec.norms.v2 = 0.36;
    rec.norms.osc_omega2 = 9.0;  // ||omega|| = 3
    // Gradient components chosen so the curl identity holds exactly.
    rec.norms.osc_ux2 = 1.0;
    rec.norms.osc_uy2 = 5.0;
    rec.norms.vx2 = 2.0;
    rec.norms.vy2 = 1.0;
    apply_monitors(m, rec, nullptr);

    CHECK(rec.velocity_margin == doctest::Approx(2.0 + 1.5 - 1.0).epsilon(1e-15));
    CHECK(rec.dissipation_margin ==
          doctest::Approx(4.0 + 2.0 * 1.5 * 1.5 - 1.0).epsilon(1e-15));
    CHECK(rec.vorticity_margin == doctest::Approx(4.0 + 2.5 - 3.0).epsilon(1e-15));
    CHECK(rec.vorticity_dissipation_margin ==
          doctest::Approx(16.0 + 2.0 * 2.5 * 2.5 - 2.0).epsilon(1e-15));
    CHECK(m.failures.empty());
}

TEST_CASE("apply_monitors: a broken bound and a broken identity are named") {
    MonitorSet m;
    m.identities = false;
    m.u0_l2 = 0.0;  // rest anchor: any velocity now violates the bound
    DiagnosticsRecord rec = make_record(random_state(Grid(16, 16), 7, 3, 0.5));
    apply_monitors(m, rec, nullptr);
    REQUIRE(!m.failures.empty());
    CHECK(m.failures[0].find("velocity_bound") == 0);

    MonitorSet m2;
    m2.velocity_bound = m2.dissipation_bound = false;
    m2.vorticity_bound = m2.vorticity_dissipation_bound = false;
    DiagnosticsRecord rec2;
    rec2.norms.osc_omega2 = 4.0;  // claims ||omega|| = 2 with grad u = 0
    apply_monitors(m2, rec2, nullptr);
    REQUIRE(!m2.failures.empty());
    CHECK(m2.failures[0].find("identity_curl_gradient") == 0);

    MonitorSet m3;
    m3.identities = false;
    m3.velocity_bound = m3.dissipation_bound = false;
    m3.vorticity_bound = m3.vorticity_dissipation_bound = false;
    m3.energy_decay = true;
    DiagnosticsRecord prev;
    prev.energy = 1.0;
    DiagnosticsRecord grew;
    grew.t = 1.0;
    grew.energy = 1.1;
    apply_monitors(m3, grew, &prev);
    REQUIRE(m3.failures.size() == 1);
    CHECK(m3.failures[0].find("energy_decay") == 0);
}

TEST_CASE("apply_monitors: real states satisfy the curl identities") {
    MonitorSet m;
    m.velocity_bound = m.dissipation_bound = false;
    m.vorticity_bound = m.vorticity_dissipation_bound = false;
    for (uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        DiagnosticsRecord rec = make_record(random_state(Grid(32, 32), seed, 9, 1.0));
        apply_monitors(m, rec, nullptr);
    }
    CHECK(m.failures.empty());
}

TEST_CASE("check_* scans return the smallest margin in the history") {
    std::vector<DiagnosticsRecord> hist(3);
    hist[0].velocity_margin = 1.0;
    hist[1].velocity_margin = -0.25;
    hist[2].velocity_margin = 0.5;
    hist[0].dissipation_margin = 2.0;
    hist[1].dissipation_margin = 0.125;
    hist[2].dissipation_margin = 3.0;
    hist[0].vorticity_margin = -1.0;
    hist[1].vorticity_margin = 7.0;
    hist[2].vorticity_margin = 5.0;
    hist[0].vorticity_dissipation_margin = 4.0;
    hist[1].vorticity_dissipation_margin = 4.5;
    hist[2].vorticity_dissipation_margin = -8.0;
    CHECK(check_velocity_bound(hist) == -0.25);
    CHECK(check_dissipation_bound(hist) == 0.125);
    CHECK(check_vorticity_bounds(hist) == std::pair<double, double>{-1.0, -8.0});
    CHECK(check_velocity_bound({}) == std::numeric_limits<double>::infinity());
}

TEST_CASE("twin_run_distance: oracle values and grid checking") {
    const Grid g(16, 16);
    const FlowState a = random_state(g, 21, 4, 0.7);
    CHECK(twin_run_distance(a, a) == 0.0);

    FlowState mean_a(g), mean_b(g);
    mean_a.ubar[1] = 0.9;
    mean_b.ubar[1] = 0.4;
    CHECK(twin_run_distance(mean_a, mean_b) ==
          doctest::Approx(0.5 / std::sqrt(2.0)).epsilon(1e-15));

    const FlowState other(Grid(32, 16));
    CHECK_THROWS_AS((void)twin_run_distance(a, other), GridMismatch);
}

TEST_CASE("forcing_norms: single-mode stream-function forcing, closed forms") {
    const Grid g(32, 32);
    ForcingSpec f(g);
    f.psi_f.coeff(1, 1) = {0.0, -0.5};  // psi_f = sin(2 pi x) sin(pi y)
    f.psi_f.coeff(-1, 1) = {0.0, 0.5};
    const ForcingNorms n = forcing_norms(f);
    CHECK(n.f_l2 == doctest::Approx(kPi * std::sqrt(5.0) / 2.0).epsilon(1e-13));
    CHECK(n.curlf_l2 == doctest::Approx(5.0 * kPi * kPi / 2.0).epsilon(1e-13));
    CHECK(n.dyf1_l2 == doctest::Approx(kPi * kPi / 2.0).epsilon(1e-13));
    CHECK(n.dyyf1_l2 == doctest::Approx(kPi * kPi * kPi / 2.0).epsilon(1e-13));
}

TEST_CASE("forcing_norms: pure mean forcing profile, closed forms") {
    const Grid g(32, 32);
    const double c = 0.8;
    ForcingSpec f(g);
    f.fbar1[1] = c;  // f1 = c cos(pi y), f2 = 0
    const ForcingNorms n = forcing_norms(f);
    const double s2 = std::sqrt(2.0);
    CHECK(n.f_l2 == doctest::Approx(c / s2).epsilon(1e-13));
    CHECK(n.curlf_l2 == doctest::Approx(c * kPi / s2).epsilon(1e-13));
    CHECK(n.dyf1_l2 == doctest::Approx(c * kPi / s2).epsilon(1e-13));
    CHECK(n.dyyf1_l2 == doctest::Approx(c * kPi * kPi / s2).epsilon(1e-13));

    const VorticityParts curl = forcing_curl(f);
    CHECK(curl.mean_sine[0] == doctest::Approx(c * kPi).epsilon(1e-15));
    CHECK(norm_l2(curl.osc) == 0.0);
}

TEST_CASE("envelope integrals match fine quadrature") {
    const Envelope cst{EnvelopeType::Constant, 0.0, 0.0};
    const Envelope dec{EnvelopeType::ExponentialDecay, 2.0, 0.0};
    const Envelope frozen{EnvelopeType::ExponentialDecay, 0.0, 0.0};
    const Envelope ramp{EnvelopeType::RampOff, 0.0, 0.4};
    for (double t : {0.2, 1.0, 3.0}) {
        for (const Envelope& e : {cst, dec, frozen, ramp}) {
            CHECK(e.integral(t) ==
                  doctest::Approx(quad_integral(e, t, false)).epsilon(1e-8));
            CHECK(e.integral_sq(t) ==
                  doctest::Approx(quad_integral(e, t, true)).epsilon(1e-8));
        }
    }
    CHECK(cst.integral(-1.0) == 0.0);
    CHECK(ramp.integral(1e9) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(ramp.integral_sq(1e9) == doctest::Approx(0.4 / 3.0).epsilon(1e-12));
}

TEST_CASE("forcing_work scales with the envelope and matches quadrature") {
    const Grid g(16, 16);
    ForcingSpec f(g);
    f.psi_f = random_band_limited(g, YBasis::SineY, 3, 0.5, 91);
    f.fbar1[2] = 0.3;
    f.envelope = {EnvelopeType::ExponentialDecay, 2.0, 0.0};
    const FlowState s = random_state(g, 92, 4, 0.6);
    const VelocityPair vel = velocity(s);

    const double w0 = forcing_work(f, vel, 0.0);
    const double w1 = forcing_work(f, vel, 1.0);
    REQUIRE(std::abs(w0) > 1e-12);
    CHECK(w1 == doctest::Approx(w0 * std::exp(-2.0)).epsilon(1e-13));

    // Independent quadrature of (f, u) + (f, v) over the domain.
    const VelocityPair F = forcing_field(f);
    const auto fu = to_physical(F.u);
    const auto fv = to_physical(F.v);
    const auto uu = to_physical(vel.u);
    const auto vv = to_physical(vel.v);
    auto trap = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double sum = 0.0;
        for (int i = 0; i < g.nx; ++i)
            for (int j = 0; j <= g.ny; ++j) {
                const double wj = (j == 0 || j == g.ny) ? 0.5 : 1.0;
                sum += wj * a[static_cast<size_t>(i) * (g.ny + 1) + j] *
                       b[static_cast<size_t>(i) * (g.ny + 1) + j];
            }
        return sum / (g.nx * g.ny);
    };
    // Both fields are band-limited well inside the grid, so the rectangle
    // rule in x and trapezoid in y integrate their product exactly.
    CHECK(w0 == doctest::Approx(trap(fu, uu) + trap(fv, vv)).epsilon(1e-10));
}

TEST_CASE("check_asymptotics: settled and drifting profile histories") {
    std::vector<DiagnosticsRecord> records(1);
    records[0].norms.osc_u2 = 1e-16;  // ||u~|| = 1e-8
    records[0].norms.v2 = 0.0;

    std::vector<ProfileSample> settled(9);
    for (size_t i = 0; i < settled.size(); ++i) {
        settled[i].t = static_cast<double>(i);
        settled[i].ubar = {0.3, 0.1, -0.05};
        settled[i].cum_flux_budget = 1.0 - std::exp(-static_cast<double>(i));
    }
    const AsymptoticsReport good = check_asymptotics(records, settled, 1e-6, 10.0);
    CHECK(good.osc_vanishes);
    CHECK(good.mean_cauchy);
    CHECK(good.momentum_conserved);
    CHECK(good.ok());
    CHECK(good.final_osc_velocity == doctest::Approx(1e-8).epsilon(1e-12));

    // A profile still sliding with no remaining budget must fail the
    // settling test, and a moving mean must fail momentum conservation.
    std::vector<ProfileSample> sliding = settled;
    for (size_t i = 0; i < sliding.size(); ++i) {
        sliding[i].ubar[1] = 0.1 * static_cast<double>(i);
        sliding[i].cum_flux_budget = 1.0;  // budget exhausted
    }
    const AsymptoticsReport bad = check_asymptotics(records, sliding, 1e-6, 10.0);
    CHECK(!bad.mean_cauchy);
    CHECK(bad.worst_cauchy_gap > 0.05);

    std::vector<ProfileSample> pumped = settled;
    pumped.back().ubar[0] += 1e-6;
    const AsymptoticsReport drifted = check_asymptotics(records, pumped, 1e-6, 10.0);
    CHECK(!drifted.momentum_conserved);
    CHECK(drifted.momentum_drift == doctest::Approx(1e-6).epsilon(1e-9));
}

TEST_CASE("weak_residual: vanishes against in-band divergence-free fields") {
    const Grid g(32, 32);
    FlowState s = random_state(g, 301, 5, 0.6);
    ForcingSpec f(g);
    f.psi_f = random_band_limited(g, YBasis::SineY, 3, 0.4, 302);
    f.psi_f.coeff(0, 1) = 0.0;
    f.psi_f.coeff(0, 2) = 0.0;
    f.psi_f.coeff(0, 3) = 0.0;
    f.fbar1[1] = 0.25;
    f.envelope = {EnvelopeType::ExponentialDecay, 1.0, 0.0};
    s.time = 0.3;

    const double scale = 1.0 + sobolev_norms(s).h2_sq();
    for (uint64_t seed : {11u, 12u, 13u}) {
        const FlowState w_state = random_state(g, seed * 100, 6, 0.8);
        const VelocityPair w = velocity(w_state);
        CHECK(weak_residual(s, f, w) <= 1e-10 * scale);
    }
    // The state's own velocity is a valid test field too.
    CHECK(weak_residual(s, f, velocity(s)) <= 1e-10 * scale);
}

TEST_CASE("weak_residual: orthogonal test fields see only transform noise") {
    // Test field supported on modes disjoint from the state, its products
    // (bandwidth sums), and the forcing: every pairing integrates to zero in
    // exact arithmetic. The dealiased products deposit FFT rounding noise at
    // every retained mode, so the observed residual sits at rounding scale,
    // many orders below the physical terms (which are O(10) here).
    const Grid g(32, 32);
    const FlowState s = random_state(g, 501, 3, 0.7);
    ForcingSpec f(g);
    f.psi_f.coeff(2, 2) = {0.1, -0.2};
    f.psi_f.coeff(-2, 2) = {0.1, 0.2};

    FlowState w_state(g);
    w_state.psi.coeff(9, 9) = {0.0, -0.5};
    w_state.psi.coeff(-9, 9) = {0.0, 0.5};
    const VelocityPair w = velocity(w_state);
    CHECK(weak_residual(s, f, w) <= 1e-9);

    // With the state at rest there are no products at all, and every term
    // pairs disjoint supports: the residual is structurally exact zero.
    const FlowState rest(g);
    CHECK(weak_residual(rest, f, w) == 0.0);
}

TEST_CASE("make_record mirrors the state's norm bundle") {
    const Grid g(16, 16);
    FlowState s = random_state(g, 814, 4, 0.9);
    s.time = 2.25;
    const DiagnosticsRecord r = make_record(s);
    const NormBundle n = sobolev_norms(s);
    CHECK(r.t == 2.25);
    CHECK(r.energy == n.energy());
    CHECK(r.enstrophy == n.omega2());
    CHECK(r.h2_norm() == n.h2_norm());
    CHECK(r.osc_vorticity_l2() == std::sqrt(n.osc_omega2));
    CHECK(r.mean_profile_l2() == std::sqrt(n.mean_u2));
    CHECK(r.energy_residual == 0.0);
    CHECK(!r.twin_distance.has_value());
}
