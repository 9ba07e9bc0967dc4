/// @file stepper.cpp
/// @brief Integrating-factor Runge-Kutta integration of the vorticity /
/// mean-profile system.

#include "anse/stepper.hpp"

#include "anse/kernels.hpp"
#include "anse/ops.hpp"
#include "anse/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace anse {

namespace {

constexpr double kPi = 3.14159265358979323846;

/// psi from omega~ = laplacian(psi): divide by the (negative) eigenvalue.
/// The k1 = 0 row is zeroed (the mean never lives in psi).
Spectrum psi_from_omega(const Spectrum& omega) {
    const Grid& g = omega.grid();
    Spectrum psi(g, YBasis::SineY);
    for (int i1 = 0; i1 < g.nx; ++i1) {
        const int k1 = g.k1_of_index(i1);
        if (k1 == 0) continue;
        const double kx2 = (2.0 * kPi * k1) * (2.0 * kPi * k1);
        for (int i2 = 0; i2 < omega.nk2(); ++i2) {
            const double ky = kPi * (i2 + 1);
            psi.at_index(i1, i2) = -omega.at_index(i1, i2) / (kx2 + ky * ky);
        }
    }
    return psi;
}

/// Multiply every k1 row by a real factor (exact diffusion over a stage).
void scale_rows(Spectrum& s, const std::vector<double>& row_factor) {
    const auto& k = kernels::active();
    const int nk2 = s.nk2();
    for (int i1 = 0; i1 < s.grid().nx; ++i1) {
        double* row = reinterpret_cast<double*>(s.data() + static_cast<size_t>(i1) * nk2);
        k.scale(row, row_factor[static_cast<size_t>(i1)], 2 * static_cast<size_t>(nk2));
    }
}

/// exp(-(2 pi k1)^2 * delta) per x-array index.
std::vector<double> diffusion_factors(const Grid& g, double delta) {
    std::vector<double> f(static_cast<size_t>(g.nx));
    for (int i1 = 0; i1 < g.nx; ++i1) {
        const double kx = 2.0 * kPi * g.k1_of_index(i1);
        f[static_cast<size_t>(i1)] = std::exp(-kx * kx * delta);
    }
    return f;
}

std::vector<double> combine_ubar(const std::vector<double>& base, double c1,
                                 const std::vector<double>& d1) {
    std::vector<double> out(base);
    kernels::active().axpy(out.data(), c1, d1.data(), out.size());
    return out;
}

struct StepWork {
    FlowState next;
    SpeedPair post_speeds;
};

/// The Runge-Kutta step without the advisory CFL throw, so the integrator
/// can keep the state and record the violation instead.
StepWork step_core(const FlowState& s, const ForcingSpec& f, double dt) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw ValidationError("step: dt must be positive and finite");
    const Grid& g = s.grid;

    const std::vector<double> e_half = diffusion_factors(g, 0.5 * dt);
    const std::vector<double> e_full = diffusion_factors(g, dt);

    const Spectrum w0 = laplacian(s.psi);
    const Tendency n1 = rhs(s, f, s.time);

    // Stage state at t + dt/2: exp shifts by half a step.
    Spectrum wa = w0;
    add_scaled(wa, 0.5 * dt, n1.d_omega_osc);
    scale_rows(wa, e_half);
    FlowState sa(g);
    sa.psi = psi_from_omega(wa);
    sa.ubar = combine_ubar(s.ubar, 0.5 * dt, n1.d_ubar);
    sa.time = s.time + 0.5 * dt;
    const Tendency n2 = rhs(sa, f, sa.time);

    // Stage state at t + dt: full shift of (w0 - dt n1), half shift of n2.
    Spectrum n2_half = n2.d_omega_osc;
    scale_rows(n2_half, e_half);
    Spectrum wb = w0;
    add_scaled(wb, -dt, n1.d_omega_osc);
    scale_rows(wb, e_full);
    add_scaled(wb, 2.0 * dt, n2_half);
    FlowState sb(g);
    sb.psi = psi_from_omega(wb);
    sb.ubar = combine_ubar(s.ubar, -dt, n1.d_ubar);
    kernels::active().axpy(sb.ubar.data(), 2.0 * dt, n2.d_ubar.data(), sb.ubar.size());
    sb.time = s.time + dt;
    const Tendency n3 = rhs(sb, f, sb.time);

    // Combination: w1 = E_full (w0 + dt/6 n1) + 4 dt/6 E_half n2 + dt/6 n3.
    Spectrum w1 = w0;
    add_scaled(w1, dt / 6.0, n1.d_omega_osc);
    scale_rows(w1, e_full);
    add_scaled(w1, 4.0 * dt / 6.0, n2_half);
    add_scaled(w1, dt / 6.0, n3.d_omega_osc);

    StepWork out;
    out.next = FlowState(g);
    out.next.psi = psi_from_omega(w1);
    out.next.ubar = combine_ubar(s.ubar, dt / 6.0, n1.d_ubar);
    kernels::active().axpy(out.next.ubar.data(), 4.0 * dt / 6.0, n2.d_ubar.data(),
                           out.next.ubar.size());
    kernels::active().axpy(out.next.ubar.data(), dt / 6.0, n3.d_ubar.data(),
                           out.next.ubar.size());
    out.next.time = s.time + dt;
    out.post_speeds = max_speeds(out.next);
    return out;
}

/// Advective bound cfl * min(dx/|u|, dy/|v|); +inf for a state at rest.
double advective_bound(const Grid& g, const SpeedPair& sp, double cfl) {
    double bound = std::numeric_limits<double>::infinity();
    if (sp.max_u > 0.0) bound = std::min(bound, cfl * g.dx() / sp.max_u);
    if (sp.max_v > 0.0) bound = std::min(bound, cfl * g.dy() / sp.max_v);
    return bound;
}

bool all_finite(const FlowState& s) {
    if (!std::isfinite(s.time)) return false;
    for (size_t i = 0; i < s.psi.size(); ++i) {
        const std::complex<double> c = s.psi.data()[i];
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    }
    for (double a : s.ubar)
        if (!std::isfinite(a)) return false;
    return true;
}

std::string format_time(double t) {
    std::ostringstream os;
    os.precision(12);
    os << t;
    return os.str();
}

}  // namespace

Tendency rhs(const FlowState& s, const ForcingSpec& f, double t) {
    const Grid& g = s.grid;
    const VelocityPair vel = velocity(s);
    const Spectrum omega = laplacian(s.psi);
    const Spectrum omega_x = dx(omega);
    Spectrum omega_y = dy(omega);  // CosineY; k1 = 0 row is zero so far
    // Mean vorticity gradient: omega_y's k1 = 0 row is -ubar_yy.
    for (int k2 = 0; k2 <= g.ny; ++k2)
        omega_y.coeff(0, k2) += (kPi * k2) * (kPi * k2) * s.ubar[static_cast<size_t>(k2)];

    const Spectrum p1 = multiply_dealiased(vel.u, omega_x);  // u omega_x
    const Spectrum p2 = multiply_dealiased(vel.v, omega_y);  // v omega_y

    Tendency td;
    td.d_omega_osc = Spectrum(g, YBasis::SineY);
    add_scaled(td.d_omega_osc, -1.0, p1);
    add_scaled(td.d_omega_osc, -1.0, p2);

    const double env = f.envelope(t);
    if (env != 0.0 && f.psi_f.size() > 0) {
        Spectrum curl_osc = laplacian(f.psi_f);
        apply_dealias_mask(curl_osc);
        add_scaled(td.d_omega_osc, env, curl_osc);
    }
    // The mean row of the vorticity tendency belongs to d_ubar.
    for (int i2 = 0; i2 < td.d_omega_osc.nk2(); ++i2)
        td.d_omega_osc.at_index(0, i2) = 0.0;

    // Mean-profile flux: ubar_t = -d/dy mean(v u~) (+ mean forcing). The
    // k1 = 0 row of the v*u~ product is the sine profile of the flux, so its
    // y-derivative never has a constant part: d_ubar[0] is exactly zero and
    // mean momentum is conserved bit-for-bit when fbar1[0] = 0.
    const Spectrum uosc = u_oscillation(s);
    const Spectrum p3 = multiply_dealiased(vel.v, uosc);  // SineY
    td.d_ubar.assign(static_cast<size_t>(g.ny) + 1, 0.0);
    for (int k2 = 1; k2 <= g.ny - 1; ++k2)
        td.d_ubar[static_cast<size_t>(k2)] = -kPi * k2 * p3.coeff(0, k2).real();
    if (env != 0.0 && !f.fbar1.empty())
        kernels::active().axpy(td.d_ubar.data(), env, f.fbar1.data(), td.d_ubar.size());
    return td;
}

SpeedPair max_speeds(const FlowState& s) {
    const VelocityPair vel = velocity(s);
    const std::vector<double> u = to_physical(vel.u);
    const std::vector<double> v = to_physical(vel.v);
    const auto& k = kernels::active();
    return {k.max_abs(u.data(), u.size()), k.max_abs(v.data(), v.size())};
}

double cfl_dt(const FlowState& s, const StepperConfig& cfg) {
    if (!(cfg.dt_max > 0.0))
        throw ValidationError("cfl_dt: dt_max must be positive");
    const double bound = advective_bound(s.grid, max_speeds(s), cfg.cfl);
    return std::min(cfg.dt_max, bound);
}

FlowState step(const FlowState& s, const ForcingSpec& f, double dt, double cfl) {
    StepWork w = step_core(s, f, dt);
    const double bound = advective_bound(s.grid, w.post_speeds, cfl);
    if (dt > 2.0 * bound) {
        std::ostringstream os;
        os << "step: dt = " << dt << " exceeds twice the advective bound "
           << bound << " at t = " << format_time(w.next.time);
        throw CflViolation(os.str());
    }
    return std::move(w.next);
}

IntegrationResult integrate(const FlowState& s0, const ForcingSpec& f,
                            const StepperConfig& cfg, MonitorSet monitors,
                            const RecordSink& on_record,
                            const SnapshotSink& on_snapshot,
                            const FlowState* twin0) {
    if (cfg.scheme != "rk3")
        throw ValidationError("integrate: unknown scheme '" + cfg.scheme + "'");
    if (cfg.diagnostics_every < 1)
        throw ValidationError("integrate: diagnostics_every must be >= 1");
    if (cfg.snapshot_every < 0)
        throw ValidationError("integrate: snapshot_every must be >= 0");
    if (cfg.dt < 0.0 || !std::isfinite(cfg.dt))
        throw ValidationError("integrate: dt must be >= 0 (0 = CFL-based)");
    if (!(cfg.dt_max > 0.0))
        throw ValidationError("integrate: dt_max must be positive");
    if (!(cfg.cfl > 0.0))
        throw ValidationError("integrate: cfl must be positive");

    IntegrationResult res;
    res.state = s0;
    apply_dealias_mask(res.state.psi);
    res.state.clear_psi_mean_row();
    if (twin0 != nullptr) {
        if (twin0->grid != s0.grid)
            throw GridMismatch("integrate: twin state on a different grid");
        res.twin = *twin0;
        apply_dealias_mask(res.twin->psi);
        res.twin->clear_psi_mean_row();
        res.twin->time = res.state.time;
    }

    anchor_monitors(monitors, res.state, f);

    // Forcing pieces reused by the work integrals at record times.
    const VelocityPair force = forcing_field(f);
    const VorticityParts force_curl = forcing_curl(f);

    auto work_at = [&](const FlowState& s) {
        const double env = f.envelope(s.time);
        if (env == 0.0) return 0.0;
        const VelocityPair vel = velocity(s);
        return env * (inner_l2(force.u, vel.u) + inner_l2(force.v, vel.v));
    };
    auto curl_work_at = [&](const FlowState& s) {
        const double env = f.envelope(s.time);
        if (env == 0.0) return 0.0;
        const VorticityParts w = vorticity(s);
        double mean = 0.0;
        for (size_t i = 0; i < w.mean_sine.size(); ++i)
            mean += 0.5 * force_curl.mean_sine[i] * w.mean_sine[i];
        return env * (inner_l2(force_curl.osc, w.osc) + mean);
    };

    bool have_prev = false;
    DiagnosticsRecord prev_rec;
    double prev_work = 0.0, prev_curl_work = 0.0;

    auto emit_record = [&]() {
        DiagnosticsRecord rec = make_record(res.state);
        const double work = work_at(res.state);
        const double curl_work = curl_work_at(res.state);
        if (have_prev && rec.t > prev_rec.t) {
            rec.energy_residual =
                energy_budget(prev_rec, rec, 0.5 * (prev_work + work));
            rec.enstrophy_residual =
                enstrophy_budget(prev_rec, rec, 0.5 * (prev_curl_work + curl_work));
        }
        if (res.twin)
            rec.twin_distance = twin_run_distance(res.state, *res.twin);
        apply_monitors(monitors, rec, have_prev ? &prev_rec : nullptr);
        res.records.push_back(rec);
        res.profiles.push_back(
            {rec.t, res.state.ubar, monitors.int_flux_budget});
        if (on_record) on_record(rec);
        prev_rec = rec;
        prev_work = work;
        prev_curl_work = curl_work;
        have_prev = true;
    };

    const double time_eps = 1e-12 * std::max(1.0, std::abs(cfg.t_end));
    if (!(cfg.t_end - res.state.time > time_eps)) {
        res.monitors = std::move(monitors);
        return res;  // nothing to integrate: state unchanged, no records
    }

    emit_record();  // initial record at s0.time

    NormBundle nb_prev = sobolev_norms(res.state);
    long long step_idx = 0;
    long long last_recorded = 0, last_snapshot = -1;
    bool cfl_flagged = false;

    while (cfg.t_end - res.state.time > time_eps) {
        double dt = cfg.dt > 0.0 ? cfg.dt : cfl_dt(res.state, cfg);
        dt = std::min(dt, cfg.t_end - res.state.time);

        StepWork w = step_core(res.state, f, dt);
        res.state = std::move(w.next);
        if (res.twin) {
            StepWork tw = step_core(*res.twin, f, dt);
            res.twin = std::move(tw.next);
        }
        ++step_idx;

        // Advisory CFL check on the post-step speeds.
        const double bound = advective_bound(res.state.grid, w.post_speeds, cfg.cfl);
        if (dt > 2.0 * bound) {
            ++monitors.cfl_violations;
            if (!cfl_flagged) {
                std::ostringstream os;
                os << "cfl_violation: dt = " << dt
                   << " exceeds twice the advective bound " << bound
                   << " at t = " << format_time(res.state.time);
                monitors.failures.push_back(os.str());
                cfl_flagged = true;
            }
        }

        // Trapezoid accumulators over this step.
        const NormBundle nb_cur = sobolev_norms(res.state);
        monitors.int_ux_sq +=
            0.5 * dt * ((nb_prev.ux2() + nb_prev.vx2) + (nb_cur.ux2() + nb_cur.vx2));
        monitors.int_omega_x_sq +=
            0.5 * dt * (nb_prev.omega_x2() + nb_cur.omega_x2());
        monitors.int_flux_budget +=
            0.5 * dt *
            ((nb_prev.osc_uxy2 + nb_prev.osc_ux2) + (nb_cur.osc_uxy2 + nb_cur.osc_ux2));
        nb_prev = nb_cur;

        const bool last = !(cfg.t_end - res.state.time > time_eps);
        const bool finite = all_finite(res.state) &&
                            (!res.twin || all_finite(*res.twin));

        if (!finite || last || step_idx % cfg.diagnostics_every == 0) {
            if (step_idx != last_recorded) {
                emit_record();
                last_recorded = step_idx;
            }
        }
        if (on_snapshot && cfg.snapshot_every > 0 &&
            (last || step_idx % cfg.snapshot_every == 0)) {
            if (step_idx != last_snapshot) {
                on_snapshot(res.state, step_idx);
                last_snapshot = step_idx;
            }
        }
        if (!finite)
            throw NonFinite("integrate: non-finite coefficients at t = " +
                            format_time(res.state.time) + " (step " +
                            std::to_string(step_idx) + ")");
    }

    res.monitors = std::move(monitors);
    res.steps = step_idx;
    return res;
}

}  // namespace anse
