/// @file diagnostics.cpp
/// @brief Budgets, bound margins, decay fits, asymptotics, and the weak-form
/// residual.

#include "anse/diagnostics.hpp"

#include "anse/ops.hpp"
#include "anse/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace anse {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::string format_failure(const char* monitor, double t, double value) {
    std::ostringstream os;
    os.precision(6);
    os << monitor << " at t = " << t << ": " << value;
    return os.str();
}

/// L2(0,1) distance between two cosine-coefficient profiles.
double profile_distance(const std::vector<double>& a, const std::vector<double>& b) {
    double sum = 0.0;
    const size_t n = std::min(a.size(), b.size());
    for (size_t k = 0; k < n; ++k) {
        const double d = a[k] - b[k];
        sum += (k == 0 ? 1.0 : 0.5) * d * d;
    }
    for (size_t k = n; k < a.size(); ++k) sum += 0.5 * a[k] * a[k];
    for (size_t k = n; k < b.size(); ++k) sum += 0.5 * b[k] * b[k];
    return std::sqrt(sum);
}

}  // namespace

DiagnosticsRecord make_record(const FlowState& s) {
    DiagnosticsRecord r;
    r.t = s.time;
    r.norms = sobolev_norms(s);
    r.energy = r.norms.energy();
    r.enstrophy = r.norms.omega2();
    return r;
}

VelocityPair forcing_field(const ForcingSpec& f) {
    VelocityPair out;
    Spectrum fy = dy(f.psi_f);  // CosineY
    out.u = Spectrum(f.psi_f.grid(), YBasis::CosineY);
    add_scaled(out.u, -1.0, fy);
    const int ny = f.psi_f.grid().ny;
    for (int k2 = 0; k2 <= ny && k2 < static_cast<int>(f.fbar1.size()); ++k2)
        out.u.coeff(0, k2) += f.fbar1[static_cast<size_t>(k2)];
    out.v = dx(f.psi_f);  // SineY
    return out;
}

ForcingNorms forcing_norms(const ForcingSpec& f) {
    const VelocityPair F = forcing_field(f);
    ForcingNorms n;
    n.f_l2 = std::hypot(norm_l2(F.u), norm_l2(F.v));
    Spectrum fy = dy(F.u);  // SineY
    Spectrum curl = dx(F.v);
    add_scaled(curl, -1.0, fy);
    n.curlf_l2 = norm_l2(curl);
    n.dyf1_l2 = norm_l2(fy);
    n.dyyf1_l2 = norm_l2(dy(fy));
    return n;
}

double forcing_work(const ForcingSpec& f, const VelocityPair& vel, double t) {
    const double env = f.envelope(t);
    if (env == 0.0) return 0.0;
    const VelocityPair F = forcing_field(f);
    return env * (inner_l2(F.u, vel.u) + inner_l2(F.v, vel.v));
}

VorticityParts forcing_curl(const ForcingSpec& f) {
    VorticityParts c;
    c.osc = laplacian(f.psi_f);
    const int ny = f.psi_f.grid().ny;
    c.mean_sine.assign(static_cast<size_t>(std::max(0, ny - 1)), 0.0);
    for (int k2 = 1; k2 <= ny - 1 && k2 < static_cast<int>(f.fbar1.size()); ++k2)
        c.mean_sine[static_cast<size_t>(k2 - 1)] = kPi * k2 * f.fbar1[static_cast<size_t>(k2)];
    return c;
}

void anchor_monitors(MonitorSet& m, const FlowState& s0, const ForcingSpec& f) {
    const NormBundle n = sobolev_norms(s0);
    m.u0_l2 = std::sqrt(n.u2() + n.v2);
    m.omega0_l2 = std::sqrt(n.omega2());
    m.forcing = forcing_norms(f);
    m.envelope = f.envelope;
}

void apply_monitors(MonitorSet& m, DiagnosticsRecord& rec,
                    const DiagnosticsRecord* prev) {
    const NormBundle& n = rec.norms;
    const double u_l2 = std::sqrt(n.u2() + n.v2);
    const double omega_l2 = std::sqrt(n.omega2());

    const double int_f = m.int_f_l2(rec.t);
    const double int_cf = m.int_curlf_l2(rec.t);

    const double rhs_u = m.u0_l2 + int_f;
    const double rhs_diss = m.u0_l2 * m.u0_l2 + 2.0 * int_f * int_f;
    const double rhs_omega = m.omega0_l2 + int_cf;
    const double rhs_omega_diss = m.omega0_l2 * m.omega0_l2 + 2.0 * int_cf * int_cf;

    rec.velocity_margin = rhs_u - u_l2;
    rec.dissipation_margin = rhs_diss - m.int_ux_sq;
    rec.vorticity_margin = rhs_omega - omega_l2;
    rec.vorticity_dissipation_margin = rhs_omega_diss - m.int_omega_x_sq;

    auto gate = [&](bool enabled, double margin, double rhs, const char* name) {
        if (enabled && margin < -m.margin_rel_tol * std::max(1.0, rhs))
            m.failures.push_back(format_failure(name, rec.t, margin));
    };
    gate(m.velocity_bound, rec.velocity_margin, rhs_u, "velocity_bound");
    gate(m.dissipation_bound, rec.dissipation_margin, rhs_diss, "dissipation_bound");
    gate(m.vorticity_bound, rec.vorticity_margin, rhs_omega, "vorticity_bound");
    gate(m.vorticity_dissipation_bound, rec.vorticity_dissipation_margin,
         rhs_omega_diss, "vorticity_dissipation_bound");

    if (m.identities) {
        const double grad_u =
            std::sqrt(n.ux2() + n.uy2() + n.vx2 + n.vy2);
        if (std::abs(omega_l2 - grad_u) >
            m.identity_rel_tol * std::max(1.0, omega_l2))
            m.failures.push_back(
                format_failure("identity_curl_gradient", rec.t, omega_l2 - grad_u));
        const double omega_x = std::sqrt(n.omega_x2());
        const double grad_ux =
            std::sqrt(n.osc_uxx2 + n.osc_uxy2 + n.vxx2 + n.vxy2);
        if (std::abs(omega_x - grad_ux) >
            m.identity_rel_tol * std::max(1.0, omega_x))
            m.failures.push_back(
                format_failure("identity_curl_gradient_x", rec.t, omega_x - grad_ux));
    }
    if (m.energy_decay && prev != nullptr) {
        const double slack = m.identity_rel_tol * std::max(1.0, prev->energy);
        if (rec.energy > prev->energy + slack)
            m.failures.push_back(format_failure("energy_decay", rec.t,
                                                rec.energy - prev->energy));
    }
}

double energy_budget(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                     double work_by_force) {
    const double dt = b.t - a.t;
    if (!(dt > 0.0))
        throw ValidationError("energy_budget: records must be time-ordered");
    const double diss_a = a.norms.ux2() + a.norms.vx2;
    const double diss_b = b.norms.ux2() + b.norms.vx2;
    return (b.energy - a.energy) / dt + 0.5 * (diss_a + diss_b) - work_by_force;
}

double enstrophy_budget(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                        double curl_work) {
    const double dt = b.t - a.t;
    if (!(dt > 0.0))
        throw ValidationError("enstrophy_budget: records must be time-ordered");
    return 0.5 * (b.enstrophy - a.enstrophy) / dt +
           0.5 * (a.norms.omega_x2() + b.norms.omega_x2()) - curl_work;
}

namespace {
double min_over(const std::vector<DiagnosticsRecord>& history,
                double (*field)(const DiagnosticsRecord&)) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& r : history) m = std::min(m, field(r));
    return m;
}
}  // namespace

double check_velocity_bound(const std::vector<DiagnosticsRecord>& history) {
    return min_over(history,
                    [](const DiagnosticsRecord& r) { return r.velocity_margin; });
}

double check_dissipation_bound(const std::vector<DiagnosticsRecord>& history) {
    return min_over(history,
                    [](const DiagnosticsRecord& r) { return r.dissipation_margin; });
}

std::pair<double, double> check_vorticity_bounds(
    const std::vector<DiagnosticsRecord>& history) {
    return {min_over(history,
                     [](const DiagnosticsRecord& r) { return r.vorticity_margin; }),
            min_over(history, [](const DiagnosticsRecord& r) {
                return r.vorticity_dissipation_margin;
            })};
}

DecayFit fit_exponential_decay(
    const std::vector<std::pair<double, double>>& series) {
    constexpr double kFloor = 1e-13;
    const size_t n = series.size();
    const size_t start = n / 10;  // drop the transient
    std::vector<double> ts, logs;
    for (size_t i = start; i < n; ++i) {
        if (!(series[i].second > kFloor)) break;  // noise floor: stop fitting
        ts.push_back(series[i].first);
        logs.push_back(std::log(series[i].second));
    }
    if (ts.size() < 10)
        throw DegenerateSeries("fit_exponential_decay: only " +
                               std::to_string(ts.size()) +
                               " usable points (need 10)");
    const size_t m = ts.size();
    double t_mean = 0.0, l_mean = 0.0;
    for (size_t i = 0; i < m; ++i) {
        t_mean += ts[i];
        l_mean += logs[i];
    }
    t_mean /= static_cast<double>(m);
    l_mean /= static_cast<double>(m);
    double stt = 0.0, stl = 0.0, sll = 0.0;
    for (size_t i = 0; i < m; ++i) {
        const double dt = ts[i] - t_mean;
        const double dl = logs[i] - l_mean;
        stt += dt * dt;
        stl += dt * dl;
        sll += dl * dl;
    }
    if (!(stt > 0.0))
        throw DegenerateSeries("fit_exponential_decay: all sample times equal");
    DecayFit fit;
    fit.rate = -stl / stt;
    // A (numerically) constant series carries only representation noise in
    // sll; r^2 is 1 by convention there, not the 0/0 the formula would give.
    const double noise = 1e-14 * (1.0 + std::abs(l_mean));
    fit.r_squared = sll > static_cast<double>(m) * noise * noise
                        ? (stl * stl) / (stt * sll)
                        : 1.0;
    fit.n_used = m;
    return fit;
}

AsymptoticsReport check_asymptotics(const std::vector<DiagnosticsRecord>& records,
                                    const std::vector<ProfileSample>& profiles,
                                    double osc_threshold, double cauchy_constant) {
    AsymptoticsReport rep;
    if (!records.empty()) {
        const NormBundle& n = records.back().norms;
        rep.final_osc_velocity = std::sqrt(n.osc_u2) + std::sqrt(n.v2);
        rep.osc_vanishes = rep.final_osc_velocity <= osc_threshold;
    }
    if (profiles.size() >= 2) {
        const size_t count = std::max<size_t>(2, profiles.size() / 3);
        const size_t begin = profiles.size() - count;
        double worst = -std::numeric_limits<double>::infinity();
        for (size_t i = begin; i + 1 < profiles.size(); ++i) {
            for (size_t j = i + 1; j < profiles.size(); ++j) {
                const double dist =
                    profile_distance(profiles[i].ubar, profiles[j].ubar);
                const double budget = profiles[j].cum_flux_budget -
                                      profiles[i].cum_flux_budget;
                worst = std::max(worst, dist - cauchy_constant * budget);
            }
        }
        rep.worst_cauchy_gap = worst;
        rep.mean_cauchy = worst <= 1e-12;
        rep.momentum_drift =
            std::abs(profiles.back().ubar[0] - profiles.front().ubar[0]);
        rep.momentum_conserved = rep.momentum_drift <= 1e-9;
    }
    return rep;
}

double twin_run_distance(const FlowState& a, const FlowState& b) {
    if (a.grid != b.grid)
        throw GridMismatch("twin_run_distance: states on different grids");
    FlowState d(a.grid);
    d.psi = a.psi;
    add_scaled(d.psi, -1.0, b.psi);
    for (size_t k = 0; k < d.ubar.size(); ++k) d.ubar[k] = a.ubar[k] - b.ubar[k];
    const NormBundle n = sobolev_norms(d);
    return std::sqrt(n.u2() + n.v2);
}

double weak_residual(const FlowState& s, const ForcingSpec& f,
                     const VelocityPair& w) {
    const Grid& g = s.grid;

    // d/dt (u, w): transport tendency plus the horizontal diffusion the
    // integrator factors out, mapped back to a velocity field.
    const Tendency td = rhs(s, f, s.time);
    const Spectrum omega = laplacian(s.psi);
    Spectrum omega_dot = td.d_omega_osc;
    add_scaled(omega_dot, 1.0, dx(dx(omega)));
    FlowState sdot(g);
    for (int i1 = 0; i1 < g.nx; ++i1) {
        const int k1 = g.k1_of_index(i1);
        if (k1 == 0) continue;
        const double kx2 = (2.0 * kPi * k1) * (2.0 * kPi * k1);
        for (int i2 = 0; i2 < omega_dot.nk2(); ++i2) {
            const double ky = kPi * (i2 + 1);
            sdot.psi.at_index(i1, i2) = -omega_dot.at_index(i1, i2) / (kx2 + ky * ky);
        }
    }
    sdot.ubar = td.d_ubar;
    const VelocityPair udot = velocity(sdot);
    const double ddt = inner_l2(udot.u, w.u) + inner_l2(udot.v, w.v);

    // (u_x, w_x) for both components.
    const VelocityPair vel = velocity(s);
    const double visc =
        inner_l2(dx(vel.u), dx(w.u)) + inner_l2(dx(vel.v), dx(w.v));

    // ((u . grad) u, w): dealiased products are exact against band-limited w.
    Spectrum adv1 = multiply_dealiased(vel.u, dx(vel.u));
    add_scaled(adv1, 1.0, multiply_dealiased(vel.v, dy(vel.u)));
    Spectrum adv2 = multiply_dealiased(vel.u, dx(vel.v));
    add_scaled(adv2, 1.0, multiply_dealiased(vel.v, dy(vel.v)));
    const double adv = inner_l2(adv1, w.u) + inner_l2(adv2, w.v);

    const double fw = forcing_work(f, w, s.time);

    return std::abs(ddt + visc + adv - fw);
}

}  // namespace anse
