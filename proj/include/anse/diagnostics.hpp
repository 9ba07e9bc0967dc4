/// @file diagnostics.hpp
/// @brief Trajectory diagnostics: budgets, a priori bound margins, decay
/// fits, asymptotics checks, and twin-run divergence.
///
/// The continuous system obeys a small family of integral estimates:
///
///   energy law        d/dt E + (||u_x||^2 + ||v_x||^2) = (f, u)
///   velocity bound    ||u(t)||_2 <= ||u0||_2 + int_0^t ||f||_2
///   dissipation bound int_0^t (||u_x||^2+||v_x||^2) <= ||u0||_2^2 + 2 (int ||f||_2)^2
///   vorticity bounds  the same pair with omega, curl f in place of u, f
///
/// Each bound becomes a monitor: margin = RHS - LHS, recorded along the run
/// and flagged if it dips below -margin_rel_tol relative to the bound.
/// Because forcing enters through a fixed profile times a scalar envelope,
/// every cumulative forcing integral has a closed form (Envelope::integral),
/// so the right-hand sides carry no quadrature error; the left-hand-side
/// dissipation integrals are accumulated by the trapezoid rule once per step.
///
/// Budget residuals (midpoint rule between consecutive records) quantify how
/// well a discrete trajectory tracks the energy and enstrophy laws; they
/// shrink at second order in the record spacing and are reported, never
/// asserted.

#ifndef ANSE_DIAGNOSTICS_HPP
#define ANSE_DIAGNOSTICS_HPP

#include "anse/flow_state.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace anse {

/// One diagnostics row. Norm-derived scalars come from the embedded bundle;
/// residuals and margins are filled by the monitor pass (zero until then).
struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;     ///< (||u||^2 + ||v||^2) / 2
    double enstrophy = 0.0;  ///< ||omega||_2^2
    NormBundle norms;
    double energy_residual = 0.0;     ///< energy-law defect vs previous record
    double enstrophy_residual = 0.0;  ///< enstrophy-law defect vs previous record
    double velocity_margin = 0.0;     ///< velocity bound RHS - ||u(t)||
    double dissipation_margin = 0.0;  ///< dissipation bound RHS - cumulative LHS
    double vorticity_margin = 0.0;    ///< vorticity bound RHS - ||omega(t)||
    double vorticity_dissipation_margin = 0.0;
    std::optional<double> twin_distance;  ///< set only on twin runs

    double h2_norm() const { return norms.h2_norm(); }
    double osc_vorticity_l2() const { return std::sqrt(norms.osc_omega2); }
    double mean_profile_l2() const { return std::sqrt(norms.mean_u2); }
};

/// Norms, energy, and enstrophy of a state; monitor fields left at zero.
DiagnosticsRecord make_record(const FlowState& s);

/// Mean profile snapshot plus the cumulative flux budget
/// int_0^t (||u_xy||^2 + ||u_x||^2) controlling how far the profile can
/// drift between two times.
struct ProfileSample {
    double t = 0.0;
    std::vector<double> ubar;       ///< cosine coefficients, k = 0..ny
    double cum_flux_budget = 0.0;
};

/// Magnitudes of the forcing profile at envelope = 1. The instantaneous
/// norms are these times envelope(t); cumulative integrals follow from
/// Envelope::integral / integral_sq.
struct ForcingNorms {
    double f_l2 = 0.0;      ///< ||(f1, f2)||_2
    double curlf_l2 = 0.0;  ///< ||d/dx f2 - d/dy f1||_2
    double dyf1_l2 = 0.0;   ///< ||d/dy f1||_2
    double dyyf1_l2 = 0.0;  ///< ||d2/dy2 f1||_2
};

/// Forcing components as velocity-space spectra at envelope = 1:
/// u-component fbar1 - psi_f_y (CosineY), v-component psi_f_x (SineY).
VelocityPair forcing_field(const ForcingSpec& f);

ForcingNorms forcing_norms(const ForcingSpec& f);

/// (f, u) + (f, v) work integrand at time t (envelope applied).
double forcing_work(const ForcingSpec& f, const VelocityPair& vel, double t);

/// Curl of the forcing at envelope = 1, same split as vorticity():
/// oscillation part laplacian(psi_f), mean part -d/dy fbar1 as a sine profile.
VorticityParts forcing_curl(const ForcingSpec& f);

/// Monitor configuration plus the per-run accumulators the integrator
/// advances. Anchors and forcing magnitudes are set once from the initial
/// state; failures collect one message per monitor violation.
struct MonitorSet {
    bool velocity_bound = true;
    bool dissipation_bound = true;
    bool vorticity_bound = true;
    bool vorticity_dissipation_bound = true;
    bool identities = true;     ///< ||omega||=||grad u||, ||omega_x||=||grad u_x||
    bool energy_decay = false;  ///< unforced runs: energy nonincreasing

    double margin_rel_tol = 1e-8;
    double identity_rel_tol = 1e-12;

    double u0_l2 = 0.0;      ///< ||u(0)||_2 anchor
    double omega0_l2 = 0.0;  ///< ||omega(0)||_2 anchor
    ForcingNorms forcing;    ///< profile magnitudes at envelope = 1
    Envelope envelope;

    /// Trapezoid accumulators, advanced once per step by the integrator.
    double int_ux_sq = 0.0;        ///< cumulative (||u_x||^2 + ||v_x||^2)
    double int_omega_x_sq = 0.0;   ///< cumulative ||omega_x||^2
    double int_flux_budget = 0.0;  ///< cumulative (||u_xy||^2 + ||u_x||^2)

    long long cfl_violations = 0;  ///< advisory CFL breaches (first one is a failure)
    std::vector<std::string> failures;

    /// Cumulative forcing integrals at time t (closed form, exact).
    double int_f_l2(double t) const { return forcing.f_l2 * envelope.integral(t); }
    double int_curlf_l2(double t) const {
        return forcing.curlf_l2 * envelope.integral(t);
    }
    double int_curlf_l2_sq(double t) const {
        return forcing.curlf_l2 * forcing.curlf_l2 * envelope.integral_sq(t);
    }
    double int_dyf1_sq(double t) const {
        return forcing.dyf1_l2 * forcing.dyf1_l2 * envelope.integral_sq(t);
    }
    double int_dyyf1_sq(double t) const {
        return forcing.dyyf1_l2 * forcing.dyyf1_l2 * envelope.integral_sq(t);
    }
};

/// Set the bound anchors and forcing magnitudes from the initial state.
void anchor_monitors(MonitorSet& m, const FlowState& s0, const ForcingSpec& f);

/// Fill the margin fields of rec from the monitor anchors and accumulators,
/// check the enabled monitors, and append one failure message per violation.
/// prev (may be null) is the preceding record, used for the energy-decay
/// check. Margins are tested against -margin_rel_tol * max(1, RHS).
void apply_monitors(MonitorSet& m, DiagnosticsRecord& rec,
                    const DiagnosticsRecord* prev);

/// Energy-law defect between consecutive records with midpoint quadrature:
/// (E_b - E_a)/(t_b - t_a) + avg dissipation - work, where work is the
/// caller-supplied midpoint value of (f, u).
double energy_budget(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                     double work_by_force);

/// Enstrophy-law defect: d/dt (||omega||^2 / 2) + ||omega_x||^2 - curl work.
double enstrophy_budget(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                        double curl_work);

/// Smallest velocity-bound margin over the history.
double check_velocity_bound(const std::vector<DiagnosticsRecord>& history);

/// Smallest dissipation-bound margin over the history.
double check_dissipation_bound(const std::vector<DiagnosticsRecord>& history);

/// Smallest (vorticity, vorticity-dissipation) margins over the history.
std::pair<double, double> check_vorticity_bounds(
    const std::vector<DiagnosticsRecord>& history);

/// Least-squares exponential fit. Values are modeled as A·exp(-rate·t):
/// the fit is a straight line through (t, log value). The first 10% of
/// samples (transient) and everything from the first value below the 1e-13
/// noise floor onward are excluded.
struct DecayFit {
    double rate = 0.0;       ///< -slope of the fitted line
    double r_squared = 0.0;  ///< 1 for a perfect (or constant) series
    std::size_t n_used = 0;  ///< samples entering the fit
};

/// Throws DegenerateSeries if fewer than 10 usable points remain.
DecayFit fit_exponential_decay(const std::vector<std::pair<double, double>>& series);

/// Long-time behaviour of an unforced run.
struct AsymptoticsReport {
    double final_osc_velocity = 0.0;  ///< ||u~(T)||_2 + ||v(T)||_2
    bool osc_vanishes = false;        ///< final_osc_velocity <= threshold
    /// Largest ||ubar(t) - ubar(s)||_2 - C·(budget(t) - budget(s)) over
    /// pairs s < t in the final third of the profile history.
    double worst_cauchy_gap = 0.0;
    bool mean_cauchy = false;
    double momentum_drift = 0.0;  ///< |mean momentum at end - at start|
    bool momentum_conserved = false;  ///< drift <= 1e-9

    bool ok() const { return osc_vanishes && mean_cauchy && momentum_conserved; }
};

/// Checks that the oscillation velocity has fallen below osc_threshold by the
/// last record and that the mean profile settles: for every pair s < t in the
/// final third of the profile history, the profile movement is bounded by
/// cauchy_constant times the accumulated flux budget between s and t.
AsymptoticsReport check_asymptotics(const std::vector<DiagnosticsRecord>& records,
                                    const std::vector<ProfileSample>& profiles,
                                    double osc_threshold, double cauchy_constant);

/// L2 distance between the velocity fields of two states on the same grid.
double twin_run_distance(const FlowState& a, const FlowState& b);

/// Residual of the weak form of the momentum equation against a
/// divergence-free test field w = (w.u, w.v):
///
///   | d/dt (u, w) + (u_x, w_x) + ((u·grad)u, w) - (f, w) |
///
/// with the time derivative taken from the semi-discrete tendency (transport
/// plus the horizontal diffusion it factors out). Vanishes to rounding for
/// test fields inside the retained band, because the evolved system is
/// exactly the band-truncated weak form.
double weak_residual(const FlowState& s, const ForcingSpec& f,
                     const VelocityPair& w);

}  // namespace anse

#endif  // ANSE_DIAGNOSTICS_HPP
