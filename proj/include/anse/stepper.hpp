/// @file stepper.hpp
/// @brief Time integration of the vorticity / mean-profile system.
///
/// The evolved unknowns are the oscillation vorticity omega~ = laplacian(psi)
/// (SineY, no k1 = 0 content) and the mean profile ubar:
///
///   omega~_t + [u omega_x + v omega_y]~ = omega~_xx + (curl f)~
///   ubar_t + d/dy mean(v u~)            = fbar1(t)
///
/// Horizontal diffusion is diagonal here (each mode decays at (2 pi k1)^2),
/// so it is applied as an exact exponential integrating factor per stage and
/// never enters the explicit tendency; the mean profile has no diffusion at
/// all. The explicit part uses a three-stage third-order Runge-Kutta scheme
/// with the forcing envelope evaluated at each stage time.
///
/// Structure carried by construction:
///  - the state stays divergence-free (psi / ubar parameterization);
///  - mean momentum: the flux term contributes exactly zero to d ubar[0], so
///    without mean forcing the momentum integral is bit-identical over any
///    number of steps;
///  - a pure mean profile (any ubar, psi = 0) is an exact fixed point when
///    unforced.

#ifndef ANSE_STEPPER_HPP
#define ANSE_STEPPER_HPP

#include "anse/diagnostics.hpp"
#include "anse/flow_state.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace anse {

struct StepperConfig {
    double dt = 0.0;      ///< fixed step when > 0; 0 selects the CFL-based step
    double dt_max = 0.01; ///< upper cap for the CFL-based step
    double cfl = 0.5;     ///< advective CFL number
    double t_end = 1.0;
    std::string scheme = "rk3";  ///< only "rk3" is implemented
    int snapshot_every = 0;      ///< steps between snapshot callbacks (0 = off)
    int diagnostics_every = 1;   ///< steps between diagnostics records
};

/// Explicit part of the semi-discrete system (diffusion excluded).
struct Tendency {
    Spectrum d_omega_osc;        ///< SineY, k1 = 0 row zero
    std::vector<double> d_ubar;  ///< cosine coefficients, k = 0..ny
};

/// Transport + forcing tendency at time t. All products are dealiased
/// (exact within the retained band); the k1 = 0 row of d_omega_osc is
/// projected out (the mean evolves through d_ubar); d_ubar[0] is exactly
/// zero apart from mean forcing.
Tendency rhs(const FlowState& s, const ForcingSpec& f, double t);

/// Largest pointwise |u| and |v| on the collocation grid.
struct SpeedPair {
    double max_u = 0.0;
    double max_v = 0.0;
};
SpeedPair max_speeds(const FlowState& s);

/// cfl * min(dx / max|u|, dy / max|v|), capped at cfg.dt_max; returns
/// cfg.dt_max for a state at rest.
double cfl_dt(const FlowState& s, const StepperConfig& cfg);

/// One Runge-Kutta step of size dt with the exact diffusion factor applied
/// per stage. Throws CflViolation (after completing the step internally) if
/// the post-step velocity breaks the advective bound cfl*min(dx/|u|, dy/|v|)
/// by more than 2x — callers that want to keep the state should size dt via
/// cfl_dt instead of probing.
FlowState step(const FlowState& s, const ForcingSpec& f, double dt,
               double cfl = 0.5);

/// Everything a finished (or aborted) integration produced.
struct IntegrationResult {
    FlowState state;
    std::vector<DiagnosticsRecord> records;
    std::vector<ProfileSample> profiles;  ///< sampled with the records
    MonitorSet monitors;  ///< final accumulators and failure list
    std::optional<FlowState> twin;  ///< advanced twin state, if one was given
    long long steps = 0;
};

using RecordSink = std::function<void(const DiagnosticsRecord&)>;
using SnapshotSink = std::function<void(const FlowState&, long long)>;

/// Advance s0 to cfg.t_end. Records (and profile samples) are taken at the
/// initial state, every diagnostics_every steps, and at the final step;
/// each record is passed to on_record as it is made, so partial output
/// survives an abort. Snapshots fire every snapshot_every steps plus at the
/// end. Monitor accumulators advance by the trapezoid rule every step.
///
/// A CFL violation is advisory: it is appended to monitors.failures and the
/// run continues. Non-finite coefficients abort with NonFinite after the
/// offending step's record has been streamed.
///
/// If twin0 is given, both states advance under the same forcing and each
/// record carries the L2 velocity distance between them.
IntegrationResult integrate(const FlowState& s0, const ForcingSpec& f,
                            const StepperConfig& cfg, MonitorSet monitors,
                            const RecordSink& on_record = {},
                            const SnapshotSink& on_snapshot = {},
                            const FlowState* twin0 = nullptr);

}  // namespace anse

#endif  // ANSE_STEPPER_HPP
