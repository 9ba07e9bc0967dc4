/// @file harness.hpp
/// @brief Run orchestration: JSON configs, scenario construction, run
/// artifacts (manifest, diagnostics CSV, snapshots), audits, reports, sweeps.
///
/// A run is described by a single JSON document (one object per file, UTF-8)
/// with the blocks
///
///   scenario   one of taylor_green | pure_shear | free_decay |
///              shear_stability | forced_h2 | custom
///   grid       { nx, ny, dealias_num, dealias_den }
///   stepper    { dt, dt_max, cfl, t_end, scheme }
///   initial    { amplitude, seed, kmax, shear_slope, epsilon,
///                psi_modes, ubar }
///   forcing    { amplitude, psi_modes, fbar1, envelope, rate, t_off }
///   monitors   { velocity_bound, dissipation_bound, vorticity_bound,
///                vorticity_dissipation_bound, identities, energy_decay,
///                margin_rel_tol, identity_rel_tol }
///   output     { run_dir, snapshot_every, diagnostics_every }
///   audit      { n_trials, kmax, seed, inequalities, adversarial_iters }
///
/// Every key is optional except none: an empty object is a valid config and
/// resolves to a 64x64 free-decay run (cfl = 0.5, 2/3 dealiasing). Unknown
/// keys anywhere are rejected with a ParseError naming the key path; invalid
/// values raise a single ValidationError listing every violated invariant.
/// parse_config resolves all defaults eagerly, emit_config writes every field
/// back out, so parse(emit(cfg)) == cfg exactly.
///
/// Artifacts written by a run, all inside the run directory:
///
///   manifest.json     config copy, code version, timestamps, seed
///                     provenance, termination status. Written once with
///                     status "running" before the first step and rewritten
///                     exactly once at the end with the final status
///                     (completed | monitor_failure | nonfinite_abort).
///   diagnostics.csv   one row per diagnostics record, streamed as the run
///                     advances; columns listed at diagnostics_csv_header().
///                     Numbers use shortest round-trip formatting, so reruns
///                     of the same config are byte-identical.
///   snapshot_*.bin    flow states at the configured cadence (see
///                     write_snapshot for the byte layout).
///
/// Exit codes are mutually exclusive: 0 success, 2 monitor failure (includes
/// an advisory CFL violation, which is surfaced in the manifest), 3
/// non-finite state abort, 4 I/O or artifact error.

#ifndef ANSE_HARNESS_HPP
#define ANSE_HARNESS_HPP

#include "anse/auditor.hpp"
#include "anse/diagnostics.hpp"
#include "anse/stepper.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace anse {

/// One explicit stream-function mode. Only the k1 >= 1 half is specified;
/// the Hermitian partner at -k1 is filled automatically so fields stay real.
struct ModeSpec {
    int k1 = 1;
    int k2 = 1;
    double re = 0.0;
    double im = 0.0;
    bool operator==(const ModeSpec&) const = default;
};

struct GridConfig {
    int nx = 64;
    int ny = 64;
    int dealias_num = 2;
    int dealias_den = 3;
    bool operator==(const GridConfig&) const = default;
};

/// Time-stepping parameters (output cadence lives in OutputConfig).
struct StepperBlock {
    double dt = 0.0;  ///< 0 = choose from the CFL condition each step
    double dt_max = 0.01;
    double cfl = 0.5;
    double t_end = 1.0;
    std::string scheme = "rk3";
    bool operator==(const StepperBlock&) const = default;
};

/// Initial-condition parameters. Which fields matter depends on the
/// scenario; the rest are carried along untouched. amplitude defaults to
/// 1.0 except for free_decay (0.02) and forced_h2 (0.1).
struct InitialConfig {
    double amplitude = 1.0;
    std::uint64_t seed = 1;    ///< seed for the random scenarios
    int kmax = 8;              ///< band limit of random initial data
    double shear_slope = 1.0;  ///< a in ubar(y) = a*y
    double epsilon = 1e-3;     ///< initial ||omega~||_2 for shear_stability
    std::vector<ModeSpec> psi_modes;  ///< custom scenario: explicit psi
    std::vector<double> ubar;         ///< custom scenario: cosine coefficients
    bool operator==(const InitialConfig&) const = default;
};

/// Forcing profile times envelope. amplitude scales psi_modes and fbar1;
/// amplitude 0 (the default everywhere but forced_h2) means unforced.
struct ForcingConfig {
    double amplitude = 0.0;
    std::vector<ModeSpec> psi_modes;  ///< stream function of the forcing
    std::vector<double> fbar1;        ///< mean forcing cosine coefficients
    std::string envelope = "constant";  ///< constant|exponential_decay|ramp_off
    double rate = 1.0;   ///< exponential_decay: e^{-rate t}
    double t_off = 1.0;  ///< ramp_off: zero from t_off onward
    bool operator==(const ForcingConfig&) const = default;
};

/// Monitor toggles and tolerances. energy_decay defaults to on exactly when
/// the effective forcing is zero (energy is nonincreasing only then).
struct MonitorConfig {
    bool velocity_bound = true;
    bool dissipation_bound = true;
    bool vorticity_bound = true;
    bool vorticity_dissipation_bound = true;
    bool identities = true;
    bool energy_decay = false;
    double margin_rel_tol = 1e-8;
    double identity_rel_tol = 1e-12;
    bool operator==(const MonitorConfig&) const = default;
};

struct OutputConfig {
    std::string run_dir;      ///< default "runs/<scenario>"
    int snapshot_every = 0;   ///< 0 = no snapshots
    int diagnostics_every = 1;
    bool operator==(const OutputConfig&) const = default;
};

struct AuditConfig {
    long long n_trials = 1000;
    int kmax = 8;
    std::uint64_t seed = 1;
    /// Subset of the five audited inequalities; default all of them.
    std::vector<std::string> inequalities{
        "triple_product", "linfty_l1", "poincare_wall", "poincare_mean",
        "transport_orthogonality"};
    long long adversarial_iters = 0;  ///< 0 = Monte Carlo only
    bool operator==(const AuditConfig&) const = default;
};

struct RunConfig {
    std::string scenario = "free_decay";
    GridConfig grid;
    StepperBlock stepper;
    InitialConfig initial;
    ForcingConfig forcing;
    MonitorConfig monitors;
    OutputConfig output;
    AuditConfig audit;
    bool operator==(const RunConfig&) const = default;
};

/// Parse and validate a JSON config file. Defaults are resolved eagerly
/// (including per-scenario initial amplitudes, the forced_h2 default forcing,
/// and the energy_decay auto rule). Throws ParseError for unreadable files,
/// malformed JSON (with line/column context), wrong value types, or unknown
/// keys; throws ValidationError listing every violated invariant.
RunConfig parse_config(const std::string& path);

/// Same, from an in-memory document; origin labels error messages.
RunConfig parse_config_text(const std::string& text,
                            const std::string& origin = "<config>");

/// Serialize with every field written explicitly (two-space indent).
/// Round trip: parse_config_text(emit_config(cfg)) == cfg.
std::string emit_config(const RunConfig& cfg);

/// Initial state, forcing, and configured (unanchored) monitors.
struct ScenarioBuild {
    FlowState state;
    ForcingSpec forcing;
    MonitorSet monitors;
};

/// Construct the configured scenario:
///   taylor_green     psi = A sin(2 pi x) sin(pi y), the exact-solution case
///   pure_shear       ubar = cosine projection of a*y, no oscillation
///   free_decay       seeded random band-limited psi and mean profile
///   shear_stability  linear shear plus a seeded random perturbation scaled
///                    so the initial ||omega~||_2 equals epsilon exactly
///   forced_h2        smooth psi = A sin(2 pi x) sin(pi y) state plus the
///                    configured forcing (default: decaying-envelope cellular
///                    forcing with zero mean component)
///   custom           psi_modes and ubar taken verbatim from the config
ScenarioBuild build_scenario(const RunConfig& cfg);

/// Directory that run artifacts land in: output.run_dir (default
/// runs/<scenario>), resolved against $ANSE_RUN_DIR when that variable is
/// set and the configured path is relative.
std::string resolve_run_dir(const RunConfig& cfg);

/// Execute a run end to end: create the run directory, write the manifest,
/// stream diagnostics.csv and snapshots, update the manifest once at the
/// end. Returns the process exit code (0 / 2 / 3 / 4 as above).
int run_command(const RunConfig& cfg);

/// Run the configured audits (plus adversarial searches when
/// adversarial_iters > 0), write audit.csv and audit.txt into the run
/// directory, and append the plain-text table to *table_out when given.
/// Returns 0 when every report has zero violations, 2 otherwise, 4 on I/O
/// failure.
int audit_command(const RunConfig& cfg, std::string* table_out = nullptr);

/// Summarize a finished run from its artifacts alone (manifest.json +
/// diagnostics.csv; nothing is recomputed from states): termination status,
/// per-monitor pass/fail, minimum bound margins, fitted exponential decay
/// rates of energy and oscillation vorticity, and final norms. Throws
/// MissingArtifact when either artifact is absent.
std::string report_command(const std::string& run_dir);

/// Cartesian product of parameter overrides, one run per combination,
/// each in its own subdirectory of the base run_dir. Specs look like
/// "stepper.dt=1e-3,1e-4" (dotted key path, comma-separated JSON scalars).
/// Returns the maximum exit code over all runs.
int sweep_command(const std::string& config_path,
                  const std::vector<std::string>& param_specs);

/// Write a flow state as a little-endian binary snapshot:
///   bytes 0-3   magic "ANSE"
///   u32         format version (1)
///   u32, u32    nx, ny
///   f64         time
///   f64 pairs   psi re, im for k1 = 0..nx/2 (outer), k2 = 1..ny-1 (inner);
///               only the Hermitian half is stored
///   f64         ubar[k], k = 0..ny
void write_snapshot(const std::string& path, const FlowState& s);

/// Read a snapshot back (grid gets the default 2/3 dealias fraction; the
/// k1 < 0 rows are restored from the Hermitian invariant). Throws
/// MissingArtifact if the file cannot be opened, ParseError on a bad magic,
/// unsupported version, or truncation.
FlowState read_snapshot(const std::string& path);

/// Pinned diagnostics.csv column list:
///   t, energy, enstrophy, u_l2, ux_l2, uy_l2, v_l2, vx_l2, omega_l2,
///   grad_omega_l2, h2_norm, osc_vorticity_l2, mean_profile_l2,
///   energy_residual, enstrophy_residual, e1_margin, e2_margin, v2_margin,
///   v20_margin, twin_distance
/// The four *_margin columns are the velocity, dissipation, vorticity, and
/// vorticity-dissipation bound margins in that order; twin_distance is empty
/// except on twin runs.
std::string diagnostics_csv_header();

/// One CSV row for a record, shortest round-trip number formatting.
std::string diagnostics_csv_row(const DiagnosticsRecord& rec);

}  // namespace anse

#endif  // ANSE_HARNESS_HPP
