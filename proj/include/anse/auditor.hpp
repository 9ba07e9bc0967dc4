/// @file auditor.hpp
/// @brief Randomized and adversarial audits of the functional inequalities
///        that back the bound monitors: ratio estimators over trial fields,
///        violation counters, and empirical best-constant reports.

#ifndef ANSE_AUDITOR_HPP
#define ANSE_AUDITOR_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "anse/flow_state.hpp"
#include "anse/spectrum.hpp"

namespace anse {

/// Outcome of one inequality audit.
///
/// Each audit evaluates a scale-invariant ratio (left-hand side over
/// right-hand side of the inequality) on a sequence of trial fields and
/// reports the largest ratio seen. `violations` counts trials whose ratio
/// exceeded the inequality's allowed bound plus tolerance:
///
///   - `triple_product`: bound is existential (no universal value is
///     claimed), so only non-finite ratios count as violations.
///   - `linfty_l1`: allowed bound 1, tolerance 1e-3 (quadrature slack).
///   - `poincare_wall`: allowed bound 1, tolerance 1e-12.
///   - `poincare_mean`: allowed bound 1/(2*pi) (the sharp per-mode value,
///     attained at |k1| = 1), tolerance 1e-12.
///   - `transport_orthogonality`: allowed bound 0, tolerance 1e-10.
///
/// `fitted_constant` equals `max_ratio`: the audits estimate constants
/// empirically and never claim to compute a proof's constant.
///
/// Reproducing the maximizer: trial t draws its random fields from base
/// seed `seed + t`; when a trial needs several independent fields, the j-th
/// field uses seed `(seed + t) + j * 2^32`. `argmax_seed` is the base seed
/// of the maximizing trial. For `linfty_l1`, `poincare_wall`, and
/// `poincare_mean`, trial 0 is a deterministic sharpness witness (the
/// constant field, sin(pi*y), and cos(2*pi*x) respectively) rather than a
/// random field, so those audits attain their sharp constants exactly;
/// for `triple_product`, trial 0 is the constant triple f = g = h = 1 whose
/// ratio is exactly 1 under the audited formula. `argmax_seed == seed` then
/// identifies the witness.
struct AuditReport {
    std::string inequality_id;  ///< one of the five audited inequalities
    long long n_trials = 0;     ///< number of ratio evaluations performed
    int kmax = 0;               ///< trial-field band limit
    double max_ratio = 0.0;     ///< largest finite ratio observed
    std::uint64_t argmax_seed = 0;  ///< base seed of the maximizing trial
    long long violations = 0;   ///< ratios above the allowed bound + tol
    double fitted_constant = 0.0;   ///< empirical constant (== max_ratio)
};

/// Ratio of the integral of |f g h| to the anisotropic product bound
/// ||f|| sqrt(||g||) (sqrt(||g||) + sqrt(||g_x||)) sqrt(||h||)
/// (sqrt(||h||) + sqrt(||h_y||)), all norms L2. The numerator is a
/// trapezoid-in-y quadrature on a 4x-refined collocation grid; the
/// denominator is evaluated spectrally. Returns 0 when the denominator
/// vanishes (which forces the numerator to vanish as well).
double triple_product_ratio(const Spectrum& f, const Spectrum& g,
                            const Spectrum& h);

/// Ratio of sup|f| to ||f||_1 + ||f_x||_1 + ||f_y||_1 + ||f_xy||_1, with the
/// sup and the L1 norms sampled/integrated on a 4x-refined collocation grid.
/// Returns 0 for the zero field.
double sup_over_l1_ratio(const Spectrum& f);

/// Ratio ||v|| / ||v_y|| for a field vanishing at the walls (SineY basis
/// required; ValidationError otherwise). Per mode the value is 1/(pi*k2),
/// so the supremum over nonzero fields is 1/pi. Returns 0 for the zero
/// field.
double wall_poincare_ratio(const Spectrum& v);

/// Ratio ||g|| / ||g_x|| for a field with zero horizontal mean (the k1 = 0
/// column must be exactly zero; ValidationError otherwise). Per mode the
/// value is 1/(2*pi*|k1|), so the supremum is 1/(2*pi). Returns 0 for the
/// zero field.
double mean_poincare_ratio(const Spectrum& g);

/// Normalized transport pairing |((u . grad)w, w)| / (||u|| * ||w||_H1^2)
/// for the divergence-free velocity of `state` (v = 0 at the walls by
/// construction) against the scalar pair w = (w1, w2). The pairing is
/// evaluated with dealiased Galerkin products, so for band-limited fields it
/// equals the continuous integral, which vanishes identically; the returned
/// ratio measures rounding noise. Returns 0 when u or w vanishes.
double transport_pairing_ratio(const FlowState& state, const Spectrum& w1,
                               const Spectrum& w2);

/// Monte-Carlo audit of the triple-product inequality over n trials of
/// random CosineY triples (f, g, h) band-limited to kmax. Each field's
/// modal amplitudes decay like (1 + |k|)^(-alpha) with alpha drawn uniformly
/// from [0, 3] (slope seed: field seed + 0x9E3779B97F4A7C15), so the sweep
/// samples smooth and rough fields alike and the fitted constant does not
/// depend on the band limit. errors: ValidationError for n < 1 or kmax < 1.
AuditReport audit_triple_product(long long n, int kmax, std::uint64_t seed);

/// Monte-Carlo audit of the sup-norm versus L1 bound over n trials (trial 0
/// is the constant-field sharpness witness with ratio exactly 1). errors:
/// ValidationError for n < 1 or kmax < 1.
AuditReport audit_linfty_l1(long long n, int kmax, std::uint64_t seed);

/// Monte-Carlo audit of the wall Poincare inequality over n trials of
/// random SineY fields (trial 0 is the sin(pi*y) witness with ratio 1/pi).
/// errors: ValidationError for n < 1 or kmax < 1.
AuditReport audit_poincare_wall(long long n, int kmax, std::uint64_t seed);

/// Monte-Carlo audit of the zero-mean Poincare inequality over n trials of
/// random zero-x-mean fields (trial 0 is the cos(2*pi*x) witness with ratio
/// 1/(2*pi)). errors: ValidationError for n < 1 or kmax < 1.
AuditReport audit_poincare_mean(long long n, int kmax, std::uint64_t seed);

/// Monte-Carlo audit of transport orthogonality over n trials, each pairing
/// a random divergence-free velocity (random stream function plus random
/// mean profile) with a random scalar pair w. errors: ValidationError for
/// n < 1 or kmax < 1.
AuditReport audit_transport_orthogonality(long long n, int kmax,
                                          std::uint64_t seed);

/// Derivative-free maximization of an audit ratio: first replays the
/// Monte-Carlo audit's trials 0..iters-1 with the given seed (so the result
/// is never below the best random trial for the same seed budget), then runs
/// five hill-climbing restarts of `iters` coordinate perturbations each.
/// Restart 0 starts from the best replayed trial; restarts 1-4 start from
/// fresh random fields (base seeds seed + iters + r). The step size halves
/// after 20 consecutive non-improving perturbations. `n_trials` reports the
/// total number of ratio evaluations. errors: ValidationError for an
/// unknown inequality_id, iters < 1, or kmax < 1.
AuditReport adversarial_ratio_search(const std::string& inequality_id,
                                     int kmax, long long iters,
                                     std::uint64_t seed);

/// Render reports as an aligned plain-text table (header row plus one row
/// per report).
std::string format_audit_table(const std::vector<AuditReport>& reports);

/// Render reports as CSV with header
/// `inequality_id,n_trials,kmax,max_ratio,violations,fitted_constant,argmax_seed`
/// and shortest round-trip numeric formatting.
std::string format_audit_csv(const std::vector<AuditReport>& reports);

}  // namespace anse

#endif  // ANSE_AUDITOR_HPP
