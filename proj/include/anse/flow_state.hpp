/// @file flow_state.hpp
/// @brief Divergence-free channel flow state and its derived fields.
///
/// The velocity field splits into an x-mean shear profile and an oscillation
/// part with zero x-mean:
///
///   u(x,y) = ubar(y) + u~(x,y),   v(x,y) = v~(x,y),
///
/// where the oscillation is generated by a stream function psi (SineY basis,
/// no k1 = 0 content): u~ = -psi_y, v~ = psi_x. This parameterization is
/// exactly divergence-free and satisfies v = 0 at both walls identically.
/// The mean profile is stored as cosine coefficients ubar[k], k = 0..ny, so
/// its even extension needs no boundary bookkeeping; it carries no dissipation
/// (viscosity acts only on x-variation) and evolves only through the eddy
/// flux, so it is kept at full resolution.
///
/// Vorticity omega = v_x - u_y likewise splits: the oscillation part is
/// laplacian(psi) (SineY), the mean part is -ubar_y, a pure sine profile with
/// coefficients pi*k*ubar[k], k = 1..ny-1. (The k = ny term falls outside the
/// sine span and vanishes at every node, matching dy().)
///
/// Mean-profile derivative norms are computed within the representable sine
/// span (k <= ny-1). Dealias-masked states have ubar[ny] = 0, so for every
/// evolved state these agree with the analytic values, and the discrete
/// identities ||omega|| = ||grad u|| and ||omega_x|| = ||grad u_x|| hold to
/// rounding for arbitrary states.

#ifndef ANSE_FLOW_STATE_HPP
#define ANSE_FLOW_STATE_HPP

#include "anse/ops.hpp"
#include "anse/spectrum.hpp"

#include <cmath>
#include <vector>

namespace anse {

struct FlowState {
    Grid grid{4, 2};
    Spectrum psi;               ///< stream function, SineY, k1 = 0 row zero
    std::vector<double> ubar;   ///< mean-profile cosine coefficients, k = 0..ny
    double time = 0.0;

    FlowState() = default;
    explicit FlowState(const Grid& g)
        : grid(g), psi(g, YBasis::SineY), ubar(g.ny + 1, 0.0) {}

    /// Zero the k1 = 0 row of psi (the mean lives in ubar, never in psi).
    void clear_psi_mean_row();
};

/// u in CosineY (mean profile embedded in the k1 = 0 row), v in SineY.
struct VelocityPair {
    Spectrum u, v;
};

/// u = ubar - psi_y, v = psi_x. Divergence-free by construction.
VelocityPair velocity(const FlowState& s);

/// Oscillation part of u alone: -psi_y (CosineY, k1 = 0 row zero).
Spectrum u_oscillation(const FlowState& s);

/// omega = v_x - u_y: oscillation part laplacian(psi), mean part -ubar_y as a
/// sine profile.
struct VorticityParts {
    Spectrum osc;                   ///< SineY, k1 = 0 row zero
    std::vector<double> mean_sine;  ///< b[k-1] = pi*k*ubar[k], k = 1..ny-1
};
VorticityParts vorticity(const FlowState& s);

/// Least-squares reconstruction from velocity components (u CosineY,
/// v SineY): psi = omega~ / lambda mode by mode, ubar from the k1 = 0 row of
/// u. Divergence-free input round-trips exactly; anything else lands on the
/// closest stream-function flow (this defines the projection). Nyquist-row
/// content is discarded along with dx.
FlowState from_velocity(const Spectrum& u, const Spectrum& v);

/// Split a field into its x-mean profile (the real k1 = 0 row) and the
/// zero-x-mean remainder. bar[i2] + tilde reconstructs the input exactly.
struct MeanOscParts {
    std::vector<double> bar;  ///< length nk2 of the input basis
    Spectrum tilde;
};
MeanOscParts decompose_mean_osc(const Spectrum& s);

/// Time-dependence multiplier for forcing.
enum class EnvelopeType { Constant, ExponentialDecay, RampOff };
struct Envelope {
    EnvelopeType type = EnvelopeType::Constant;
    double rate = 0.0;   ///< exponential-decay: exp(-rate * t)
    double t_off = 0.0;  ///< ramp-off: max(0, 1 - t / t_off)

    double operator()(double t) const {
        switch (type) {
            case EnvelopeType::ExponentialDecay: return std::exp(-rate * t);
            case EnvelopeType::RampOff:
                return t_off > 0.0 ? std::max(0.0, 1.0 - t / t_off) : 0.0;
            default: return 1.0;
        }
    }

    /// Integral of the envelope over [0, t], in closed form. Exact, so the
    /// cumulative forcing budgets carry no quadrature error.
    double integral(double t) const {
        if (t <= 0.0) return 0.0;
        switch (type) {
            case EnvelopeType::ExponentialDecay:
                return rate > 0.0 ? (1.0 - std::exp(-rate * t)) / rate : t;
            case EnvelopeType::RampOff: {
                if (t_off <= 0.0) return 0.0;
                const double s = std::min(t, t_off);
                return s - 0.5 * s * s / t_off;
            }
            default: return t;
        }
    }

    /// Integral of the squared envelope over [0, t], in closed form.
    double integral_sq(double t) const {
        if (t <= 0.0) return 0.0;
        switch (type) {
            case EnvelopeType::ExponentialDecay:
                return rate > 0.0 ? (1.0 - std::exp(-2.0 * rate * t)) / (2.0 * rate)
                                  : t;
            case EnvelopeType::RampOff: {
                if (t_off <= 0.0) return 0.0;
                const double r = std::max(0.0, 1.0 - std::min(t, t_off) / t_off);
                return (t_off / 3.0) * (1.0 - r * r * r);
            }
            default: return t;
        }
    }
};

/// Forcing given through a force stream function plus a mean x-component, so
/// the standing assumptions (divergence-free, f2 = 0 at walls) hold by
/// construction: (f1, f2) = envelope(t) * (fbar1 - psi_f_y, psi_f_x).
struct ForcingSpec {
    Spectrum psi_f;              ///< SineY, k1 = 0 row zero
    std::vector<double> fbar1;   ///< CosineY coefficients, k = 0..ny
    Envelope envelope;

    ForcingSpec() = default;
    explicit ForcingSpec(const Grid& g)
        : psi_f(g, YBasis::SineY), fbar1(g.ny + 1, 0.0) {}
};

/// All the squared L2 norms the diagnostics need, computed in one pass over
/// the psi modes and the mean profile. Fields named osc_* cover the k1 != 0
/// oscillation; mean_* cover the ubar profile; accessors assemble full-field
/// values (the background shear correction, when present, is applied by the
/// diagnostics layer, which knows the slope).
struct NormBundle {
    double osc_u2 = 0, osc_ux2 = 0, osc_uy2 = 0;
    double v2 = 0, vx2 = 0, vy2 = 0;
    double osc_uxx2 = 0, osc_uxy2 = 0, osc_uyy2 = 0;
    double vxx2 = 0, vxy2 = 0, vyy2 = 0;
    double osc_omega2 = 0, osc_omega_x2 = 0, osc_omega_y2 = 0;
    double mean_u2 = 0, mean_uy2 = 0, mean_uyy2 = 0;

    double u2() const { return osc_u2 + mean_u2; }
    double ux2() const { return osc_ux2; }
    double uy2() const { return osc_uy2 + mean_uy2; }
    double omega2() const { return osc_omega2 + mean_uy2; }
    double omega_x2() const { return osc_omega_x2; }
    double omega_y2() const { return osc_omega_y2 + mean_uyy2; }
    double grad_omega2() const { return omega_x2() + omega_y2(); }
    double energy() const { return 0.5 * (u2() + v2); }
    /// Squared H2 norm of the velocity vector field (both components; L2,
    /// both first derivatives, and each second derivative once).
    double h2_sq() const {
        return u2() + ux2() + uy2() + osc_uxx2 + osc_uxy2 + osc_uyy2 +
               mean_uyy2 + v2 + vx2 + vy2 + vxx2 + vxy2 + vyy2;
    }

    double u_l2() const { return std::sqrt(u2()); }
    double ux_l2() const { return std::sqrt(ux2()); }
    double uy_l2() const { return std::sqrt(uy2()); }
    double v_l2() const { return std::sqrt(v2); }
    double vx_l2() const { return std::sqrt(vx2); }
    double omega_l2() const { return std::sqrt(omega2()); }
    double grad_omega_l2() const { return std::sqrt(grad_omega2()); }
    double h2_norm() const { return std::sqrt(h2_sq()); }
};

NormBundle sobolev_norms(const FlowState& s);

/// Mean value of the profile: integral of ubar over [0,1] (= ubar[0]).
double ubar_mean(const FlowState& s);

/// ubar(1) - ubar(0) = sum_k ubar[k] ((-1)^k - 1).
double ubar_wall_difference(const FlowState& s);

/// L2 inner product of the profile with the linear function y (closed form
/// from the cosine series of y: <cos(pi k y), y> = ((-1)^k - 1)/(pi k)^2).
double ubar_dot_linear(const FlowState& s);

}  // namespace anse

#endif  // ANSE_FLOW_STATE_HPP
