/// @file flow_state.cpp
/// @brief Stream-function/mean-profile state, velocity and vorticity maps,
/// and the one-pass Sobolev norm bundle.

#include "anse/flow_state.hpp"

namespace anse {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

void FlowState::clear_psi_mean_row() {
    for (int i2 = 0; i2 < psi.nk2(); ++i2) psi.at_index(0, i2) = {0.0, 0.0};
}

Spectrum u_oscillation(const FlowState& s) {
    const Grid& g = s.grid;
    Spectrum u(g, YBasis::CosineY);
    for (int i1 = 1; i1 < g.nx; ++i1) {
        const int k1 = g.k1_of_index(i1);
        for (int k2 = 1; k2 <= g.ny - 1; ++k2)
            u.coeff(k1, k2) = -kPi * k2 * s.psi.coeff(k1, k2);
    }
    return u;
}

VelocityPair velocity(const FlowState& s) {
    VelocityPair vel{u_oscillation(s), dx(s.psi)};
    for (int k2 = 0; k2 <= s.grid.ny; ++k2)
        vel.u.coeff(0, k2) = {s.ubar[k2], 0.0};
    return vel;
}

VorticityParts vorticity(const FlowState& s) {
    VorticityParts w{laplacian(s.psi),
                     std::vector<double>(static_cast<size_t>(s.grid.ny) - 1, 0.0)};
    for (int i2 = 0; i2 < w.osc.nk2(); ++i2) w.osc.at_index(0, i2) = {0.0, 0.0};
    for (int k = 1; k <= s.grid.ny - 1; ++k)
        w.mean_sine[k - 1] = kPi * k * s.ubar[k];
    return w;
}

FlowState from_velocity(const Spectrum& u, const Spectrum& v) {
    if (!(u.grid() == v.grid()))
        throw GridMismatch("from_velocity: components on different grids");
    if (u.basis() != YBasis::CosineY || v.basis() != YBasis::SineY)
        throw BasisMismatch("from_velocity: expects u in CosineY and v in SineY");

    const Grid& g = u.grid();
    FlowState s(g);
    for (int k2 = 0; k2 <= g.ny; ++k2) s.ubar[k2] = std::real(u.coeff(0, k2));

    for (int i1 = 1; i1 < g.nx; ++i1) {
        const int k1 = g.k1_of_index(i1);
        const double kx = (i1 == g.nx / 2) ? 0.0 : kTwoPi * k1;
        for (int k2 = 1; k2 <= g.ny - 1; ++k2) {
            const double ky = kPi * k2;
            // omega~ = v_x - u~_y = i*kx*v + ky*u; psi = omega~ / lambda.
            const std::complex<double> om =
                std::complex<double>(0.0, kx) * v.coeff(k1, k2) +
                ky * u.coeff(k1, k2);
            s.psi.coeff(k1, k2) = om / (-(kx * kx + ky * ky));
        }
    }
    return s;
}

MeanOscParts decompose_mean_osc(const Spectrum& s) {
    MeanOscParts parts{std::vector<double>(s.nk2()), s};
    for (int i2 = 0; i2 < s.nk2(); ++i2) {
        parts.bar[i2] = std::real(s.at_index(0, i2));
        parts.tilde.at_index(0, i2) = {0.0, 0.0};
    }
    return parts;
}

NormBundle sobolev_norms(const FlowState& s) {
    const Grid& g = s.grid;
    NormBundle n;

    for (int i1 = 1; i1 < g.nx; ++i1) {
        const int k1 = g.k1_of_index(i1);
        const double kx = (i1 == g.nx / 2) ? 0.0 : kTwoPi * k1;
        const double kx2 = kx * kx;
        for (int i2 = 0; i2 < s.psi.nk2(); ++i2) {
            const double ky = kPi * (i2 + 1);
            const double ky2 = ky * ky;
            const std::complex<double> c = s.psi.at_index(i1, i2);
            const double p = 0.5 * std::norm(c);
            if (p == 0.0) continue;
            const double lam = kx2 + ky2;

            n.osc_u2 += ky2 * p;            // u~   = -psi_y
            n.osc_ux2 += kx2 * ky2 * p;     // u~_x
            n.osc_uy2 += ky2 * ky2 * p;     // u~_y
            n.v2 += kx2 * p;                // v    = psi_x
            n.vx2 += kx2 * kx2 * p;         // v_x
            n.vy2 += kx2 * ky2 * p;         // v_y
            n.osc_uxx2 += kx2 * kx2 * ky2 * p;
            n.osc_uxy2 += kx2 * ky2 * ky2 * p;
            n.osc_uyy2 += ky2 * ky2 * ky2 * p;
            n.vxx2 += kx2 * kx2 * kx2 * p;
            n.vxy2 += kx2 * kx2 * ky2 * p;
            n.vyy2 += kx2 * ky2 * ky2 * p;
            n.osc_omega2 += lam * lam * p;  // omega~ = lambda * psi
            n.osc_omega_x2 += kx2 * lam * lam * p;
            n.osc_omega_y2 += ky2 * lam * lam * p;
        }
    }

    n.mean_u2 = s.ubar[0] * s.ubar[0];
    for (int k = 1; k <= g.ny; ++k)
        n.mean_u2 += 0.5 * s.ubar[k] * s.ubar[k];
    for (int k = 1; k <= g.ny - 1; ++k) {
        const double ky2 = kPi * k * kPi * k;
        n.mean_uy2 += 0.5 * ky2 * s.ubar[k] * s.ubar[k];
        n.mean_uyy2 += 0.5 * ky2 * ky2 * s.ubar[k] * s.ubar[k];
    }
    return n;
}

double ubar_mean(const FlowState& s) { return s.ubar[0]; }

double ubar_wall_difference(const FlowState& s) {
    double d = 0.0;
    for (int k = 1; k <= s.grid.ny; ++k)
        if (k % 2 == 1) d -= 2.0 * s.ubar[k];
    return d;
}

double ubar_dot_linear(const FlowState& s) {
    // <ubar, y> with y = 1/2 + sum_k (2((-1)^k - 1)/(pi k)^2) cos(pi k y):
    // the k1 = 0 inner product picks a0/2 + sum_k ubar[k] ((-1)^k - 1)/(pi k)^2.
    double r = 0.5 * s.ubar[0];
    for (int k = 1; k <= s.grid.ny; ++k)
        if (k % 2 == 1) r -= 2.0 * s.ubar[k] / (kPi * k * kPi * k);
    return r;
}

}  // namespace anse
