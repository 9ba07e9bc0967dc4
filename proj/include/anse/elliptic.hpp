/// @file elliptic.hpp
/// @brief Elliptic solvers: spectral Dirichlet Poisson inversion, pressure
/// recovery with Neumann wall conditions, and a per-mode finite-difference
/// solver for the auxiliary wall-anchored potential.
///
/// The auxiliary problem -laplacian(phi) = u_y with phi = 0 at the walls has
/// a right-hand side in the cosine family while the solution must vanish at
/// the walls, so no single y-basis fits both sides. It is therefore solved by
/// second-order centered finite differences in y, one tridiagonal system per
/// Fourier mode in x; the boundary condition then holds exactly and the
/// estimate checks absorb the O(ny_fd^-2) discretization error.

#pragma once

#include <array>
#include <complex>
#include <utility>
#include <vector>

#include "anse/flow_state.hpp"
#include "anse/ops.hpp"
#include "anse/spectrum.hpp"

namespace anse {

/// Solve -laplacian(phi) = rhs with phi = 0 at the walls, both in SineY.
/// Exact diagonal inversion: division by ((2 pi k1)^2 + (pi k2)^2), which is
/// strictly positive on every SineY mode (k2 >= 1). The x-frequency of the
/// k1 = nx/2 slot is its true value pi*nx.
Spectrum solve_dirichlet(const Spectrum& rhs);

/// Recover the pressure from -laplacian(p) = (u^2)_xx + (v^2)_yy + 2(uv)_xy
/// with p_y = 0 at the walls (automatic in CosineY). The right-hand side is
/// assembled with dealiased products; the (0,0) gauge coefficient is set to
/// zero, fixing the additive constant as zero total mean. The solvability
/// residual |rhs(0,0)| is written to *compat_residual when given; it is zero
/// by construction here (no product of derivatives can land on the constant
/// mode), and CompatibilityError guards the contract |rhs(0,0)| <=
/// 1e-10 * ||rhs||_2 defensively.
Spectrum solve_pressure(const VelocityPair& vel,
                        double* compat_residual = nullptr);

/// Solve (kappa2 - d_yy) phi = rhs on [0,1] with phi(0) = phi(1) = 0 by
/// second-order centered differences on a uniform grid. rhs holds node
/// values; entries 1 .. n-2 enter the tridiagonal system (walls carry no
/// equation). Returns phi at all nodes, walls exactly zero. The system is
/// positive definite for every kappa2 >= 0, so the Thomas sweep never
/// encounters a zero pivot. Throws ValidationError if rhs has fewer than
/// three nodes.
std::vector<std::complex<double>> solve_helmholtz_fd_row(
    double kappa2, const std::vector<std::complex<double>>& rhs);

/// Per-mode finite-difference solution of the auxiliary potential problem
/// ((2 pi k1)^2 - d_yy) phi_hat = u_y_hat, phi_hat(0) = phi_hat(1) = 0,
/// for k1 = 0 .. nx/2 (the Hermitian half; conjugates cover k1 < 0).
struct PhiSolution {
    Grid grid{4, 2};  ///< spectral grid of the input velocity
    int ny_fd = 0;    ///< number of uniform y intervals in the FD grid
    /// phi_hat per k1 = 0 .. nx/2, each ny_fd + 1 node values, walls zero.
    std::vector<std::vector<std::complex<double>>> rows;
    /// sampled right-hand side u_y_hat, same layout as rows.
    std::vector<std::vector<std::complex<double>>> rhs_rows;
    /// physical-space phi on the nx x (ny_fd + 1) grid, x-major.
    std::vector<double> physical;
};

/// Solve the auxiliary problem for every Fourier mode of u. The right-hand
/// side is the representable derivative dy(u) (SineY), sampled exactly on the
/// FD nodes by direct sine summation, so the FD solve and the spectral norms
/// describe the same field. Requires ny_fd >= 16 and ny_fd >= grid.ny; the
/// second condition makes the trapezoid quadrature on the FD grid exact for
/// products of the sampled sine modes, which the estimate checks rely on.
/// Throws ValidationError otherwise. Only u is read; v rides along so the
/// call site states the full flow (the estimates assume it divergence-free).
PhiSolution solve_phi_fd(const VelocityPair& vel, int ny_fd);

/// Discrete check of the three a priori estimates for the auxiliary
/// potential. All phi norms are finite-difference quadratures of the
/// PhiSolution rows; all u norms are spectral and exact.
struct PhiReport {
    /// (||phi_x||^2, ||phi_y||^2); their sum is compared against rhs_L2.
    std::pair<double, double> lhs_L2{0.0, 0.0};
    double rhs_L2 = 0.0;  ///< ||u||^2
    /// (||phi_xx||^2, ||phi_yy||^2, ||phi_xy||^2); the comparison sum counts
    /// the mixed term twice: xx + yy + 2*xy.
    std::array<double, 3> lhs_H2{0.0, 0.0, 0.0};
    double rhs_H2 = 0.0;  ///< ||u_y||^2
    /// (||phi_xxx||^2, ||phi_xxy||^2); their sum is compared against rhs_H3.
    std::pair<double, double> lhs_H3{0.0, 0.0};
    double rhs_H3 = 0.0;  ///< ||u_xy||^2
    /// Per estimate: lhs sum <= rhs * (1 + 10 * ny_fd^-2).
    bool satisfied_L2 = false, satisfied_H2 = false, satisfied_H3 = false;
};

/// Solve the auxiliary problem and evaluate the three estimates.
///
/// Quadrature choices (load-bearing; changing them breaks the guarantees):
///  - ||phi_y||^2 uses centered differences at interior nodes plus one-sided
///    wall slopes completing the trapezoid. On saturating k1 = 0 content the
///    continuum L2 estimate is an equality, and this quadrature of a discrete
///    sine mode is a factor (theta cot theta)^2 < 1 below its continuum
///    value, so the discrete check stays one-sided. Midpoint differences
///    would overshoot by (theta / sin theta)^2 > 1 and fail the tolerance.
///  - ||phi_yy||^2 uses the second-difference stencil at interior nodes plus
///    wall values phi_yy = -u_y_hat (from the equation and phi = 0); with
///    ||phi_xy||^2 from midpoint differences, the H2 sum telescopes to the
///    trapezoid energy of the sampled right-hand side, making the H2 identity
///    exact to rounding.
///  - ||phi_xxy||^2 uses midpoint differences, for which the H3 bound is a
///    discrete Cauchy-Schwarz consequence of the scheme, hence always
///    satisfied.
///  - x-derivative factors are the true wavenumbers, except the H3 pair uses
///    the dx convention (Nyquist slot differentiates to zero) so that lhs and
///    rhs drop the same unrepresentable content.
PhiReport verify_phi_estimates(const VelocityPair& vel, int ny_fd);

}  // namespace anse
