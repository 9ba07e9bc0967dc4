/// @file ops.cpp
/// @brief Mode-space operators, Plancherel reductions, and the exact
/// dealiased product via an enlarged evaluation grid.

#include "anse/ops.hpp"

#include "anse/kernels.hpp"
#include "anse/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

namespace anse {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

/// Plancherel weight for every stored coefficient, flattened to match the
/// coefficient array.
std::vector<double> plancherel_weights(const Spectrum& s) {
    const int nx = s.grid().nx, nk2 = s.nk2();
    std::vector<double> w(s.size());
    for (int i1 = 0; i1 < nx; ++i1)
        for (int i2 = 0; i2 < nk2; ++i2)
            w[static_cast<size_t>(i1) * nk2 + i2] = s.mode_weight(i2);
    return w;
}

int even_at_least(int m) { return m % 2 == 0 ? m : m + 1; }

}  // namespace

Spectrum dx(const Spectrum& s) {
    const Grid& g = s.grid();
    Spectrum out = s;
    const int nk2 = s.nk2();
    std::vector<double> f(s.size());
    for (int i1 = 0; i1 < g.nx; ++i1) {
        const int k1 = g.k1_of_index(i1);
        const double fk = (i1 == g.nx / 2) ? 0.0 : kTwoPi * k1;
        std::fill_n(f.begin() + static_cast<size_t>(i1) * nk2, nk2, fk);
    }
    kernels::active().cmul_ifactors(out.data(), f.data(), out.size());
    return out;
}

Spectrum dy(const Spectrum& s) {
    const Grid& g = s.grid();
    if (s.basis() == YBasis::SineY) {
        // sin(pi k y) -> pi k cos(pi k y); cosine rows k2 = 0 and ny stay zero.
        Spectrum out(g, YBasis::CosineY);
        for (int i1 = 0; i1 < g.nx; ++i1)
            for (int k2 = 1; k2 <= g.ny - 1; ++k2)
                out.coeff(g.k1_of_index(i1), k2) =
                    kPi * k2 * s.at_index(i1, k2 - 1);
        return out;
    }
    // cos(pi k y) -> -pi k sin(pi k y); k2 = 0 has no derivative and the
    // k2 = ny image is outside the sine span (and vanishes on the grid).
    Spectrum out(g, YBasis::SineY);
    for (int i1 = 0; i1 < g.nx; ++i1)
        for (int k2 = 1; k2 <= g.ny - 1; ++k2)
            out.coeff(g.k1_of_index(i1), k2) = -kPi * k2 * s.at_index(i1, k2);
    return out;
}

Spectrum laplacian(const Spectrum& s) {
    const Grid& g = s.grid();
    Spectrum out = s;
    const int nk2 = s.nk2(), k2min = s.k2_min();
    std::vector<double> f(s.size());
    for (int i1 = 0; i1 < g.nx; ++i1) {
        const double kx = kTwoPi * g.k1_of_index(i1);
        for (int i2 = 0; i2 < nk2; ++i2) {
            const double ky = kPi * (i2 + k2min);
            f[static_cast<size_t>(i1) * nk2 + i2] = -(kx * kx + ky * ky);
        }
    }
    kernels::active().cmul_factors(out.data(), f.data(), out.size());
    return out;
}

void truncate_modes(Spectrum& s, int kx_max, int ky_max) {
    const Grid& g = s.grid();
    const int nk2 = s.nk2(), k2min = s.k2_min();
    for (int i1 = 0; i1 < g.nx; ++i1) {
        const bool kill_row = std::abs(g.k1_of_index(i1)) > kx_max;
        for (int i2 = 0; i2 < nk2; ++i2)
            if (kill_row || i2 + k2min > ky_max) s.at_index(i1, i2) = {0.0, 0.0};
    }
}

void apply_dealias_mask(Spectrum& s) {
    truncate_modes(s, s.grid().kx_cut(), s.grid().ky_cut());
}

bool in_retained_band(const Spectrum& s) {
    const Grid& g = s.grid();
    const int nk2 = s.nk2(), k2min = s.k2_min();
    for (int i1 = 0; i1 < g.nx; ++i1) {
        const bool out_row = std::abs(g.k1_of_index(i1)) > g.kx_cut();
        for (int i2 = 0; i2 < nk2; ++i2)
            if ((out_row || i2 + k2min > g.ky_cut()) &&
                s.at_index(i1, i2) != std::complex<double>{0.0, 0.0})
                return false;
    }
    return true;
}

double inner_l2(const Spectrum& a, const Spectrum& b) {
    require_same_layout(a, b, "inner_l2");
    std::vector<double> w = plancherel_weights(a);
    return kernels::active().weighted_dot_re(a.data(), b.data(), w.data(),
                                             a.size());
}

double norm_l2(const Spectrum& s) {
    std::vector<double> w = plancherel_weights(s);
    return std::sqrt(std::max(
        0.0, kernels::active().weighted_abs2_sum(s.data(), w.data(), s.size())));
}

void add_scaled(Spectrum& a, double c, const Spectrum& b) {
    require_same_layout(a, b, "add_scaled");
    kernels::active().axpy(reinterpret_cast<double*>(a.data()), c,
                           reinterpret_cast<const double*>(b.data()),
                           2 * a.size());
}

Grid product_grid(const Grid& g) {
    const int px = std::max(g.nx, even_at_least(3 * g.kx_cut() + 1));
    const int py = std::max(g.ny, 3 * g.ky_cut() / 2 + 1);
    return Grid(px, py, 1, 1);
}

Spectrum embed(const Spectrum& s, const Grid& pg) {
    const Grid& g = s.grid();
    Spectrum out(pg, s.basis());
    const int kxc = std::min(g.kx_cut(), g.nx / 2 - 1);
    const int kyc = std::min(g.ky_cut(), s.k2_max());
    for (int k1 = -kxc; k1 <= kxc; ++k1)
        for (int k2 = s.k2_min(); k2 <= kyc; ++k2)
            out.coeff(k1, k2) = s.coeff(k1, k2);
    // A retained Nyquist row (dealias fraction 1) stores the real coefficient
    // of cos(pi*nx*x)*B(y); on the larger grid that splits evenly across the
    // now-distinct +nx/2 and -nx/2 modes.
    if (g.kx_cut() == g.nx / 2 && pg.nx > g.nx)
        for (int k2 = s.k2_min(); k2 <= kyc; ++k2) {
            const std::complex<double> half = 0.5 * s.coeff(g.nx / 2, k2);
            out.coeff(g.nx / 2, k2) = half;
            out.coeff(-g.nx / 2, k2) = std::conj(half);
        }
    return out;
}

Spectrum extract(const Spectrum& ps, const Grid& g) {
    Spectrum out(g, ps.basis());
    const int kxc = std::min(g.kx_cut(), g.nx / 2 - 1);
    const int kyc = std::min(g.ky_cut(), out.k2_max());
    for (int k1 = -kxc; k1 <= kxc; ++k1)
        for (int k2 = out.k2_min(); k2 <= kyc; ++k2)
            out.coeff(k1, k2) = ps.coeff(k1, k2);
    // Projection onto a retained Nyquist row folds the +-nx/2 modes of the
    // larger grid into the single real slot.
    if (g.kx_cut() == g.nx / 2 && ps.grid().nx > g.nx)
        for (int k2 = out.k2_min(); k2 <= kyc; ++k2)
            out.coeff(g.nx / 2, k2) = {2.0 * std::real(ps.coeff(g.nx / 2, k2)),
                                       0.0};
    return out;
}

Spectrum multiply_dealiased(const Spectrum& a, const Spectrum& b) {
    if (!(a.grid() == b.grid()))
        throw GridMismatch("multiply_dealiased: operands on different grids");
    const Grid& g = a.grid();
    const YBasis ob =
        a.basis() == b.basis() ? YBasis::CosineY : YBasis::SineY;

    Spectrum am = a, bm = b;
    apply_dealias_mask(am);
    apply_dealias_mask(bm);

    const Grid pg = product_grid(g);
    std::vector<double> pa = to_physical(embed(am, pg));
    std::vector<double> pb = to_physical(embed(bm, pg));
    std::vector<double> prod(pa.size());
    kernels::active().mul(prod.data(), pa.data(), pb.data(), prod.size());

    Spectrum pout = to_spectral(pg, ob, prod);
    Spectrum out = extract(pout, g);
    apply_dealias_mask(out);
    return out;
}

Spectrum random_band_limited(const Grid& grid, YBasis basis, int kmax,
                             double amplitude, uint64_t seed) {
    Spectrum out(grid, basis);
    std::mt19937_64 rng(seed);
    // Explicit Box-Muller: normal_distribution's draw sequence is
    // implementation-defined, and run artifacts must be reproducible
    // bit-for-bit across standard libraries.
    auto uniform01 = [&rng]() {
        return static_cast<double>(rng() >> 11) * 0x1.0p-53;
    };
    auto normal_pair = [&](double& z0, double& z1) {
        const double u1 = 1.0 - uniform01();  // (0, 1]: log stays finite
        const double u2 = uniform01();
        const double r = std::sqrt(-2.0 * std::log(u1));
        z0 = r * std::cos(kTwoPi * u2);
        z1 = r * std::sin(kTwoPi * u2);
    };

    const int kx_hi = std::min({kmax, grid.kx_cut(), grid.nx / 2 - 1});
    const int ky_hi = std::min({kmax, grid.ky_cut(), out.k2_max()});
    for (int k1 = 0; k1 <= kx_hi; ++k1)
        for (int k2 = out.k2_min(); k2 <= ky_hi; ++k2) {
            double z0, z1;
            normal_pair(z0, z1);
            if (k1 == 0) {
                out.coeff(0, k2) = {amplitude * z0, 0.0};
            } else {
                out.coeff(k1, k2) = {amplitude * z0, amplitude * z1};
                out.coeff(-k1, k2) = std::conj(out.coeff(k1, k2));
            }
        }
    return out;
}

}  // namespace anse
