/// @file ops.hpp
/// @brief Spectral-space operators on Spectrum fields.
///
/// Derivatives act mode-by-mode and are exact for stored modes:
///   d/dx : multiply by 2 pi i k1; the k1 = nx/2 row is zeroed because
///          i * (real Nyquist row) cannot remain Hermitian in this storage.
///   d/dy : flips the y-basis. sin(pi k2 y) -> +pi k2 cos(pi k2 y);
///          cos(pi k2 y) -> -pi k2 sin(pi k2 y). The cosine k2 = ny mode's
///          derivative falls outside the stored sine span and vanishes at
///          every collocation point, so it is dropped.
///
/// multiply_dealiased computes the pointwise product of two fields and
/// truncates it to the retained band (|k1| <= kx_cut, k2 <= ky_cut). Both
/// inputs are masked to the retained band first. The product is evaluated on
/// an enlarged grid (PX >= 3*kx_cut + 1 points in x, PY >= floor(3*ky_cut/2)+1
/// intervals in y) so that every aliased image of a product mode lands outside
/// the retained band; the result therefore equals the exact truncated
/// convolution of the masked inputs, i.e. the Galerkin product.

#ifndef ANSE_OPS_HPP
#define ANSE_OPS_HPP

#include "anse/spectrum.hpp"

#include <cstdint>

namespace anse {

/// Partial derivative in x (basis unchanged; Nyquist row zeroed).
Spectrum dx(const Spectrum& s);

/// Partial derivative in y (basis flips between CosineY and SineY).
Spectrum dy(const Spectrum& s);

/// Laplacian: each mode scaled by -((2 pi k1)^2 + (pi k2)^2).
Spectrum laplacian(const Spectrum& s);

/// Zero all modes outside the grid's retained band, in place.
void apply_dealias_mask(Spectrum& s);

/// Zero all modes with |k1| > kx_max or k2 > ky_max, in place.
void truncate_modes(Spectrum& s, int kx_max, int ky_max);

/// True if every mode outside the retained band is exactly zero.
bool in_retained_band(const Spectrum& s);

/// L2(Omega) inner product <a, b> (Plancherel sum; layouts must match).
double inner_l2(const Spectrum& a, const Spectrum& b);

/// L2(Omega) norm.
double norm_l2(const Spectrum& s);

/// a += c * b (layouts must match).
void add_scaled(Spectrum& a, double c, const Spectrum& b);

/// Smallest grid on which pointwise products of retained-band fields can be
/// analyzed without aliasing back into the retained band.
Grid product_grid(const Grid& g);

/// Copy the retained-band modes of s onto the (finer) grid pg.
Spectrum embed(const Spectrum& s, const Grid& pg);

/// Copy the modes of ps that lie inside g's retained band onto g.
Spectrum extract(const Spectrum& ps, const Grid& g);

/// Pointwise product truncated to the retained band (exact Galerkin product).
/// Output basis: CosineY*CosineY -> CosineY, SineY*SineY -> CosineY,
/// mixed -> SineY. Inputs must share a grid.
Spectrum multiply_dealiased(const Spectrum& a, const Spectrum& b);

/// Random real field with independent Gaussian mode amplitudes of standard
/// deviation `amplitude`, supported on |k1| <= kmax, k2 <= kmax intersected
/// with the retained band. Deterministic in `seed` and layout-stable across
/// platforms (explicit Box-Muller on mt19937_64 draws).
Spectrum random_band_limited(const Grid& grid, YBasis basis, int kmax,
                             double amplitude, uint64_t seed);

}  // namespace anse

#endif  // ANSE_OPS_HPP
