/// @file transforms.hpp
/// @brief Exact transforms between spectral coefficients and grid samples.
///
/// Physical-space sample layout is x-major: values[i * (ny+1) + j] = g(x_i, y_j)
/// with x_i = i/nx (i = 0..nx-1) and y_j = j/ny (j = 0..ny, walls included).
///
/// For band-limited data the two directions are exact inverses of each other
/// up to rounding: synthesis evaluates the stored modes at the collocation
/// points, and analysis recovers the stored modes from those samples.
///
/// SineY analysis requires the samples to vanish at the walls y = 0 and y = 1
/// (the sine basis cannot represent anything else); wall samples larger than
/// 1e-12 times the field's maximum magnitude raise WallValueError.

#ifndef ANSE_TRANSFORMS_HPP
#define ANSE_TRANSFORMS_HPP

#include "anse/spectrum.hpp"

#include <vector>

namespace anse {

/// Number of physical samples for a grid: nx * (ny + 1).
inline size_t physical_size(const Grid& g) {
    return static_cast<size_t>(g.nx) * (g.ny + 1);
}

/// Evaluate the spectrum at the collocation points. `out` must hold
/// physical_size(s.grid()) doubles.
void to_physical(const Spectrum& s, double* out);
std::vector<double> to_physical(const Spectrum& s);

/// Recover spectral coefficients from collocation samples. `values` must hold
/// physical_size(grid) doubles. The result is exactly Hermitian-symmetric.
void to_spectral(const Grid& grid, YBasis basis, const double* values,
                 Spectrum& out);
Spectrum to_spectral(const Grid& grid, YBasis basis,
                     const std::vector<double>& values);

}  // namespace anse

#endif  // ANSE_TRANSFORMS_HPP
