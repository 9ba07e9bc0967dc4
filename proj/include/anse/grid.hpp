/// @file grid.hpp
/// @brief Collocation grid for the horizontally periodic channel [0,1) x [0,1].
///
/// x is periodic with period 1 and nx uniformly spaced points x_i = i/nx.
/// y spans the closed interval [0,1] with ny+1 points y_j = j/ny, walls
/// included. Spectral content in x lives on integer wavenumbers
/// k1 in {-nx/2+1, ..., nx/2}; in y on cos(pi k2 y), k2 = 0..ny (CosineY) or
/// sin(pi k2 y), k2 = 1..ny-1 (SineY).
///
/// The dealias fraction is stored as an exact rational so the retained-band
/// cutoffs are integer arithmetic: floating point would misround thresholds
/// like (2/3)*6 that must compare as exact equality.

#ifndef ANSE_GRID_HPP
#define ANSE_GRID_HPP

#include "anse/errors.hpp"

#include <string>

namespace anse {

struct Grid {
    int nx = 0;           ///< periodic points in x (even, >= 4)
    int ny = 0;           ///< y intervals (>= 2); y has ny+1 points
    int dealias_num = 2;  ///< dealias fraction numerator
    int dealias_den = 3;  ///< dealias fraction denominator

    Grid() = default;
    Grid(int nx_, int ny_, int num = 2, int den = 3)
        : nx(nx_), ny(ny_), dealias_num(num), dealias_den(den) {
        if (nx < 4 || nx % 2 != 0)
            throw ValidationError("grid: nx must be even and >= 4, got " +
                                  std::to_string(nx));
        if (ny < 2)
            throw ValidationError("grid: ny must be >= 2, got " + std::to_string(ny));
        if (num <= 0 || den <= 0 || num > den)
            throw ValidationError("grid: dealias fraction must lie in (0,1]");
    }

    double x(int i) const { return static_cast<double>(i) / nx; }
    double y(int j) const { return static_cast<double>(j) / ny; }
    double dx() const { return 1.0 / nx; }
    double dy() const { return 1.0 / ny; }

    /// Signed wavenumber for x-array index i1 in [0, nx): 0..nx/2, then negatives.
    int k1_of_index(int i1) const { return i1 <= nx / 2 ? i1 : i1 - nx; }
    /// Array index for signed wavenumber k1 in {-nx/2+1, ..., nx/2}.
    int index_of_k1(int k1) const { return k1 >= 0 ? k1 : k1 + nx; }

    /// Largest |k1| kept by the dealias mask (modes strictly above are zeroed).
    int kx_cut() const { return dealias_num * (nx / 2) / dealias_den; }
    /// Largest k2 kept by the dealias mask.
    int ky_cut() const { return dealias_num * ny / dealias_den; }

    bool operator==(const Grid& o) const {
        return nx == o.nx && ny == o.ny && dealias_num == o.dealias_num &&
               dealias_den == o.dealias_den;
    }
    bool operator!=(const Grid& o) const { return !(*this == o); }
};

}  // namespace anse

#endif  // ANSE_GRID_HPP
