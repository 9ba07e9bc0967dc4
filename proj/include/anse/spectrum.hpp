/// @file spectrum.hpp
/// @brief Spectral coefficient container: Fourier in x, cosine or sine in y.
///
/// A Spectrum holds the complex coefficients c(k1, k2) of a real scalar field
///
///   g(x, y) = sum_{k1} sum_{k2} c(k1, k2) e^{2 pi i k1 x} * B_{k2}(y),
///
/// where B_{k2}(y) is cos(pi k2 y) for basis CosineY (k2 = 0..ny) or
/// sin(pi k2 y) for basis SineY (k2 = 1..ny-1). All k1 rows are stored,
/// including the redundant negative half; realness of g is the Hermitian
/// invariant c(-k1, k2) = conj(c(k1, k2)), which every operation here
/// preserves (the k1 = 0 and k1 = nx/2 rows are real).
///
/// Storage is row-major with k1 outermost in FFT index order
/// (i1 = 0..nx-1 maps to k1 = i1 for i1 <= nx/2, else i1 - nx) and k2
/// innermost: coeffs[i1 * nk2() + i2], where i2 = k2 (CosineY) or k2 - 1
/// (SineY).
///
/// The L2(Omega) norm over Omega = [0,1) x [0,1] satisfies the exact
/// Plancherel identity
///
///   ||g||_2^2 = sum_{stored (k1,k2)} w(k2) |c(k1,k2)|^2,
///
/// with y-basis weight w(0) = 1 (CosineY only) and w(k2 >= 1) = 1/2. The sum
/// runs over all stored k1 rows, so the Hermitian pair economy is already
/// accounted for.

#ifndef ANSE_SPECTRUM_HPP
#define ANSE_SPECTRUM_HPP

#include "anse/errors.hpp"
#include "anse/grid.hpp"

#include <complex>
#include <vector>

namespace anse {

enum class YBasis { CosineY, SineY };

inline const char* name_of(YBasis b) {
    return b == YBasis::CosineY ? "CosineY" : "SineY";
}

class Spectrum {
  public:
    Spectrum() = default;
    Spectrum(const Grid& grid, YBasis basis)
        : grid_(grid), basis_(basis),
          coeffs_(static_cast<size_t>(grid.nx) * nk2(), {0.0, 0.0}) {}

    const Grid& grid() const { return grid_; }
    YBasis basis() const { return basis_; }

    /// Number of stored y-modes: ny+1 for CosineY, ny-1 for SineY.
    int nk2() const {
        return basis_ == YBasis::CosineY ? grid_.ny + 1 : grid_.ny - 1;
    }
    /// Smallest stored k2 (0 for CosineY, 1 for SineY).
    int k2_min() const { return basis_ == YBasis::CosineY ? 0 : 1; }
    /// Largest stored k2 (ny for CosineY, ny-1 for SineY).
    int k2_max() const { return basis_ == YBasis::CosineY ? grid_.ny : grid_.ny - 1; }

    size_t size() const { return coeffs_.size(); }
    std::complex<double>* data() { return coeffs_.data(); }
    const std::complex<double>* data() const { return coeffs_.data(); }

    /// Access by array index i1 in [0, nx) and stored-mode index i2 in [0, nk2()).
    std::complex<double>& at_index(int i1, int i2) {
        return coeffs_[static_cast<size_t>(i1) * nk2() + i2];
    }
    const std::complex<double>& at_index(int i1, int i2) const {
        return coeffs_[static_cast<size_t>(i1) * nk2() + i2];
    }

    /// Access by signed wavenumber k1 and y-mode number k2.
    std::complex<double>& coeff(int k1, int k2) {
        return at_index(grid_.index_of_k1(k1), k2 - k2_min());
    }
    const std::complex<double>& coeff(int k1, int k2) const {
        return at_index(grid_.index_of_k1(k1), k2 - k2_min());
    }

    /// Plancherel weight of the y-mode stored at index i2.
    double mode_weight(int i2) const {
        return (basis_ == YBasis::CosineY && i2 == 0) ? 1.0 : 0.5;
    }

    void fill_zero() { coeffs_.assign(coeffs_.size(), {0.0, 0.0}); }

    bool same_layout(const Spectrum& o) const {
        return grid_ == o.grid_ && basis_ == o.basis_;
    }

  private:
    Grid grid_{4, 2};
    YBasis basis_ = YBasis::CosineY;
    std::vector<std::complex<double>> coeffs_;
};

/// Throw GridMismatch / BasisMismatch unless a and b share grid and basis.
inline void require_same_layout(const Spectrum& a, const Spectrum& b,
                                const char* where) {
    if (!(a.grid() == b.grid()))
        throw GridMismatch(std::string(where) + ": operands on different grids");
    if (a.basis() != b.basis())
        throw BasisMismatch(std::string(where) + ": operands in different y-bases");
}

}  // namespace anse

#endif  // ANSE_SPECTRUM_HPP
