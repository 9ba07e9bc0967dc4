/// @file transforms.cpp
/// @brief FFTW-backed synthesis/analysis with a process-wide plan cache.
///
/// x direction: complex-to-complex FFTs batched over the stored y-modes
/// (stride nk2, dist 1). y direction: real even/odd transforms (REDFT00 /
/// RODFT00) batched over x-columns (stride 1, dist = row length). Plans are
/// created with FFTW_ESTIMATE, own their work buffers, and are cached by
/// (kind, length, batch count) behind a mutex; data is copied in and out, so
/// caller memory never needs FFTW alignment.
///
/// Scalings (FFTW transforms are unnormalized):
///   cosine synthesis  X_0 = a_0, X_k = a_k / 2 (0 < k < ny), X_ny = a_ny
///   cosine analysis   a_0 = Z_0 / (2 ny), a_k = Z_k / ny, a_ny = Z_ny / (2 ny)
///   sine synthesis    X_{k-1} = b_k / 2
///   sine analysis     b_k = Z_{k-1} / ny
/// followed (analysis) by a forward x-FFT scaled by 1/nx and an explicit
/// Hermitian symmetrization so realness is exact, not just rounding-level.

#include "anse/transforms.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstring>
#include <map>
#include <mutex>
#include <tuple>

namespace anse {

namespace {

enum class PlanKind { ForwardX, BackwardX, EvenY, OddY };

struct PlanEntry {
    fftw_plan plan = nullptr;
    double* rbuf = nullptr;         // r2r transforms (EvenY / OddY)
    fftw_complex* cbuf = nullptr;   // c2c transforms (ForwardX / BackwardX)
    size_t len = 0;

    ~PlanEntry() {
        if (plan) fftw_destroy_plan(plan);
        if (rbuf) fftw_free(rbuf);
        if (cbuf) fftw_free(cbuf);
    }
};

using PlanKey = std::tuple<PlanKind, int, int>;  // (kind, n, howmany)

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::map<PlanKey, PlanEntry>& plan_cache() {
    static std::map<PlanKey, PlanEntry> cache;
    return cache;
}

/// x-direction c2c plan: length n, batched over `howmany` interleaved y-modes.
PlanEntry& complex_plan(PlanKind kind, int n, int howmany) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto& cache = plan_cache();
    auto it = cache.find({kind, n, howmany});
    if (it != cache.end()) return it->second;

    PlanEntry& e = cache[{kind, n, howmany}];
    e.len = static_cast<size_t>(n) * howmany;
    e.cbuf = fftw_alloc_complex(e.len);
    int dims[1] = {n};
    int sign = kind == PlanKind::ForwardX ? FFTW_FORWARD : FFTW_BACKWARD;
    e.plan = fftw_plan_many_dft(1, dims, howmany, e.cbuf, nullptr, howmany, 1,
                                e.cbuf, nullptr, howmany, 1, sign, FFTW_ESTIMATE);
    return e;
}

/// y-direction r2r plan: rows of length n, batched over `howmany` x-columns.
PlanEntry& real_plan(PlanKind kind, int n, int howmany) {
    std::lock_guard<std::mutex> lock(plan_mutex());
    auto& cache = plan_cache();
    auto it = cache.find({kind, n, howmany});
    if (it != cache.end()) return it->second;

    PlanEntry& e = cache[{kind, n, howmany}];
    e.len = static_cast<size_t>(n) * howmany;
    e.rbuf = fftw_alloc_real(e.len);
    int dims[1] = {n};
    fftw_r2r_kind kinds[1] = {kind == PlanKind::EvenY ? FFTW_REDFT00
                                                      : FFTW_RODFT00};
    e.plan = fftw_plan_many_r2r(1, dims, howmany, e.rbuf, nullptr, 1, n, e.rbuf,
                                nullptr, 1, n, kinds, FFTW_ESTIMATE);
    return e;
}

}  // namespace

void to_physical(const Spectrum& s, double* out) {
    const Grid& g = s.grid();
    const int nx = g.nx, ny = g.ny, nk2 = s.nk2();
    const int npts = ny + 1;

    // x synthesis: backward FFT of all y-mode columns at once.
    PlanEntry& cp = complex_plan(PlanKind::BackwardX, nx, nk2);
    std::memcpy(cp.cbuf, s.data(), cp.len * sizeof(fftw_complex));
    fftw_execute(cp.plan);

    // y synthesis: real part of each x-row, rescaled for the r2r conventions.
    if (s.basis() == YBasis::CosineY) {
        PlanEntry& rp = real_plan(PlanKind::EvenY, npts, nx);
        for (int i1 = 0; i1 < nx; ++i1) {
            double* row = rp.rbuf + static_cast<size_t>(i1) * npts;
            const fftw_complex* src = cp.cbuf + static_cast<size_t>(i1) * nk2;
            row[0] = src[0][0];
            for (int k = 1; k < ny; ++k) row[k] = 0.5 * src[k][0];
            row[ny] = src[ny][0];
        }
        fftw_execute(rp.plan);
        std::memcpy(out, rp.rbuf, rp.len * sizeof(double));
    } else {
        const int nint = ny - 1;
        PlanEntry& rp = real_plan(PlanKind::OddY, nint, nx);
        for (int i1 = 0; i1 < nx; ++i1) {
            double* row = rp.rbuf + static_cast<size_t>(i1) * nint;
            const fftw_complex* src = cp.cbuf + static_cast<size_t>(i1) * nk2;
            for (int k = 0; k < nint; ++k) row[k] = 0.5 * src[k][0];
        }
        fftw_execute(rp.plan);
        for (int i1 = 0; i1 < nx; ++i1) {
            double* dst = out + static_cast<size_t>(i1) * npts;
            const double* row = rp.rbuf + static_cast<size_t>(i1) * nint;
            dst[0] = 0.0;
            std::memcpy(dst + 1, row, nint * sizeof(double));
            dst[ny] = 0.0;
        }
    }
}

std::vector<double> to_physical(const Spectrum& s) {
    std::vector<double> out(physical_size(s.grid()));
    to_physical(s, out.data());
    return out;
}

void to_spectral(const Grid& grid, YBasis basis, const double* values,
                 Spectrum& out) {
    const int nx = grid.nx, ny = grid.ny;
    const int npts = ny + 1;
    if (!(out.grid() == grid) || out.basis() != basis)
        out = Spectrum(grid, basis);
    const int nk2 = out.nk2();

    PlanEntry& cp = complex_plan(PlanKind::ForwardX, nx, nk2);

    // y analysis per x-row, writing scaled mode amplitudes into the c2c buffer.
    if (basis == YBasis::CosineY) {
        PlanEntry& rp = real_plan(PlanKind::EvenY, npts, nx);
        std::memcpy(rp.rbuf, values, rp.len * sizeof(double));
        fftw_execute(rp.plan);
        const double inv = 1.0 / ny;
        for (int i1 = 0; i1 < nx; ++i1) {
            const double* row = rp.rbuf + static_cast<size_t>(i1) * npts;
            fftw_complex* dst = cp.cbuf + static_cast<size_t>(i1) * nk2;
            dst[0][0] = 0.5 * inv * row[0];
            dst[0][1] = 0.0;
            for (int k = 1; k < ny; ++k) {
                dst[k][0] = inv * row[k];
                dst[k][1] = 0.0;
            }
            dst[ny][0] = 0.5 * inv * row[ny];
            dst[ny][1] = 0.0;
        }
    } else {
        double maxabs = 0.0;
        for (size_t i = 0; i < physical_size(grid); ++i)
            maxabs = std::max(maxabs, std::abs(values[i]));
        for (int i1 = 0; i1 < nx; ++i1) {
            const double* col = values + static_cast<size_t>(i1) * npts;
            double wall = std::max(std::abs(col[0]), std::abs(col[ny]));
            if (wall > 1e-12 * maxabs)
                throw WallValueError(
                    "sine-basis analysis: nonzero wall sample " +
                    std::to_string(wall) + " at x-index " + std::to_string(i1));
        }
        const int nint = ny - 1;
        PlanEntry& rp = real_plan(PlanKind::OddY, nint, nx);
        for (int i1 = 0; i1 < nx; ++i1) {
            double* row = rp.rbuf + static_cast<size_t>(i1) * nint;
            const double* col = values + static_cast<size_t>(i1) * npts;
            std::memcpy(row, col + 1, nint * sizeof(double));
        }
        fftw_execute(rp.plan);
        const double inv = 1.0 / ny;
        for (int i1 = 0; i1 < nx; ++i1) {
            const double* row = rp.rbuf + static_cast<size_t>(i1) * nint;
            fftw_complex* dst = cp.cbuf + static_cast<size_t>(i1) * nk2;
            for (int k = 0; k < nint; ++k) {
                dst[k][0] = inv * row[k];
                dst[k][1] = 0.0;
            }
        }
    }

    // x analysis, unit-normalized.
    fftw_execute(cp.plan);
    const double invx = 1.0 / nx;
    std::complex<double>* c = out.data();
    for (size_t i = 0; i < cp.len; ++i)
        c[i] = {invx * cp.cbuf[i][0], invx * cp.cbuf[i][1]};

    // Exact Hermitian symmetrization (input rows were real, so this only
    // removes rounding-level asymmetry): k1 = 0 and k1 = nx/2 rows real,
    // opposite rows complex conjugates.
    for (int i2 = 0; i2 < nk2; ++i2) {
        out.at_index(0, i2).imag(0.0);
        out.at_index(nx / 2, i2).imag(0.0);
    }
    for (int i1 = 1; i1 < nx / 2; ++i1) {
        const int j1 = nx - i1;
        for (int i2 = 0; i2 < nk2; ++i2) {
            std::complex<double> avg =
                0.5 * (out.at_index(i1, i2) + std::conj(out.at_index(j1, i2)));
            out.at_index(i1, i2) = avg;
            out.at_index(j1, i2) = std::conj(avg);
        }
    }
}

Spectrum to_spectral(const Grid& grid, YBasis basis,
                     const std::vector<double>& values) {
    if (values.size() != physical_size(grid))
        throw GridMismatch("to_spectral: sample count " +
                           std::to_string(values.size()) + " does not match grid");
    Spectrum out(grid, basis);
    to_spectral(grid, basis, values.data(), out);
    return out;
}

}  // namespace anse
