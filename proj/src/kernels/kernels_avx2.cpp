/// @file kernels_avx2.cpp
/// @brief AVX2+FMA variants of the inner loops. Compiled only on x86-64
/// (with -mavx2 -mfma for this translation unit) and selected at runtime when
/// the CPU reports AVX2 support.
///
/// Reductions accumulate in four independent lanes and fold at the end, so
/// they are not bit-identical to the scalar reference; equivalence tests use
/// tolerances sized by n * eps.

#if defined(__x86_64__) || defined(__i386__)

#include "anse/kernels.hpp"

#include <immintrin.h>

#include <cmath>

namespace anse::kernels {
namespace {

void axpy(double* y, double a, const double* x, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] = std::fma(a, x[i], y[i]);
}

void scale(double* x, double a, std::size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    }
    for (; i < n; ++i) x[i] *= a;
}

void mul(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        _mm256_storeu_pd(dst + i, _mm256_mul_pd(_mm256_loadu_pd(a + i),
                                                _mm256_loadu_pd(b + i)));
    }
    for (; i < n; ++i) dst[i] = a[i] * b[i];
}

void mul_acc(double* dst, const double* a, const double* b, std::size_t n) {
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vd = _mm256_loadu_pd(dst + i);
        vd = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), vd);
        _mm256_storeu_pd(dst + i, vd);
    }
    for (; i < n; ++i) dst[i] = std::fma(a[i], b[i], dst[i]);
}

// Expand two factor doubles (f0, f1) into the lane pattern (f0, f0, f1, f1)
// matching interleaved complex storage.
inline __m256d duplicate_pairs(const double* f) {
    const __m128d lo = _mm_loaddup_pd(f);
    const __m128d hi = _mm_loaddup_pd(f + 1);
    return _mm256_insertf128_pd(_mm256_castpd128_pd256(lo), hi, 1);
}

void cmul_factors(std::complex<double>* c, const double* f, std::size_t n) {
    double* d = reinterpret_cast<double*>(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d ff = duplicate_pairs(f + i);
        _mm256_storeu_pd(d + 2 * i, _mm256_mul_pd(ff, _mm256_loadu_pd(d + 2 * i)));
    }
    for (; i < n; ++i) {
        d[2 * i] *= f[i];
        d[2 * i + 1] *= f[i];
    }
}

void cmul_ifactors(std::complex<double>* c, const double* f, std::size_t n) {
    double* d = reinterpret_cast<double*>(c);
    // (re, im) -> (-f*im, f*re): swap lanes within each pair, negate even lanes.
    const __m256d signs = _mm256_set_pd(1.0, -1.0, 1.0, -1.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d ff = duplicate_pairs(f + i);
        const __m256d v = _mm256_loadu_pd(d + 2 * i);
        const __m256d swapped = _mm256_permute_pd(v, 0x5);
        _mm256_storeu_pd(d + 2 * i,
                         _mm256_mul_pd(_mm256_mul_pd(ff, swapped), signs));
    }
    for (; i < n; ++i) {
        const double re = d[2 * i];
        const double im = d[2 * i + 1];
        d[2 * i] = -f[i] * im;
        d[2 * i + 1] = f[i] * re;
    }
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double weighted_abs2_sum(const std::complex<double>* c, const double* w,
                         std::size_t n) {
    const double* d = reinterpret_cast<const double*>(c);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d v = _mm256_loadu_pd(d + 2 * i);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(v, v), duplicate_pairs(w + i), acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        total += w[i] * (d[2 * i] * d[2 * i] + d[2 * i + 1] * d[2 * i + 1]);
    }
    return total;
}

double weighted_dot_re(const std::complex<double>* a, const std::complex<double>* b,
                       const double* w, std::size_t n) {
    const double* da = reinterpret_cast<const double*>(a);
    const double* db = reinterpret_cast<const double*>(b);
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        const __m256d prod =
            _mm256_mul_pd(_mm256_loadu_pd(da + 2 * i), _mm256_loadu_pd(db + 2 * i));
        acc = _mm256_fmadd_pd(prod, duplicate_pairs(w + i), acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) {
        total += w[i] * (da[2 * i] * db[2 * i] + da[2 * i + 1] * db[2 * i + 1]);
    }
    return total;
}

double max_abs(const double* x, std::size_t n) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d m = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        m = _mm256_max_pd(m, _mm256_and_pd(absmask, _mm256_loadu_pd(x + i)));
    }
    const __m128d lo = _mm256_castpd256_pd128(m);
    const __m128d hi = _mm256_extractf128_pd(m, 1);
    const __m128d mx = _mm_max_pd(lo, hi);
    double best = _mm_cvtsd_f64(_mm_max_sd(mx, _mm_unpackhi_pd(mx, mx)));
    for (; i < n; ++i) best = std::max(best, std::fabs(x[i]));
    return best;
}

double weighted_abs_sum(const double* x, const double* w, std::size_t n) {
    const __m256d absmask = _mm256_castsi256_pd(_mm256_set1_epi64x(0x7fffffffffffffffLL));
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_and_pd(absmask, _mm256_loadu_pd(x + i)),
                              _mm256_loadu_pd(w + i), acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += w[i] * std::fabs(x[i]);
    return total;
}

double dot(const double* x, const double* y, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    }
    double total = hsum(acc);
    for (; i < n; ++i) total += x[i] * y[i];
    return total;
}

}  // namespace

const Ops* avx2_ops() {
    static const Ops table = {
        "avx2",    axpy,           scale,   mul,
        mul_acc,   cmul_factors,   cmul_ifactors,
        weighted_abs2_sum, weighted_dot_re, max_abs, weighted_abs_sum, dot,
    };
    return &table;
}

}  // namespace anse::kernels

#endif  // x86
