/// @file test_kernels.cpp
/// @brief Equivalence tests for the dispatched data-parallel kernels.
///
/// The scalar table is first checked against directly computed values on
/// small hand cases; every runnable implementation (scalar, AVX2, NEON) is
/// then compared against the scalar reference on assorted lengths, including
/// lengths that exercise SIMD remainder handling. Reductions may associate
/// differently across implementations, so comparisons are tolerance-based.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "anse/kernels.hpp"

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

using anse::kernels::Ops;

namespace {

std::vector<double> random_reals(size_t n, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<double> v(n);
    for (auto& x : v)
        x = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
    return v;
}

std::vector<std::complex<double>> random_complexes(size_t n, uint64_t seed) {
    std::vector<double> re = random_reals(2 * n, seed);
    std::vector<std::complex<double>> v(n);
    for (size_t i = 0; i < n; ++i) v[i] = {re[2 * i], re[2 * i + 1]};
    return v;
}

const std::vector<size_t> kLengths = {0, 1, 2, 3, 4, 5, 7, 8, 15, 64, 127, 1000};

}  // namespace

TEST_CASE("scalar kernels match direct computation on hand cases") {
    const Ops& k = anse::kernels::scalar();

    std::vector<double> y = {1.0, 2.0, 3.0};
    const std::vector<double> x = {0.5, -1.0, 4.0};
    k.axpy(y.data(), 2.0, x.data(), 3);
    CHECK(y[0] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(y[1] == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(y[2] == doctest::Approx(11.0).epsilon(1e-15));

    std::vector<double> s = {3.0, -6.0};
    k.scale(s.data(), 0.5, 2);
    CHECK(s[0] == 1.5);
    CHECK(s[1] == -3.0);

    std::vector<double> dst(3);
    const std::vector<double> a = {1.0, 2.0, 3.0}, b = {4.0, 5.0, -6.0};
    k.mul(dst.data(), a.data(), b.data(), 3);
    CHECK(dst[1] == 10.0);
    k.mul_acc(dst.data(), a.data(), b.data(), 3);
    CHECK(dst[2] == -36.0);

    std::vector<std::complex<double>> c = {{1.0, 2.0}, {3.0, -1.0}};
    const std::vector<double> f = {2.0, -1.0};
    k.cmul_factors(c.data(), f.data(), 2);
    CHECK(c[0] == std::complex<double>{2.0, 4.0});
    CHECK(c[1] == std::complex<double>{-3.0, 1.0});

    // c *= i*f: (re, im) -> (-f*im, f*re)
    c = {{1.0, 2.0}, {3.0, -1.0}};
    k.cmul_ifactors(c.data(), f.data(), 2);
    CHECK(c[0] == std::complex<double>{-4.0, 2.0});
    CHECK(c[1] == std::complex<double>{-1.0, -3.0});

    const std::vector<std::complex<double>> u = {{3.0, 4.0}, {1.0, 0.0}};
    const std::vector<double> w = {1.0, 0.5};
    CHECK(k.weighted_abs2_sum(u.data(), w.data(), 2) ==
          doctest::Approx(25.5).epsilon(1e-15));
    const std::vector<std::complex<double>> v2 = {{1.0, 1.0}, {2.0, -2.0}};
    // Re(u conj(v)): Re((3+4i)(1-1i)) = 7, Re((1)(2+2i)) = 2
    CHECK(k.weighted_dot_re(u.data(), v2.data(), w.data(), 2) ==
          doctest::Approx(8.0).epsilon(1e-15));

    const std::vector<double> m = {-5.0, 2.0, 4.5};
    CHECK(k.max_abs(m.data(), 3) == 5.0);
    CHECK(k.weighted_abs_sum(m.data(), a.data(), 3) ==
          doctest::Approx(5.0 + 4.0 + 13.5).epsilon(1e-15));
    CHECK(k.dot(a.data(), b.data(), 3) == doctest::Approx(-4.0).epsilon(1e-15));
}

TEST_CASE("all runnable implementations agree with the scalar reference") {
    const Ops& ref = anse::kernels::scalar();
    auto impls = anse::kernels::available();
    REQUIRE(!impls.empty());
    INFO("implementations compiled+runnable: ", impls.size());

    for (const Ops* impl : impls) {
        CAPTURE(impl->name);
        for (size_t n : kLengths) {
            CAPTURE(n);
            const uint64_t seed = 1000 + n;
            const auto x = random_reals(n, seed);
            const auto w = random_reals(n, seed + 1);
            const auto c0 = random_complexes(n, seed + 2);
            const auto c1 = random_complexes(n, seed + 3);
            const double tol = 1e-13 * (1.0 + static_cast<double>(n));

            auto ya = random_reals(n, seed + 4), yb = ya;
            ref.axpy(ya.data(), 1.7, x.data(), n);
            impl->axpy(yb.data(), 1.7, x.data(), n);
            for (size_t i = 0; i < n; ++i)
                CHECK(ya[i] == doctest::Approx(yb[i]).epsilon(1e-14));

            auto sa = x, sb = x;
            ref.scale(sa.data(), -0.37, n);
            impl->scale(sb.data(), -0.37, n);
            for (size_t i = 0; i < n; ++i) CHECK(sa[i] == sb[i]);

            std::vector<double> da(n), db(n);
            ref.mul(da.data(), x.data(), w.data(), n);
            impl->mul(db.data(), x.data(), w.data(), n);
            for (size_t i = 0; i < n; ++i) CHECK(da[i] == db[i]);

            ref.mul_acc(da.data(), w.data(), w.data(), n);
            impl->mul_acc(db.data(), w.data(), w.data(), n);
            for (size_t i = 0; i < n; ++i)
                CHECK(da[i] == doctest::Approx(db[i]).epsilon(1e-14));

            auto ca = c0, cb = c0;
            ref.cmul_factors(ca.data(), w.data(), n);
            impl->cmul_factors(cb.data(), w.data(), n);
            for (size_t i = 0; i < n; ++i) CHECK(ca[i] == cb[i]);

            ca = c0, cb = c0;
            ref.cmul_ifactors(ca.data(), w.data(), n);
            impl->cmul_ifactors(cb.data(), w.data(), n);
            for (size_t i = 0; i < n; ++i) CHECK(ca[i] == cb[i]);

            CHECK(ref.weighted_abs2_sum(c0.data(), w.data(), n) ==
                  doctest::Approx(impl->weighted_abs2_sum(c0.data(), w.data(), n))
                      .epsilon(tol));
            CHECK(ref.weighted_dot_re(c0.data(), c1.data(), w.data(), n) ==
                  doctest::Approx(
                      impl->weighted_dot_re(c0.data(), c1.data(), w.data(), n))
                      .epsilon(tol));
            CHECK(ref.max_abs(x.data(), n) == impl->max_abs(x.data(), n));
            CHECK(ref.weighted_abs_sum(x.data(), w.data(), n) ==
                  doctest::Approx(impl->weighted_abs_sum(x.data(), w.data(), n))
                      .epsilon(tol));
            CHECK(ref.dot(x.data(), w.data(), n) ==
                  doctest::Approx(impl->dot(x.data(), w.data(), n)).epsilon(tol));
        }
    }
}

TEST_CASE("active implementation is one of the available tables") {
    const Ops& act = anse::kernels::active();
    bool found = false;
    for (const Ops* impl : anse::kernels::available())
        if (impl == &act) found = true;
    CHECK(found);
}
