#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "oracles.hpp"
#include "qslit/error.hpp"
#include "qslit/specfun.hpp"
#include "qslit/stats.hpp"

using namespace qslit;
using specfun::erfc_complex;
using specfun::exp_z2_erfc;
using specfun::faddeeva;
using cplx = std::complex<double>;

namespace {

double rel_err(cplx got, cplx want) {
    double scale = std::abs(want);
    return scale == 0.0 ? std::abs(got - want) : std::abs(got - want) / scale;
}

cplx oracle_w(cplx z) {
    auto w = oracles::faddeeva(std::complex<long double>(z.real(), z.imag()));
    return {static_cast<double>(w.real()), static_cast<double>(w.imag())};
}

} // namespace

TEST_CASE("oracle sanity against frozen high-precision values") {
    // frozen from 40-digit evaluations of exp(-z^2) erfc(-iz)
    CHECK(rel_err(oracle_w({0.0, 1.0}), {0.42758357615580700441, 0.0}) < 1e-15);
    CHECK(rel_err(oracle_w({2.0, 3.0}), {0.13075746966984856861, 0.081112650477456653006}) < 1e-15);
    CHECK(rel_err(oracle_w({5.0, 0.0}), {1.3887943864964020595e-11, 0.11524596183093658848}) < 1e-15);
    CHECK(std::abs(static_cast<double>(oracles::erfc_real(1.0L)) - 0.15729920705028513066) < 1e-16);
    CHECK(std::abs(static_cast<double>(oracles::erfc_real(6.0L)) - 2.1519736712498913117e-17) < 1e-30);
    auto f1 = oracles::fresnel(1.0L);
    CHECK(std::abs(static_cast<double>(f1.c) - 0.77989340037682282947) < 1e-14);
    CHECK(std::abs(static_cast<double>(f1.s) - 0.43825914739035476608) < 1e-14);
}

TEST_CASE("faddeeva special values") {
    CHECK(rel_err(faddeeva({0.0, 0.0}), {1.0, 0.0}) < 1e-14);
    // w(i) = e * erfc(1), oracle-computed and frozen
    CHECK(rel_err(faddeeva({0.0, 1.0}), {0.42758357615580700441, 0.0}) < 1e-13);
    // Re w(x) = exp(-x^2) on the real axis
    CHECK(std::abs(faddeeva({1.0, 0.0}).real() - 0.36787944117144233) < 1e-14);
    CHECK(faddeeva({1.0, 0.0}).real() ==
          doctest::Approx(std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("faddeeva matches the quadrature oracle across the |z| <= 6 disk") {
    double worst = 0.0;
    for (int i = 0; i < 2000; ++i) {
        double r = 6.0 * std::sqrt(stats::uniform01(7, static_cast<std::uint64_t>(2 * i)));
        double th = 2.0 * M_PI * stats::uniform01(7, static_cast<std::uint64_t>(2 * i + 1)) - M_PI;
        cplx z = std::polar(r, th);
        worst = std::max(worst, rel_err(faddeeva(z), oracle_w(z)));
    }
    // structured hard points: node-adjacent reals, the shutter rays, the axes
    for (double x : {0.2, 0.4, 0.4000000001, 2.0, 3.9999999, 5.6, 6.0}) {
        for (double y : {0.0, 1e-9, 0.5, 2.9999, 3.0001}) {
            for (double sx : {1.0, -1.0})
                for (double sy : {1.0, -1.0}) {
                    cplx z(sx * x, sy * y);
                    worst = std::max(worst, rel_err(faddeeva(z), oracle_w(z)));
                }
        }
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("faddeeva stays accurate out to |z| = 50") {
    double worst = 0.0;
    for (int i = 0; i < 300; ++i) {
        double r = 6.0 + 44.0 * stats::uniform01(9, static_cast<std::uint64_t>(2 * i));
        double th = M_PI * stats::uniform01(9, static_cast<std::uint64_t>(2 * i + 1)); // upper half plane
        cplx z = std::polar(r, th);
        worst = std::max(worst, rel_err(faddeeva(z), oracle_w(z)));
    }
    CHECK(worst < 1e-12);
}

TEST_CASE("faddeeva symmetry w(-conj(z)) = conj(w(z))") {
    for (int i = 0; i < 200; ++i) {
        double x = 8.0 * stats::uniform01(11, static_cast<std::uint64_t>(2 * i)) - 4.0;
        double y = 6.0 * stats::uniform01(11, static_cast<std::uint64_t>(2 * i + 1)) - 3.0;
        cplx z(x, y);
        CHECK(rel_err(faddeeva(cplx(-x, y)), std::conj(faddeeva(z))) < 1e-13);
    }
}

TEST_CASE("faddeeva rejects non-finite input") {
    CHECK_THROWS_AS(faddeeva({std::nan(""), 0.0}), Error);
    CHECK_THROWS_AS(faddeeva({0.0, INFINITY}), Error);
}

TEST_CASE("erfc_complex special values and conjugation") {
    CHECK(rel_err(erfc_complex({0.0, 0.0}), {1.0, 0.0}) < 1e-14);
    // erfc(1), oracle-computed and frozen
    CHECK(rel_err(erfc_complex({1.0, 0.0}), {0.15729920705028513, 0.0}) < 1e-13);
    for (int i = 0; i < 100; ++i) {
        double x = 6.0 * stats::uniform01(13, static_cast<std::uint64_t>(2 * i)) - 3.0;
        double y = 4.0 * stats::uniform01(13, static_cast<std::uint64_t>(2 * i + 1)) - 2.0;
        cplx z(x, y);
        CHECK(rel_err(erfc_complex(std::conj(z)), std::conj(erfc_complex(z))) < 1e-12);
    }
}

TEST_CASE("erfc_complex on the real axis matches the series/CF oracle to 1e-12") {
    for (int i = 0; i <= 600; ++i) {
        double x = -6.0 + 12.0 * i / 600.0;
        double want = static_cast<double>(oracles::erfc_real(static_cast<long double>(x)));
        double got = erfc_complex({x, 0.0}).real();
        CHECK(std::abs(got - want) <= 1e-12 * std::abs(want));
        CHECK(std::abs(erfc_complex({x, 0.0}).imag()) < 1e-16);
    }
}

TEST_CASE("scaled product exp(z^2) erfc(z) avoids overflow") {
    // asymptotic oracle: 1/(z sqrt(pi)) (1 - 1/(2z^2) + 3/(4z^4) - 15/(8z^6) + ...)
    double z = 10.0;
    double series = 1.0 - 1.0 / (2 * z * z) + 3.0 / (4 * std::pow(z, 4)) - 15.0 / (8 * std::pow(z, 6)) +
                    105.0 / (16 * std::pow(z, 8)) - 945.0 / (32 * std::pow(z, 10));
    double want = series / (z * std::sqrt(M_PI));
    CHECK(want == doctest::Approx(0.056140992743822586).epsilon(1e-9)); // frozen oracle value
    CHECK(exp_z2_erfc({10.0, 0.0}).real() == doctest::Approx(0.056140992743822586).epsilon(1e-12));
    CHECK(std::isfinite(exp_z2_erfc({26.0, 0.0}).real()));
}

TEST_CASE("fresnel values against the quadrature oracle") {
    // frozen oracle evaluations
    CHECK(specfun::fresnel(0.0).c == 0.0);
    CHECK(specfun::fresnel(0.0).s == 0.0);
    auto f = specfun::fresnel(1.0);
    CHECK(std::abs(f.c - 0.77989340037682283) < 1e-12);
    CHECK(std::abs(f.s - 0.43825914739035477) < 1e-12);
    // dense sweep across all three algorithm regions
    double worst = 0.0;
    for (int i = 0; i <= 700; ++i) {
        double u = 7.0 * i / 700.0;
        auto got = specfun::fresnel(u);
        auto want = oracles::fresnel(static_cast<long double>(u));
        worst = std::max(worst, std::abs(got.c - static_cast<double>(want.c)));
        worst = std::max(worst, std::abs(got.s - static_cast<double>(want.s)));
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("fresnel asymptote and oddness") {
    auto f = specfun::fresnel(100.0);
    CHECK(std::abs(f.c - 0.5) < 5e-3);
    CHECK(std::abs(f.s - 0.5) < 5e-3);
    for (double u : {0.3, 1.7, 2.9, 5.5}) {
        auto plus = specfun::fresnel(u);
        auto minus = specfun::fresnel(-u);
        CHECK(minus.c == -plus.c);
        CHECK(minus.s == -plus.s);
    }
    CHECK_THROWS_AS(specfun::fresnel(std::nan("")), Error);
}
