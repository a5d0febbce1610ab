#pragma once

#include <complex>

namespace qslit::specfun {

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz).
/// Relative accuracy (in modulus) better than 1e-12 for |z| <= 50.
/// Throws Error(non_finite) on NaN/Inf input.
std::complex<double> faddeeva(std::complex<double> z);

/// Complementary error function of complex argument.
std::complex<double> erfc_complex(std::complex<double> z);

/// Scaled product exp(z^2) erfc(z) = w(iz), stable where bare erfc over/underflows.
std::complex<double> exp_z2_erfc(std::complex<double> z);

/// Fresnel integrals C(u) = int_0^u cos(pi s^2/2) ds, S(u) = int_0^u sin(pi s^2/2) ds.
/// Absolute accuracy better than 1e-12.
struct FresnelCS {
    double c;
    double s;
};
FresnelCS fresnel(double u);

} // namespace qslit::specfun
