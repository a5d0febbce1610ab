#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "qslit/analytic.hpp"
#include "qslit/series.hpp"
#include "qslit/units.hpp"

namespace qslit::propagator {

using units::Particle;

/// Uniform periodic 1-D grid; n must be a power of two.
struct Grid1D {
    int n = 0;
    double x_min = 0.0;
    double x_max = 0.0;

    static Grid1D make(int n_points, double x_min, double x_max);

    double extent() const { return x_max - x_min; }
    double spacing() const { return extent() / n; }
    double x(int i) const { return x_min + i * spacing(); }
    /// Signed momentum of FFT bin k, in internal units (hbar = 1).
    double p_internal(int k) const;
    double nyquist_internal() const;
};

/// Complex amplitude on a grid. Fields are immutable values: evolution returns a new field.
struct ComplexField {
    Grid1D grid;
    std::vector<std::complex<double>> amp;
    // Momentum support recorded by make_initial_state (internal units), checked by evolve_free.
    std::optional<double> band_center_internal;
    std::optional<double> band_halfwidth_internal;

    /// sum |psi|^2 dx
    double norm() const;
    void normalize();
};

enum class SlitKind { space_double_slit, shutter, time_double_slit, weighted_double_slit };

/// Gaussian-regularized version of one of the paper's delta/step initial states.
/// sigma is the density standard deviation of each regularized peak (or the
/// smoothing width of the shutter step). For slit kinds `separation_nm` is the
/// peak separation; the shutter ignores it. `carrier` fixes the plane-wave factor.
struct InitialStateSpec {
    SlitKind kind = SlitKind::time_double_slit;
    double sigma_nm = 1.0;
    double separation_nm = 0.0;
    double phase = 0.0;
    double alpha = 0.5;
    double carrier_p0_eV_fs_per_nm = 0.0;

    static InitialStateSpec space_double_slit(const analytic::SpaceSlitConfig& cfg, double sigma_nm);
    static InitialStateSpec weighted_double_slit(const analytic::SpaceSlitConfig& cfg, double sigma_nm);
    static InitialStateSpec time_double_slit(const analytic::TimeSlitConfig& cfg, const Particle& particle,
                                             double sigma_nm);
    static InitialStateSpec shutter(const Particle& particle, double sigma_nm);
};

/// Grid sized by the rule: extent >= v0 t_max + 8 sigma(t_max) on each side of the
/// initial support, spacing <= lambda_B/16 (or sigma/4 for carrier-free states).
Grid1D auto_grid(const InitialStateSpec& spec, const Particle& particle, double t_max_fs);

/// Build the normalized initial state; throws Error(geometry) when peaks fall outside
/// the grid and Error(under_resolved) when sigma < 2 * spacing.
ComplexField make_initial_state(const InitialStateSpec& spec, const Grid1D& grid);

/// One-step spectral evolution: FFT, multiply by exp(-i p^2 t / 2 m hbar), inverse FFT.
/// Exact for the grid-represented state at any t >= 0.
ComplexField evolve_free(const ComplexField& field, double t_fs, const Particle& particle);

/// Pointwise |psi|^2 (units 1/nm) against position (nm).
Series density(const ComplexField& field);

/// |Phi(p)|^2 against momentum (eV*fs/nm), normalized so sum |Phi|^2 dp = norm.
Series momentum_density(const ComplexField& field);

/// Probability current j = (hbar/m) Im(conj(psi) dpsi/dz) by spectral differentiation,
/// in units of 1/fs (current of the |psi|^2-normalized density).
Series probability_current(const ComplexField& field, const Particle& particle);

/// |psi(x0, t)|^2 for many times from a single forward transform of the initial state.
/// Mathematically identical to evolving and reading the trigonometric interpolant at x0.
Series fixed_position_density_series(const ComplexField& initial, double x0_nm,
                                     const std::vector<double>& times_fs, const Particle& particle);

struct ComparisonReport {
    double peak_position_error; ///< max |numeric peak - analytic peak|, abscissa units
    double normalized_rms;      ///< RMS difference after envelope division and peak-normalization
};

/// Compare a numeric density against an analytic pattern on their common window.
/// `envelope`, when given, divides the numeric series first. Throws Error(featureless)
/// when exactly one of the two series shows no peaks.
ComparisonReport compare_to_analytic(const Series& numeric, const Series& analytic,
                                     const Series* envelope = nullptr);

/// Width sigma(t) = sigma sqrt(1 + (hbar t / 2 m sigma^2)^2) of a spreading Gaussian.
double spread_sigma_nm(double sigma_nm, double t_fs, const Particle& particle);

} // namespace qslit::propagator
