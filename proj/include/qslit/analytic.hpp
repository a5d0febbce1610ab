#pragma once

#include <complex>

#include "qslit/units.hpp"

namespace qslit::analytic {

using units::Particle;

/// Two point slits along the transverse axis, separated by `separation_nm`.
/// `phase` is the relative phase on the second slit (applied as e^{-i phase});
/// `alpha` weights the slits (alpha, 1-alpha); alpha = 1/2 is the symmetric case.
struct SpaceSlitConfig {
    double separation_nm;
    double phase = 0.0;
    double alpha = 0.5;
};

/// Two pulses launched along the motion axis with time delay `delay_fs`;
/// the equivalent spatial separation is v0 * delay.
struct TimeSlitConfig {
    double delay_fs;
    double phase = 0.0;
    double alpha = 0.5;
};

/// Fold an angle into (-pi, pi].
double fold_phase(double phase);

void validate(const SpaceSlitConfig& cfg);
void validate(const TimeSlitConfig& cfg);

/// Oscillatory factor of a spacetime density plus its separately reported
/// t^-3 damping envelope (in fs^-3). Both sides of the paper's patterns are
/// proportionalities, so `relative` is normalized to peak value 1.
struct SpacetimeDensity {
    double relative;
    double envelope_per_fs3;
};

// --- Space double slit -------------------------------------------------------

/// Relative transverse-momentum density; alpha-weighted fringe pattern in [0, 1].
double space_slit_momentum_density(double p_y_eV_fs_per_nm, const SpaceSlitConfig& cfg);

/// Angle of the n-th interference maximum: theta_n = asin[(n + phase/2pi) lambda_B / a].
/// Throws Error(evanescent_order) when the argument leaves [-1, 1].
double space_slit_maxima_angle(int n, const SpaceSlitConfig& cfg, const Particle& particle);

/// Screen-coordinate density at (y, t); throws Error(domain) for t <= 0.
SpacetimeDensity space_slit_spacetime_density(double y_nm, double t_fs, const SpaceSlitConfig& cfg,
                                              const Particle& particle);

/// Instantaneous oscillation period Xi(t) = (2 pi hbar / a m y) t^2 at fixed y.
double space_slit_period_fs(double y_nm, double t_fs, const SpaceSlitConfig& cfg, const Particle& particle);

// --- Diffraction in time (shutter) -------------------------------------------

/// z-dependent factor of the post-shutter wave: (1/2) e^{-i m z^2/2 hbar t} e^{Y0^2} erfc(Y0),
/// Y0 = e^{-i pi/4} (2 hbar t/m)^{-1/2} (z - v0 t). Transverse prefactor omitted.
std::complex<double> shutter_wavefunction(double z_nm, double t_fs, const Particle& particle);

/// Ratio of transient to stationary probability current at (z, t):
/// (1/2)[(1/2 + C(u))^2 + (1/2 + S(u))^2], u = sqrt(m/(pi hbar t)) (v0 t - z).
double shutter_current_ratio(double z_nm, double t_fs, const Particle& particle);

// --- Time double slit ---------------------------------------------------------

/// Relative longitudinal-momentum density around p0.
double time_slit_momentum_density(double p_z_eV_fs_per_nm, const TimeSlitConfig& cfg, const Particle& particle);

/// Energy of the n-th spectral peak: E_n = E0 + (hbar/tau)(2 pi n + phase) + (hbar^2/4 E0 tau^2)(...)^2.
/// Throws Error(below_threshold_order) when the corresponding momentum is not positive.
double time_slit_peak_energy_eV(int n, const TimeSlitConfig& cfg, const Particle& particle);

/// Leading-order spacing of consecutive energy peaks, delta E = h / tau.
double energy_peak_spacing_eV(const TimeSlitConfig& cfg);

/// Density at fixed position z as a function of t; throws Error(domain) for t <= 0.
SpacetimeDensity time_slit_spacetime_density(double z_nm, double t_fs, const TimeSlitConfig& cfg,
                                             const Particle& particle);

/// Instantaneous oscillation period Xi(t) = (pi hbar / E0 tau)(p0 / m z) t^2.
double time_slit_period_fs(double z_nm, double t_fs, const TimeSlitConfig& cfg, const Particle& particle);

/// Free-flight displacement z = v0 t.
double classical_displacement_nm(double t_fs, const Particle& particle);

// --- Weighted slits and complementarity ---------------------------------------

/// (2a-1)^2 + 4a(1-a) cos^2[((p a / hbar) - phase)/2]; already peak-normalized to 1.
double weighted_slit_momentum_density(double p_eV_fs_per_nm, const SpaceSlitConfig& cfg);

/// Fringe visibility V = 4 alpha (1-alpha) / (1 + (2 alpha - 1)^2).
double fringe_visibility(double alpha);

} // namespace qslit::analytic
