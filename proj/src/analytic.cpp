#include "qslit/analytic.hpp"

#include <cmath>
#include <numbers>

#include "qslit/error.hpp"
#include "qslit/specfun.hpp"

namespace qslit::analytic {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// (2a-1)^2 + 4a(1-a) cos^2(theta_half). Peak value is exactly 1 for any alpha.
double weighted_fringe(double theta_half, double alpha) {
    double d = 2.0 * alpha - 1.0;
    double c = std::cos(theta_half);
    return d * d + 4.0 * alpha * (1.0 - alpha) * c * c;
}

void require_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) fail(ErrorCode::bad_argument, "slit weight alpha must lie in [0, 1]");
}

void require_positive_time(double t_fs) {
    if (!(t_fs > 0.0)) fail(ErrorCode::domain, "propagation kernel is singular at t <= 0");
}

} // namespace

double fold_phase(double phase) {
    double p = std::remainder(phase, kTwoPi);
    if (p <= -kPi) p += kTwoPi; // remainder returns [-pi, pi]; fold -pi onto +pi
    return p;
}

void validate(const SpaceSlitConfig& cfg) {
    if (!(cfg.separation_nm > 0.0)) fail(ErrorCode::bad_argument, "slit separation must be positive");
    require_alpha(cfg.alpha);
}

void validate(const TimeSlitConfig& cfg) {
    if (!(cfg.delay_fs > 0.0)) fail(ErrorCode::bad_argument, "pulse delay must be positive");
    require_alpha(cfg.alpha);
}

double space_slit_momentum_density(double p_y_eV_fs_per_nm, const SpaceSlitConfig& cfg) {
    validate(cfg);
    double p = units::momentum_to_internal(p_y_eV_fs_per_nm);
    double a = cfg.separation_nm;
    return weighted_fringe(0.5 * (p * a - fold_phase(cfg.phase)), cfg.alpha);
}

double space_slit_maxima_angle(int n, const SpaceSlitConfig& cfg, const Particle& particle) {
    validate(cfg);
    auto kin = units::derived_kinematics(particle);
    double s = (n + fold_phase(cfg.phase) / kTwoPi) * kin.lambdaB_nm / cfg.separation_nm;
    if (std::abs(s) > 1.0)
        fail(ErrorCode::evanescent_order, "evanescent order: |sin theta| > 1 for n = " + std::to_string(n));
    return std::asin(s);
}

SpacetimeDensity space_slit_spacetime_density(double y_nm, double t_fs, const SpaceSlitConfig& cfg,
                                              const Particle& particle) {
    validate(cfg);
    require_positive_time(t_fs);
    double t = units::time_to_internal(t_fs);
    double theta_half = cfg.separation_nm * particle.mass_internal() * y_nm / (2.0 * t) + 0.5 * fold_phase(cfg.phase);
    return {weighted_fringe(theta_half, cfg.alpha), 1.0 / (t_fs * t_fs * t_fs)};
}

double space_slit_period_fs(double y_nm, double t_fs, const SpaceSlitConfig& cfg, const Particle& particle) {
    validate(cfg);
    require_positive_time(t_fs);
    if (y_nm == 0.0) fail(ErrorCode::domain, "no oscillation on axis (y = 0)");
    double t = units::time_to_internal(t_fs);
    double period = kTwoPi * t * t / (cfg.separation_nm * particle.mass_internal() * std::abs(y_nm));
    return units::time_from_internal(period);
}

std::complex<double> shutter_wavefunction(double z_nm, double t_fs, const Particle& particle) {
    require_positive_time(t_fs);
    double t = units::time_to_internal(t_fs);
    double m = particle.mass_internal();
    double xi = std::sqrt(m / (2.0 * t)) * (z_nm - particle.v0_internal() * t);
    // Y0 = e^{-i pi/4} xi; e^{Y0^2} erfc(Y0) = w(i Y0) with i Y0 = e^{i pi/4} xi.
    const double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
    std::complex<double> scaled = specfun::faddeeva({xi * inv_sqrt2, xi * inv_sqrt2});
    std::complex<double> chirp = std::exp(std::complex<double>(0.0, -m * z_nm * z_nm / (2.0 * t)));
    return 0.5 * chirp * scaled;
}

double shutter_current_ratio(double z_nm, double t_fs, const Particle& particle) {
    require_positive_time(t_fs);
    double t = units::time_to_internal(t_fs);
    double u = std::sqrt(particle.mass_internal() / (kPi * t)) * (particle.v0_internal() * t - z_nm);
    auto [c, s] = specfun::fresnel(u);
    return 0.5 * ((0.5 + c) * (0.5 + c) + (0.5 + s) * (0.5 + s));
}

double time_slit_momentum_density(double p_z_eV_fs_per_nm, const TimeSlitConfig& cfg, const Particle& particle) {
    validate(cfg);
    double p = units::momentum_to_internal(p_z_eV_fs_per_nm);
    double a = particle.v0_internal() * units::time_to_internal(cfg.delay_fs);
    return weighted_fringe(0.5 * ((p - particle.p0_internal()) * a - fold_phase(cfg.phase)), cfg.alpha);
}

double time_slit_peak_energy_eV(int n, const TimeSlitConfig& cfg, const Particle& particle) {
    validate(cfg);
    double tau = units::time_to_internal(cfg.delay_fs);
    double theta = kTwoPi * n + fold_phase(cfg.phase);
    double p0 = particle.p0_internal();
    if (p0 == 0.0) fail(ErrorCode::zero_momentum, "zero-momentum particle has no spectral comb");
    double pn = p0 + particle.mass_internal() * theta / (p0 * tau);
    if (!(pn > 0.0))
        fail(ErrorCode::below_threshold_order, "below-threshold order: p_n <= 0 for n = " + std::to_string(n));
    return units::energy_from_internal(pn * pn / (2.0 * particle.mass_internal()));
}

double energy_peak_spacing_eV(const TimeSlitConfig& cfg) {
    validate(cfg);
    return units::kH_eV_fs / cfg.delay_fs;
}

SpacetimeDensity time_slit_spacetime_density(double z_nm, double t_fs, const TimeSlitConfig& cfg,
                                             const Particle& particle) {
    validate(cfg);
    require_positive_time(t_fs);
    double t = units::time_to_internal(t_fs);
    double tau = units::time_to_internal(cfg.delay_fs);
    double p0 = particle.p0_internal();
    double m = particle.mass_internal();
    double theta_half = 0.5 * p0 * tau / m * (p0 - m * z_nm / t) + 0.5 * fold_phase(cfg.phase);
    return {weighted_fringe(theta_half, cfg.alpha), 1.0 / (t_fs * t_fs * t_fs)};
}

double time_slit_period_fs(double z_nm, double t_fs, const TimeSlitConfig& cfg, const Particle& particle) {
    validate(cfg);
    require_positive_time(t_fs);
    if (z_nm == 0.0) fail(ErrorCode::domain, "no oscillation at z = 0");
    double t = units::time_to_internal(t_fs);
    double tau = units::time_to_internal(cfg.delay_fs);
    double E0 = particle.E0_internal();
    if (E0 == 0.0) fail(ErrorCode::zero_momentum, "zero-energy particle has no transient period");
    double period = kPi / (E0 * tau) * particle.v0_internal() / std::abs(z_nm) * t * t;
    return units::time_from_internal(period);
}

double classical_displacement_nm(double t_fs, const Particle& particle) {
    if (t_fs < 0.0) fail(ErrorCode::domain, "negative time");
    return particle.v0_nm_per_fs() * t_fs;
}

double weighted_slit_momentum_density(double p_eV_fs_per_nm, const SpaceSlitConfig& cfg) {
    return space_slit_momentum_density(p_eV_fs_per_nm, cfg);
}

double fringe_visibility(double alpha) {
    require_alpha(alpha);
    double d = 2.0 * alpha - 1.0;
    return 4.0 * alpha * (1.0 - alpha) / (1.0 + d * d);
}

} // namespace qslit::analytic
