#include "qslit/propagator.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>

#include "qslit/detail/peaks.hpp"
#include "qslit/error.hpp"

namespace qslit::propagator {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// FFTW plan creation is not thread-safe; execution on distinct arrays is.
std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

void fft_inplace(std::vector<std::complex<double>>& a, int direction) {
    auto* data = reinterpret_cast<fftw_complex*>(a.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(static_cast<int>(a.size()), data, data, direction, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
}

bool is_power_of_two(int n) { return n >= 2 && (n & (n - 1)) == 0; }

// Normalized Gaussian amplitude with density standard deviation sigma.
double gauss_amp(double x, double sigma) {
    return std::pow(kTwoPi * sigma * sigma, -0.25) * std::exp(-x * x / (4.0 * sigma * sigma));
}

} // namespace

Grid1D Grid1D::make(int n_points, double x_min, double x_max) {
    if (!is_power_of_two(n_points))
        fail(ErrorCode::bad_argument, "grid size must be a power of two >= 2");
    if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
        fail(ErrorCode::bad_argument, "grid extent must be finite with x_max > x_min");
    return Grid1D{n_points, x_min, x_max};
}

double Grid1D::p_internal(int k) const {
    int signed_k = k < n / 2 ? k : k - n;
    return kTwoPi * signed_k / extent();
}

double Grid1D::nyquist_internal() const { return kPi / spacing(); }

double ComplexField::norm() const {
    double s = 0.0;
    for (const auto& a : amp) s += std::norm(a);
    return s * grid.spacing();
}

void ComplexField::normalize() {
    double n = norm();
    if (!(n > 0.0)) fail(ErrorCode::sampling, "cannot normalize a zero field");
    double scale = 1.0 / std::sqrt(n);
    for (auto& a : amp) a *= scale;
}

InitialStateSpec InitialStateSpec::space_double_slit(const analytic::SpaceSlitConfig& cfg, double sigma_nm) {
    analytic::validate(cfg);
    return {SlitKind::space_double_slit, sigma_nm, cfg.separation_nm, cfg.phase, cfg.alpha, 0.0};
}

InitialStateSpec InitialStateSpec::weighted_double_slit(const analytic::SpaceSlitConfig& cfg, double sigma_nm) {
    analytic::validate(cfg);
    return {SlitKind::weighted_double_slit, sigma_nm, cfg.separation_nm, cfg.phase, cfg.alpha, 0.0};
}

InitialStateSpec InitialStateSpec::time_double_slit(const analytic::TimeSlitConfig& cfg, const Particle& particle,
                                                    double sigma_nm) {
    analytic::validate(cfg);
    double a = particle.v0_nm_per_fs() * cfg.delay_fs;
    return {SlitKind::time_double_slit, sigma_nm, a, cfg.phase, cfg.alpha, particle.p0_eV_fs_per_nm()};
}

InitialStateSpec InitialStateSpec::shutter(const Particle& particle, double sigma_nm) {
    return {SlitKind::shutter, sigma_nm, 0.0, 0.0, 0.5, particle.p0_eV_fs_per_nm()};
}

Grid1D auto_grid(const InitialStateSpec& spec, const Particle& particle, double t_max_fs) {
    if (!(spec.sigma_nm > 0.0)) fail(ErrorCode::bad_argument, "sigma must be positive");
    double half_support = 0.5 * spec.separation_nm + 6.0 * spec.sigma_nm;
    double reach = particle.v0_nm_per_fs() * t_max_fs + 8.0 * spread_sigma_nm(spec.sigma_nm, t_max_fs, particle);
    double half = half_support + reach;

    double max_spacing = spec.sigma_nm / 4.0;
    if (spec.carrier_p0_eV_fs_per_nm > 0.0) {
        double lambdaB = units::kH_eV_fs / spec.carrier_p0_eV_fs_per_nm;
        max_spacing = std::min(max_spacing, lambdaB / 16.0);
    }
    int n = 2;
    while (2.0 * half / n > max_spacing) {
        n *= 2;
        if (n > (1 << 26)) fail(ErrorCode::bad_argument, "auto grid would exceed 2^26 points");
    }
    if (spec.kind == SlitKind::shutter) {
        // Train occupies z < 0 only; bias the window toward the source side.
        return Grid1D::make(n, -1.6 * half, 0.4 * half);
    }
    return Grid1D::make(n, -half, half);
}

ComplexField make_initial_state(const InitialStateSpec& spec, const Grid1D& grid) {
    if (!(spec.sigma_nm > 0.0)) fail(ErrorCode::bad_argument, "sigma must be positive");
    if (!(spec.alpha >= 0.0 && spec.alpha <= 1.0)) fail(ErrorCode::bad_argument, "alpha must lie in [0, 1]");
    if (spec.sigma_nm < 2.0 * grid.spacing())
        fail(ErrorCode::under_resolved,
             "under-resolved: sigma = " + std::to_string(spec.sigma_nm) + " nm < 2 grid spacings");

    const bool double_slit = spec.kind != SlitKind::shutter;
    if (double_slit) {
        if (!(spec.separation_nm > 0.0)) fail(ErrorCode::bad_argument, "slit separation must be positive");
        if (!(spec.sigma_nm < spec.separation_nm / 4.0))
            fail(ErrorCode::bad_argument, "sigma must stay below separation/4 so the peaks do not overlap");
        double edge = 0.5 * spec.separation_nm + 6.0 * spec.sigma_nm;
        if (-edge < grid.x_min || edge > grid.x_max)
            fail(ErrorCode::geometry, "initial peaks (with 6 sigma margin) fall outside the grid");
    }

    ComplexField field;
    field.grid = grid;
    field.amp.resize(static_cast<std::size_t>(grid.n));

    const double p0 = units::momentum_to_internal(spec.carrier_p0_eV_fs_per_nm);
    const double phi = analytic::fold_phase(spec.phase);
    const std::complex<double> second_weight =
        (1.0 - spec.alpha) * std::exp(std::complex<double>(0.0, -phi));

    for (int i = 0; i < grid.n; ++i) {
        double x = grid.x(i);
        std::complex<double> a;
        switch (spec.kind) {
        case SlitKind::space_double_slit:
        case SlitKind::weighted_double_slit:
        case SlitKind::time_double_slit: {
            double g_plus = gauss_amp(x - 0.5 * spec.separation_nm, spec.sigma_nm);
            double g_minus = gauss_amp(x + 0.5 * spec.separation_nm, spec.sigma_nm);
            a = spec.alpha * g_plus + second_weight * g_minus;
            break;
        }
        case SlitKind::shutter: {
            // theta(-z) smoothed over sigma; the far end of the train is rolled off
            // over a wider scale so its spectrum stays close to the carrier.
            double far = grid.x_min + 0.1 * grid.extent();
            double far_width = 0.02 * grid.extent();
            double amp = 0.5 * std::erfc(x / (std::numbers::sqrt2 * spec.sigma_nm));
            amp *= 0.5 * std::erfc((far - x) / (std::numbers::sqrt2 * far_width));
            a = amp;
            break;
        }
        }
        if (p0 != 0.0) a *= std::exp(std::complex<double>(0.0, p0 * x));
        field.amp[static_cast<std::size_t>(i)] = a;
    }
    field.normalize();
    field.band_center_internal = p0;
    field.band_halfwidth_internal = 6.0 / spec.sigma_nm; // p0 +- 6 hbar/sigma window
    return field;
}

ComplexField evolve_free(const ComplexField& field, double t_fs, const Particle& particle) {
    if (t_fs < 0.0) fail(ErrorCode::domain, "free evolution requires t >= 0");
    if (field.band_center_internal) {
        double needed = std::abs(*field.band_center_internal) + *field.band_halfwidth_internal;
        if (needed > field.grid.nyquist_internal())
            fail(ErrorCode::momentum_window,
                 "momentum window: grid Nyquist cannot hold p0 +- 6 hbar/sigma; refine the grid");
    }
    ComplexField out = field;
    if (t_fs == 0.0) return out;

    double t = units::time_to_internal(t_fs);
    double half_t_over_m = 0.5 * t / particle.mass_internal();

    fft_inplace(out.amp, FFTW_FORWARD);
    for (int k = 0; k < out.grid.n; ++k) {
        double p = out.grid.p_internal(k);
        out.amp[static_cast<std::size_t>(k)] *= std::exp(std::complex<double>(0.0, -half_t_over_m * p * p));
    }
    fft_inplace(out.amp, FFTW_BACKWARD);
    double inv_n = 1.0 / out.grid.n;
    for (auto& a : out.amp) a *= inv_n;
    return out;
}

Series density(const ComplexField& field) {
    Series s;
    s.x_name = "x";
    s.x_unit = "nm";
    s.y_name = "density";
    s.y_unit = "1/nm";
    s.reserve(static_cast<std::size_t>(field.grid.n));
    for (int i = 0; i < field.grid.n; ++i)
        s.push_back(field.grid.x(i), std::norm(field.amp[static_cast<std::size_t>(i)]));
    return s;
}

Series momentum_density(const ComplexField& field) {
    auto work = field.amp;
    fft_inplace(work, FFTW_FORWARD);
    const int n = field.grid.n;
    const double dx = field.grid.spacing();
    // Phi(p_k) = dx/sqrt(2 pi) * sum psi_j e^{-i p_k x_j}; the x_min phase drops out of |Phi|^2.
    const double scale = dx * dx / kTwoPi;

    Series s;
    s.x_name = "p";
    s.x_unit = "eV*fs/nm";
    s.y_name = "density";
    s.y_unit = "nm/(eV*fs)";
    s.reserve(static_cast<std::size_t>(n));
    for (int k = n / 2; k < n / 2 + n; ++k) {
        int kk = k % n;
        double p = field.grid.p_internal(kk);
        s.push_back(units::momentum_from_internal(p),
                    std::norm(work[static_cast<std::size_t>(kk)]) * scale / units::kMomentumUnit_eV_fs_per_nm);
    }
    return s;
}

Series probability_current(const ComplexField& field, const Particle& particle) {
    auto work = field.amp;
    fft_inplace(work, FFTW_FORWARD);
    for (int k = 0; k < field.grid.n; ++k)
        work[static_cast<std::size_t>(k)] *= std::complex<double>(0.0, field.grid.p_internal(k));
    fft_inplace(work, FFTW_BACKWARD);

    const double inv_n = 1.0 / field.grid.n;
    const double inv_m = 1.0 / particle.mass_internal();
    Series s;
    s.x_name = "x";
    s.x_unit = "nm";
    s.y_name = "current";
    s.y_unit = "1/fs";
    s.reserve(static_cast<std::size_t>(field.grid.n));
    for (int i = 0; i < field.grid.n; ++i) {
        auto dpsi = work[static_cast<std::size_t>(i)] * inv_n;
        double j = inv_m * std::imag(std::conj(field.amp[static_cast<std::size_t>(i)]) * dpsi);
        s.push_back(field.grid.x(i), j / units::kTimeUnit_fs);
    }
    return s;
}

Series fixed_position_density_series(const ComplexField& initial, double x0_nm,
                                     const std::vector<double>& times_fs, const Particle& particle) {
    auto spectrum = initial.amp;
    fft_inplace(spectrum, FFTW_FORWARD);
    const int n = initial.grid.n;
    const double inv_n = 1.0 / n;

    // psi(x0, t) = (1/n) sum_k F_k exp(-i p_k^2 t / 2m) exp(i p_k (x0 - x_min))
    std::vector<std::complex<double>> coeff(static_cast<std::size_t>(n));
    std::vector<double> p2(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        double p = initial.grid.p_internal(k);
        coeff[static_cast<std::size_t>(k)] =
            spectrum[static_cast<std::size_t>(k)] * inv_n *
            std::exp(std::complex<double>(0.0, p * (x0_nm - initial.grid.x_min)));
        p2[static_cast<std::size_t>(k)] = p * p;
    }

    Series s;
    s.x_name = "t";
    s.x_unit = "fs";
    s.y_name = "density";
    s.y_unit = "1/nm";
    s.reserve(times_fs.size());
    const double half_over_m = 0.5 / particle.mass_internal();
    for (double t_fs : times_fs) {
        if (t_fs < 0.0) fail(ErrorCode::domain, "free evolution requires t >= 0");
        double t = units::time_to_internal(t_fs);
        std::complex<double> psi = 0.0;
        for (int k = 0; k < n; ++k) {
            double phase = -half_over_m * p2[static_cast<std::size_t>(k)] * t;
            psi += coeff[static_cast<std::size_t>(k)] * std::complex<double>(std::cos(phase), std::sin(phase));
        }
        s.push_back(t_fs, std::norm(psi));
    }
    return s;
}

double spread_sigma_nm(double sigma_nm, double t_fs, const Particle& particle) {
    double t = units::time_to_internal(t_fs);
    double r = t / (2.0 * particle.mass_internal() * sigma_nm * sigma_nm);
    return sigma_nm * std::sqrt(1.0 + r * r);
}

ComparisonReport compare_to_analytic(const Series& numeric, const Series& analytic, const Series* envelope) {
    if (numeric.size() < 3 || analytic.size() < 3)
        fail(ErrorCode::bad_argument, "comparison requires at least 3 samples per series");

    double lo = std::max(numeric.x.front(), analytic.x.front());
    double hi = std::min(numeric.x.back(), analytic.x.back());
    if (!(hi > lo)) fail(ErrorCode::bad_argument, "series windows do not overlap");

    Series num_w, ana_w;
    for (std::size_t i = 0; i < numeric.size(); ++i) {
        double x = numeric.x[i];
        if (x < lo || x > hi) continue;
        double v = numeric.y[i];
        if (envelope) {
            double e = envelope->at(x);
            if (e <= 0.0) continue;
            v /= e;
        }
        num_w.push_back(x, v);
        ana_w.push_back(x, analytic.at(x));
    }
    if (num_w.size() < 3) fail(ErrorCode::bad_argument, "overlap window too small");
    num_w = num_w.peak_normalized();
    ana_w = ana_w.peak_normalized();

    auto num_peaks = detail::refined_peak_positions(num_w, 0.05);
    auto ana_peaks = detail::refined_peak_positions(ana_w, 0.05);
    if (num_peaks.empty() != ana_peaks.empty())
        fail(ErrorCode::featureless, "no detectable peaks in one of the series");

    double peak_err = 0.0;
    for (double ap : ana_peaks) {
        double best = std::numeric_limits<double>::infinity();
        for (double np : num_peaks) best = std::min(best, std::abs(np - ap));
        if (std::isfinite(best)) peak_err = std::max(peak_err, best);
    }

    double ss = 0.0;
    for (std::size_t i = 0; i < num_w.size(); ++i) {
        double d = num_w.y[i] - ana_w.y[i];
        ss += d * d;
    }
    return {peak_err, std::sqrt(ss / num_w.size())};
}

} // namespace qslit::propagator
