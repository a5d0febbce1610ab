#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qslit/analytic.hpp"
#include "qslit/propagator.hpp"
#include "qslit/series.hpp"
#include "qslit/units.hpp"

namespace qslit::scenarios {

using units::Particle;

enum class ExperimentKind { space_double_slit, shutter, time_double_slit, weighted_double_slit };

/// What the emitted series runs over.
enum class ObservableAxis {
    time,             ///< density vs t at a fixed position
    time_over_arrival,///< shutter current ratio vs t/T at a fixed position
    energy,           ///< spectral density vs E
    momentum,         ///< spectral density vs p
    alpha             ///< visibility vs slit weight
};

struct Observation {
    ObservableAxis axis = ObservableAxis::time;
    double fixed_position_nm = 0.0; ///< z (or transverse y) of the detector, when meaningful
    double lo = 0.0;
    double hi = 0.0;
    int samples = 0;
};

/// Parameters of the optional numerically-exact oracle run.
struct NumericSpec {
    double sigma_nm = 0.0; ///< Gaussian regularization width; 0 picks the documented default
    int grid_points = 0;   ///< 0 = automatic sizing rule
};

/// A named, reproducible parameter bundle. Serializable to JSON (see README schema).
struct ScenarioSpec {
    std::string name;
    std::string description;
    ExperimentKind kind = ExperimentKind::time_double_slit;
    double mass_mc2_eV = units::kElectronMc2_eV;
    double E0_eV = 0.0;
    double separation_nm = 0.0; ///< space kinds
    double delay_fs = 0.0;      ///< time kind
    double phase = 0.0;
    double alpha = 0.5;
    Observation observation;
    std::optional<NumericSpec> numeric;

    Particle particle() const { return Particle::from_energy(mass_mc2_eV, E0_eV); }
    analytic::SpaceSlitConfig space_config() const { return {separation_nm, phase, alpha}; }
    analytic::TimeSlitConfig time_config() const { return {delay_fs, phase, alpha}; }
};

std::string to_json(const ScenarioSpec& spec);
ScenarioSpec spec_from_json(const std::string& text);

/// Builtin catalog reproducing the quoted figures and numbers.
const std::vector<ScenarioSpec>& builtin_scenarios();
/// Throws Error(unknown_scenario) for names not in the catalog.
const ScenarioSpec& find_scenario(const std::string& name);

/// Apply a `key=value` override (units mandatory on dimensioned values).
void apply_override(ScenarioSpec& spec, const std::string& key, const std::string& value);

struct RunResult {
    Series analytic;
    std::optional<Series> numeric;
    std::vector<Series> extras; ///< additional columns on the same abscissa
    std::map<std::string, std::string> metadata;
};

RunResult run_scenario(const ScenarioSpec& spec);

/// Rebuild the spec recorded in an emitted file's provenance block.
ScenarioSpec spec_from_provenance(const std::map<std::string, std::string>& provenance);

// --- Event accumulation --------------------------------------------------------

struct EventHistogram {
    std::vector<double> edges;         ///< size counts.size() + 1
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;
};

/// Draw n_events independent samples from the normalized density by inverse-CDF
/// sampling of the counter-based stream; deterministic for a fixed seed.
EventHistogram accumulate_events(const Series& density, std::uint64_t n_events, std::uint64_t seed);

// --- Series analysis -----------------------------------------------------------

struct PeakReport {
    int count = 0;
    std::vector<double> positions;
    std::vector<double> spacings;
};

/// Local maxima with prominence >= min_prominence relative to the series maximum.
PeakReport count_peaks(const Series& series, double min_prominence);

struct OscillationIntervals {
    std::vector<double> crossing_times; ///< where the detrended signal crosses its midline
    std::vector<double> intervals;      ///< successive half-period intervals
    std::vector<double> midpoints;      ///< interval midpoints, for period-growth fits
};

/// Successive half-period intervals of an oscillatory series. The series is
/// detrended by the local envelope (interpolated maxima/minima), so slowly
/// damped signals keep their crossings. Throws Error(insufficient_oscillations)
/// when fewer than 4 midline crossings exist.
OscillationIntervals extract_oscillation_periods(const Series& series);

} // namespace qslit::scenarios
