#include "qslit/scenarios.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "qslit/detail/peaks.hpp"
#include "qslit/error.hpp"
#include "qslit/stats.hpp"

namespace qslit::scenarios {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& s) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        fail(ErrorCode::bad_argument, "cannot parse number '" + s + "'");
    }
}

std::string kind_name(ExperimentKind k) {
    switch (k) {
    case ExperimentKind::space_double_slit: return "space_double_slit";
    case ExperimentKind::shutter: return "shutter";
    case ExperimentKind::time_double_slit: return "time_double_slit";
    case ExperimentKind::weighted_double_slit: return "weighted_double_slit";
    }
    return "?";
}

ExperimentKind kind_from_name(const std::string& s) {
    if (s == "space_double_slit") return ExperimentKind::space_double_slit;
    if (s == "shutter") return ExperimentKind::shutter;
    if (s == "time_double_slit") return ExperimentKind::time_double_slit;
    if (s == "weighted_double_slit") return ExperimentKind::weighted_double_slit;
    fail(ErrorCode::bad_argument, "unknown experiment kind '" + s + "'");
}

std::string axis_name(ObservableAxis a) {
    switch (a) {
    case ObservableAxis::time: return "time";
    case ObservableAxis::time_over_arrival: return "time_over_arrival";
    case ObservableAxis::energy: return "energy";
    case ObservableAxis::momentum: return "momentum";
    case ObservableAxis::alpha: return "alpha";
    }
    return "?";
}

ObservableAxis axis_from_name(const std::string& s) {
    if (s == "time") return ObservableAxis::time;
    if (s == "time_over_arrival") return ObservableAxis::time_over_arrival;
    if (s == "energy") return ObservableAxis::energy;
    if (s == "momentum") return ObservableAxis::momentum;
    if (s == "alpha") return ObservableAxis::alpha;
    fail(ErrorCode::bad_argument, "unknown observation axis '" + s + "'");
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = lo + (hi - lo) * i / (n - 1);
    return v;
}

double default_sigma_nm(const ScenarioSpec& spec) {
    if (spec.kind == ExperimentKind::shutter) {
        auto kin = units::derived_kinematics(spec.particle());
        return kin.lambdaB_nm / 10.0;
    }
    double a = spec.kind == ExperimentKind::time_double_slit
                   ? spec.particle().v0_nm_per_fs() * spec.delay_fs
                   : spec.separation_nm;
    return a / 20.0;
}

void add_constants(std::map<std::string, std::string>& meta) {
    meta["constants.hbar_c_eV_nm"] = fmt17(units::kHbarC_eV_nm);
    meta["constants.c_nm_per_fs"] = fmt17(units::kC_nm_per_fs);
    meta["constants.electron_mc2_eV"] = fmt17(units::kElectronMc2_eV);
    meta["constants.hbar_eV_fs"] = fmt17(units::kHbar_eV_fs);
    meta["constants.h_eV_fs"] = fmt17(units::kH_eV_fs);
}

void add_spec(std::map<std::string, std::string>& meta, const ScenarioSpec& spec) {
    meta["scenario"] = spec.name;
    meta["kind"] = kind_name(spec.kind);
    meta["param.mass_mc2_eV"] = fmt17(spec.mass_mc2_eV);
    meta["param.E0_eV"] = fmt17(spec.E0_eV);
    meta["param.separation_nm"] = fmt17(spec.separation_nm);
    meta["param.delay_fs"] = fmt17(spec.delay_fs);
    meta["param.phase_rad"] = fmt17(spec.phase);
    meta["param.alpha"] = fmt17(spec.alpha);
    meta["observation.axis"] = axis_name(spec.observation.axis);
    meta["observation.fixed_position_nm"] = fmt17(spec.observation.fixed_position_nm);
    meta["observation.lo"] = fmt17(spec.observation.lo);
    meta["observation.hi"] = fmt17(spec.observation.hi);
    meta["observation.samples"] = std::to_string(spec.observation.samples);
    if (spec.numeric) {
        meta["numeric.sigma_nm"] = fmt17(spec.numeric->sigma_nm);
        meta["numeric.grid_points"] = std::to_string(spec.numeric->grid_points);
    }
    meta["tool"] = "qslit 1.0.0";
}

void add_particle_derived(std::map<std::string, std::string>& meta, const Particle& p) {
    meta["derived.p0_eV_fs_per_nm"] = fmt17(p.p0_eV_fs_per_nm());
    meta["derived.v0_nm_per_fs"] = fmt17(p.v0_nm_per_fs());
    if (p.p0_internal() > 0.0) {
        auto kin = units::derived_kinematics(p);
        meta["derived.lambdaB_nm"] = fmt17(kin.lambdaB_nm);
    }
}

RunResult run_shutter_ratio(const ScenarioSpec& spec) {
    const Particle p = spec.particle();
    const auto kin = units::derived_kinematics(p);
    const double Z = spec.observation.fixed_position_nm;
    const double T = kin.arrival_time_fs(Z);

    RunResult r;
    r.analytic.x_name = "t_over_T";
    r.analytic.x_unit = "1";
    r.analytic.y_name = "current_ratio";
    r.analytic.y_unit = "1";
    auto xs = linspace(spec.observation.lo, spec.observation.hi, spec.observation.samples);
    for (double x : xs) r.analytic.push_back(x, analytic::shutter_current_ratio(Z, x * T, p));

    if (spec.numeric) {
        double sigma = spec.numeric->sigma_nm > 0.0 ? spec.numeric->sigma_nm : default_sigma_nm(spec);
        auto init_spec = propagator::InitialStateSpec::shutter(p, sigma);
        auto grid = propagator::auto_grid(init_spec, p, spec.observation.hi * T);
        if (spec.numeric->grid_points > 0)
            grid = propagator::Grid1D::make(spec.numeric->grid_points, grid.x_min, grid.x_max);
        auto psi0 = propagator::make_initial_state(init_spec, grid);

        // Stationary reference current: v0 times the plateau density of the train.
        auto rho0 = propagator::density(psi0);
        double z_ref = grid.x_min + 0.45 * grid.extent(); // deep interior, left of the shutter edge
        double j_stat = p.v0_nm_per_fs() * rho0.at(z_ref);

        Series num;
        num.x_name = "t_over_T";
        num.x_unit = "1";
        num.y_name = "current_ratio_numeric";
        num.y_unit = "1";
        for (double x : xs) {
            auto evolved = propagator::evolve_free(psi0, x * T, p);
            auto j = propagator::probability_current(evolved, p);
            num.push_back(x, j.at(Z) / j_stat);
        }
        r.numeric = std::move(num);
        r.metadata["numeric.grid_n"] = std::to_string(grid.n);
        r.metadata["numeric.grid_x_min_nm"] = fmt17(grid.x_min);
        r.metadata["numeric.grid_x_max_nm"] = fmt17(grid.x_max);
        r.metadata["numeric.resolved_sigma_nm"] = fmt17(sigma);
    }

    r.metadata["derived.arrival_time_T_fs"] = fmt17(T);
    r.metadata["derived.ratio_at_T"] = fmt17(analytic::shutter_current_ratio(Z, T, p));
    return r;
}

RunResult run_time_slit_time_series(const ScenarioSpec& spec) {
    const Particle p = spec.particle();
    const auto cfg = spec.time_config();
    const auto kin = units::derived_kinematics(p);
    const double z = spec.observation.fixed_position_nm;

    RunResult r;
    r.analytic.x_name = "t";
    r.analytic.x_unit = "fs";
    r.analytic.y_name = "relative_density";
    r.analytic.y_unit = "1";
    Series env;
    env.x_name = "t";
    env.x_unit = "fs";
    env.y_name = "envelope";
    env.y_unit = "1/fs^3";
    auto ts = linspace(spec.observation.lo, spec.observation.hi, spec.observation.samples);
    for (double t : ts) {
        auto d = analytic::time_slit_spacetime_density(z, t, cfg, p);
        r.analytic.push_back(t, d.relative);
        env.push_back(t, d.envelope_per_fs3);
    }
    r.extras.push_back(std::move(env));

    if (spec.numeric) {
        double sigma = spec.numeric->sigma_nm > 0.0 ? spec.numeric->sigma_nm : default_sigma_nm(spec);
        auto init_spec = propagator::InitialStateSpec::time_double_slit(cfg, p, sigma);
        auto grid = propagator::auto_grid(init_spec, p, spec.observation.hi);
        if (spec.numeric->grid_points > 0)
            grid = propagator::Grid1D::make(spec.numeric->grid_points, grid.x_min, grid.x_max);
        auto psi0 = propagator::make_initial_state(init_spec, grid);
        r.numeric = propagator::fixed_position_density_series(psi0, z, ts, p);
        r.numeric->y_name = "numeric_density";
        r.metadata["numeric.grid_n"] = std::to_string(grid.n);
        r.metadata["numeric.grid_x_min_nm"] = fmt17(grid.x_min);
        r.metadata["numeric.grid_x_max_nm"] = fmt17(grid.x_max);
        r.metadata["numeric.resolved_sigma_nm"] = fmt17(sigma);
    }

    const double T = kin.arrival_time_fs(z);
    r.metadata["derived.arrival_time_T_fs"] = fmt17(T);
    r.metadata["derived.equivalent_separation_nm"] = fmt17(kin.v0_nm_per_fs * spec.delay_fs);
    r.metadata["derived.xi_at_T_fs"] = fmt17(analytic::time_slit_period_fs(z, T, cfg, p));
    r.metadata["derived.peak_spacing_eV"] = fmt17(analytic::energy_peak_spacing_eV(cfg));
    for (double t : {350.0, 900.0, 5000.0})
        r.metadata["derived.wavefront_z_at_" + std::to_string(static_cast<int>(t)) + "fs_nm"] =
            fmt17(analytic::classical_displacement_nm(t, p));
    return r;
}

RunResult run_energy_spectrum(const ScenarioSpec& spec) {
    const Particle p = spec.particle();
    const auto cfg = spec.time_config();

    RunResult r;
    r.analytic.x_name = "E";
    r.analytic.x_unit = "eV";
    r.analytic.y_name = "relative_density";
    r.analytic.y_unit = "1";
    auto es = linspace(spec.observation.lo, spec.observation.hi, spec.observation.samples);
    for (double E : es) {
        double p_of_E =
            units::momentum_from_internal(std::sqrt(2.0 * p.mass_internal() * units::energy_to_internal(E)));
        r.analytic.push_back(E, analytic::time_slit_momentum_density(p_of_E, cfg, p));
    }
    r.metadata["derived.peak_spacing_eV"] = fmt17(analytic::energy_peak_spacing_eV(cfg));
    int n_in_window = 0;
    for (int n = -16; n <= 16; ++n) {
        try {
            double En = analytic::time_slit_peak_energy_eV(n, cfg, p);
            if (En >= spec.observation.lo && En <= spec.observation.hi) {
                r.metadata["derived.peak_E" + std::to_string(n) + "_eV"] = fmt17(En);
                ++n_in_window;
            }
        } catch (const Error&) {
            // below-threshold orders simply do not appear in the window
        }
    }
    r.metadata["derived.peaks_in_window"] = std::to_string(n_in_window);
    return r;
}

RunResult run_space_slit_time_series(const ScenarioSpec& spec) {
    const Particle p = spec.particle();
    const auto cfg = spec.space_config();
    const auto kin = units::derived_kinematics(p);
    const double y = spec.observation.fixed_position_nm;

    RunResult r;
    r.analytic.x_name = "t";
    r.analytic.x_unit = "fs";
    r.analytic.y_name = "relative_density";
    r.analytic.y_unit = "1";
    Series env;
    env.x_name = "t";
    env.x_unit = "fs";
    env.y_name = "envelope";
    env.y_unit = "1/fs^3";
    auto ts = linspace(spec.observation.lo, spec.observation.hi, spec.observation.samples);
    for (double t : ts) {
        auto d = analytic::space_slit_spacetime_density(y, t, cfg, p);
        r.analytic.push_back(t, d.relative);
        env.push_back(t, d.envelope_per_fs3);
    }
    r.extras.push_back(std::move(env));

    r.metadata["derived.lambdaB_over_a"] = fmt17(kin.lambdaB_nm / cfg.separation_nm);
    double theta1 = analytic::space_slit_maxima_angle(1, cfg, p);
    r.metadata["derived.first_order_angle_rad"] = fmt17(theta1);
    r.metadata["derived.minus_first_order_angle_rad"] = fmt17(analytic::space_slit_maxima_angle(-1, cfg, p));
    analytic::SpaceSlitConfig shifted = cfg;
    shifted.phase = kPi / 2.0;
    r.metadata["derived.pattern_shift_angle_rad_at_phi_pi_2"] =
        fmt17(analytic::space_slit_maxima_angle(0, shifted, p));
    // Detector position implied by the observation point: y = Z tan(theta_1)
    double Z = y / std::tan(theta1);
    double T0 = kin.arrival_time_fs(Z);
    r.metadata["derived.source_detector_Z_nm"] = fmt17(Z);
    r.metadata["derived.arrival_time_T0_fs"] = fmt17(T0);
    r.metadata["derived.xi_at_T0_fs"] = fmt17(analytic::space_slit_period_fs(y, T0, cfg, p));
    for (int n = 1; n <= 3; ++n) r.metadata["derived.T0_over_" + std::to_string(n) + "_fs"] = fmt17(T0 / n);
    return r;
}

RunResult run_visibility_sweep(const ScenarioSpec& spec) {
    RunResult r;
    r.analytic.x_name = "alpha";
    r.analytic.x_unit = "1";
    r.analytic.y_name = "visibility";
    r.analytic.y_unit = "1";
    Series measured;
    measured.x_name = "alpha";
    measured.x_unit = "1";
    measured.y_name = "visibility_measured";
    measured.y_unit = "1";

    auto alphas = linspace(spec.observation.lo, spec.observation.hi, spec.observation.samples);
    // One full fringe period starting on a pattern maximum, so the scan grid
    // carries the exact extrema of the transverse-momentum pattern.
    const double period = units::kH_eV_fs / spec.separation_nm;
    const double p_lo = analytic::fold_phase(spec.phase) / (2.0 * kPi) * period;
    for (double a : alphas) {
        analytic::SpaceSlitConfig cfg{spec.separation_nm, spec.phase, a};
        double mx = 0.0, mn = std::numeric_limits<double>::infinity();
        const int n_scan = 400;
        for (int i = 0; i <= n_scan; ++i) {
            double v = analytic::weighted_slit_momentum_density(p_lo + period * i / n_scan, cfg);
            mx = std::max(mx, v);
            mn = std::min(mn, v);
        }
        measured.push_back(a, (mx - mn) / (mx + mn));
        r.analytic.push_back(a, analytic::fringe_visibility(a));
    }
    r.extras.push_back(std::move(measured));
    return r;
}

} // namespace

RunResult run_scenario(const ScenarioSpec& spec) {
    if (spec.observation.samples < 2) fail(ErrorCode::bad_argument, "observation needs at least 2 samples");
    RunResult r;
    switch (spec.observation.axis) {
    case ObservableAxis::time_over_arrival:
        r = run_shutter_ratio(spec);
        break;
    case ObservableAxis::time:
        if (!(spec.observation.lo > 0.0)) fail(ErrorCode::bad_argument, "time range must be strictly positive");
        r = spec.kind == ExperimentKind::time_double_slit ? run_time_slit_time_series(spec)
                                                          : run_space_slit_time_series(spec);
        break;
    case ObservableAxis::energy:
    case ObservableAxis::momentum:
        r = run_energy_spectrum(spec);
        break;
    case ObservableAxis::alpha:
        r = run_visibility_sweep(spec);
        break;
    }
    add_spec(r.metadata, spec);
    add_constants(r.metadata);
    add_particle_derived(r.metadata, spec.particle());
    return r;
}

const std::vector<ScenarioSpec>& builtin_scenarios() {
    static const std::vector<ScenarioSpec> catalog = [] {
        std::vector<ScenarioSpec> v;

        {
            ScenarioSpec s;
            s.name = "fig1_shutter";
            s.description = "Transient-to-stationary current ratio behind a suddenly opened shutter "
                            "(0.3 eV electron, detector 100 nm downstream), against t/T.";
            s.kind = ExperimentKind::shutter;
            s.E0_eV = 0.3;
            s.observation = {ObservableAxis::time_over_arrival, 100.0, 0.2, 3.0, 561};
            v.push_back(s);
        }
        {
            ScenarioSpec s;
            s.name = "fig2_time_slit";
            s.description = "Time double slit transient at Z = 1626 nm from the classical arrival time "
                            "T = 5000 fs to 2T (0.3 eV electron, 120 fs delay), analytic and numeric.";
            s.kind = ExperimentKind::time_double_slit;
            s.E0_eV = 0.3;
            s.delay_fs = 120.0;
            s.observation = {ObservableAxis::time, 1626.0, 5000.0, 10000.0, 801};
            s.numeric = NumericSpec{0.0, 0};
            v.push_back(s);
        }
        {
            ScenarioSpec s;
            s.name = "lindner_energy_spectrum";
            s.description = "Energy comb of a 2 fs time double slit over a 14 eV window: "
                            "seven peaks spaced by h/tau.";
            s.kind = ExperimentKind::time_double_slit;
            s.E0_eV = 100.0;
            s.delay_fs = 2.0;
            s.observation = {ObservableAxis::energy, 0.0, 93.0, 107.0, 2801};
            v.push_back(s);
        }
        {
            ScenarioSpec s;
            s.name = "wollenhaupt_energy_spectrum";
            s.description = "Energy comb of a 96 fs time double slit (0.5 eV electrons): "
                            "peaks spaced by h/tau = 43 meV.";
            s.kind = ExperimentKind::time_double_slit;
            s.E0_eV = 0.5;
            s.delay_fs = 96.0;
            s.observation = {ObservableAxis::energy, 0.0, 0.355, 0.665, 3101};
            v.push_back(s);
        }
        {
            ScenarioSpec s;
            s.name = "tonomura_space_slit";
            s.description = "Arrival-time oscillation predicted for a Tonomura-type build-up experiment "
                            "(50 keV electrons, 1 um slit spacing, 1.5 m flight path), sampled at the "
                            "first secondary fringe.";
            s.kind = ExperimentKind::space_double_slit;
            s.E0_eV = 50000.0;
            s.separation_nm = 1000.0;
            const Particle p = Particle::electron_with_energy(50000.0);
            const auto kin = units::derived_kinematics(p);
            const double Z = 1.5e9; // 1.5 m
            const double theta1 = std::asin(kin.lambdaB_nm / 1000.0);
            const double T0 = kin.arrival_time_fs(Z);
            s.observation = {ObservableAxis::time, Z * std::tan(theta1), 0.3 * T0, 3.0 * T0, 2001};
            v.push_back(s);
        }
        {
            ScenarioSpec s;
            s.name = "complementarity_sweep";
            s.description = "Fringe visibility against the slit weight alpha for a weighted space "
                            "double slit: V = 4 alpha (1-alpha) / (1 + (2 alpha - 1)^2).";
            s.kind = ExperimentKind::weighted_double_slit;
            s.E0_eV = 0.3;
            s.separation_nm = 10.0;
            s.observation = {ObservableAxis::alpha, 0.0, 0.0, 1.0, 101};
            v.push_back(s);
        }
        return v;
    }();
    return catalog;
}

const ScenarioSpec& find_scenario(const std::string& name) {
    for (const auto& s : builtin_scenarios())
        if (s.name == name) return s;
    fail(ErrorCode::unknown_scenario, "unknown scenario '" + name + "' (see `qslit list`)");
}

void apply_override(ScenarioSpec& spec, const std::string& key, const std::string& value) {
    auto quantity_in = [&](const char* unit) {
        auto q = units::parse_quantity(value);
        return units::convert(q.value, q.unit, units::unit(unit));
    };
    if (key == "E0" || key == "energy") {
        spec.E0_eV = quantity_in("eV");
    } else if (key == "mass") {
        spec.mass_mc2_eV = quantity_in("eV");
    } else if (key == "tau" || key == "delay") {
        spec.delay_fs = quantity_in("fs");
    } else if (key == "a" || key == "separation") {
        spec.separation_nm = quantity_in("nm");
    } else if (key == "phase") {
        spec.phase = quantity_in("rad");
    } else if (key == "alpha") {
        spec.alpha = parse_double(value);
    } else if (key == "position" || key == "z" || key == "y") {
        spec.observation.fixed_position_nm = quantity_in("nm");
    } else if (key == "lo") {
        spec.observation.lo = parse_double(value);
    } else if (key == "hi") {
        spec.observation.hi = parse_double(value);
    } else if (key == "samples") {
        spec.observation.samples = static_cast<int>(parse_double(value));
    } else if (key == "sigma") {
        if (!spec.numeric) spec.numeric = NumericSpec{};
        spec.numeric->sigma_nm = quantity_in("nm");
    } else if (key == "grid_points") {
        if (!spec.numeric) spec.numeric = NumericSpec{};
        spec.numeric->grid_points = static_cast<int>(parse_double(value));
    } else {
        fail(ErrorCode::bad_argument, "unknown override key '" + key + "'");
    }
}

std::string to_json(const ScenarioSpec& spec) {
    nlohmann::json j;
    j["name"] = spec.name;
    j["description"] = spec.description;
    j["kind"] = kind_name(spec.kind);
    j["particle"] = {{"mass_mc2_eV", spec.mass_mc2_eV}, {"E0_eV", spec.E0_eV}};
    j["config"] = {{"separation_nm", spec.separation_nm},
                   {"delay_fs", spec.delay_fs},
                   {"phase_rad", spec.phase},
                   {"alpha", spec.alpha}};
    j["observation"] = {{"axis", axis_name(spec.observation.axis)},
                        {"fixed_position_nm", spec.observation.fixed_position_nm},
                        {"lo", spec.observation.lo},
                        {"hi", spec.observation.hi},
                        {"samples", spec.observation.samples}};
    if (spec.numeric)
        j["numeric"] = {{"sigma_nm", spec.numeric->sigma_nm}, {"grid_points", spec.numeric->grid_points}};
    return j.dump(2);
}

ScenarioSpec spec_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const std::exception& e) {
        fail(ErrorCode::bad_argument, std::string("invalid scenario JSON: ") + e.what());
    }
    ScenarioSpec s;
    try {
        s.name = j.at("name").get<std::string>();
        s.description = j.value("description", "");
        s.kind = kind_from_name(j.at("kind").get<std::string>());
        s.mass_mc2_eV = j.at("particle").value("mass_mc2_eV", units::kElectronMc2_eV);
        s.E0_eV = j.at("particle").at("E0_eV").get<double>();
        const auto& c = j.at("config");
        s.separation_nm = c.value("separation_nm", 0.0);
        s.delay_fs = c.value("delay_fs", 0.0);
        s.phase = c.value("phase_rad", 0.0);
        s.alpha = c.value("alpha", 0.5);
        const auto& o = j.at("observation");
        s.observation.axis = axis_from_name(o.at("axis").get<std::string>());
        s.observation.fixed_position_nm = o.value("fixed_position_nm", 0.0);
        s.observation.lo = o.at("lo").get<double>();
        s.observation.hi = o.at("hi").get<double>();
        s.observation.samples = o.at("samples").get<int>();
        if (j.contains("numeric"))
            s.numeric = NumericSpec{j["numeric"].value("sigma_nm", 0.0), j["numeric"].value("grid_points", 0)};
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::bad_argument, std::string("scenario JSON missing fields: ") + e.what());
    }
    return s;
}

ScenarioSpec spec_from_provenance(const std::map<std::string, std::string>& provenance) {
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = provenance.find(key);
        if (it == provenance.end()) fail(ErrorCode::bad_argument, "provenance missing key '" + key + "'");
        return it->second;
    };
    ScenarioSpec s;
    s.name = get("scenario");
    s.kind = kind_from_name(get("kind"));
    s.mass_mc2_eV = parse_double(get("param.mass_mc2_eV"));
    s.E0_eV = parse_double(get("param.E0_eV"));
    s.separation_nm = parse_double(get("param.separation_nm"));
    s.delay_fs = parse_double(get("param.delay_fs"));
    s.phase = parse_double(get("param.phase_rad"));
    s.alpha = parse_double(get("param.alpha"));
    s.observation.axis = axis_from_name(get("observation.axis"));
    s.observation.fixed_position_nm = parse_double(get("observation.fixed_position_nm"));
    s.observation.lo = parse_double(get("observation.lo"));
    s.observation.hi = parse_double(get("observation.hi"));
    s.observation.samples = static_cast<int>(parse_double(get("observation.samples")));
    if (provenance.count("numeric.sigma_nm"))
        s.numeric = NumericSpec{parse_double(get("numeric.sigma_nm")),
                                static_cast<int>(parse_double(get("numeric.grid_points")))};
    return s;
}

EventHistogram accumulate_events(const Series& density, std::uint64_t n_events, std::uint64_t seed) {
    if (n_events == 0) fail(ErrorCode::bad_argument, "need at least one event");
    if (density.size() < 2) fail(ErrorCode::bad_argument, "density needs at least 2 samples");

    double total = 0.0;
    for (double v : density.y) {
        if (v < 0.0) fail(ErrorCode::bad_argument, "density must be nonnegative");
        total += v;
    }
    if (!(total > 0.0)) fail(ErrorCode::sampling, "cannot sample from an all-zero density");

    std::vector<double> cdf(density.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < density.size(); ++i) {
        acc += density.y[i] / total;
        cdf[i] = acc;
    }
    cdf.back() = 1.0;

    EventHistogram h;
    h.counts.assign(density.size(), 0);
    h.edges.resize(density.size() + 1);
    for (std::size_t i = 1; i < density.size(); ++i) h.edges[i] = 0.5 * (density.x[i - 1] + density.x[i]);
    h.edges.front() = density.x.front() - 0.5 * (density.x[1] - density.x[0]);
    h.edges.back() = density.x.back() + 0.5 * (density.x[density.size() - 1] - density.x[density.size() - 2]);

    for (std::uint64_t k = 0; k < n_events; ++k) {
        double u = stats::uniform01(seed, k);
        auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t bin = std::min(static_cast<std::size_t>(it - cdf.begin()), density.size() - 1);
        ++h.counts[bin];
    }
    h.total = n_events;
    return h;
}

PeakReport count_peaks(const Series& series, double min_prominence) {
    if (series.size() < 3) fail(ErrorCode::bad_argument, "peak counting needs at least 3 points");
    PeakReport r;
    r.positions = detail::refined_peak_positions(series, min_prominence);
    r.count = static_cast<int>(r.positions.size());
    for (std::size_t i = 1; i < r.positions.size(); ++i)
        r.spacings.push_back(r.positions[i] - r.positions[i - 1]);
    return r;
}

OscillationIntervals extract_oscillation_periods(const Series& series) {
    const auto& y = series.y;
    const auto& x = series.x;
    const std::size_t n = y.size();
    if (n < 5) fail(ErrorCode::insufficient_oscillations, "series too short for period analysis");

    // Local envelope through maxima and minima; detrending keeps crossings of
    // damped signals where a global midline would fail.
    std::vector<std::size_t> maxima, minima;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (y[i] > y[i - 1] && y[i] >= y[i + 1]) maxima.push_back(i);
        if (y[i] < y[i - 1] && y[i] <= y[i + 1]) minima.push_back(i);
    }
    if (maxima.size() < 2 || minima.size() < 2)
        fail(ErrorCode::insufficient_oscillations, "insufficient oscillations: need repeated extrema");

    auto envelope_at = [&](const std::vector<std::size_t>& knots, double xi) {
        if (xi <= x[knots.front()]) return y[knots.front()];
        if (xi >= x[knots.back()]) return y[knots.back()];
        for (std::size_t j = 1; j < knots.size(); ++j) {
            if (xi <= x[knots[j]]) {
                double t = (xi - x[knots[j - 1]]) / (x[knots[j]] - x[knots[j - 1]]);
                return y[knots[j - 1]] + t * (y[knots[j]] - y[knots[j - 1]]);
            }
        }
        return y[knots.back()];
    };

    const double x_lo = std::max(x[maxima.front()], x[minima.front()]);
    const double x_hi = std::min(x[maxima.back()], x[minima.back()]);

    OscillationIntervals out;
    double prev_val = 0.0;
    bool have_prev = false;
    double prev_x = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (x[i] < x_lo || x[i] > x_hi) continue;
        double hi = envelope_at(maxima, x[i]);
        double lo = envelope_at(minima, x[i]);
        if (!(hi > lo)) continue;
        double val = (y[i] - lo) / (hi - lo) - 0.5;
        if (have_prev && val * prev_val < 0.0) {
            double t_cross = prev_x + (x[i] - prev_x) * (-prev_val) / (val - prev_val);
            out.crossing_times.push_back(t_cross);
        }
        prev_val = val;
        prev_x = x[i];
        have_prev = true;
    }
    if (out.crossing_times.size() < 4)
        fail(ErrorCode::insufficient_oscillations, "insufficient oscillations: fewer than 4 midline crossings");
    for (std::size_t i = 1; i < out.crossing_times.size(); ++i) {
        out.intervals.push_back(out.crossing_times[i] - out.crossing_times[i - 1]);
        out.midpoints.push_back(0.5 * (out.crossing_times[i] + out.crossing_times[i - 1]));
    }
    return out;
}

} // namespace qslit::scenarios
