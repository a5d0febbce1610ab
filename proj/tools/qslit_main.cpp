#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "qslit/analytic.hpp"
#include "qslit/error.hpp"
#include "qslit/output.hpp"
#include "qslit/scenarios.hpp"
#include "qslit/units.hpp"
#include "qslit/validate.hpp"

namespace {

using namespace qslit;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

double quantity_in(const std::string& text, const char* unit) {
    auto q = units::parse_quantity(text);
    return units::convert(q.value, q.unit, units::unit(unit));
}

std::string pretty_energy(double eV) {
    std::ostringstream os;
    if (std::abs(eV) < 0.1)
        os << eV * 1e3 << " meV";
    else
        os << eV << " eV";
    return os.str();
}

void emit(const output::OutputRecord& record, const std::string& format, const std::string& out_path) {
    std::ostringstream buffer;
    if (format == "json")
        output::write_json(buffer, record);
    else
        output::write_csv(buffer, record);
    if (out_path.empty()) {
        std::cout << buffer.str();
        return;
    }
    std::ofstream f(out_path);
    if (!f) fail(ErrorCode::bad_argument, "cannot open output file '" + out_path + "'");
    f << buffer.str();
}

int cmd_scenario(const std::string& name, const std::string& spec_file,
                 const std::vector<std::string>& overrides, const std::string& format,
                 const std::string& out_path, bool dump_spec, std::uint64_t events, std::uint64_t seed) {
    scenarios::ScenarioSpec spec;
    if (!spec_file.empty()) {
        std::ifstream f(spec_file);
        if (!f) fail(ErrorCode::bad_argument, "cannot read spec file '" + spec_file + "'");
        std::stringstream ss;
        ss << f.rdbuf();
        spec = scenarios::spec_from_json(ss.str());
    } else {
        spec = scenarios::find_scenario(name);
    }
    for (const auto& kv : overrides) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            fail(ErrorCode::bad_argument, "override '" + kv + "' is not key=value");
        scenarios::apply_override(spec, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (dump_spec) {
        std::cout << scenarios::to_json(spec) << "\n";
        return kExitOk;
    }

    auto result = scenarios::run_scenario(spec);
    if (events > 0) {
        auto hist = scenarios::accumulate_events(result.analytic, events, seed);
        auto meta = result.metadata;
        meta["events.seed"] = std::to_string(seed);
        meta["events.requested"] = std::to_string(events);
        emit(output::make_record(hist, result.analytic, meta), format, out_path);
        return kExitOk;
    }
    emit(output::make_record(result), format, out_path);
    return kExitOk;
}

int cmd_eval(const std::string& op, const std::string& tau, const std::string& energy, const std::string& t,
             const std::string& a, const std::string& phase, double alpha, int n, const std::string& Z) {
    auto need = [](const std::string& v, const char* flag) -> const std::string& {
        if (v.empty()) fail(ErrorCode::bad_argument, std::string("missing required flag ") + flag);
        return v;
    };
    double phi = phase.empty() ? 0.0 : quantity_in(phase, "rad");

    if (op == "peak-spacing") {
        analytic::TimeSlitConfig cfg{quantity_in(need(tau, "--tau"), "fs"), phi, 0.5};
        double dE = analytic::energy_peak_spacing_eV(cfg);
        std::cout << dE << " eV (" << pretty_energy(dE) << ")\n";
    } else if (op == "visibility") {
        std::cout << analytic::fringe_visibility(alpha) << "\n";
    } else if (op == "displacement") {
        auto p = units::Particle::electron_with_energy(quantity_in(need(energy, "--energy"), "eV"));
        std::cout << analytic::classical_displacement_nm(quantity_in(need(t, "--t"), "fs"), p) << " nm\n";
    } else if (op == "maxima-angle") {
        auto p = units::Particle::electron_with_energy(quantity_in(need(energy, "--energy"), "eV"));
        analytic::SpaceSlitConfig cfg{quantity_in(need(a, "--a"), "nm"), phi, 0.5};
        std::cout << analytic::space_slit_maxima_angle(n, cfg, p) << " rad\n";
    } else if (op == "de-broglie") {
        auto p = units::Particle::electron_with_energy(quantity_in(need(energy, "--energy"), "eV"));
        std::cout << units::derived_kinematics(p).lambdaB_nm << " nm\n";
    } else if (op == "arrival-time") {
        auto p = units::Particle::electron_with_energy(quantity_in(need(energy, "--energy"), "eV"));
        std::cout << units::derived_kinematics(p).arrival_time_fs(quantity_in(need(Z, "--z"), "nm")) << " fs\n";
    } else if (op == "peak-energy") {
        auto p = units::Particle::electron_with_energy(quantity_in(need(energy, "--energy"), "eV"));
        analytic::TimeSlitConfig cfg{quantity_in(need(tau, "--tau"), "fs"), phi, 0.5};
        std::cout << analytic::time_slit_peak_energy_eV(n, cfg, p) << " eV\n";
    } else {
        fail(ErrorCode::bad_argument,
             "unknown operation '" + op +
                 "' (peak-spacing, visibility, displacement, maxima-angle, de-broglie, arrival-time, peak-energy)");
    }
    return kExitOk;
}

int cmd_validate(bool as_json, int grid_points) {
    validate::Options opt;
    opt.grid_points_override = grid_points;
    auto results = validate::run_all(opt);

    bool all_pass = true;
    if (as_json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& r : results) {
            all_pass = all_pass && r.passed;
            j.push_back({{"check", r.name},
                         {"passed", r.passed},
                         {"measured", r.measured},
                         {"threshold", r.threshold},
                         {"detail", r.detail}});
        }
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            all_pass = all_pass && r.passed;
            std::cout << (r.passed ? "PASS" : "FAIL") << "  " << r.name << "  (measured " << r.measured
                      << ", threshold " << r.threshold << ")\n      " << r.detail << "\n";
        }
        std::cout << (all_pass ? "all checks passed" : "some checks FAILED") << "\n";
    }
    return all_pass ? kExitOk : kExitValidationFailure;
}

int cmd_list() {
    for (const auto& s : scenarios::builtin_scenarios()) {
        std::cout << s.name << "\n    " << s.description << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qslit - free-particle double-slit and diffraction-in-time toolkit"};
    app.require_subcommand(1);

    auto* sc_scenario = app.add_subcommand("scenario", "run a named scenario and emit its data series");
    std::string name, spec_file, format = "csv", out_path;
    std::vector<std::string> overrides;
    bool dump_spec = false;
    std::uint64_t events = 0, seed = 1;
    sc_scenario->add_option("name", name, "catalog scenario name (see `qslit list`)");
    sc_scenario->add_option("--spec", spec_file, "load a scenario spec from a JSON file instead");
    sc_scenario->add_option("--set", overrides, "override a parameter, key=value with unit suffix (tau=96fs)");
    sc_scenario->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sc_scenario->add_option("--out", out_path, "write to a file instead of stdout");
    sc_scenario->add_flag("--dump-spec", dump_spec, "print the resolved scenario spec as JSON and exit");
    sc_scenario->add_option("--events", events, "sample N single-particle events from the analytic series");
    sc_scenario->add_option("--seed", seed, "seed of the counter-based sampler (SplitMix64)");

    auto* sc_eval = app.add_subcommand("eval", "evaluate one closed-form operation");
    std::string op, tau, energy, t, a, phase, Z;
    double alpha = 0.5;
    int order = 1;
    sc_eval->add_option("operation", op, "peak-spacing | visibility | displacement | maxima-angle | "
                                         "de-broglie | arrival-time | peak-energy")
        ->required();
    sc_eval->add_option("--tau", tau, "pulse delay, e.g. 96fs");
    sc_eval->add_option("--energy", energy, "kinetic energy, e.g. 0.3eV");
    sc_eval->add_option("--t", t, "time, e.g. 900fs");
    sc_eval->add_option("--a", a, "slit separation, e.g. 1000nm");
    sc_eval->add_option("--phase", phase, "slit phase, e.g. 1.5707rad");
    sc_eval->add_option("--alpha", alpha, "slit weight in [0, 1]");
    sc_eval->add_option("--n", order, "diffraction/spectral order");
    sc_eval->add_option("--z", Z, "detector distance, e.g. 1626nm");

    auto* sc_validate = app.add_subcommand("validate", "run the analytic-vs-numeric cross-check suite");
    bool as_json = false;
    int grid_points = 0;
    sc_validate->add_flag("--json", as_json, "machine-readable report");
    sc_validate->add_option("--grid-points", grid_points,
                            "force the numeric grids to this size (2048 demonstrates the aliasing guard)");

    auto* sc_list = app.add_subcommand("list", "list the builtin scenario catalog");

    try {
        app.parse(argc, argv);
        if (sc_scenario->parsed()) {
            if (name.empty() && spec_file.empty())
                fail(ErrorCode::bad_argument, "scenario: give a name or --spec FILE");
            return cmd_scenario(name, spec_file, overrides, format, out_path, dump_spec, events, seed);
        }
        if (sc_eval->parsed()) return cmd_eval(op, tau, energy, t, a, phase, alpha, order, Z);
        if (sc_validate->parsed()) return cmd_validate(as_json, grid_points);
        if (sc_list->parsed()) return cmd_list();
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
