#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "qslit/output.hpp"
#include "qslit/scenarios.hpp"

using namespace qslit;

namespace {

struct CommandResult {
    int exit_code;
    std::string stdout_text;
};

CommandResult run_cli(const std::string& args) {
    static int counter = 0;
    std::string out_file =
        "/tmp/qslit_cli_test_" + std::to_string(getpid()) + "_" + std::to_string(counter++) + ".out";
    std::string cmd = std::string(QSLIT_CLI_PATH) + " " + args + " > " + out_file + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream f(out_file);
    std::stringstream ss;
    ss << f.rdbuf();
    std::remove(out_file.c_str());
    return {WEXITSTATUS(rc), ss.str()};
}

} // namespace

TEST_CASE("CSV round trip recovers values bit-exactly") {
    auto spec = scenarios::find_scenario("wollenhaupt_energy_spectrum");
    spec.observation.samples = 101;
    auto rec = output::make_record(scenarios::run_scenario(spec));

    std::stringstream ss;
    output::write_csv(ss, rec);
    auto back = output::read_csv(ss);

    REQUIRE(back.columns == rec.columns);
    REQUIRE(back.rows() == rec.rows());
    for (std::size_t c = 0; c < rec.data.size(); ++c)
        CHECK(std::memcmp(back.data[c].data(), rec.data[c].data(), rec.rows() * sizeof(double)) == 0);
    CHECK(back.provenance.at("scenario") == "wollenhaupt_energy_spectrum");
}

TEST_CASE("emitted files regenerate identically from their own provenance") {
    auto spec = scenarios::find_scenario("lindner_energy_spectrum");
    spec.observation.samples = 201;
    auto rec = output::make_record(scenarios::run_scenario(spec));
    std::stringstream ss;
    output::write_csv(ss, rec);
    auto parsed = output::read_csv(ss);

    auto rebuilt_spec = scenarios::spec_from_provenance(parsed.provenance);
    auto rec2 = output::make_record(scenarios::run_scenario(rebuilt_spec));
    std::stringstream ss2;
    output::write_csv(ss2, rec2);
    CHECK(ss.str() == ss2.str());
}

TEST_CASE("JSON output carries meta and series") {
    auto spec = scenarios::find_scenario("complementarity_sweep");
    spec.observation.samples = 11;
    auto rec = output::make_record(scenarios::run_scenario(spec));
    std::stringstream ss;
    output::write_json(ss, rec);
    auto text = ss.str();
    CHECK(text.find("\"meta\"") != std::string::npos);
    CHECK(text.find("\"series\"") != std::string::npos);
    CHECK(text.find("visibility[1]") != std::string::npos);
}

TEST_CASE("cli: scenario csv output hits 0.25 at t/T = 1") {
    auto r = run_cli("scenario fig1_shutter --format csv");
    REQUIRE(r.exit_code == 0);
    std::stringstream ss(r.stdout_text);
    auto rec = output::read_csv(ss);
    bool found = false;
    for (std::size_t i = 0; i < rec.rows(); ++i) {
        if (std::abs(rec.data[0][i] - 1.0) < 1e-12) {
            CHECK(std::abs(rec.data[1][i] - 0.25) < 1e-9);
            found = true;
        }
    }
    CHECK(found);
}

TEST_CASE("cli: lindner spectrum has seven peaks") {
    auto r = run_cli("scenario lindner_energy_spectrum");
    REQUIRE(r.exit_code == 0);
    std::stringstream ss(r.stdout_text);
    auto rec = output::read_csv(ss);
    Series s;
    s.x = rec.data[0];
    s.y = rec.data[1];
    CHECK(scenarios::count_peaks(s, 0.5).count == 7);
}

TEST_CASE("cli: unknown scenario exits 2") {
    CHECK(run_cli("scenario nonexistent").exit_code == 2);
}

TEST_CASE("cli: eval operations") {
    auto spacing = run_cli("eval peak-spacing --tau 96fs");
    REQUIRE(spacing.exit_code == 0);
    CHECK(std::stod(spacing.stdout_text) == doctest::Approx(0.0430799).epsilon(1e-4));

    auto vis = run_cli("eval visibility --alpha 0.5");
    REQUIRE(vis.exit_code == 0);
    CHECK(std::stod(vis.stdout_text) == doctest::Approx(1.0));

    auto disp = run_cli("eval displacement --energy 0.3eV --t 900fs");
    REQUIRE(disp.exit_code == 0);
    CHECK(std::stod(disp.stdout_text) == doctest::Approx(293.0).epsilon(0.01));

    CHECK(run_cli("eval displacement --energy 0.3 --t 900fs").exit_code == 2); // bare number
    CHECK(run_cli("eval peak-spacing").exit_code == 2);                        // missing parameter
    CHECK(run_cli("eval frobnicate").exit_code == 2);                          // unknown op
}

TEST_CASE("cli: list names every builtin") {
    auto r = run_cli("list");
    REQUIRE(r.exit_code == 0);
    for (const auto& s : scenarios::builtin_scenarios())
        CHECK(r.stdout_text.find(s.name) != std::string::npos);
}

TEST_CASE("cli: dump-spec emits loadable JSON") {
    auto r = run_cli("scenario fig2_time_slit --dump-spec");
    REQUIRE(r.exit_code == 0);
    auto spec = scenarios::spec_from_json(r.stdout_text);
    CHECK(spec.name == "fig2_time_slit");
    CHECK(spec.delay_fs == doctest::Approx(120.0));
}

TEST_CASE("cli: seeded event histograms are reproducible") {
    auto r1 = run_cli("scenario complementarity_sweep --events 5000 --seed 7");
    auto r2 = run_cli("scenario complementarity_sweep --events 5000 --seed 7");
    REQUIRE(r1.exit_code == 0);
    CHECK(r1.stdout_text == r2.stdout_text);
}
