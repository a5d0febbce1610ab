#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qslit/error.hpp"
#include "qslit/units.hpp"

using namespace qslit;
using namespace qslit::units;

TEST_CASE("pinned constants stay consistent with each other") {
    CHECK(kHbar_eV_fs == doctest::Approx(0.6582119567530948).epsilon(1e-12));
    CHECK(kH_eV_fs == doctest::Approx(4.135667695680971).epsilon(1e-12));
    // h derived from the pinned hbar*c matches the directly quoted CODATA h to 9 digits
    CHECK(std::abs(kH_eV_fs - 4.135667696) < 1e-8);
}

TEST_CASE("dimensional round trips are identity to 1e-14 relative") {
    for (double v : {1.0, 0.3, 1626.0, 5e-3, 9.9e7}) {
        for (auto d : {kEnergy, kTime, kLength, kMomentum, kVelocity, kAction}) {
            double rt = from_internal(to_internal(v, d), d);
            CHECK(std::abs(rt - v) <= 1e-14 * v);
        }
    }
    CHECK(convert(1.0, "eV", "eV") == 1.0);
    CHECK(convert(1.0, "eV", "meV") == doctest::Approx(1000.0).epsilon(1e-14));
    CHECK(convert(2.5, "um", "nm") == doctest::Approx(2500.0).epsilon(1e-14));
}

TEST_CASE("incompatible dimensions are rejected") {
    CHECK_THROWS_AS(convert(1.0, "eV", "fs"), Error);
    try {
        convert(1.0, "nm", "eV");
        FAIL("expected dimension error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::dimension_mismatch);
    }
}

TEST_CASE("quantity parsing requires a unit suffix") {
    auto q = parse_quantity("0.3eV");
    CHECK(q.value == doctest::Approx(0.3));
    CHECK(q.unit.name == "eV");
    CHECK(parse_quantity("120fs").unit.name == "fs");
    CHECK(parse_quantity("1626 nm").unit.name == "nm");
    CHECK_THROWS_AS(parse_quantity("120"), Error);
    CHECK_THROWS_AS(parse_quantity("fast"), Error);
}

TEST_CASE("h over tau reproduces the quoted peak spacings") {
    // direct division with the pinned h; the 2 fs case rounds to the quoted ~2 eV
    CHECK(kH_eV_fs / 2.0 == doctest::Approx(2.0678338478404854).epsilon(1e-12));
    CHECK(kH_eV_fs / 96.0 == doctest::Approx(0.043079871830010113).epsilon(1e-12));
}

TEST_CASE("particle invariant: E0 = p0^2 / 2m exactly") {
    auto p = Particle::electron_with_energy(0.3);
    CHECK(p.E0_internal() == p.p0_internal() * p.p0_internal() / (2.0 * p.mass_internal()));
    CHECK(p.E0_eV() == doctest::Approx(0.3).epsilon(1e-13));
    CHECK(p.mass_mc2_eV() == doctest::Approx(kElectronMc2_eV).epsilon(1e-14));

    auto q = Particle::from_momentum(kElectronMc2_eV, p.p0_eV_fs_per_nm());
    CHECK(q.E0_eV() == doctest::Approx(0.3).epsilon(1e-12));

    CHECK_THROWS_AS(Particle::from_energy(-1.0, 0.3), Error);
    CHECK_THROWS_AS(Particle::from_energy(kElectronMc2_eV, -0.3), Error);
}

TEST_CASE("derived kinematics: 0.3 eV electron wavefronts") {
    auto p = Particle::electron_with_energy(0.3);
    auto kin = derived_kinematics(p);
    // quoted wavefront positions: 113 nm @ 350 fs, 293 nm @ 900 fs, 1626 nm @ 5000 fs
    CHECK(kin.v0_nm_per_fs * 350.0 == doctest::Approx(113.0).epsilon(0.01));
    CHECK(kin.v0_nm_per_fs * 900.0 == doctest::Approx(293.0).epsilon(0.01));
    CHECK(kin.v0_nm_per_fs * 5000.0 == doctest::Approx(1626.0).epsilon(0.01));
    CHECK(kin.lambdaB_nm == doctest::Approx(2.2391372219016232).epsilon(1e-12));
    // arrival-time consistency: arrival_time(v0 t) = t
    for (double t : {1.0, 350.0, 900.0, 5000.0, 3.3e7}) {
        CHECK(kin.arrival_time_fs(kin.v0_nm_per_fs * t) == doctest::Approx(t).epsilon(1e-12));
    }
}

TEST_CASE("zero momentum is signalled") {
    auto p = Particle::electron_with_energy(0.0);
    try {
        derived_kinematics(p);
        FAIL("expected zero-momentum error");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::zero_momentum);
    }
}
