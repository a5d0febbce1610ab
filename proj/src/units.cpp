#include "qslit/units.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cstdlib>

namespace qslit::units {

namespace {

const std::array<Unit, 22>& catalog() {
    static const std::array<Unit, 22> table = {{
        {"nm", kLength, 1.0},
        {"pm", kLength, 1e-3},
        {"um", kLength, 1e3},
        {"mm", kLength, 1e6},
        {"m", kLength, 1e9},
        {"angstrom", kLength, 0.1},
        {"fs", kTime, 1.0},
        {"as", kTime, 1e-3},
        {"ps", kTime, 1e3},
        {"ns", kTime, 1e6},
        {"s", kTime, 1e15},
        {"eV", kEnergy, 1.0},
        {"meV", kEnergy, 1e-3},
        {"keV", kEnergy, 1e3},
        {"MeV", kEnergy, 1e6},
        {"eV*fs/nm", kMomentum, 1.0},
        {"eV*fs", kAction, 1.0},
        {"nm/fs", kVelocity, 1.0},
        {"1/nm", kInverseLength, 1.0},
        {"rad", kDimless, 1.0},
        {"mrad", kDimless, 1e-3},
        {"1", kDimless, 1.0},
    }};
    return table;
}

} // namespace

const Unit& unit(std::string_view name) {
    for (const auto& u : catalog())
        if (u.name == name) return u;
    fail(ErrorCode::bad_argument, "unknown unit '" + std::string(name) + "'");
}

double convert(double value, const Unit& from, const Unit& to) {
    if (!(from.dim == to.dim))
        fail(ErrorCode::dimension_mismatch,
             "cannot convert " + from.name + " to " + to.name + ": incompatible dimensions");
    return value * (from.to_base / to.to_base);
}

double convert(double value, std::string_view from, std::string_view to) {
    return convert(value, unit(from), unit(to));
}

Quantity parse_quantity(std::string_view text) {
    const char* begin = text.data();
    char* end = nullptr;
    double value = std::strtod(begin, &end);
    if (end == begin)
        fail(ErrorCode::bad_argument, "cannot parse quantity '" + std::string(text) + "'");
    std::string_view suffix = text.substr(static_cast<std::size_t>(end - begin));
    while (!suffix.empty() && std::isspace(static_cast<unsigned char>(suffix.front()))) suffix.remove_prefix(1);
    if (suffix.empty())
        fail(ErrorCode::bad_argument,
             "quantity '" + std::string(text) + "' is missing a unit suffix (e.g. 0.3eV, 120fs, 1626nm)");
    return Quantity{value, unit(suffix)};
}

namespace {

double internal_factor(const Dimension& d) {
    // base value (nm, fs, eV) = internal value * factor
    double f = 1.0;
    for (int i = 0; i < std::abs(d.time); ++i) f = d.time > 0 ? f * kTimeUnit_fs : f / kTimeUnit_fs;
    for (int i = 0; i < std::abs(d.energy); ++i) f = d.energy > 0 ? f * kEnergyUnit_eV : f / kEnergyUnit_eV;
    return f; // length unit is 1 nm, no factor
}

} // namespace

double to_internal(double base_value, const Dimension& d) { return base_value / internal_factor(d); }
double from_internal(double internal_value, const Dimension& d) { return internal_value * internal_factor(d); }

double InternalUnits::to_internal(double base_value, const Dimension& d) const {
    return units::to_internal(base_value, d);
}
double InternalUnits::from_internal(double internal_value, const Dimension& d) const {
    return units::from_internal(internal_value, d);
}

Particle Particle::from_energy(double mc2_eV, double E0_eV) {
    if (!(mc2_eV > 0.0)) fail(ErrorCode::bad_argument, "particle mass must be positive");
    if (E0_eV < 0.0) fail(ErrorCode::bad_argument, "kinetic energy must be nonnegative");
    double m = mass_to_internal(mc2_eV);
    double p0 = std::sqrt(2.0 * m * energy_to_internal(E0_eV));
    return Particle(m, p0);
}

Particle Particle::from_momentum(double mc2_eV, double p0_eV_fs_per_nm) {
    if (!(mc2_eV > 0.0)) fail(ErrorCode::bad_argument, "particle mass must be positive");
    if (p0_eV_fs_per_nm < 0.0) fail(ErrorCode::bad_argument, "central momentum must be nonnegative");
    return Particle(mass_to_internal(mc2_eV), momentum_to_internal(p0_eV_fs_per_nm));
}

Kinematics derived_kinematics(const Particle& particle) {
    if (particle.p0_internal() == 0.0)
        fail(ErrorCode::zero_momentum, "zero-momentum particle has no de Broglie wavelength or arrival time");
    double v0 = particle.v0_nm_per_fs();
    double lambdaB = kH_eV_fs / particle.p0_eV_fs_per_nm();
    return Kinematics{v0, lambdaB};
}

} // namespace qslit::units
