#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <string_view>

#include "qslit/error.hpp"

namespace qslit::units {

// Physical constants, CODATA 2018, pinned to 10 significant digits.
// Everything else in the library is derived from these three numbers.
//
//   hbar*c          197.3269804      eV nm
//   c               299.792458       nm/fs   (exact)
//   electron m*c^2  510998.9500      eV
inline constexpr double kHbarC_eV_nm = 197.3269804;
inline constexpr double kC_nm_per_fs = 299.792458;
inline constexpr double kElectronMc2_eV = 510998.9500;

inline constexpr double kHbar_eV_fs = kHbarC_eV_nm / kC_nm_per_fs;
inline constexpr double kH_eV_fs = 2.0 * std::numbers::pi * kHbar_eV_fs;

// Internal unit system: hbar = 1, electron mass = 1, 1 nm = 1.
// The remaining scales follow: energy unit = hbar^2/(m_e nm^2), time unit = hbar/energy unit.
inline constexpr double kEnergyUnit_eV = kHbarC_eV_nm * kHbarC_eV_nm / kElectronMc2_eV;
inline constexpr double kTimeUnit_fs = kHbar_eV_fs / kEnergyUnit_eV;
inline constexpr double kMomentumUnit_eV_fs_per_nm = kHbar_eV_fs; // hbar / 1 nm

/// Dimension exponents over the (length, time, energy) basis.
struct Dimension {
    int length = 0;
    int time = 0;
    int energy = 0;

    friend bool operator==(const Dimension&, const Dimension&) = default;
};

inline constexpr Dimension kDimless{0, 0, 0};
inline constexpr Dimension kLength{1, 0, 0};
inline constexpr Dimension kTime{0, 1, 0};
inline constexpr Dimension kEnergy{0, 0, 1};
inline constexpr Dimension kMomentum{-1, 1, 1}; // energy * time / length
inline constexpr Dimension kVelocity{1, -1, 0};
inline constexpr Dimension kAction{0, 1, 1};
inline constexpr Dimension kInverseLength{-1, 0, 0};

/// A named unit: dimension plus the multiplicative factor to the (nm, fs, eV) base.
struct Unit {
    std::string name;
    Dimension dim;
    double to_base = 1.0;
};

/// Look up a unit by name ("eV", "meV", "nm", "fs", "eV*fs/nm", "rad", ...).
const Unit& unit(std::string_view name);

/// Exact multiplicative conversion; throws Error(dimension_mismatch) if incompatible.
double convert(double value, const Unit& from, const Unit& to);
double convert(double value, std::string_view from, std::string_view to);

/// Parse a value with a mandatory unit suffix, e.g. "0.3eV", "120fs", "1626nm".
struct Quantity {
    double value;
    Unit unit;
};
Quantity parse_quantity(std::string_view text);

/// Conversion between base (nm, fs, eV) values and the internal hbar = m_e = nm = 1 system.
struct InternalUnits {
    double to_internal(double base_value, const Dimension& d) const;
    double from_internal(double internal_value, const Dimension& d) const;
};

double to_internal(double base_value, const Dimension& d);
double from_internal(double internal_value, const Dimension& d);

inline double energy_to_internal(double eV) { return eV / kEnergyUnit_eV; }
inline double energy_from_internal(double e) { return e * kEnergyUnit_eV; }
inline double time_to_internal(double fs) { return fs / kTimeUnit_fs; }
inline double time_from_internal(double t) { return t * kTimeUnit_fs; }
inline double momentum_to_internal(double eV_fs_per_nm) { return eV_fs_per_nm / kMomentumUnit_eV_fs_per_nm; }
inline double momentum_from_internal(double p) { return p * kMomentumUnit_eV_fs_per_nm; }
inline double mass_to_internal(double mc2_eV) { return mc2_eV / kElectronMc2_eV; }
inline double mass_from_internal(double m) { return m * kElectronMc2_eV; }

/// A free particle: mass (stored as the energy equivalent m*c^2) and central momentum.
/// The kinetic energy E0 = p0^2/2m is always derived, never stored independently.
class Particle {
public:
    static Particle from_energy(double mc2_eV, double E0_eV);
    static Particle from_momentum(double mc2_eV, double p0_eV_fs_per_nm);
    static Particle electron_with_energy(double E0_eV) { return from_energy(kElectronMc2_eV, E0_eV); }

    double mass_internal() const { return mass_; }
    double p0_internal() const { return p0_; }
    double E0_internal() const { return p0_ * p0_ / (2.0 * mass_); }

    double mass_mc2_eV() const { return mass_from_internal(mass_); }
    double p0_eV_fs_per_nm() const { return momentum_from_internal(p0_); }
    double E0_eV() const { return energy_from_internal(E0_internal()); }

    double v0_internal() const { return p0_ / mass_; }
    double v0_nm_per_fs() const { return v0_internal() / kTimeUnit_fs; }

private:
    Particle(double mass_internal, double p0_internal) : mass_(mass_internal), p0_(p0_internal) {}
    double mass_; // units of m_e
    double p0_;   // units of hbar/nm
};

/// Derived kinematics of a particle: velocity, de Broglie wavelength, classical arrival time.
struct Kinematics {
    double v0_nm_per_fs;
    double lambdaB_nm;
    double arrival_time_fs(double Z_nm) const { return Z_nm / v0_nm_per_fs; }
};

/// Throws Error(zero_momentum) when p0 = 0.
Kinematics derived_kinematics(const Particle& particle);

} // namespace qslit::units
