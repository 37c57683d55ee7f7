#pragma once

#include <compare>
#include <string>
#include <string_view>

namespace pap::units {

enum class Dimension {
    energy,
    time,
    length,
    inverse_volume,
    field_amplitude,
    intensity,
    temperature,
    mass,
    velocity,
    dimensionless,
    inverse_sqrt_energy,
    sqrt_energy,
};

std::string_view to_string(Dimension d);

// Atomic-unit value with a dimension tag. Arithmetic between mismatched
// dimensions throws DimensionError.
struct Quantity {
    double value = 0.0;
    Dimension dimension = Dimension::dimensionless;

    Quantity operator+(const Quantity& o) const;
    Quantity operator-(const Quantity& o) const;
    Quantity operator-() const { return {-value, dimension}; }
    Quantity operator*(double s) const { return {value * s, dimension}; }
    Quantity operator/(double s) const { return {value / s, dimension}; }
    std::partial_ordering operator<=>(const Quantity& o) const;
    bool operator==(const Quantity& o) const;
};

inline Quantity operator*(double s, const Quantity& q) { return q * s; }

enum class Unit {
    atomic,
    kelvin,
    millikelvin,
    microkelvin,
    nanokelvin,
    second,
    microsecond,
    nanosecond,
    picosecond,
    femtosecond,
    meter,
    centimeter,
    micrometer,
    nanometer,
    watt_per_cm2,
    per_cm3,
    meter_per_second,
    cm_per_second,
    wavenumber,  // cm^-1, as an energy
    hartree,
};

// Parses tags like "uK", "ns", "W/cm^2", "cm^-3", "a.u.". Throws DomainError.
Unit parse_unit(std::string_view tag);
std::string_view unit_tag(Unit u);

// Dimension carried by a lab unit. For Unit::atomic there is none.
Dimension dimension_of(Unit u);

// Temperatures land as energies (k_B T); W/cm^2 lands as a field amplitude.
// Unit::atomic needs the intended dimension spelled out.
Quantity to_atomic(double value, Unit unit, Dimension atomic_dimension = Dimension::dimensionless);
double from_atomic(const Quantity& q, Unit unit);

Quantity rabi_frequency(const Quantity& field, const Quantity& dipole_times_fc);

// Constants in atomic units.
inline constexpr double reduced_mass_rb85 = 1823.0 * 85.0 / 2.0;
inline constexpr double transition_dipole = 3.0;

double boltzmann();                 // hartree per kelvin
double time_unit_seconds();
double length_unit_meters();
double intensity_unit_w_cm2();      // cycle-averaged intensity of a 1 a.u. field
double hartree_wavenumber();        // cm^-1 per hartree
double velocity_unit_m_s();

double intensity_to_field(double watt_per_cm2);
double field_to_intensity(double field_au);
double hartree_to_wavenumber(double e);
double energy_from_temperature(double kelvin);

}  // namespace pap::units
