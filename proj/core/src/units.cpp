#include "pap/units.hpp"

#include <array>
#include <cmath>
#include <utility>

#include "pap/errors.hpp"

namespace pap::units {
namespace {

// CODATA 2018.
constexpr double kBoltzmannHartreePerK = 3.1668115634556e-6;
constexpr double kTimeUnitS = 2.4188843265857e-17;
constexpr double kBohrM = 5.29177210903e-11;
constexpr double kHartreeWavenumber = 219474.6313632;
// 0.5 * eps0 * c * E_h^2 with E_h = 5.14220674763e11 V/m, expressed in W/cm^2.
constexpr double kIntensityUnitWcm2 = 3.5094455206e16;

double velocity_unit() { return kBohrM / kTimeUnitS; }

struct UnitInfo {
    Unit unit;
    std::string_view tag;
    Dimension dimension;
};

constexpr std::array<UnitInfo, 20> kUnits{{
    {Unit::atomic, "a.u.", Dimension::dimensionless},
    {Unit::kelvin, "K", Dimension::energy},
    {Unit::millikelvin, "mK", Dimension::energy},
    {Unit::microkelvin, "uK", Dimension::energy},
    {Unit::nanokelvin, "nK", Dimension::energy},
    {Unit::second, "s", Dimension::time},
    {Unit::microsecond, "us", Dimension::time},
    {Unit::nanosecond, "ns", Dimension::time},
    {Unit::picosecond, "ps", Dimension::time},
    {Unit::femtosecond, "fs", Dimension::time},
    {Unit::meter, "m", Dimension::length},
    {Unit::centimeter, "cm", Dimension::length},
    {Unit::micrometer, "um", Dimension::length},
    {Unit::nanometer, "nm", Dimension::length},
    {Unit::watt_per_cm2, "W/cm^2", Dimension::field_amplitude},
    {Unit::per_cm3, "cm^-3", Dimension::inverse_volume},
    {Unit::meter_per_second, "m/s", Dimension::velocity},
    {Unit::cm_per_second, "cm/s", Dimension::velocity},
    {Unit::wavenumber, "cm^-1", Dimension::energy},
    {Unit::hartree, "hartree", Dimension::energy},
}};

const UnitInfo& info(Unit u) {
    for (const auto& i : kUnits)
        if (i.unit == u) return i;
    throw DomainError("unknown unit");
}

// Multiplier taking the lab value to atomic units (linear units only).
double scale(Unit u) {
    switch (u) {
        case Unit::atomic: return 1.0;
        case Unit::hartree: return 1.0;
        case Unit::kelvin: return kBoltzmannHartreePerK;
        case Unit::millikelvin: return kBoltzmannHartreePerK * 1e-3;
        case Unit::microkelvin: return kBoltzmannHartreePerK * 1e-6;
        case Unit::nanokelvin: return kBoltzmannHartreePerK * 1e-9;
        case Unit::second: return 1.0 / kTimeUnitS;
        case Unit::microsecond: return 1e-6 / kTimeUnitS;
        case Unit::nanosecond: return 1e-9 / kTimeUnitS;
        case Unit::picosecond: return 1e-12 / kTimeUnitS;
        case Unit::femtosecond: return 1e-15 / kTimeUnitS;
        case Unit::meter: return 1.0 / kBohrM;
        case Unit::centimeter: return 1e-2 / kBohrM;
        case Unit::micrometer: return 1e-6 / kBohrM;
        case Unit::nanometer: return 1e-9 / kBohrM;
        case Unit::per_cm3: {
            const double bohr_cm = kBohrM * 1e2;
            return bohr_cm * bohr_cm * bohr_cm;
        }
        case Unit::meter_per_second: return 1.0 / velocity_unit();
        case Unit::cm_per_second: return 1e-2 / velocity_unit();
        case Unit::wavenumber: return 1.0 / kHartreeWavenumber;
        case Unit::watt_per_cm2: break;
    }
    throw DomainError("unit has no linear scale");
}

}  // namespace

std::string_view to_string(Dimension d) {
    switch (d) {
        case Dimension::energy: return "energy";
        case Dimension::time: return "time";
        case Dimension::length: return "length";
        case Dimension::inverse_volume: return "inverse-volume-density";
        case Dimension::field_amplitude: return "field-amplitude";
        case Dimension::intensity: return "intensity";
        case Dimension::temperature: return "temperature";
        case Dimension::mass: return "mass";
        case Dimension::velocity: return "velocity";
        case Dimension::dimensionless: return "dimensionless";
        case Dimension::inverse_sqrt_energy: return "inverse-sqrt-energy";
        case Dimension::sqrt_energy: return "sqrt-energy";
    }
    return "?";
}

static void require_same(const Quantity& a, const Quantity& b, const char* op) {
    if (a.dimension != b.dimension)
        throw DimensionError(std::string("cannot ") + op + " " + std::string(to_string(a.dimension)) +
                             " and " + std::string(to_string(b.dimension)));
}

Quantity Quantity::operator+(const Quantity& o) const {
    require_same(*this, o, "add");
    return {value + o.value, dimension};
}

Quantity Quantity::operator-(const Quantity& o) const {
    require_same(*this, o, "subtract");
    return {value - o.value, dimension};
}

std::partial_ordering Quantity::operator<=>(const Quantity& o) const {
    require_same(*this, o, "compare");
    return value <=> o.value;
}

bool Quantity::operator==(const Quantity& o) const {
    require_same(*this, o, "compare");
    return value == o.value;
}

Unit parse_unit(std::string_view tag) {
    static constexpr std::array<std::pair<std::string_view, Unit>, 18> aliases{{
        {"au", Unit::atomic},
        {"μK", Unit::microkelvin},
        {"µK", Unit::microkelvin},
        {"μs", Unit::microsecond},
        {"µs", Unit::microsecond},
        {"μm", Unit::micrometer},
        {"µm", Unit::micrometer},
        {"W/cm2", Unit::watt_per_cm2},
        {"W cm^-2", Unit::watt_per_cm2},
        {"cm-3", Unit::per_cm3},
        {"/cm^3", Unit::per_cm3},
        {"cm-1", Unit::wavenumber},
        {"1/cm", Unit::wavenumber},
        {"Eh", Unit::hartree},
        {"microkelvin", Unit::microkelvin},
        {"kelvin", Unit::kelvin},
        {"nanosecond", Unit::nanosecond},
        {"nanometer", Unit::nanometer},
    }};
    for (const auto& i : kUnits)
        if (i.tag == tag) return i.unit;
    for (const auto& [alias, u] : aliases)
        if (alias == tag) return u;
    throw DomainError("unknown unit tag '" + std::string(tag) + "'");
}

std::string_view unit_tag(Unit u) { return info(u).tag; }

Dimension dimension_of(Unit u) { return info(u).dimension; }

Quantity to_atomic(double value, Unit unit, Dimension atomic_dimension) {
    if (unit == Unit::atomic) return {value, atomic_dimension};
    if (unit == Unit::watt_per_cm2) {
        if (value < 0.0) throw DomainError("negative intensity");
        return {intensity_to_field(value), Dimension::field_amplitude};
    }
    return {value * scale(unit), dimension_of(unit)};
}

double from_atomic(const Quantity& q, Unit unit) {
    if (unit == Unit::atomic) return q.value;
    if (dimension_of(unit) != q.dimension)
        throw DimensionError("cannot express " + std::string(to_string(q.dimension)) + " in " +
                             std::string(unit_tag(unit)));
    if (unit == Unit::watt_per_cm2) return field_to_intensity(q.value);
    return q.value / scale(unit);
}

Quantity rabi_frequency(const Quantity& field, const Quantity& dipole_times_fc) {
    if (field.dimension != Dimension::field_amplitude)
        throw DimensionError("Rabi frequency needs a field amplitude, got " +
                             std::string(to_string(field.dimension)));
    switch (dipole_times_fc.dimension) {
        case Dimension::dimensionless:
            return {field.value * dipole_times_fc.value, Dimension::energy};
        case Dimension::inverse_sqrt_energy:
            return {field.value * dipole_times_fc.value, Dimension::sqrt_energy};
        default:
            throw DimensionError("dipole*FC must be dimensionless or inverse-sqrt-energy, got " +
                                 std::string(to_string(dipole_times_fc.dimension)));
    }
}

double boltzmann() { return kBoltzmannHartreePerK; }
double time_unit_seconds() { return kTimeUnitS; }
double length_unit_meters() { return kBohrM; }
double intensity_unit_w_cm2() { return kIntensityUnitWcm2; }
double hartree_wavenumber() { return kHartreeWavenumber; }
double velocity_unit_m_s() { return velocity_unit(); }

double intensity_to_field(double watt_per_cm2) { return std::sqrt(watt_per_cm2 / kIntensityUnitWcm2); }
double field_to_intensity(double field_au) { return field_au * field_au * kIntensityUnitWcm2; }
double hartree_to_wavenumber(double e) { return e * kHartreeWavenumber; }
double energy_from_temperature(double kelvin) { return kelvin * kBoltzmannHartreePerK; }

}  // namespace pap::units
