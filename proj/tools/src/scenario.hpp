#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "pap/units.hpp"

namespace papsim {

namespace fs = std::filesystem;

// Flat-sectioned scenario file. Dimensional values carry a unit suffix:
//   fwhm = 750 ns
//   energies = 1, 2, 5 uK
//   energies = logspace(1, 10, 8) uK
class Scenario {
public:
    struct Entry {
        std::string key, value;
    };
    struct Section {
        std::string name;
        std::vector<Entry> entries;
    };

    // Missing file -> ConfigError tagged CONFIG_NOT_FOUND.
    static Scenario load(const fs::path& path);
    static Scenario parse(const std::string& text, const std::string& source, fs::path base_dir = {});

    // "section.key=value"; the key must already exist.
    void apply_override(const std::string& assignment);

    bool has_section(const std::string& section) const;
    bool has(const std::string& section, const std::string& key) const;
    std::optional<std::string> find(const std::string& section, const std::string& key) const;
    std::string text(const std::string& section, const std::string& key) const;
    std::string text_or(const std::string& section, const std::string& key, const std::string& fallback) const;

    // Plain numbers; a unit suffix is an error.
    double number(const std::string& section, const std::string& key) const;
    double number_or(const std::string& section, const std::string& key, double fallback) const;
    int integer(const std::string& section, const std::string& key) const;
    int integer_or(const std::string& section, const std::string& key, int fallback) const;
    bool flag_or(const std::string& section, const std::string& key, bool fallback) const;

    // Atomic-unit value of the requested dimension. Dimensionless keys may
    // omit the unit; everything else must carry one ("a.u." included).
    double quantity(const std::string& section, const std::string& key, pap::units::Dimension dim) const;
    double quantity_or(const std::string& section, const std::string& key, pap::units::Dimension dim,
                       double fallback) const;
    std::vector<double> quantities(const std::string& section, const std::string& key,
                                   pap::units::Dimension dim) const;
    // List items as "<number> <unit>" strings, ranges expanded.
    std::vector<std::string> expand(const std::string& section, const std::string& key) const;
    std::vector<double> numbers(const std::string& section, const std::string& key) const;

    // Sections named "<prefix>.<name>", in file order.
    std::vector<const Section*> group(const std::string& prefix) const;

    const std::vector<Section>& sections() const { return sections_; }
    fs::path resolve(const std::string& relative) const;

    std::string canonical() const;
    std::uint64_t hash() const;  // FNV-1a over canonical()

private:
    const Section* section_ptr(const std::string& name) const;

    std::vector<Section> sections_;
    std::string source_;
    fs::path base_dir_;
};

// "750 ns" -> (750, ns); a bare number gives no unit.
struct ParsedValue {
    double value = 0.0;
    std::optional<pap::units::Unit> unit;
};
ParsedValue parse_value(const std::string& text, const std::string& where);

// Atomic value of `v` carrying dimension `dim`.
double to_atomic_checked(const ParsedValue& v, pap::units::Dimension dim, const std::string& where);

std::uint64_t fnv1a(const std::string& bytes);

}  // namespace papsim
