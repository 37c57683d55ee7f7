#include "scenario.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "pap/errors.hpp"

namespace papsim {

using pap::ConfigError;
using pap::units::Dimension;

namespace {

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

// Inline comments: whitespace followed by '#' or ';'.
std::string strip_comment(const std::string& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if ((v[i] == '#' || v[i] == ';') && (v[i - 1] == ' ' || v[i - 1] == '\t')) return trim(v.substr(0, i));
    return v;
}

std::string where_of(const std::string& section, const std::string& key) { return section + "." + key; }

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_number(std::string_view s, const std::string& where) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError(where + ": '" + std::string(s) + "' is not a number");
    return v;
}

}  // namespace

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

ParsedValue parse_value(const std::string& text, const std::string& where) {
    const std::string s = trim(text);
    if (s.empty()) throw ConfigError(where + ": empty value");
    // Longest numeric prefix that from_chars accepts.
    double v = 0.0;
    const char* begin = s.data();
    if (*begin == '+') ++begin;
    auto [ptr, ec] = std::from_chars(begin, s.data() + s.size(), v);
    if (ec != std::errc()) throw ConfigError(where + ": '" + s + "' does not start with a number");
    ParsedValue out{v, std::nullopt};
    const std::string rest = trim(std::string_view(ptr, s.data() + s.size() - ptr));
    if (!rest.empty()) {
        try {
            out.unit = pap::units::parse_unit(rest);
        } catch (const pap::DomainError&) {
            throw ConfigError(where + ": unknown unit '" + rest + "'", "UNKNOWN_UNIT");
        }
    }
    return out;
}

double to_atomic_checked(const ParsedValue& v, Dimension dim, const std::string& where) {
    namespace u = pap::units;
    if (!v.unit) {
        if (dim == Dimension::dimensionless) return v.value;
        throw ConfigError(where + ": " + std::string(u::to_string(dim)) + " value needs a unit", "MISSING_UNIT");
    }
    const auto q = u::to_atomic(v.value, *v.unit, dim);
    if (q.dimension != dim)
        throw ConfigError(where + ": expected " + std::string(u::to_string(dim)) + ", got " +
                              std::string(u::unit_tag(*v.unit)),
                          "DIMENSION_MISMATCH");
    return q.value;
}

Scenario Scenario::load(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open scenario '" + path.string() + "'", "CONFIG_NOT_FOUND");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path.string(), path.parent_path());
}

Scenario Scenario::parse(const std::string& text, const std::string& source, fs::path base_dir) {
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try {
        pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw pap::ParseError(source, static_cast<int>(e.line()), e.message());
    }
    Scenario s;
    s.source_ = source;
    s.base_dir_ = std::move(base_dir);
    for (const auto& [name, body] : tree) {
        if (body.empty()) throw ConfigError(source + ": key '" + name + "' outside any section");
        Section sec{name, {}};
        for (const auto& [key, leaf] : body) sec.entries.push_back({key, strip_comment(leaf.data())});
        s.sections_.push_back(std::move(sec));
    }
    return s;
}

void Scenario::apply_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError("override '" + assignment + "' is not key=value");
    const std::string path = trim(assignment.substr(0, eq));
    const auto dot = path.rfind('.');
    if (dot == std::string::npos) throw ConfigError("override key '" + path + "' needs a section");
    const std::string section = path.substr(0, dot), key = path.substr(dot + 1);
    for (auto& sec : sections_) {
        if (sec.name != section) continue;
        for (auto& e : sec.entries) {
            if (e.key == key) {
                e.value = trim(assignment.substr(eq + 1));
                return;
            }
        }
    }
    throw ConfigError("override targets unknown key '" + path + "'", "UNKNOWN_KEY");
}

const Scenario::Section* Scenario::section_ptr(const std::string& name) const {
    for (const auto& s : sections_)
        if (s.name == name) return &s;
    return nullptr;
}

bool Scenario::has_section(const std::string& section) const { return section_ptr(section) != nullptr; }

bool Scenario::has(const std::string& section, const std::string& key) const { return find(section, key).has_value(); }

std::optional<std::string> Scenario::find(const std::string& section, const std::string& key) const {
    if (const auto* s = section_ptr(section))
        for (const auto& e : s->entries)
            if (e.key == key) return e.value;
    return std::nullopt;
}

std::string Scenario::text(const std::string& section, const std::string& key) const {
    auto v = find(section, key);
    if (!v) throw ConfigError("missing key " + where_of(section, key), "MISSING_KEY");
    return *v;
}

std::string Scenario::text_or(const std::string& section, const std::string& key, const std::string& fallback) const {
    return find(section, key).value_or(fallback);
}

double Scenario::number(const std::string& section, const std::string& key) const {
    return parse_number(trim(text(section, key)), where_of(section, key));
}

double Scenario::number_or(const std::string& section, const std::string& key, double fallback) const {
    return has(section, key) ? number(section, key) : fallback;
}

int Scenario::integer(const std::string& section, const std::string& key) const {
    const std::string s = trim(text(section, key));
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw ConfigError(where_of(section, key) + ": '" + s + "' is not an integer");
    return v;
}

int Scenario::integer_or(const std::string& section, const std::string& key, int fallback) const {
    return has(section, key) ? integer(section, key) : fallback;
}

bool Scenario::flag_or(const std::string& section, const std::string& key, bool fallback) const {
    auto v = find(section, key);
    if (!v) return fallback;
    if (*v == "true" || *v == "yes" || *v == "1" || *v == "on") return true;
    if (*v == "false" || *v == "no" || *v == "0" || *v == "off") return false;
    throw ConfigError(where_of(section, key) + ": '" + *v + "' is not a boolean");
}

double Scenario::quantity(const std::string& section, const std::string& key, Dimension dim) const {
    const auto w = where_of(section, key);
    return to_atomic_checked(parse_value(text(section, key), w), dim, w);
}

double Scenario::quantity_or(const std::string& section, const std::string& key, Dimension dim,
                             double fallback) const {
    return has(section, key) ? quantity(section, key, dim) : fallback;
}

std::vector<std::string> Scenario::expand(const std::string& section, const std::string& key) const {
    const auto w = where_of(section, key);
    std::string s = trim(text(section, key));
    std::vector<double> raw;
    std::string unit;
    // logspace(a, b, n) / linspace(a, b, n), then an optional unit
    for (const std::string fn : {"logspace(", "linspace("}) {
        if (s.rfind(fn, 0) != 0) continue;
        const auto close = s.find(')');
        if (close == std::string::npos) throw ConfigError(w + ": unbalanced parenthesis");
        const auto args = split_commas(s.substr(fn.size(), close - fn.size()));
        if (args.size() != 3) throw ConfigError(w + ": " + fn + "a, b, n) takes three arguments");
        const double a = parse_number(args[0], w), b = parse_number(args[1], w);
        const double nd = parse_number(args[2], w);
        const int n = static_cast<int>(nd);
        if (n < 1 || n != nd) throw ConfigError(w + ": point count must be a positive integer");
        const bool log = fn[1] == 'o';
        if (log && !(a > 0.0 && b > 0.0)) throw ConfigError(w + ": logspace needs positive ends");
        for (int i = 0; i < n; ++i) {
            const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
            raw.push_back(log ? a * std::pow(b / a, f) : a + (b - a) * f);
        }
        unit = trim(s.substr(close + 1));
        s.clear();
        break;
    }
    if (!s.empty()) {
        auto items = split_commas(s);
        // The unit, if any, rides on the last item and applies to all.
        const auto last = parse_value(items.back(), w);
        if (last.unit) unit = std::string(pap::units::unit_tag(*last.unit));
        for (std::size_t i = 0; i + 1 < items.size(); ++i) raw.push_back(parse_number(items[i], w));
        raw.push_back(last.value);
    }
    std::vector<std::string> out;
    for (double r : raw) {
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", r);
        out.push_back(unit.empty() ? std::string(buf) : std::string(buf) + " " + unit);
    }
    return out;
}

std::vector<double> Scenario::quantities(const std::string& section, const std::string& key, Dimension dim) const {
    const auto w = where_of(section, key);
    std::vector<double> out;
    for (const auto& item : expand(section, key)) out.push_back(to_atomic_checked(parse_value(item, w), dim, w));
    return out;
}

std::vector<double> Scenario::numbers(const std::string& section, const std::string& key) const {
    return quantities(section, key, Dimension::dimensionless);
}

std::vector<const Scenario::Section*> Scenario::group(const std::string& prefix) const {
    std::vector<const Section*> out;
    for (const auto& s : sections_)
        if (s.name.size() > prefix.size() + 1 && s.name.compare(0, prefix.size(), prefix) == 0 &&
            s.name[prefix.size()] == '.')
            out.push_back(&s);
    return out;
}

fs::path Scenario::resolve(const std::string& relative) const {
    fs::path p(relative);
    return p.is_absolute() ? p : base_dir_ / p;
}

std::string Scenario::canonical() const {
    std::string out;
    for (const auto& s : sections_) {
        out += "[" + s.name + "]\n";
        for (const auto& e : s.entries) out += e.key + " = " + e.value + "\n";
    }
    return out;
}

std::uint64_t Scenario::hash() const { return fnv1a(canonical()); }

}  // namespace papsim
