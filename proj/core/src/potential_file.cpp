#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

#include "pap/errors.hpp"
#include "pap/potentials.hpp"

namespace pap {
namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Plain decimal or scientific notation only; no hex, inf or nan spellings.
double parse_number(std::string_view tok, const std::string& src, int line) {
    for (char ch : tok) {
        const bool ok = (ch >= '0' && ch <= '9') || ch == '.' || ch == 'e' || ch == 'E' || ch == '+' || ch == '-';
        if (!ok) throw ParseError(src, line, "not a number: '" + std::string(tok) + "'");
    }
    double v = 0.0;
    const auto* first = tok.data();
    const auto* last = tok.data() + tok.size();
    const auto [ptr, ec] = std::from_chars(first, last, v, std::chars_format::general);
    if (ec != std::errc() || ptr != last) throw ParseError(src, line, "not a number: '" + std::string(tok) + "'");
    if (!std::isfinite(v)) throw ParseError(src, line, "non-finite entry");
    return v;
}

}  // namespace

LoadedPotential parse_potential(const std::string& text, const std::string& src) {
    std::optional<double> c6, c3, c6_b, r_interp, asym, asym_b, blend;
    std::vector<double> r, va, vb, w;
    std::size_t columns = 0;
    int line_no = 0;
    int c6_line = 0;

    std::istringstream in(text);
    std::string raw;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = trim(raw);
        if (line.empty() || line.front() == '#') continue;

        if (const auto eq = line.find('='); eq != std::string_view::npos) {
            const auto key = trim(line.substr(0, eq));
            const double val = parse_number(trim(line.substr(eq + 1)), src, line_no);
            if (key == "c6") c6 = val, c6_line = line_no;
            else if (key == "c3") c3 = val, c6_line = line_no;
            else if (key == "c6_b") c6_b = val;
            else if (key == "r_interp") r_interp = val;
            else if (key == "asymptote") asym = val;
            else if (key == "asymptote_b") asym_b = val;
            else if (key == "blend_halfwidth") blend = val;
            else throw ParseError(src, line_no, "unknown directive '" + std::string(key) + "'");
            continue;
        }

        std::vector<double> row;
        std::size_t pos = 0;
        while (pos < line.size()) {
            const auto b = line.find_first_not_of(" \t", pos);
            if (b == std::string_view::npos) break;
            auto e = line.find_first_of(" \t", b);
            if (e == std::string_view::npos) e = line.size();
            row.push_back(parse_number(line.substr(b, e - b), src, line_no));
            pos = e;
        }
        if (row.size() != 2 && row.size() != 4)
            throw ParseError(src, line_no, "expected 2 or 4 columns, found " + std::to_string(row.size()));
        if (columns == 0) columns = row.size();
        if (row.size() != columns) throw ParseError(src, line_no, "column count changed mid-table");
        if (!r.empty() && !(row[0] > r.back())) throw ParseError(src, line_no, "r column not strictly increasing");
        if (row[0] <= 0.0) throw ParseError(src, line_no, "r must be positive");
        r.push_back(row[0]);
        va.push_back(row[1]);
        if (columns == 4) {
            vb.push_back(row[2]);
            w.push_back(row[3]);
        }
    }

    if (!c6 && !c3) throw ParseError(src, line_no, "missing c6 directive");
    if (c6 && c3) throw ParseError(src, c6_line, "give either c6 or c3, not both");
    if (r.size() < 4) throw ParseError(src, line_no, "table needs at least 4 rows");

    RadialPotential::Params pa;
    pa.r = r;
    pa.v = va;
    pa.c6 = c6 ? *c6 : *c3;
    pa.tail_power = c6 ? 6 : 3;
    pa.blend_halfwidth = blend.value_or(1.0);
    pa.r_interp = r_interp.value_or(r.back() - pa.blend_halfwidth);
    pa.asymptote = asym.value_or(0.0);

    try {
        if (columns == 2) return RadialPotential(std::move(pa));
        RadialPotential::Params pb = pa;
        pb.v = vb;
        pb.c6 = c6_b.value_or(pa.c6);
        pb.asymptote = asym_b.value_or(pa.asymptote);
        return CoupledPotential(RadialPotential(std::move(pa)), RadialPotential(std::move(pb)), r, w);
    } catch (const DomainError& e) {
        throw ParseError(src, line_no, e.what());
    }
}

LoadedPotential load_potential(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open potential file '" + path + "'", "FILE_NOT_FOUND");
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_potential(ss.str(), path);
}

}  // namespace pap
