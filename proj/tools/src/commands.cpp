#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "cli.hpp"
#include "model.hpp"
#include "output.hpp"
#include "pap/branching.hpp"
#include "pap/errors.hpp"
#include "pap/franck_condon.hpp"
#include "pap/parallel.hpp"
#include "pap/scattering.hpp"
#include "pap/spectrum.hpp"
#include "scenario.hpp"

namespace papsim {

using pap::ConfigError;
using D = pap::units::Dimension;

namespace {

double to_ns(double t) { return t * pap::units::time_unit_seconds() * 1e9; }

pap::SolverOptions solver_options(const Scenario& s, const std::string& section) {
    pap::SolverOptions o;
    o.mass = s.number_or(section, "mass", o.mass);
    o.points_per_wavelength = s.integer_or(section, "points_per_wavelength", o.points_per_wavelength);
    o.max_refinements = s.integer_or(section, "max_refinements", o.max_refinements);
    return o;
}

pap::ScatteringOptions scattering_options(const Scenario& s, const std::string& section) {
    pap::ScatteringOptions o;
    o.mass = s.number_or(section, "mass", o.mass);
    o.points_per_wavelength = s.integer_or(section, "points_per_wavelength", o.points_per_wavelength);
    return o;
}

std::vector<pap::BoundState> solve_levels(const Surface& surf, const Scenario& s, const std::string& section) {
    const int J = s.integer_or(section, "J", 0);
    const auto window = build_window(s, section);
    const auto opt = solver_options(s, section);
    if (surf.coupled) return pap::bound_levels(*surf.coupled, J, window, opt);
    return pap::bound_levels(*surf.curve, J, window, opt);
}

// Ordinal picks; an absent key keeps every level.
std::vector<pap::BoundState> pick(const std::vector<pap::BoundState>& all, const Scenario& s,
                                  const std::string& section, const std::string& key) {
    if (!s.has(section, key)) return all;
    std::vector<pap::BoundState> out;
    for (double v : s.numbers(section, key)) {
        const auto i = static_cast<std::size_t>(v);
        if (v < 0 || v != static_cast<double>(i) || i >= all.size())
            throw ConfigError(section + "." + key + ": no level with index " + fmt(v));
        out.push_back(all[i]);
    }
    return out;
}

// Least-squares slope of log y against log x.
std::optional<double> loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0 && y[i] > 0.0)) continue;
        const double lx = std::log(x[i]), ly = std::log(y[i]);
        sx += lx, sy += ly, sxx += lx * lx, sxy += lx * ly;
        ++n;
    }
    if (n < 2 || n * sxx - sx * sx <= 0.0) return std::nullopt;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json populations_json(const std::vector<std::string>& labels, const std::vector<double>& p) {
    json j = json::object();
    for (std::size_t i = 0; i < labels.size(); ++i) j[labels[i]] = p[i];
    return j;
}

void timeseries_csv(Artifacts& out, const std::vector<std::string>& labels, const std::vector<double>& time,
                    const std::vector<std::vector<double>>& pops, const std::vector<double>& source_power) {
    std::vector<std::string> header{"t_au", "t_ns"};
    for (const auto& l : labels) header.push_back("P_" + l);
    header.push_back("F0_sq");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < time.size(); ++i) {
        std::vector<std::string> r{fmt(time[i]), fmt(to_ns(time[i]))};
        for (double p : pops[i]) r.push_back(fmt(p));
        r.push_back(fmt(source_power.empty() ? 0.0 : source_power[i]));
        rows.push_back(std::move(r));
    }
    out.csv("timeseries.csv", header, rows);
}

// ---------------------------------------------------------------- levels

void cmd_levels(const Scenario& s, Artifacts& out, json& summary) {
    const auto surf = build_surface(s, "potential");
    const auto levels = solve_levels(surf, s, "levels");
    std::vector<std::vector<std::string>> rows;
    json list = json::array();
    for (const auto& b : levels) {
        rows.push_back({std::to_string(b.v), std::to_string(b.J), fmt(b.energy),
                        fmt(pap::units::hartree_to_wavenumber(b.energy)), fmt(b.outer_turning_point)});
        list.push_back({{"v", b.v},
                        {"J", b.J},
                        {"energy_au", b.energy},
                        {"outer_turning_point_au", b.outer_turning_point},
                        {"channel_weights", {b.channel_weights[0], b.channel_weights[1]}}});
    }
    out.csv("levels.csv", {"v", "J", "E_au", "E_cm-1", "outer_turning_point_au"}, rows);
    summary["count"] = levels.size();
    summary["levels"] = std::move(list);
}

// ---------------------------------------------------------------- scatter

void cmd_scatter(const Scenario& s, Artifacts& out, json& summary) {
    const auto surf = build_surface(s, "potential");
    const auto& curve = surf.single("scatter");
    const auto opt = scattering_options(s, "scatter");

    if (s.has("scatter", "energies")) {
        const auto es = s.quantities("scatter", "energies", D::energy);
        std::vector<double> delta(es.size());
        pap::parallel_for(es.size(), [&](std::size_t i) { delta[i] = pap::phase_shift(curve, es[i], 0, opt); });
        std::vector<std::vector<std::string>> rows;
        for (std::size_t i = 0; i < es.size(); ++i) {
            const double k = std::sqrt(2.0 * opt.mass * es[i]);
            rows.push_back({fmt(es[i]), fmt(k), fmt(delta[i]), fmt(-std::tan(delta[i]) / k)});
        }
        out.csv("scatter.csv", {"E_au", "k_au", "delta_rad", "a_running_au"}, rows);
    }

    if (s.flag_or("scatter", "scattering_length", true)) {
        pap::ScatteringLengthOptions lo;
        lo.scattering = opt;
        const auto a = pap::scattering_length(curve, lo);
        summary["scattering_length_au"] = a.a;
        summary["scattering_length_residual_au"] = a.residual;
        summary["zero_energy_scattering_length_au"] = pap::zero_energy_scattering_length(curve, opt);
    }

    if (s.has("scatter", "r_interp_scan")) {
        if (s.text("potential", "model") != "builtin_x") throw ConfigError("r_interp_scan needs model = builtin_x");
        const auto rs = s.quantities("scatter", "r_interp_scan", D::length);
        const double blend = s.quantity_or("potential", "blend_halfwidth", D::length, 1.0);
        std::vector<double> a(rs.size());
        pap::parallel_for(rs.size(), [&](std::size_t i) {
            a[i] = pap::zero_energy_scattering_length(pap::builtin_x_model_at(rs[i], blend), opt);
        });
        std::vector<std::vector<std::string>> rows;
        int sign_changes = 0;
        for (std::size_t i = 0; i < rs.size(); ++i) {
            rows.push_back({fmt(rs[i]), fmt(a[i]), fmt(1.0 / a[i])});
            if (i > 0 && (1.0 / a[i] > 0) != (1.0 / a[i - 1] > 0)) ++sign_changes;
        }
        out.csv("rinterp_scan.csv", {"r_interp_au", "a_au", "inverse_a_au"}, rows);
        summary["inverse_a_sign_changes"] = sign_changes;
    }
}

// ---------------------------------------------------------------- fc

void cmd_fc(const Scenario& s, Artifacts& out, json& summary) {
    const std::string mode = s.text_or("fc", "mode", "continuum");
    const auto upper_surf = build_surface(s, "potential.upper");
    const auto upper_all = solve_levels(upper_surf, s, "levels.upper");
    const auto upper = pick(upper_all, s, "fc", "upper_v");
    summary["upper_levels"] = upper_all.size();

    std::vector<pap::FcEntry> entries;
    std::vector<pap::BoundState> lower_all;
    if (mode == "continuum") {
        const auto lower_surf = build_surface(s, "potential.lower");
        const auto& lower = lower_surf.single("continuum FC");
        const auto es = s.quantities("fc", "energies", D::energy);
        const auto opt = scattering_options(s, "fc");
        entries = pap::fc_map(lower, es, upper, opt);
        if (s.flag_or("fc", "wigner_fit", false)) {
            json fits = json::array();
            for (const auto& u : upper) {
                const auto scan = pap::threshold_scan(lower, u, es, opt);
                fits.push_back({{"upper_id", pap::state_id(u)},
                                {"outer_turning_point_au", u.outer_turning_point},
                                {"slope", optional_number(scan.slope)}});
            }
            summary["wigner_fits"] = std::move(fits);
        }
    } else if (mode == "bound") {
        const auto lower_surf = build_surface(s, "potential.lower");
        lower_all = solve_levels(lower_surf, s, "levels.lower");
        entries = pap::fc_map(pick(lower_all, s, "fc", "lower_v"), upper);
        summary["lower_levels"] = lower_all.size();
    } else {
        throw ConfigError("fc.mode: expected continuum or bound");
    }

    std::vector<std::vector<std::string>> rows;
    for (const auto& e : entries)
        rows.push_back({e.lower_id, e.upper_id,
                        e.fc.kind == pap::FcKind::bound_bound ? "bound_bound" : "continuum_bound", fmt(e.fc.value)});
    out.csv("fc.csv", {"lower_id", "upper_id", "kind", "value"}, rows);
    summary["pairs"] = entries.size();

    if (s.has_section("branching")) {
        if (lower_all.empty()) throw ConfigError("[branching] needs fc.mode = bound");
        const auto from = pick(lower_all, s, "branching", "from_v");
        const auto via = pick(upper_all, s, "branching", "via_v");
        if (from.size() != 1 || via.size() != 1) throw ConfigError("[branching] takes one from_v and one via_v");
        const auto table = pap::decay_accumulation(from[0], via[0], lower_all);
        std::vector<std::vector<std::string>> brows;
        for (const auto& b : table.entries) brows.push_back({std::to_string(b.v), fmt(b.fc), fmt(b.fraction)});
        out.csv("branching.csv", {"v", "fc", "fraction"}, brows);
        const auto& dom = table.dominant();
        const auto fc_pi = pap::bound_bound_fc(from[0], via[0]);
        json b = {{"from", pap::state_id(from[0])},
                  {"via", pap::state_id(via[0])},
                  {"fc_squared_sum", table.fc_squared_sum},
                  {"incomplete", table.incomplete},
                  {"dominant_v", dom.v},
                  {"dominant_fraction", dom.fraction},
                  {"pi_pulse_fc", fc_pi.value},
                  {"warnings", table.warnings}};
        if (s.has("branching", "pi_duration"))
            b["pi_pulse_intensity_w_cm2"] =
                pap::pi_pulse_intensity(fc_pi, s.quantity("branching", "pi_duration", D::time));
        summary["branching"] = std::move(b);
    }
}

// ---------------------------------------------------------------- dynamics

json result_json(const pap::SimulationResult& r) {
    return {{"final_populations", populations_json(r.labels, r.final_populations)},
            {"max_populations", populations_json(r.labels, r.max_populations)},
            {"continuum_population", r.continuum_population},
            {"final_norm", r.norm_history.empty() ? 0.0 : r.norm_history.back()},
            {"steps", r.steps},
            {"warnings", r.warnings}};
}

void run_scan(const Scenario& s, Artifacts& out, json& summary) {
    const std::string param = s.text("scan", "parameter");
    const auto values = s.expand("scan", "values");
    std::vector<pap::SimulationResult> runs(values.size());
    pap::parallel_for(values.size(), [&](std::size_t i) {
        Scenario local = s;
        local.apply_override(param + "=" + values[i]);
        runs[i] = run_dynamics(build_dynamics(local));
    });
    const auto& labels = runs.front().labels;
    std::vector<double> x;
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < values.size(); ++i) {
        x.push_back(parse_value(values[i], "scan.values").value);
        std::vector<std::string> r{fmt(x.back())};
        for (double p : runs[i].final_populations) r.push_back(fmt(p));
        rows.push_back(std::move(r));
    }
    std::vector<std::string> header{"value"};
    for (const auto& l : labels) header.push_back("P_" + l);
    out.csv("scan.csv", header, rows);

    const std::string tracked = s.text("scan", "tracked");
    std::size_t k = labels.size();
    for (std::size_t i = 0; i < labels.size(); ++i)
        if (labels[i] == tracked) k = i;
    if (k == labels.size()) throw ConfigError("scan.tracked: unknown state '" + tracked + "'");
    std::vector<double> y;
    for (const auto& r : runs) y.push_back(r.final_populations[k]);

    bool monotone = true;
    for (std::size_t i = 1; i < y.size(); ++i) monotone = monotone && y[i] > y[i - 1];
    const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
    // Slopes over the first and the last decade of the scanned values.
    std::vector<double> xl, yl, xh, yh;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i] <= 10.0 * x.front()) xl.push_back(x[i]), yl.push_back(y[i]);
        if (x[i] >= 0.1 * x.back()) xh.push_back(x[i]), yh.push_back(y[i]);
    }
    summary["scan"] = {{"parameter", param},
                       {"tracked", tracked},
                       {"points", values.size()},
                       {"monotone_increasing", monotone},
                       {"min", *lo},
                       {"max", *hi},
                       {"contrast", *lo > 0.0 ? json(*hi / *lo) : json(nullptr)},
                       {"low_decade_loglog_slope", optional_number(loglog_slope(xl, yl))},
                       {"high_decade_loglog_slope", optional_number(loglog_slope(xh, yh))}};
}

void cmd_dynamics(const Scenario& s, Artifacts& out, json& summary) {
    const auto d = build_dynamics(s);
    const auto r = run_dynamics(d);
    timeseries_csv(out, r.labels, r.time, r.populations, r.source_power);
    summary["result"] = result_json(r);
    summary["packet"] = {{"e0_au", d.packet.e0}, {"delta_e_au", d.packet.delta_e}, {"t0_ns", to_ns(d.packet.t0)}};

    if (s.flag_or("calibrate", "enabled", false)) {
        const std::string param = s.text("calibrate", "parameter");
        const std::string state = s.text("calibrate", "state");
        const double target = s.number("calibrate", "target");
        const int k = d.scheme.index_of(state);
        auto population = [&](double v) {
            Scenario local = s;
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            local.apply_override(param + "=" + buf);
            return run_dynamics(build_dynamics(local)).final_populations[k];
        };
        const double v = pap::calibrate_parameter(population, target, s.number("calibrate", "lo"),
                                                  s.number("calibrate", "hi"));
        summary["calibration"] = {{"parameter", param}, {"value", v}, {"target", target}, {"state", state}};
    }
    if (s.has_section("scan")) run_scan(s, out, summary);
}

// ---------------------------------------------------------------- ensemble

pap::CampaignBudget budget_json(double yield, const pap::EnsembleSpec& spec, json& j) {
    const auto b = pap::campaign_budget(yield, spec);
    const double us = pap::units::time_unit_seconds() * 1e6;
    j = {{"per_sequence_yield", b.per_sequence_yield},
         {"per_pulse_rate", b.per_pulse_rate},
         {"n_sequences", b.n_sequences},
         {"removal_interval_us", b.removal_interval ? json(*b.removal_interval * us) : json(nullptr)},
         {"sequence_period_us", b.sequence_period * us},
         {"atoms_in_focus", b.atoms_in_focus},
         {"molecules_per_sequence", b.molecules_per_sequence},
         {"molecules_per_second", b.molecules_per_second},
         {"claimed_molecules_per_second",
          b.claimed_molecules_per_second ? json(*b.claimed_molecules_per_second) : json(nullptr)},
         {"warnings", b.warnings}};
    return b;
}

void cmd_ensemble(const Scenario& s, Artifacts& out, json& summary) {
    const auto spec = build_ensemble(s);
    pap::ThermalQuadrature q;
    q.nodes = s.integer_or("quadrature", "nodes", q.nodes);
    q.max_nodes = s.integer_or("quadrature", "max_nodes", q.max_nodes);
    q.tolerance = s.number_or("quadrature", "tolerance", q.tolerance);
    q.cutoff_fraction = s.number_or("quadrature", "cutoff_fraction", q.cutoff_fraction);

    const auto probe = build_dynamics(s, spec.kT);
    const int tracked = probe.scheme.index_of(s.text("ensemble", "tracked"));
    const auto res = pap::run_thermal_ensemble(
        [&](double e) { return run_dynamics(build_dynamics(s, e)); }, spec.kT, tracked, q);

    std::vector<std::string> header{"E_au", "E_over_kT", "weight"};
    for (const auto& l : res.labels) header.push_back("P_" + l);
    std::vector<std::vector<std::string>> rows;
    const auto& t = res.target;
    for (std::size_t i = 0; i < t.energies.size(); ++i) {
        std::vector<std::string> r{fmt(t.energies[i]), fmt(t.energies[i] / spec.kT), fmt(t.weights[i])};
        for (double p : res.node_final_populations[i]) r.push_back(fmt(p));
        rows.push_back(std::move(r));
    }
    out.csv("nodes.csv", header, rows);
    timeseries_csv(out, res.labels, res.time, res.populations, res.source_power);

    summary["yield"] = t.value;
    summary["tracked"] = s.text("ensemble", "tracked");
    summary["nodes"] = t.nodes;
    summary["excluded_weight"] = t.excluded_weight;
    summary["final_populations"] = populations_json(res.labels, res.final_populations);
    if (t.value > 0.0 && t.value < 1.0) budget_json(t.value, spec, summary["budget"]);
}

// ---------------------------------------------------------------- rates

void cmd_rates(const Scenario& s, Artifacts& out, json& summary) {
    const auto spec = build_ensemble(s);
    const double e = s.quantity("rates", "energy", D::energy);
    const int J = s.integer_or("rates", "J", 0);
    const double p = s.number("rates", "probability");
    const auto wp = pap::wavepacket_params(spec, e, J);
    summary["impact_parameter_au"] = pap::impact_parameter(e, spec.mass, J);
    summary["collisions_per_pulse"] = pap::collisions_per_pulse(e, spec, J);
    summary["fraction_per_pulse"] = pap::fraction_per_pulse(p, e, spec);
    summary["r_st_au"] = wp.r_st;
    summary["delta_e_au"] = wp.delta_e;
    summary["f0_sq_peak_au"] = wp.f0_sq_peak;
    if (s.has("rates", "yield")) budget_json(s.number("rates", "yield"), spec, summary["budget"]);
    out.json_file("rates.json", summary);
}

using Command = std::function<void(const Scenario&, Artifacts&, json&)>;

const std::map<std::string, Command>& commands() {
    static const std::map<std::string, Command> table{
        {"levels", cmd_levels},     {"scatter", cmd_scatter},   {"fc", cmd_fc},
        {"dynamics", cmd_dynamics}, {"ensemble", cmd_ensemble}, {"rates", cmd_rates},
    };
    return table;
}

std::string hex64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

}  // namespace

const std::vector<std::string>& command_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& [k, v] : commands()) n.push_back(k);
        return n;
    }();
    return names;
}

Report run(const Request& req) {
    Report rep;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        const auto it = commands().find(req.command);
        if (it == commands().end()) throw ConfigError("unknown command '" + req.command + "'", "UNKNOWN_COMMAND");
        Scenario s = Scenario::load(req.config);
        for (const auto& o : req.overrides) s.apply_override(o);

        const fs::path dir = req.out_dir ? *req.out_dir : fs::path(s.text_or("output", "dir", "."));
        Artifacts out(dir, s.text_or("output", "prefix", ""));
        json summary = json::object();
        it->second(s, out, summary);
        if (req.command != "rates") out.json_file("summary.json", summary);

        json files = json::array();
        for (const auto& p : out.written()) files.push_back(p.filename().string());
        const json manifest = {
            {"command", req.command},
            {"config", req.config.string()},
            {"config_hash", hex64(s.hash())},
            {"overrides", req.overrides},
            {"version", tool_version},
            {"threads", pap::worker_count()},
            {"outputs", files},
            {"wall_time_s", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()},
        };
        out.json_file("manifest.json", manifest);
        rep.outputs = out.written();
    } catch (const pap::Error& e) {
        rep.exit_code = e.kind() == pap::ErrorKind::input ? 2 : 3;
        rep.error_tag = e.tag();
        rep.error_message = e.what();
    } catch (const std::exception& e) {
        rep.exit_code = 1;
        rep.error_tag = "INTERNAL";
        rep.error_message = e.what();
    }
    return rep;
}

}  // namespace papsim
