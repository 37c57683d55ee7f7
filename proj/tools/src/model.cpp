#include "model.hpp"

#include <cmath>

#include "pap/errors.hpp"

namespace papsim {

using pap::ConfigError;
using D = pap::units::Dimension;

const pap::PotentialCurve& Surface::single(const std::string& what) const {
    if (!curve) throw ConfigError(what + " needs a single-channel potential");
    return *curve;
}

Surface build_surface(const Scenario& s, const std::string& section) {
    if (!s.has_section(section)) throw ConfigError("missing section [" + section + "]", "MISSING_KEY");
    const std::string model = s.text(section, "model");
    Surface out;
    if (model == "builtin_x") {
        const double blend = s.quantity_or(section, "blend_halfwidth", D::length, 1.0);
        if (s.has(section, "scattering_length")) {
            pap::BuiltinXOptions opt;
            opt.blend_halfwidth = blend;
            out.curve = std::make_shared<pap::RadialPotential>(
                pap::builtin_x_model(s.quantity(section, "scattering_length", D::length), opt));
        } else {
            out.curve = std::make_shared<pap::RadialPotential>(
                pap::builtin_x_model_at(s.quantity(section, "r_interp", D::length), blend));
        }
    } else if (model == "builtin_a") {
        out.curve = std::make_shared<pap::RadialPotential>(pap::builtin_a_model());
    } else if (model == "file") {
        auto loaded = pap::load_potential(s.resolve(s.text(section, "path")).string());
        if (auto* r = std::get_if<pap::RadialPotential>(&loaded))
            out.curve = std::make_shared<pap::RadialPotential>(std::move(*r));
        else
            out.coupled = std::make_shared<pap::CoupledPotential>(std::get<pap::CoupledPotential>(std::move(loaded)));
    } else if (model == "morse") {
        out.curve = std::make_shared<pap::AnalyticPotential>(pap::AnalyticPotential::morse(
            s.quantity(section, "depth", D::energy), s.number(section, "alpha"), s.quantity(section, "r0", D::length)));
    } else if (model == "harmonic") {
        out.curve = std::make_shared<pap::AnalyticPotential>(pap::AnalyticPotential::harmonic(
            s.number_or(section, "mass", pap::units::reduced_mass_rb85), s.quantity(section, "omega", D::energy),
            s.quantity(section, "r0", D::length)));
    } else {
        throw ConfigError(section + ".model: unknown model '" + model + "'");
    }
    return out;
}

pap::EnergyWindow build_window(const Scenario& s, const std::string& section) {
    return {s.quantity(section, "e_min", D::energy), s.quantity(section, "e_max", D::energy)};
}

namespace {

std::string tail_of(const std::string& name) { return name.substr(name.find('.') + 1); }

pap::PulseShape shape_of(const std::string& v, const std::string& where) {
    if (v == "sin2" || v == "sin_squared") return pap::PulseShape::sin_squared;
    if (v == "gaussian") return pap::PulseShape::gaussian;
    throw ConfigError(where + ": unknown pulse shape '" + v + "'");
}

}  // namespace

DynamicsSetup build_dynamics(const Scenario& s, std::optional<double> energy) {
    DynamicsSetup d;

    bool any_initial = false;
    std::vector<pap::cplx> initial;
    for (const auto* sec : s.group("state")) {
        const auto& n = sec->name;
        pap::BoundLevelSpec st;
        st.label = tail_of(n);
        st.energy = s.quantity_or(n, "energy", D::energy, 0.0);
        if (s.has(n, "lifetime")) {
            const double life = s.quantity(n, "lifetime", D::time);
            if (!(life > 0.0)) throw ConfigError(n + ".lifetime must be positive");
            st.decay_rate = 1.0 / life;
        } else {
            st.decay_rate = s.quantity_or(n, "decay_rate", D::energy, 0.0);
        }
        const double b0 = s.number_or(n, "initial", 0.0);
        any_initial = any_initial || b0 != 0.0;
        initial.emplace_back(b0, 0.0);
        d.scheme.states.push_back(std::move(st));
    }
    if (d.scheme.states.empty()) throw ConfigError("scenario declares no [state.*] sections");
    if (any_initial) d.scheme.initial = std::move(initial);

    for (const auto* sec : s.group("pulse")) {
        const auto& n = sec->name;
        pap::PulseEnvelope p;
        p.shape = shape_of(s.text_or(n, "shape", "sin2"), n);
        p.fwhm = s.quantity(n, "fwhm", D::time);
        p.center = s.quantity(n, "center", D::time);
        if (s.has(n, "intensity"))
            p.peak_field = s.quantity(n, "intensity", D::field_amplitude);
        else
            p.peak_field = s.quantity(n, "field", D::field_amplitude);
        p.detuning = s.quantity_or(n, "detuning", D::energy, 0.0);
        p.phase = s.number_or(n, "phase", 0.0);
        p.polarization = s.text_or(n, "polarization", "");
        d.pulses.push_back(p);
        d.pulse_names.push_back(tail_of(n));
    }
    std::vector<bool> used(d.pulses.size(), false);
    auto pulse_index = [&](const std::string& where, const std::string& name) {
        for (std::size_t i = 0; i < d.pulse_names.size(); ++i)
            if (d.pulse_names[i] == name) {
                used[i] = true;
                return static_cast<int>(i);
            }
        throw ConfigError(where + " references undeclared pulse '" + name + "'");
    };
    auto state_index = [&](const std::string& where, const std::string& label) {
        for (std::size_t i = 0; i < d.scheme.states.size(); ++i)
            if (d.scheme.states[i].label == label) return static_cast<int>(i);
        throw ConfigError(where + " references undeclared state '" + label + "'");
    };

    for (const auto* sec : s.group("coupling")) {
        const auto& n = sec->name;
        pap::BoundCoupling c;
        c.lower = state_index(n, s.text(n, "lower"));
        c.upper = state_index(n, s.text(n, "upper"));
        c.dipole_fc = s.number_or(n, "dipole", pap::units::transition_dipole) * s.number(n, "fc");
        c.pulse = pulse_index(n, s.text(n, "pulse"));
        d.scheme.couplings.push_back(c);
    }

    // Packet first: Wigner-scaled continuum couplings need its energy.
    std::optional<pap::WavepacketParams> wp;
    auto ensemble_params = [&](double e) {
        if (!wp) wp = pap::wavepacket_params(build_ensemble(s), e);
        return *wp;
    };
    const bool has_packet = s.has_section("packet");
    if (has_packet) {
        const std::string e0 = s.text("packet", "e0");
        if (e0 == "from-ensemble")
            d.packet.e0 = energy ? *energy : build_ensemble(s).kT;
        else
            d.packet.e0 = s.quantity("packet", "e0", D::energy);
        if (energy && e0 != "from-ensemble")
            throw ConfigError("packet.e0 must be from-ensemble for an ensemble run");
        const std::string de = s.text("packet", "delta_e");
        d.packet.delta_e = de == "from-ensemble" ? ensemble_params(d.packet.e0).delta_e
                                                 : s.quantity("packet", "delta_e", D::energy);
        d.packet.t0 = s.quantity("packet", "t0", D::time);
        d.packet.scale = s.number_or("packet", "scale", 1.0);
    }

    for (const auto* sec : s.group("continuum")) {
        const auto& n = sec->name;
        if (!has_packet) throw ConfigError(n + " needs a [packet] section");
        pap::ContinuumEdge e;
        e.state = state_index(n, s.text(n, "state"));
        double fc = s.quantity(n, "fc", D::inverse_sqrt_energy);
        const std::string scaling = s.text_or(n, "scaling", "fixed");
        if (scaling == "wigner") {
            const double ref = s.quantity(n, "reference_energy", D::energy);
            fc *= std::pow(d.packet.e0 / ref, 0.25);
        } else if (scaling != "fixed") {
            throw ConfigError(n + ".scaling: expected fixed or wigner");
        }
        e.dipole_fc = s.number_or(n, "dipole", pap::units::transition_dipole) * fc;
        e.pulse = pulse_index(n, s.text(n, "pulse"));
        d.scheme.continuum.push_back(e);
    }
    for (std::size_t i = 0; i < used.size(); ++i)
        if (!used[i]) throw ConfigError("pulse '" + d.pulse_names[i] + "' drives no coupling");

    const std::string m = s.text_or("dynamics", "method", "svca");
    if (m == "svca")
        d.method = Method::svca;
    else if (m == "full_rwa")
        d.method = Method::full_rwa;
    else if (m == "multilinkage")
        d.method = Method::multilinkage;
    else
        throw ConfigError("dynamics.method: unknown method '" + m + "'");

    auto& o = d.options;
    o.rtol = s.number_or("dynamics", "rtol", o.rtol);
    o.atol = s.number_or("dynamics", "atol", o.atol);
    o.samples = s.integer_or("dynamics", "samples", o.samples);
    o.norm_tolerance = s.number_or("dynamics", "norm_tolerance", o.norm_tolerance);
    if (s.has("dynamics", "t_begin")) o.t_begin = s.quantity("dynamics", "t_begin", D::time);
    if (s.has("dynamics", "t_end")) o.t_end = s.quantity("dynamics", "t_end", D::time);

    if (d.method == Method::full_rwa) {
        d.grid.e_min = s.quantity("continuum_grid", "e_min", D::energy);
        d.grid.e_max = s.quantity("continuum_grid", "e_max", D::energy);
        d.grid.n_points = s.integer_or("continuum_grid", "n_points", d.grid.n_points);
    }
    d.scheme.validate(d.pulses.size());
    return d;
}

pap::SimulationResult run_dynamics(const DynamicsSetup& d) {
    switch (d.method) {
        case Method::svca: return pap::integrate_svca(d.scheme, d.pulses, d.packet, d.options);
        case Method::full_rwa: return pap::integrate_full_rwa(d.scheme, d.pulses, d.packet, d.grid, d.options);
        case Method::multilinkage: return pap::integrate_multilinkage(d.scheme, d.pulses, d.packet, d.options);
    }
    throw ConfigError("unreachable dynamics method");
}

pap::EnsembleSpec build_ensemble(const Scenario& s) {
    const std::string n = "ensemble";
    if (!s.has_section(n)) throw ConfigError("missing section [ensemble]", "MISSING_KEY");
    pap::EnsembleSpec e;
    e.kT = s.quantity(n, "temperature", D::energy);
    e.density = s.quantity(n, "density", D::inverse_volume);
    e.mass = s.number_or(n, "mass", e.mass);
    e.pulse_duration = s.quantity_or(n, "pulse_duration", D::time, 0.0);
    e.singlet_fraction = s.number_or(n, "singlet_fraction", e.singlet_fraction);
    e.trap_length = s.quantity_or(n, "trap_length", D::length, 0.0);
    e.focus_diameter = s.quantity_or(n, "focus_diameter", D::length, 0.0);
    if (s.has(n, "lattice_speed")) e.lattice_speed = s.quantity(n, "lattice_speed", D::velocity);
    if (s.has(n, "sequence_duration")) e.sequence_duration = s.quantity(n, "sequence_duration", D::time);
    e.branch_fraction = s.number_or(n, "branch_fraction", e.branch_fraction);
    if (s.has(n, "claimed_molecules_per_sequence"))
        e.claimed_molecules_per_sequence = s.number(n, "claimed_molecules_per_sequence");
    e.validate();
    return e;
}

}  // namespace papsim
