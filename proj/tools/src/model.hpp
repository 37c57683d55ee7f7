#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "pap/dynamics.hpp"
#include "pap/ensemble.hpp"
#include "pap/potentials.hpp"
#include "scenario.hpp"

namespace papsim {

// Either a single curve or the two-channel manifold.
struct Surface {
    std::shared_ptr<const pap::PotentialCurve> curve;
    std::shared_ptr<const pap::CoupledPotential> coupled;

    const pap::PotentialCurve& single(const std::string& what) const;
};

// [potential] or [potential.<name>]:
//   model = builtin_x | builtin_a | file | morse | harmonic
Surface build_surface(const Scenario& s, const std::string& section);

pap::EnergyWindow build_window(const Scenario& s, const std::string& section);

enum class Method { svca, full_rwa, multilinkage };

struct DynamicsSetup {
    pap::LinkageScheme scheme;
    std::vector<pap::PulseEnvelope> pulses;
    std::vector<std::string> pulse_names;
    pap::ContinuumPacket packet;
    pap::IntegrationOptions options;
    Method method = Method::svca;
    pap::ContinuumGrid grid;
};

// States, pulses, couplings, continuum edges and the packet. When
// `energy` is given it replaces a from-ensemble packet energy.
DynamicsSetup build_dynamics(const Scenario& s, std::optional<double> energy = std::nullopt);

pap::SimulationResult run_dynamics(const DynamicsSetup& d);

pap::EnsembleSpec build_ensemble(const Scenario& s);

}  // namespace papsim
