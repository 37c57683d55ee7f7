#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "cli.hpp"
#include "pap/parallel.hpp"

int main(int argc, char** argv) {
    CLI::App app{"papsim: photoassociation adiabatic passage toolkit"};
    app.set_version_flag("--version", papsim::tool_version);
    app.require_subcommand(1);

    papsim::Request req;
    std::string out_dir;
    int threads = 0;
    app.add_option("--threads", threads, "worker count (default: PAPSIM_THREADS or all cores)");

    const std::map<std::string, std::string> about{
        {"levels", "bound levels in an energy window"},
        {"scatter", "phase shifts, scattering length, threshold scans"},
        {"fc", "Franck-Condon overlaps and decay branching"},
        {"dynamics", "pulse-driven population transfer, optional calibration and scan"},
        {"ensemble", "Maxwell-Boltzmann average of a dynamics run"},
        {"rates", "per-pulse yield arithmetic and production budget"},
    };
    for (const auto& name : papsim::command_names()) {
        auto* sub = app.add_subcommand(name, about.count(name) ? about.at(name) : "");
        sub->add_option("config", req.config, "scenario file")->required();
        sub->add_option("-s,--set", req.overrides, "override, section.key=value")->allow_extra_args(false);
        sub->add_option("-o,--out", out_dir, "output directory");
        sub->callback([&req, name] { req.command = name; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    if (threads > 0) pap::set_worker_count(static_cast<std::size_t>(threads));
    if (!out_dir.empty()) req.out_dir = out_dir;

    const auto rep = papsim::run(req);
    if (rep.exit_code != 0) {
        std::cerr << "error[" << rep.error_tag << "]: " << rep.error_message << "\n";
        return rep.exit_code;
    }
    for (const auto& p : rep.outputs) std::cout << p.string() << "\n";
    return 0;
}
