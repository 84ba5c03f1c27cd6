// sdwtrack: event-driven front tracking for 1-D pressureless gas dynamics.
// Subcommands: riemann | evolve | converge | entropy.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sdw/analysis.hpp"
#include "sdw/config.hpp"
#include "sdw/errors.hpp"
#include "sdw/riemann.hpp"
#include "sdw/run.hpp"
#include "sdw/trajectory.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::optional<double> epsilon;
    std::optional<double> t_end;
    std::optional<std::string> out_dir;
    std::optional<std::string> mode;
    std::optional<unsigned long> seed;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "Run configuration (JSON)")->required();
    cmd->add_option("--epsilon", flags.epsilon, "Override epsilon");
    cmd->add_option("--t-end", flags.t_end, "Override evolution horizon");
    cmd->add_option("--out", flags.out_dir, "Override output directory");
    cmd->add_option("--mode", flags.mode, "2x2 or 3x3")
        ->check(CLI::IsMember({"2x2", "3x3"}));
    cmd->add_option("--seed", flags.seed, "Seed for randomized sweeps");
}

sdw::RunConfig load_with_overrides(const CommonFlags& flags) {
    sdw::RunConfig cfg = sdw::load_config_file(flags.config_path);
    if (flags.epsilon) cfg.epsilon = *flags.epsilon;
    if (flags.t_end) cfg.t_end = *flags.t_end;
    if (flags.out_dir) cfg.out_dir = *flags.out_dir;
    if (flags.seed) cfg.seed = *flags.seed;
    if (flags.mode) {
        if (*flags.mode == "3x3" && !cfg.mode_3x3()) {
            throw sdw::ConfigError("--mode 3x3 but the config has no energy profile");
        }
        if (*flags.mode == "2x2" && cfg.mode_3x3()) {
            // Run the same data as a 2x2 problem.
            cfg.data.e_fn.reset();
            cfg.data.left_state.e.reset();
        }
    }
    cfg.apply_env_overrides();
    cfg.validate();
    return cfg;
}

std::vector<double> parse_times(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(std::stod(item));
    }
    return out;
}

int cmd_riemann(double rho_l, double u_l, double rho_r, double u_r,
                std::optional<double> gamma, std::optional<double> c0,
                const std::string& times_csv) {
    const sdw::FluidState left{rho_l, u_l, std::nullopt};
    const sdw::FluidState right{rho_r, u_r, std::nullopt};
    const auto sol = sdw::solve_riemann(left, right);
    if (sol.is_zero_jump()) {
        std::cout << "no wave\n";
        return 0;
    }
    switch (sol.kind) {
        case sdw::RiemannSolution::Kind::contact:
            std::cout << "kind=contact speed=" << sdw::fmt17(sol.contact_speed) << "\n";
            break;
        case sdw::RiemannSolution::Kind::vacuum_fan:
            std::cout << "kind=vacuum_fan edges=(" << sdw::fmt17(sol.fan_left) << ","
                      << sdw::fmt17(sol.fan_right) << ")\n";
            break;
        case sdw::RiemannSolution::Kind::simple_sdw:
            std::cout << "kind=simple_sdw y=" << sdw::fmt17(sol.y)
                      << " xi_rate=" << sdw::fmt17(sol.xi_rate) << "\n";
            break;
    }
    if (gamma || c0) {
        if (!gamma || !c0) {
            throw sdw::ConfigError("riemann: --gamma and --c0 must be given together");
        }
        if (*c0 > u_l || *c0 < u_r) {
            throw sdw::PreconditionError("riemann: c0 must lie in [u_r, u_l]");
        }
        const sdw::SdwTrajectory traj(0.0, 0.0, *gamma, *c0, left, right,
                                      sdw::SdwTrajectory::Kind::bulk);
        std::cout << "t,xi,u_s,c\n";
        for (double t : parse_times(times_csv.empty() ? "0,0.5,1,2,5" : times_csv)) {
            std::cout << sdw::fmt17(t) << "," << sdw::fmt17(traj.strength(t)) << ","
                      << sdw::fmt17(traj.speed(t)) << "," << sdw::fmt17(traj.position(t))
                      << "\n";
        }
    }
    return 0;
}

int cmd_evolve(const sdw::RunConfig& cfg) {
    auto out = sdw::run_evolve(cfg);
    sdw::write_config(cfg.out_dir + "/config.json", cfg);
    sdw::write_snapshots_csv(cfg.out_dir + "/snapshots.csv", out.snapshots);
    sdw::write_events_jsonl(cfg.out_dir + "/events.jsonl", out.fan);
    if (cfg.check_conservation) {
        sdw::write_conservation_csv(cfg.out_dir + "/conservation.csv", out.ledger);
    }
    std::cout << "events=" << out.fan.history.size()
              << " fronts=" << sdw::count_fronts(out.fan)
              << " worst_mass_drift=" << sdw::fmt17(out.worst_mass_drift)
              << " worst_momentum_drift=" << sdw::fmt17(out.worst_momentum_drift) << "\n";
    return 0;
}

int cmd_converge(const sdw::RunConfig& cfg, int levels) {
    auto out = sdw::run_converge(cfg, levels);
    sdw::write_converge_csv(cfg.out_dir + "/converge.csv", out);
    std::cout << "levels=" << out.rows.size() << " t_max=" << sdw::fmt17(out.t_max_value)
              << (out.oracle_valid ? "" : " (oracle column omitted)") << "\n";
    for (const auto& r : out.rows) {
        std::cout << "level=" << r.level << " mu=" << sdw::fmt17(r.mu)
                  << (r.e1 ? " E1=" + sdw::fmt17(*r.e1) : "")
                  << (r.e2 ? " E2=" + sdw::fmt17(*r.e2) : "")
                  << (r.gamma_dist ? " gamma_dist=" + sdw::fmt17(*r.gamma_dist) : "")
                  << (r.l1_err ? " l1_err=" + sdw::fmt17(*r.l1_err) : "") << "\n";
    }
    return 0;
}

int cmd_entropy(const sdw::RunConfig& cfg) {
    const auto report = sdw::run_entropy(cfg);
    sdw::write_entropy_report(cfg.out_dir, report);
    std::cout << "events=" << report.events.size() << " M=" << sdw::fmt17(report.M) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Shadow-wave front tracking for 1-D pressureless gas dynamics"};
    app.require_subcommand(1);

    double rho_l = 1.0, u_l = 0.0, rho_r = 1.0, u_r = 0.0;
    std::optional<double> gamma, c0;
    std::string times_csv;
    auto* riemann = app.add_subcommand("riemann", "Solve a single Riemann problem");
    riemann->add_option("--rho-l", rho_l, "Left density")->required();
    riemann->add_option("--u-l", u_l, "Left velocity")->required();
    riemann->add_option("--rho-r", rho_r, "Right density")->required();
    riemann->add_option("--u-r", u_r, "Right velocity")->required();
    riemann->add_option("--gamma", gamma, "Initial delta strength (tabulates the trajectory)");
    riemann->add_option("--c0", c0, "Initial delta speed");
    riemann->add_option("--times", times_csv, "Comma-separated times for the table");

    CommonFlags evolve_flags, converge_flags, entropy_flags;
    auto* evolve = app.add_subcommand("evolve", "Track the wave fan to t_end");
    add_common(evolve, evolve_flags);
    auto* converge = app.add_subcommand("converge", "Refinement sweep diagnostics");
    add_common(converge, converge_flags);
    int levels = 4;
    converge->add_option("--levels", levels, "Number of dyadic refinement levels");
    auto* entropy = app.add_subcommand("entropy", "Entropy production report");
    add_common(entropy, entropy_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (riemann->parsed()) return cmd_riemann(rho_l, u_l, rho_r, u_r, gamma, c0, times_csv);
        if (evolve->parsed()) return cmd_evolve(load_with_overrides(evolve_flags));
        if (converge->parsed()) return cmd_converge(load_with_overrides(converge_flags), levels);
        if (entropy->parsed()) return cmd_entropy(load_with_overrides(entropy_flags));
    } catch (const sdw::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const sdw::InvariantError& e) {
        std::cerr << "invariant breach: " << e.what() << "\n";
        return 3;
    } catch (const sdw::PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
