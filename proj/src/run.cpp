#include "sdw/run.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <future>
#include <limits>

#include "sdw/errors.hpp"

namespace sdw {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

const char* outcome_name(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::A1: return "A1";
        case OutcomeKind::A2: return "A2";
        case OutcomeKind::A3: return "A3";
        case OutcomeKind::A4: return "A4";
    }
    return "?";
}
} // namespace

WaveFan make_initial_fan(const RunConfig& cfg, const Partition& p) {
    const SampledStates samples = sample_states(cfg.data, p);
    return initialize(samples, p, cfg.tol_cluster);
}

WaveFan make_initial_fan(const RunConfig& cfg) {
    return make_initial_fan(cfg, build_partition(cfg.data, cfg.epsilon, cfg.C));
}

EvolveOutput run_evolve(const RunConfig& cfg) {
    cfg.validate();
    EvolveOutput out;
    out.fan = make_initial_fan(cfg);

    std::vector<double> times = cfg.snapshot_times;
    for (int i = 0; i <= cfg.sample_count; ++i) {
        times.push_back(cfg.t_end * static_cast<double>(i) / cfg.sample_count);
    }
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());

    const auto record = [&](double t, bool at_event) {
        if (!cfg.check_conservation) return;
        LedgerEntry entry{conservation_totals(out.fan, t), at_event};
        out.worst_mass_drift = std::max(out.worst_mass_drift, entry.totals.mass_drift());
        out.worst_momentum_drift =
            std::max(out.worst_momentum_drift, entry.totals.momentum_drift());
        out.worst_energy_drift = std::max(out.worst_energy_drift, entry.totals.energy_drift());
        out.ledger.push_back(entry);
        if (entry.totals.mass_drift() > cfg.tol_conservation ||
            entry.totals.momentum_drift() > cfg.tol_conservation) {
            throw InvariantError("run_evolve: conservation drift beyond tolerance at t=" +
                                 fmt17(t));
        }
    };

    record(0.0, false);
    for (double t : times) {
        if (t <= 0.0) continue;
        for (;;) {
            const auto tn = peek_next_event(out.fan);
            if (!tn || *tn > t) break;
            run_until(out.fan, *tn);
            record(*tn, true);
        }
        run_until(out.fan, t);
        record(t, false);
        if (std::find(cfg.snapshot_times.begin(), cfg.snapshot_times.end(), t) !=
            cfg.snapshot_times.end()) {
            out.snapshots.push_back(snapshot(out.fan, t));
        }
    }
    run_until(out.fan, cfg.t_end);
    return out;
}

ConvergeOutput run_converge(const RunConfig& cfg, int levels) {
    cfg.validate();
    if (levels < 1) throw ConfigError("run_converge: levels must be >= 1");

    std::vector<Partition> parts;
    parts.push_back(build_partition(cfg.data, cfg.epsilon, cfg.C));
    for (int v = 1; v < levels; ++v) parts.push_back(refine_partition(parts.back()));

    const std::optional<ClassicalOracle> oracle =
        cfg.l1_check ? std::optional<ClassicalOracle>(ClassicalOracle(cfg.data)) : std::nullopt;

    struct LevelResult {
        ConvergeRow row;
        std::optional<GammaCurve> gamma;
    };

    const auto run_level = [&](int v) {
        LevelResult res;
        res.row.level = v;
        res.row.epsilon = parts[static_cast<std::size_t>(v)].epsilon;
        res.row.mu = parts[static_cast<std::size_t>(v)].spacing_upper();
        res.row.cells = parts[static_cast<std::size_t>(v)].cell_count();

        const WaveFan fan0 = make_initial_fan(cfg, parts[static_cast<std::size_t>(v)]);
        if (cfg.test_function) {
            const TestFunction phi(cfg.test_function->center_x, cfg.test_function->center_t,
                                   cfg.test_function->radius_x, cfg.test_function->radius_t);
            const auto [e1, e2] =
                weak_residual_rendered(fan0, phi, parts[static_cast<std::size_t>(v)].epsilon);
            res.row.e1 = e1;
            res.row.e2 = e2;
        }

        double t_run = cfg.t_end;
        if (cfg.l1_check) t_run = std::max(t_run, cfg.l1_check->t);
        if (cfg.gamma_horizon) t_run = std::max(t_run, *cfg.gamma_horizon);
        WaveFan fan = fan0;
        run_until(fan, t_run);

        if (fan.zero_front_id >= 0) {
            auto extract = extract_gamma(fan);
            res.row.alpha = extract.alpha;
            res.gamma = std::move(extract.curve);
        }
        if (oracle && cfg.l1_check->t < oracle->t_max_unfiltered()) {
            const auto cmp = compare_with_classical(fan, *oracle, cfg.l1_check->t,
                                                    cfg.l1_check->a, cfg.l1_check->b);
            res.row.l1_err = cmp.combined();
        }
        return res;
    };

    std::vector<std::future<LevelResult>> futures;
    futures.reserve(static_cast<std::size_t>(levels));
    for (int v = 0; v < levels; ++v) {
        futures.push_back(std::async(std::launch::async, run_level, v));
    }
    std::vector<LevelResult> results;
    results.reserve(futures.size());
    for (auto& f : futures) results.push_back(f.get());

    ConvergeOutput out;
    const double horizon = cfg.gamma_horizon.value_or(cfg.t_end);
    for (int v = 0; v < levels; ++v) {
        auto& res = results[static_cast<std::size_t>(v)];
        if (v > 0 && res.gamma && results[static_cast<std::size_t>(v - 1)].gamma) {
            res.row.gamma_dist = gamma_distance(
                *results[static_cast<std::size_t>(v - 1)].gamma, *res.gamma, horizon);
        }
        out.rows.push_back(res.row);
    }
    const GammaCurve* g0 = results.front().gamma ? &*results.front().gamma : nullptr;
    out.t_max_value = t_max(cfg.data, g0);
    out.oracle_valid = oracle && cfg.l1_check->t < oracle->t_max_unfiltered();
    return out;
}

EntropyReport run_entropy(const RunConfig& cfg) {
    cfg.validate();
    return build_entropy_report(make_initial_fan(cfg), cfg.t_end, cfg.sample_count);
}

// ---------------------------------------------------------------------------
// Writers

namespace {
std::ofstream open_out(const std::string& path) {
    const auto parent = std::filesystem::path(path).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file '" + path + "'");
    return out;
}
} // namespace

void write_config(const std::string& path, const RunConfig& cfg) {
    auto out = open_out(path);
    out << config_to_json(cfg).dump(2) << "\n";
}

void write_snapshots_csv(const std::string& path, const std::vector<MeasureSnapshot>& snaps) {
    auto out = open_out(path);
    out << "t,row,a,b,x,rho,u,e,mass,momentum,energy,vacuum,fan_anchor\n";
    for (const auto& s : snaps) {
        for (const auto& p : s.pieces) {
            out << fmt17(s.t) << ",piece," << fmt17(p.a) << "," << fmt17(p.b) << ",,"
                << fmt17(p.state.rho) << "," << fmt17(p.state.u) << ","
                << (p.state.e ? fmt17(*p.state.e) : "") << ",,,," << (p.vacuum ? 1 : 0) << ","
                << (p.vacuum ? fmt17(p.fan_anchor) : "") << "\n";
        }
        for (const auto& a : s.atoms) {
            out << fmt17(s.t) << ",atom,,," << fmt17(a.x) << ",,,"
                << (a.e_s ? fmt17(*a.e_s) : "") << "," << fmt17(a.mass) << ","
                << fmt17(a.momentum) << "," << (a.energy ? fmt17(*a.energy) : "") << ",0,\n";
        }
    }
}

std::vector<MeasureSnapshot> read_snapshots_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open snapshot file '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw ConfigError("snapshot file is empty");
    std::vector<MeasureSnapshot> snaps;
    while (std::getline(in, line)) {
        std::vector<std::string> cols;
        std::size_t pos = 0;
        while (pos <= line.size()) {
            const std::size_t comma = line.find(',', pos);
            cols.push_back(line.substr(pos, comma == std::string::npos ? comma : comma - pos));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        if (cols.size() != 13) throw ConfigError("snapshot row has wrong arity");
        const auto num = [&](std::size_t i) { return std::stod(cols[i]); };
        const auto opt = [&](std::size_t i) -> std::optional<double> {
            if (cols[i].empty()) return std::nullopt;
            return std::stod(cols[i]);
        };
        const double t = num(0);
        if (snaps.empty() || snaps.back().t != t) {
            snaps.push_back(MeasureSnapshot{});
            snaps.back().t = t;
        }
        auto& snap = snaps.back();
        if (cols[1] == "piece") {
            SnapshotPiece p;
            p.a = num(2);
            p.b = num(3);
            p.state.rho = num(5);
            p.state.u = num(6);
            p.state.e = opt(7);
            p.vacuum = cols[11] == "1";
            p.fan_anchor = opt(12).value_or(0.0);
            snap.pieces.push_back(p);
            snap.window_lo = snap.pieces.front().a;
            snap.window_hi = snap.pieces.back().b;
        } else if (cols[1] == "atom") {
            SnapshotAtom a;
            a.x = num(4);
            a.e_s = opt(7);
            a.mass = num(8);
            a.momentum = num(9);
            a.energy = opt(10);
            snap.atoms.push_back(a);
        } else {
            throw ConfigError("snapshot row kind must be piece or atom");
        }
    }
    return snaps;
}

void write_events_jsonl(const std::string& path, const WaveFan& fan) {
    auto out = open_out(path);
    for (const auto& ev : fan.history) {
        ordered_json j;
        j["T"] = ev.T;
        j["X"] = ev.X;
        j["participants"] = ev.participant_ids;
        j["outcome"] = outcome_name(ev.outcome_kind);
        j["strengths_in"] = ev.strengths_in;
        j["speeds_in"] = ev.speeds_in;
        if (!ev.energies_in.empty()) j["energies_in"] = ev.energies_in;
        j["gamma"] = ev.gamma_out;
        j["c0"] = ev.c0_out;
        if (ev.es0_out) j["e_s0"] = *ev.es0_out;
        j["out_id"] = ev.out_id;
        out << j.dump() << "\n";
    }
}

void write_conservation_csv(const std::string& path, const std::vector<LedgerEntry>& ledger) {
    auto out = open_out(path);
    out << "t,at_event,mass,mass_expected,momentum,momentum_expected,energy,energy_expected,"
           "mass_drift,momentum_drift,energy_drift\n";
    for (const auto& e : ledger) {
        const auto& c = e.totals;
        out << fmt17(c.t) << "," << (e.at_event ? 1 : 0) << "," << fmt17(c.mass) << ","
            << fmt17(c.mass_expected) << "," << fmt17(c.momentum) << ","
            << fmt17(c.momentum_expected) << "," << fmt17(c.energy) << ","
            << fmt17(c.energy_expected) << "," << fmt17(c.mass_drift()) << ","
            << fmt17(c.momentum_drift()) << "," << fmt17(c.energy_drift()) << "\n";
    }
}

void write_entropy_report(const std::string& dir, const EntropyReport& report) {
    {
        auto out = open_out(dir + "/production.csv");
        out << "t,front_id,D\n";
        for (const auto& [t, id, d] : report.production_trace) {
            out << fmt17(t) << "," << id << "," << fmt17(d) << "\n";
        }
    }
    {
        auto out = open_out(dir + "/entropy_events.csv");
        out << "T,participants,drop_measured,drop_formula,D_before,D_after,delta_D\n";
        for (const auto& e : report.events) {
            out << fmt17(e.T) << "," << e.participants << "," << fmt17(e.drop_measured) << ","
                << fmt17(e.drop_formula) << "," << fmt17(e.d_before) << ","
                << fmt17(e.d_after) << "," << fmt17(e.delta_d) << "\n";
        }
    }
    {
        auto out = open_out(dir + "/entropy_total.csv");
        out << "t,E,E_flux_corrected\n";
        for (std::size_t i = 0; i < report.total_trace.size(); ++i) {
            out << fmt17(report.total_trace[i].first) << ","
                << fmt17(report.total_trace[i].second) << ","
                << fmt17(report.total_trace_corrected[i].second) << "\n";
        }
    }
}

void write_converge_csv(const std::string& path, const ConvergeOutput& out_data) {
    auto out = open_out(path);
    out << "level,mu,epsilon,cells,E1,E2,gamma_dist,l1_err,alpha\n";
    for (const auto& r : out_data.rows) {
        out << r.level << "," << fmt17(r.mu) << "," << fmt17(r.epsilon) << "," << r.cells
            << "," << (r.e1 ? fmt17(*r.e1) : "") << "," << (r.e2 ? fmt17(*r.e2) : "") << ","
            << (r.gamma_dist ? fmt17(*r.gamma_dist) : "") << ","
            << (r.l1_err ? fmt17(*r.l1_err) : "") << "," << (r.alpha ? fmt17(*r.alpha) : "")
            << "\n";
    }
}

} // namespace sdw
