#ifndef SDW_RUN_HPP
#define SDW_RUN_HPP

#include <optional>
#include <string>
#include <vector>

#include "sdw/analysis.hpp"
#include "sdw/config.hpp"
#include "sdw/entropy.hpp"
#include "sdw/tracker.hpp"

namespace sdw {

WaveFan make_initial_fan(const RunConfig& cfg);
WaveFan make_initial_fan(const RunConfig& cfg, const Partition& p);

struct LedgerEntry {
    ConservationTotals totals;
    bool at_event = false;
};

struct EvolveOutput {
    WaveFan fan;
    std::vector<LedgerEntry> ledger;
    std::vector<MeasureSnapshot> snapshots;
    double worst_mass_drift = 0.0;
    double worst_momentum_drift = 0.0;
    double worst_energy_drift = 0.0;
};

// Runs the tracker to t_end, checking conservation at every event and at the
// configured sample times. A drift beyond the configured tolerance throws
// InvariantError.
EvolveOutput run_evolve(const RunConfig& cfg);

struct ConvergeRow {
    int level = 0;
    double mu = 0.0;
    double epsilon = 0.0;
    std::size_t cells = 0;
    std::optional<double> e1, e2;
    std::optional<double> gamma_dist; // vs the previous level
    std::optional<double> l1_err;
    std::optional<double> alpha;
};

struct ConvergeOutput {
    std::vector<ConvergeRow> rows;
    double t_max_value = 0.0;
    bool oracle_valid = false; // l1 time below the classical life span
};

// Midpoint-refinement sweep; levels run concurrently.
ConvergeOutput run_converge(const RunConfig& cfg, int levels);

EntropyReport run_entropy(const RunConfig& cfg);

// Writers: CSV with one header line and 17-significant-digit floats; the
// event log is line-delimited JSON. All outputs are byte-deterministic.
void write_config(const std::string& path, const RunConfig& cfg);
void write_snapshots_csv(const std::string& path, const std::vector<MeasureSnapshot>& snaps);
std::vector<MeasureSnapshot> read_snapshots_csv(const std::string& path);
void write_events_jsonl(const std::string& path, const WaveFan& fan);
void write_conservation_csv(const std::string& path, const std::vector<LedgerEntry>& ledger);
void write_entropy_report(const std::string& dir, const EntropyReport& report);
void write_converge_csv(const std::string& path, const ConvergeOutput& out);

} // namespace sdw

#endif
