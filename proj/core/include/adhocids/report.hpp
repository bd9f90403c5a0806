#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "adhocids/simulator.hpp"

namespace adhocids {

// Shortest decimal form that parses back to the same double.
std::string fmt_double(double v);

// Per-tick CSV. The resolved scenario is embedded as leading '#' comment
// lines so a trace is reproducible from its own header; the column layout is
// documented in the README.
std::string trace_csv(const RunResult& r);

// Key-value summary lines, including the mode and seed that produced them.
std::string summary_text(const RunResult& r);

// Two columns: tick, cumulative monitoring energy.
std::string energy_series_csv(const std::vector<TickRecord>& trace);
std::string energy_series_csv(const std::vector<double>& mean_series);

std::string compare_text(const CompareReport& rep);

// Baseline-minus-clustered deltas; positive values favour idfadnwca.
long rerun_delta(const SeedComparison& s);
double energy_delta(const SeedComparison& s);

// Writes trace.csv, summary.txt and energy.csv; creates out_dir if needed.
// Returns the paths written. I/O failures carry the offending path.
std::vector<std::filesystem::path> emit_trace(const RunResult& r,
                                              const std::filesystem::path& out_dir);

// Writes compare.txt, energy_idfadnwca.csv and energy_spaid.csv.
std::vector<std::filesystem::path> emit_compare(const CompareReport& rep,
                                                const std::filesystem::path& out_dir);

}  // namespace adhocids
