#include "adhocids/report.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "adhocids/scenario.hpp"

namespace adhocids {

std::string fmt_double(double v) {
  std::array<char, 64> buf{};
  const auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf.data(), p);
}

std::string trace_csv(const RunResult& r) {
  std::ostringstream out;
  {
    std::istringstream cfg(serialize_scenario(r.config));
    std::string line;
    while (std::getline(cfg, line)) out << "# " << line << "\n";
  }
  const int total_nodes =
      r.config.node_count + static_cast<int>(r.config.joins.size());
  out << "tick,live,monitors,cum_monitor_energy,cum_total_drain,intra_reelections,full_reruns,"
         "events_delivered,events_missed,tp,fp,tn,fn,coverage";
  for (int i = 0; i < total_nodes; ++i) out << ",e" << i << ",r" << i;
  out << "\n";
  for (const auto& rec : r.trace) {
    long monitors = 0;
    for (char c : rec.role) {
      if (c == 'M') ++monitors;
    }
    out << rec.tick << ',' << rec.live_count << ',' << monitors << ','
        << fmt_double(rec.cum_monitor_energy) << ',' << fmt_double(rec.cum_total_drain) << ','
        << rec.intra_reelections << ',' << rec.full_reruns << ',' << rec.events_delivered << ','
        << rec.events_missed << ',' << rec.detections.tp << ',' << rec.detections.fp << ','
        << rec.detections.tn << ',' << rec.detections.fn << ',' << fmt_double(rec.coverage);
    for (int i = 0; i < total_nodes; ++i) {
      out << ',' << fmt_double(rec.energy[static_cast<std::size_t>(i)]) << ','
          << rec.role[static_cast<std::size_t>(i)];
    }
    out << "\n";
  }
  return out.str();
}

std::string summary_text(const RunResult& r) {
  const RunSummary& s = r.summary;
  std::ostringstream out;
  out << "mode " << mode_name(r.config.mode) << "\n";
  out << "seed " << r.config.seed << "\n";
  out << "terminal " << s.terminal << "\n";
  out << "ticks_executed " << s.ticks_executed << "\n";
  out << "total_monitor_energy " << fmt_double(s.total_monitor_energy) << "\n";
  out << "total_drain " << fmt_double(s.total_drain) << "\n";
  out << "full_reruns " << s.full_reruns << "\n";
  out << "intra_reelections " << s.intra_reelections << "\n";
  out << "mean_coverage " << fmt_double(s.mean_coverage) << "\n";
  out << "detection_accuracy " << fmt_double(s.detection_accuracy) << "\n";
  out << "events_delivered " << s.events_delivered << "\n";
  out << "events_missed " << s.events_missed << "\n";
  out << "tp " << s.detections.tp << "\n";
  out << "fp " << s.detections.fp << "\n";
  out << "tn " << s.detections.tn << "\n";
  out << "fn " << s.detections.fn << "\n";
  out << "final_live " << s.final_live << "\n";
  return out.str();
}

std::string energy_series_csv(const std::vector<TickRecord>& trace) {
  std::ostringstream out;
  out << "tick,cum_monitor_energy\n";
  for (const auto& rec : trace) {
    out << rec.tick << ',' << fmt_double(rec.cum_monitor_energy) << "\n";
  }
  return out.str();
}

std::string energy_series_csv(const std::vector<double>& mean_series) {
  std::ostringstream out;
  out << "tick,cum_monitor_energy\n";
  for (std::size_t i = 0; i < mean_series.size(); ++i) {
    out << i << ',' << fmt_double(mean_series[i]) << "\n";
  }
  return out.str();
}

long rerun_delta(const SeedComparison& s) {
  return s.spaid.full_reruns - s.idfadnwca.full_reruns;
}

double energy_delta(const SeedComparison& s) {
  return s.spaid.total_monitor_energy - s.idfadnwca.total_monitor_energy;
}

std::string compare_text(const CompareReport& rep) {
  std::ostringstream out;
  out << "seeds " << rep.seeds_total << "\n";
  out << "mean_energy_idfadnwca " << fmt_double(rep.mean_energy_idfadnwca) << "\n";
  out << "mean_energy_spaid " << fmt_double(rep.mean_energy_spaid) << "\n";
  out << "mean_full_reruns_idfadnwca " << fmt_double(rep.mean_reruns_idfadnwca) << "\n";
  out << "mean_full_reruns_spaid " << fmt_double(rep.mean_reruns_spaid) << "\n";
  out << "seeds_idfadnwca_not_worse " << rep.seeds_idfadnwca_not_worse << "\n";
  for (const auto& s : rep.per_seed) {
    out << "seed " << s.seed << " full_reruns " << s.idfadnwca.full_reruns << ' '
        << s.spaid.full_reruns << " delta " << rerun_delta(s) << " monitor_energy "
        << fmt_double(s.idfadnwca.total_monitor_energy) << ' '
        << fmt_double(s.spaid.total_monitor_energy) << " delta " << fmt_double(energy_delta(s))
        << " coverage " << fmt_double(s.idfadnwca.mean_coverage) << ' '
        << fmt_double(s.spaid.mean_coverage) << "\n";
  }
  return out.str();
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << content;
  out.flush();
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

void ensure_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory " + dir.string() + ": " + ec.message());
}

}  // namespace

std::vector<std::filesystem::path> emit_trace(const RunResult& r,
                                              const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  const auto trace_path = out_dir / "trace.csv";
  const auto summary_path = out_dir / "summary.txt";
  const auto energy_path = out_dir / "energy.csv";
  write_file(trace_path, trace_csv(r));
  write_file(summary_path, summary_text(r));
  write_file(energy_path, energy_series_csv(r.trace));
  return {trace_path, summary_path, energy_path};
}

std::vector<std::filesystem::path> emit_compare(const CompareReport& rep,
                                                const std::filesystem::path& out_dir) {
  ensure_dir(out_dir);
  const auto report_path = out_dir / "compare.txt";
  const auto idf_path = out_dir / "energy_idfadnwca.csv";
  const auto spaid_path = out_dir / "energy_spaid.csv";
  write_file(report_path, compare_text(rep));
  write_file(idf_path, energy_series_csv(rep.energy_idfadnwca));
  write_file(spaid_path, energy_series_csv(rep.energy_spaid));
  return {report_path, idf_path, spaid_path};
}

}  // namespace adhocids
