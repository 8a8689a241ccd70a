#include "dpcp/report.hpp"

#include <cstdio>
#include <ostream>
#include <string>

namespace dpcp {

namespace {

std::string num(double v, int digits = 6) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace

void write_summary_report(std::ostream& out, const RunSummary& s, const DrawFileHeader& header) {
  out << "model " << header.model << ", emission " << header.family << ", T = " << header.length << ", "
      << s.draw_count << " draws\n\n";
  out << "posterior of K\n";
  for (const auto& [k, p] : s.posterior_K) out << "  K = " << k << ": " << num(p, 4) << '\n';
  out << "MAP K = " << s.map_K << " (" << s.subset_count << " draws)\n\n";

  const std::string lvl = num(s.level * 100.0, 3) + "% CI";
  out << "regime summaries given K = " << s.map_K << " (" << lvl << ")\n";
  for (std::size_t k = 0; k < s.regimes.size(); ++k) {
    const auto& r = s.regimes[k];
    out << "  regime " << k + 1 << ':';
    for (const auto& p : r.parameters) {
      out << "  " << p.name << " " << num(p.mean, 5) << " [" << num(p.interval.lower, 5) << ", "
          << num(p.interval.upper, 5) << "]";
    }
    out << "  end " << num(r.change_point.map, 10) << " [" << num(r.change_point.interval.lower, 10) << ", "
        << num(r.change_point.interval.upper, 10) << "]\n";
  }
  out << "\nbeta " << num(s.beta.mean, 5) << " [" << num(s.beta.interval.lower, 5) << ", "
      << num(s.beta.interval.upper, 5) << "]\n";
}

void write_summary_table(std::ostream& out, const RunSummary& s) {
  out << "section\tregime\tquantity\testimate\tlower\tupper\n";
  for (const auto& [k, p] : s.posterior_K) out << "posterior_K\tNA\t" << k << '\t' << num(p, 10) << "\tNA\tNA\n";
  for (std::size_t k = 0; k < s.regimes.size(); ++k) {
    for (const auto& p : s.regimes[k].parameters) {
      out << "parameter\t" << k + 1 << '\t' << p.name << '\t' << num(p.mean, 10) << '\t' << num(p.interval.lower, 10)
          << '\t' << num(p.interval.upper, 10) << '\n';
    }
    const auto& c = s.regimes[k].change_point;
    out << "change_point\t" << k + 1 << "\txi\t" << num(c.map, 12) << '\t' << num(c.interval.lower, 12) << '\t'
        << num(c.interval.upper, 12) << '\n';
  }
  out << "beta\tNA\tbeta\t" << num(s.beta.mean, 10) << '\t' << num(s.beta.interval.lower, 10) << '\t'
      << num(s.beta.interval.upper, 10) << '\n';
}

void write_study_report(std::ostream& out, const StudyReport& r, const StudyConfig& cfg) {
  out << "scheme " << scheme_name(cfg.scheme) << ", model " << model_name(cfg.fit.model) << ", " << r.replicates.size()
      << " replicates\n";
  out << "replicate\tdata_seed\tmap_K\trand_index\n";
  for (const auto& x : r.replicates) {
    out << x.index + 1 << '\t' << x.data_seed << '\t' << x.map_K << '\t' << num(x.rand_index, 6) << '\n';
  }
  out << "MAP K frequencies:";
  for (const auto& [k, c] : r.map_K_counts) out << "  " << k << ":" << c;
  out << "\nRand index min " << num(r.rand_min, 5) << ", median " << num(r.rand_median, 5) << ", max "
      << num(r.rand_max, 5) << '\n';
}

}  // namespace dpcp
