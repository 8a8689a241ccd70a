#pragma once

#include <iosfwd>

#include "dpcp/diagnostics.hpp"
#include "dpcp/io.hpp"
#include "dpcp/study.hpp"

namespace dpcp {

/// Human-readable run summary.
void write_summary_report(std::ostream& out, const RunSummary& s, const DrawFileHeader& header);

/// Tab-separated table, same columns for every model:
/// section, regime, quantity, estimate, lower, upper.
/// Sections: posterior_K, parameter, change_point, beta.
void write_summary_table(std::ostream& out, const RunSummary& s);

void write_study_report(std::ostream& out, const StudyReport& r, const StudyConfig& cfg);

}  // namespace dpcp
