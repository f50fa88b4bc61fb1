#ifndef HPWAN_METRICS_CSV_H_
#define HPWAN_METRICS_CSV_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "hpwan/metrics/metrics.h"

namespace hpwan {

// Fixed column order of the results file.
extern const char* const kResultsHeader;
extern const char* const kSummaryHeader;

// Shortest decimal text that parses back to the same double, independent of
// the C++ or C locale.
std::string FormatDouble(double value);

void WriteResultsCsv(std::ostream& out, const std::vector<TrialResult>& rows);
// Throws std::runtime_error naming the line on any malformed input.
std::vector<TrialResult> ReadResultsCsv(std::istream& in);

// One row per VC, then the two scenario-level footer rows.
void WriteSummaryCsv(std::ostream& out, const ScenarioSummary& summary);

}  // namespace hpwan

#endif  // HPWAN_METRICS_CSV_H_
