#include "hpwan/metrics/csv.h"

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string_view>
#include <system_error>

namespace hpwan {

const char* const kResultsHeader =
    "scenario,config,cc,flows,vc_id,trial,seed,fct_s,ideal_fct_s,"
    "fct_efficiency,retx_bytes,overhead_pct,drops_policer,drops_queue,"
    "drops_microburst,drops_forwarder,drops_shaper,ce_marks";
const char* const kSummaryHeader = "vc_id,min_eff,max_eff,avg_overhead_pct";

namespace {

constexpr size_t kResultColumns = 18;

void CheckField(const std::string& s) {
  if (s.find_first_of(",\"\r\n") != std::string::npos) {
    throw std::invalid_argument("CSV text field contains a separator: " + s);
  }
}

std::vector<std::string_view> Split(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

template <typename T>
T ParseNumber(std::string_view field, size_t line_no) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw std::runtime_error("line " + std::to_string(line_no) +
                             ": bad number '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buf, ptr);
}

void WriteResultsCsv(std::ostream& out, const std::vector<TrialResult>& rows) {
  out << kResultsHeader << '\n';
  for (const TrialResult& r : rows) {
    CheckField(r.scenario);
    CheckField(r.config);
    CheckField(r.cc);
    out << r.scenario << ',' << r.config << ',' << r.cc << ',' << r.flows
        << ',' << r.vc_id << ',' << r.trial << ',' << r.seed << ','
        << FormatDouble(r.fct_s) << ',' << FormatDouble(r.ideal_fct_s) << ','
        << FormatDouble(r.fct_efficiency) << ',' << r.retx_bytes << ','
        << FormatDouble(r.overhead_pct) << ',' << r.drops_policer << ','
        << r.drops_queue << ',' << r.drops_microburst << ','
        << r.drops_forwarder << ',' << r.drops_shaper << ',' << r.ce_marks
        << '\n';
  }
}

std::vector<TrialResult> ReadResultsCsv(std::istream& in) {
  std::vector<TrialResult> rows;
  std::string line;
  if (!std::getline(in, line) || line != kResultsHeader) {
    throw std::runtime_error("line 1: expected the results header");
  }
  size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = Split(line);
    if (f.size() != kResultColumns) {
      throw std::runtime_error("line " + std::to_string(line_no) + ": " +
                               std::to_string(f.size()) + " columns, expected " +
                               std::to_string(kResultColumns));
    }
    TrialResult r;
    r.scenario = std::string(f[0]);
    r.config = std::string(f[1]);
    r.cc = std::string(f[2]);
    r.flows = ParseNumber<uint32_t>(f[3], line_no);
    r.vc_id = ParseNumber<uint32_t>(f[4], line_no);
    r.trial = ParseNumber<uint32_t>(f[5], line_no);
    r.seed = ParseNumber<uint64_t>(f[6], line_no);
    r.fct_s = ParseNumber<double>(f[7], line_no);
    r.ideal_fct_s = ParseNumber<double>(f[8], line_no);
    r.fct_efficiency = ParseNumber<double>(f[9], line_no);
    r.retx_bytes = ParseNumber<uint64_t>(f[10], line_no);
    r.overhead_pct = ParseNumber<double>(f[11], line_no);
    r.drops_policer = ParseNumber<uint64_t>(f[12], line_no);
    r.drops_queue = ParseNumber<uint64_t>(f[13], line_no);
    r.drops_microburst = ParseNumber<uint64_t>(f[14], line_no);
    r.drops_forwarder = ParseNumber<uint64_t>(f[15], line_no);
    r.drops_shaper = ParseNumber<uint64_t>(f[16], line_no);
    r.ce_marks = ParseNumber<uint64_t>(f[17], line_no);
    rows.push_back(std::move(r));
  }
  return rows;
}

void WriteSummaryCsv(std::ostream& out, const ScenarioSummary& summary) {
  out << kSummaryHeader << '\n';
  for (const VcSummary& s : summary.vcs) {
    out << s.vc_id << ',' << FormatDouble(s.min_eff) << ','
        << FormatDouble(s.max_eff) << ',' << FormatDouble(s.avg_overhead_pct)
        << '\n';
  }
  out << "scenario_min_eff," << FormatDouble(summary.scenario_min_eff) << '\n';
  out << "scenario_max_avg_overhead,"
      << FormatDouble(summary.scenario_max_avg_overhead) << '\n';
}

}  // namespace hpwan
