// Command-line front end: run scenarios, validate configs and recompute
// summaries from results files.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 a trial failed.

#include <omp.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "hpwan/metrics/csv.h"
#include "hpwan/metrics/metrics.h"
#include "hpwan/scenario/config.h"
#include "hpwan/scenario/experiment.h"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitTrialFailed = 2;

constexpr const char* kOutDirEnv = "HPWAN_OUT_DIR";

struct ScenarioArgs {
  std::string scenario;
  std::vector<std::string> overrides;
  int64_t trials = -1;
  int64_t seed = -1;
};

void AddScenarioOptions(CLI::App* cmd, ScenarioArgs* args) {
  cmd->add_option("-s,--scenario", args->scenario,
                  "Preset name or path to a JSON scenario file")
      ->required();
  cmd->add_option("--override", args->overrides,
                  "key.path=value applied after loading (repeatable)");
  cmd->add_option("-t,--trials", args->trials, "Number of trials")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", args->seed, "Master seed")
      ->check(CLI::NonNegativeNumber);
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw hpwan::ConfigError("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Preset names take precedence; anything else must be a readable file.
hpwan::ScenarioConfig ResolveScenario(const ScenarioArgs& args) {
  std::vector<std::string> overrides = args.overrides;
  if (args.trials > 0) overrides.push_back("trials=" + std::to_string(args.trials));
  if (args.seed >= 0) overrides.push_back("master_seed=" + std::to_string(args.seed));

  const auto names = hpwan::PresetNames();
  const bool is_preset =
      std::find(names.begin(), names.end(), args.scenario) != names.end();
  if (is_preset) {
    return hpwan::ApplyOverrides(hpwan::Preset(args.scenario), overrides);
  }
  std::error_code ec;
  if (!fs::is_regular_file(args.scenario, ec)) {
    // Reuse the preset lookup error, which lists every known name.
    hpwan::Preset(args.scenario);
  }
  return hpwan::LoadScenario(ReadFile(args.scenario), overrides);
}

// Writes `text` to `path` through a temporary file so a reader never sees a
// partial CSV.
void WriteAtomically(const fs::path& path, const std::string& text) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << text;
    if (!out.flush()) {
      throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
  }
  fs::rename(tmp, path);
}

fs::path OutputDir(const std::string& flag) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv(kOutDirEnv); env != nullptr && *env) {
    return env;
  }
  return "results";
}

int Run(const ScenarioArgs& args, const std::string& out_flag, int parallel) {
  hpwan::ScenarioConfig cfg;
  try {
    cfg = ResolveScenario(args);
  } catch (const hpwan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  const hpwan::ExperimentResult result = hpwan::RunExperiment(cfg, parallel);

  int failed = 0;
  for (const hpwan::TrialOutcome& o : result.outcomes) {
    for (const std::string& w : o.warnings) {
      std::cerr << "warning: trial " << o.trial << ": " << w << "\n";
    }
    if (!o.ok) {
      ++failed;
      std::cerr << "trial " << o.trial << " (seed " << o.seed
                << ") failed: " << o.diagnostics << "\n";
    }
  }

  std::ostringstream results_csv;
  hpwan::WriteResultsCsv(results_csv, result.rows);
  std::ostringstream summary_csv;
  if (!result.rows.empty()) {
    hpwan::WriteSummaryCsv(summary_csv, hpwan::Aggregate(result.rows));
  } else {
    summary_csv << hpwan::kSummaryHeader << "\n";
  }

  const fs::path dir = OutputDir(out_flag);
  try {
    fs::create_directories(dir);
    WriteAtomically(dir / "results.csv", results_csv.str());
    WriteAtomically(dir / "summary.csv", summary_csv.str());
  } catch (const std::exception& e) {
    std::cerr << "output error: " << e.what() << "\n";
    return kExitConfig;
  }

  std::cerr << cfg.name << ": " << result.rows.size() << " rows, "
            << (cfg.trials - failed) << "/" << cfg.trials
            << " trials ok, written to " << dir.string() << "\n";
  return failed == 0 ? kExitOk : kExitTrialFailed;
}

int Validate(const ScenarioArgs& args) {
  try {
    std::cout << hpwan::ScenarioToJson(ResolveScenario(args)) << "\n";
  } catch (const hpwan::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

int Report(const std::string& results_path, const std::string& output) {
  try {
    std::ifstream in(results_path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + results_path + "'");
    const auto rows = hpwan::ReadResultsCsv(in);
    if (rows.empty()) throw std::runtime_error("no result rows");
    std::ostringstream summary;
    hpwan::WriteSummaryCsv(summary, hpwan::Aggregate(rows));
    if (output.empty()) {
      std::cout << summary.str();
    } else {
      WriteAtomically(output, summary.str());
    }
  } catch (const std::exception& e) {
    std::cerr << "report error: " << e.what() << "\n";
    return kExitConfig;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Packet-level simulator of bulk transfers over bandwidth-"
               "reserved WAN circuits"};
  app.require_subcommand(1);

  ScenarioArgs run_args;
  std::string out_dir;
  int parallel = omp_get_num_procs();
  CLI::App* run = app.add_subcommand("run", "Run every trial of a scenario");
  AddScenarioOptions(run, &run_args);
  run->add_option("-o,--out", out_dir,
                  std::string("Output directory (default $") + kOutDirEnv +
                      " or ./results)");
  run->add_option("-p,--parallel", parallel,
                  "Trials run concurrently; results do not depend on it")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  ScenarioArgs validate_args;
  CLI::App* validate = app.add_subcommand(
      "validate", "Check a scenario and print it with defaults resolved");
  AddScenarioOptions(validate, &validate_args);

  std::string results_path;
  std::string summary_out;
  CLI::App* report = app.add_subcommand(
      "report", "Recompute the summary of a results file");
  report->add_option("results", results_path, "results.csv")->required();
  report->add_option("-o,--output", summary_out,
                     "Write the summary here instead of stdout");

  app.add_subcommand("list", "Print the preset names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  if (run->parsed()) return Run(run_args, out_dir, parallel);
  if (validate->parsed()) return Validate(validate_args);
  if (report->parsed()) return Report(results_path, summary_out);
  for (const std::string& name : hpwan::PresetNames()) {
    std::cout << name << "\n";
  }
  return kExitOk;
}
