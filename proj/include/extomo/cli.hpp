#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "extomo/config.hpp"
#include "extomo/report.hpp"

namespace extomo {

// Extra files an experiment wants in its run directory, name -> writer(path).
using Artifacts = std::map<std::string, std::function<void(const std::string&)>>;

struct ExperimentEntry {
  std::string command;  // verify | sweep | knapp | tubes | extremize | transform
  std::string name;
  std::string help;
  std::vector<KeySpec> keys;
  std::function<ExperimentReport(const RunConfig&, Artifacts&)> run;
};

const std::vector<ExperimentEntry>& experiment_registry();
const ExperimentEntry& find_experiment(const std::string& name);

std::string version_string();

// Writes via a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);

// Writes the run directory (config echo, report JSON, summary, version and
// one CSV per sweep). Returns the report path.
std::string write_run_directory(const std::string& dir, const RunConfig& cfg,
                                const ExperimentReport& report, const Artifacts& extra);

// One CSV per sweep of the report at report_path, columns
// (abscissa, ordinate, fit_value). Throws Error("missing-data") when the
// report holds no sweep.
std::vector<std::string> emit_plot_data(const std::string& report_path, const std::string& out_dir);
std::string plot_csv(const GrowthFit& fit);

struct PlotRow {
  double abscissa = 0, ordinate = 0, fit_value = 0;
};
std::vector<PlotRow> read_plot_csv(const std::string& path);

// Entry point; returns the process exit code (0 pass, 1 tolerance failure,
// 2 usage or configuration error).
int run_cli(int argc, char** argv);

}  // namespace extomo
