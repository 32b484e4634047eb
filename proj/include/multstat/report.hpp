#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "multstat/config.hpp"

namespace multstat {

/// One summary line; pass ⇔ gap ≤ tolerance.
struct ReportRow {
    std::string experiment;
    std::string criterion;
    double measured = 0.0;
    double reference = 0.0;
    double gap = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

ReportRow make_row(std::string experiment, std::string criterion, double measured, double reference,
                   double gap, double tolerance);

struct CsvTable {
    std::string file;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
    void write(const std::string& dir) const;
};

/// %.17g, "nan"/"inf" spelled out.
std::string fmt(double v);

struct ExperimentInfo {
    std::string id;
    std::string checks;
    std::string file;
};

/// Stable order.
const std::vector<ExperimentInfo>& list_experiments();
std::string list_text();

/// Column sets of every CSV written by `run`, keyed by file name.
const std::vector<std::pair<std::string, std::vector<std::string>>>& csv_schemas();

enum ExitStatus { kAllPass = 0, kSomeFail = 1, kConfigError = 2, kNumericalError = 3 };

struct RunResult {
    int status = kAllPass;
    std::vector<ReportRow> rows;
    std::string failed_experiment;
    std::string message;
};

/// Runs every experiment family, writes the detail CSVs and summary.csv into
/// the output directory (MULTSTAT_OUTPUT_DIR overrides cfg.output_dir).
RunResult run(const RunConfig& cfg, std::ostream& log);

/// Recurrence coefficients (undeformed and deformed weight) for each n of the
/// configuration, as CSV.
void dump_recurrence(const RunConfig& cfg, std::ostream& out);

}  // namespace multstat
