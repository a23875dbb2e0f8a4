#pragma once

// Command-line driver: dataset ingestion, report emission and the
// fit / compare / sample / plot-data / tables subcommands. Each run_* writes
// its report to `out` and returns a process exit code.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "ogelfr/dataset.hpp"
#include "ogelfr/estimation.hpp"
#include "ogelfr/gof.hpp"
#include "ogelfr/model.hpp"

namespace ogelfr::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitData = 2, kExitConvergence = 3 };

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class Subcommand { fit, compare, sample, plot_data, tables };
enum class OutputFormat { human, json, csv };

struct RunConfig {
  Subcommand subcommand = Subcommand::fit;
  std::vector<ModelId> models;
  std::string data = "aarset";
  OutputFormat format = OutputFormat::human;
  std::string out;  // report file, or the curve directory for plot-data; empty = stdout / "."
  std::uint64_t seed = 1;
  double level = 0.95;
  int grid_points = 201;
  std::optional<double> x_max;
  int starts = 20;
  int max_evals = 5000;
  std::vector<double> params;  // explicit parameters for sample / plot-data
  std::size_t n = 0;           // sample size for sample

  FitOptions fit_options() const;
};

/// Throws UsageError on an unknown key.
ModelId parse_model(const std::string& key);
Subcommand parse_subcommand(const std::string& name);
OutputFormat parse_format(const std::string& name);
std::string_view subcommand_name(Subcommand s);

/// "aarset" or a path to a file with one nonnegative value per line; '#'
/// starts a comment line. Throws DataError naming the offending line.
Dataset load_dataset(const std::string& source);
Dataset parse_dataset(std::istream& in, const std::string& name);

/// Canonical json of a fit. NaN entries (undefined standard errors) are null.
Json to_json(const FitReport& report);
FitReport fit_report_from_json(const Json& j);

/// Goodness-of-fit battery for a fitted model.
struct GofSummary {
  double ks;
  double ks_pvalue;
  CriteriaReport criteria;
};
GofSummary gof_summary(const FitReport& report, const Dataset& data);
Json to_json(const GofSummary& gof);

/// %.4g-style rendering used by the human tables.
std::string sig4(double v);

int run_fit(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_compare(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_sample(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_plotdata(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_tables(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.subcommand, redirecting to config.out when set, and
/// maps exceptions to exit codes with a message on `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace ogelfr::cli
