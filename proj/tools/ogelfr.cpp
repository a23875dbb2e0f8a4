// ogelfr: fit, compare and sample OGE-LFR and baseline lifetime models.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ogelfr/cli.hpp"

namespace {

struct Flags {
  std::vector<std::string> models;
  std::string data = "aarset";
  std::string out;
  std::string format = "human";
  std::uint64_t seed = 1;
  double level = 0.95;
  int grid_points = 201;
  double x_max = 0;
  int starts = 20;
  int max_evals = 5000;
  std::vector<double> params;
  std::size_t n = 0;
};

void common_flags(CLI::App* sub, Flags& f, bool with_data) {
  sub->add_option("--model", f.models, "model key: e, ge, lfr, glfr, oge-lfr")->delimiter(',');
  if (with_data) sub->add_option("--data", f.data, "data file, or 'aarset' for the embedded sample");
  sub->add_option("--out", f.out, "write the report here instead of standard output");
  sub->add_option("--format", f.format, "human, json or csv");
  sub->add_option("--seed", f.seed, "random seed");
  sub->add_option("--level", f.level, "confidence level in (0,1)");
  sub->add_option("--grid-points", f.grid_points, "points per curve");
  sub->add_option("--x-max", f.x_max, "right end of the curve grid (default: largest observation)");
  sub->add_option("--starts", f.starts, "number of multistart points");
  sub->add_option("--max-evals", f.max_evals, "simplex evaluations per start");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OGE-LFR lifetime distribution: fitting, comparison and sampling"};
  app.require_subcommand(1);
  Flags f;

  auto* fit = app.add_subcommand("fit", "maximum likelihood fit of one model");
  common_flags(fit, f, true);
  auto* compare = app.add_subcommand("compare", "fit several models and rank them");
  common_flags(compare, f, true);
  auto* sample = app.add_subcommand("sample", "draw a seeded sample from explicit parameters");
  common_flags(sample, f, false);
  sample->add_option("--params", f.params, "parameters in model order, comma separated")->delimiter(',');
  sample->add_option("--n", f.n, "sample size");
  auto* plot = app.add_subcommand("plot-data", "write csv curves for plotting");
  common_flags(plot, f, true);
  plot->add_option("--params", f.params, "use these parameters instead of fitting")->delimiter(',');
  auto* tables = app.add_subcommand("tables", "compare Aarset fits with reference values");
  common_flags(tables, f, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ogelfr::cli::kExitUsage;
  }

  ogelfr::cli::RunConfig config;
  try {
    config.subcommand = ogelfr::cli::parse_subcommand(app.get_subcommands().front()->get_name());
    for (const auto& m : f.models) config.models.push_back(ogelfr::cli::parse_model(m));
    config.format = ogelfr::cli::parse_format(f.format);
  } catch (const ogelfr::cli::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return ogelfr::cli::kExitUsage;
  }
  config.data = f.data;
  config.out = f.out;
  config.seed = f.seed;
  config.level = f.level;
  config.grid_points = f.grid_points;
  if (f.x_max > 0) config.x_max = f.x_max;
  config.starts = f.starts;
  config.max_evals = f.max_evals;
  config.params = f.params;
  config.n = f.n;
  return ogelfr::cli::run(config, std::cout, std::cerr);
}
