#include <cmath>
#include <cstdio>
#include <limits>

#include "ogelfr/cli.hpp"
#include "ogelfr/errors.hpp"

namespace ogelfr::cli {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Json number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }
double number_from(const Json& j) { return j.is_null() ? kNaN : j.get<double>(); }

Json vector_json(const Eigen::VectorXd& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

Eigen::VectorXd vector_from(const Json& j) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = number_from(j[i]);
  return v;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) rows.push_back(vector_json(m.row(i).transpose()));
  return rows;
}

Eigen::MatrixXd matrix_from(const Json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows == 0 ? Eigen::Index{0} : static_cast<Eigen::Index>(j[0].size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) m.row(i) = vector_from(j[static_cast<std::size_t>(i)]).transpose();
  return m;
}

}  // namespace

FitOptions RunConfig::fit_options() const {
  FitOptions opt;
  opt.max_starts = starts;
  opt.simplex.max_evals = max_evals;
  opt.level = level;
  return opt;
}

ModelId parse_model(const std::string& key) {
  if (auto id = parse_model_id(key)) return *id;
  throw UsageError("unknown model '" + key + "' (expected e, ge, lfr, glfr or oge-lfr)");
}

Subcommand parse_subcommand(const std::string& name) {
  if (name == "fit") return Subcommand::fit;
  if (name == "compare") return Subcommand::compare;
  if (name == "sample") return Subcommand::sample;
  if (name == "plot-data") return Subcommand::plot_data;
  if (name == "tables") return Subcommand::tables;
  throw UsageError("unknown subcommand '" + name + "'");
}

std::string_view subcommand_name(Subcommand s) {
  switch (s) {
    case Subcommand::fit: return "fit";
    case Subcommand::compare: return "compare";
    case Subcommand::sample: return "sample";
    case Subcommand::plot_data: return "plot-data";
    case Subcommand::tables: return "tables";
  }
  return "?";
}

OutputFormat parse_format(const std::string& name) {
  if (name == "human") return OutputFormat::human;
  if (name == "json") return OutputFormat::json;
  if (name == "csv") return OutputFormat::csv;
  throw UsageError("unknown format '" + name + "' (expected human, json or csv)");
}

std::string sig4(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Json to_json(const FitReport& r) {
  Json j;
  j["model"] = std::string(model_key(r.model));
  j["parameters"] = parameter_names(r.model);
  j["estimates"] = vector_json(r.estimates);
  j["neg_log_likelihood"] = number(r.neg_log_likelihood);
  j["score"] = vector_json(r.score);
  j["information_source"] = r.information_source;
  j["information_matrix"] = matrix_json(r.info_matrix);
  j["covariance"] = r.covariance ? matrix_json(*r.covariance) : Json(nullptr);
  j["information_error"] = r.information_error;
  j["std_errors"] = vector_json(r.std_errors);
  j["level"] = r.level;
  Json ci = Json::array();
  for (const Interval& iv : r.intervals)
    ci.push_back({{"lower", number(iv.lower)}, {"upper", number(iv.upper)}, {"lower_clipped", number(iv.lower_clipped)}});
  j["confidence_intervals"] = ci;
  j["converged"] = r.converged;
  j["iterations"] = r.iterations;
  j["evaluations"] = r.evaluations;
  j["restarts_used"] = r.restarts_used;
  Json starts = Json::array();
  for (double v : r.start_neg_log_likelihoods) starts.push_back(number(v));
  j["start_neg_log_likelihoods"] = starts;
  j["notes"] = r.notes;
  return j;
}

FitReport fit_report_from_json(const Json& j) {
  FitReport r;
  r.model = parse_model(j.at("model").get<std::string>());
  r.estimates = vector_from(j.at("estimates"));
  r.neg_log_likelihood = number_from(j.at("neg_log_likelihood"));
  r.score = vector_from(j.at("score"));
  r.information_source = j.at("information_source").get<std::string>();
  r.info_matrix = matrix_from(j.at("information_matrix"));
  if (!j.at("covariance").is_null()) r.covariance = matrix_from(j.at("covariance"));
  r.information_error = j.at("information_error").get<std::string>();
  r.std_errors = vector_from(j.at("std_errors"));
  r.level = j.at("level").get<double>();
  for (const Json& iv : j.at("confidence_intervals"))
    r.intervals.push_back({number_from(iv.at("lower")), number_from(iv.at("upper")), number_from(iv.at("lower_clipped"))});
  r.converged = j.at("converged").get<bool>();
  r.iterations = j.at("iterations").get<int>();
  r.evaluations = j.at("evaluations").get<int>();
  r.restarts_used = j.at("restarts_used").get<int>();
  for (const Json& v : j.at("start_neg_log_likelihoods")) r.start_neg_log_likelihoods.push_back(number_from(v));
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

GofSummary gof_summary(const FitReport& report, const Dataset& data) {
  const auto model = make_model(report.model, report.estimates);
  const double d = ks_statistic(data, [&](double x) { return model->cdf(x); });
  return {d, ks_pvalue(d, data.size()),
          information_criteria(report.neg_log_likelihood, static_cast<int>(parameter_count(report.model)), data.size())};
}

Json to_json(const GofSummary& g) {
  return Json{{"ks", number(g.ks)},
              {"ks_pvalue", number(g.ks_pvalue)},
              {"neg_log_likelihood", number(g.criteria.neg_log_lik)},
              {"k", g.criteria.k},
              {"n", g.criteria.n},
              {"aic", number(g.criteria.aic)},
              {"aicc", number(g.criteria.aicc)},
              {"bic", number(g.criteria.bic)},
              {"hqic", number(g.criteria.hqic)}};
}

}  // namespace ogelfr::cli
