#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <ostream>

#include "ogelfr/aarset.hpp"
#include "ogelfr/cli.hpp"
#include "ogelfr/errors.hpp"

namespace ogelfr::cli {

namespace {

std::string full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

Json envelope(const RunConfig& config, const Dataset* data) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["command"] = std::string(subcommand_name(config.subcommand));
  if (data) j["data"] = {{"source", config.data}, {"n", data->size()}};
  return j;
}

ModelId single_model(const RunConfig& config, ModelId fallback) {
  if (config.models.empty()) return fallback;
  if (config.models.size() != 1) throw UsageError("this subcommand takes exactly one --model");
  return config.models.front();
}

Eigen::VectorXd explicit_params(const RunConfig& config, ModelId model) {
  if (static_cast<Eigen::Index>(config.params.size()) != parameter_count(model)) {
    std::string names;
    for (const auto& n : parameter_names(model)) names += (names.empty() ? "" : ",") + n;
    throw UsageError(std::string(model_label(model)) + " needs --params " + names);
  }
  return Eigen::Map<const Eigen::VectorXd>(config.params.data(), static_cast<Eigen::Index>(config.params.size()));
}

std::vector<ModelId> sorted_models(std::vector<ModelId> models) {
  std::sort(models.begin(), models.end());
  models.erase(std::unique(models.begin(), models.end()), models.end());
  return models;
}

void write_fit_human(std::ostream& out, const FitReport& r, const GofSummary& g, const Dataset& data) {
  out << model_label(r.model) << " fit, n = " << data.size() << '\n';
  out << std::left << std::setw(10) << "parameter" << std::setw(12) << "estimate" << std::setw(12) << "std.error"
      << "CI(" << sig4(100 * r.level) << "%)\n";
  for (Eigen::Index j = 0; j < r.estimates.size(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    out << std::setw(10) << parameter_names(r.model)[k] << std::setw(12) << sig4(r.estimates[j]) << std::setw(12)
        << (r.std_errors.size() ? sig4(r.std_errors[j]) : "-");
    if (k < r.intervals.size())
      out << '[' << sig4(r.intervals[k].lower_clipped) << ", " << sig4(r.intervals[k].upper) << ']';
    out << '\n';
  }
  out << "-L = " << sig4(r.neg_log_likelihood) << "  AIC = " << sig4(g.criteria.aic)
      << "  AICC = " << sig4(g.criteria.aicc) << "  BIC = " << sig4(g.criteria.bic)
      << "  HQIC = " << sig4(g.criteria.hqic) << '\n';
  out << "K-S = " << sig4(g.ks) << "  p = " << sig4(g.ks_pvalue) << '\n';
  out << "converged: " << (r.converged ? "yes" : "no") << ", starts: " << r.restarts_used
      << ", evaluations: " << r.evaluations << ", information: " << r.information_source << '\n';
  if (!r.information_error.empty()) out << "information: " << r.information_error << '\n';
  for (const auto& n : r.notes) out << "note: " << n << '\n';
}

struct CompareRow {
  ModelId model;
  std::optional<FitReport> fit;
  std::optional<GofSummary> gof;
  std::string error;
};

}  // namespace

int run_fit(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const ModelId model = single_model(config, ModelId::oge_lfr);
  const Dataset data = load_dataset(config.data);
  const FitReport report = fit_mle(data, model, config.fit_options());
  const GofSummary gof = gof_summary(report, data);

  switch (config.format) {
    case OutputFormat::json: {
      Json j = envelope(config, &data);
      j["fit"] = to_json(report);
      j["gof"] = to_json(gof);
      emit(out, j);
      break;
    }
    case OutputFormat::csv:
      out << "parameter,estimate,std_error,lower,upper\n";
      for (Eigen::Index j = 0; j < report.estimates.size(); ++j) {
        const auto k = static_cast<std::size_t>(j);
        out << parameter_names(model)[k] << ',' << full(report.estimates[j]) << ','
            << (report.std_errors.size() ? full(report.std_errors[j]) : "") << ','
            << (k < report.intervals.size() ? full(report.intervals[k].lower) : "") << ','
            << (k < report.intervals.size() ? full(report.intervals[k].upper) : "") << '\n';
      }
      break;
    case OutputFormat::human:
      write_fit_human(out, report, gof, data);
      break;
  }
  if (!report.converged) {
    err << "fit did not converge within " << config.max_evals << " evaluations per start\n";
    return kExitConvergence;
  }
  return kExitOk;
}

int run_compare(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const std::vector<ModelId> models = sorted_models(
      config.models.empty() ? std::vector<ModelId>{ModelId::exponential, ModelId::ge, ModelId::lfr, ModelId::oge_lfr}
                            : config.models);
  if (models.size() < 2) throw UsageError("compare needs at least two distinct models");
  const Dataset data = load_dataset(config.data);

  std::vector<CompareRow> rows;
  for (ModelId m : models) {
    CompareRow row{m, std::nullopt, std::nullopt, {}};
    try {
      row.fit = fit_mle(data, m, config.fit_options());
      row.gof = gof_summary(*row.fit, data);
      if (!row.fit->converged) row.error = "not converged";
    } catch (const std::exception& e) {
      row.fit.reset();
      row.gof.reset();
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  std::stable_sort(rows.begin(), rows.end(), [](const CompareRow& a, const CompareRow& b) {
    if (a.gof.has_value() != b.gof.has_value()) return a.gof.has_value();
    return a.gof && a.gof->criteria.aic < b.gof->criteria.aic;
  });

  std::map<std::string, ModelId> best;
  auto pick = [&](const std::string& name, auto value) {
    const CompareRow* winner = nullptr;
    for (const auto& row : rows)
      if (row.gof && (!winner || value(*row.gof) < value(*winner->gof))) winner = &row;
    if (winner) best[name] = winner->model;
  };
  pick("aic", [](const GofSummary& g) { return g.criteria.aic; });
  pick("aicc", [](const GofSummary& g) { return g.criteria.aicc; });
  pick("bic", [](const GofSummary& g) { return g.criteria.bic; });
  pick("hqic", [](const GofSummary& g) { return g.criteria.hqic; });
  pick("ks", [](const GofSummary& g) { return g.ks; });
  const std::vector<std::string> criteria = {"aic", "aicc", "bic", "hqic", "ks"};

  switch (config.format) {
    case OutputFormat::json: {
      Json j = envelope(config, &data);
      Json jrows = Json::array();
      for (const auto& row : rows) {
        Json r;
        r["model"] = std::string(model_key(row.model));
        r["parameters"] = parameter_names(row.model);
        if (row.fit) {
          r["estimates"] = to_json(*row.fit)["estimates"];
          r["converged"] = row.fit->converged;
          r["gof"] = to_json(*row.gof);
        }
        r["error"] = row.error.empty() ? Json(nullptr) : Json(row.error);
        jrows.push_back(r);
      }
      j["rows"] = jrows;
      Json jbest = Json::object();
      for (const auto& c : criteria)
        jbest[c] = best.contains(c) ? Json(std::string(model_key(best.at(c)))) : Json(nullptr);
      j["best"] = jbest;
      emit(out, j);
      break;
    }
    case OutputFormat::csv:
      out << "model,neg_log_likelihood,aic,aicc,bic,hqic,ks,ks_pvalue,estimates,error\n";
      for (const auto& row : rows) {
        out << model_key(row.model) << ',';
        if (row.gof) {
          const auto& g = *row.gof;
          out << full(g.criteria.neg_log_lik) << ',' << full(g.criteria.aic) << ',' << full(g.criteria.aicc) << ','
              << full(g.criteria.bic) << ',' << full(g.criteria.hqic) << ',' << full(g.ks) << ','
              << full(g.ks_pvalue) << ',';
          for (Eigen::Index k = 0; k < row.fit->estimates.size(); ++k)
            out << (k ? ";" : "") << full(row.fit->estimates[k]);
        } else {
          out << ",,,,,,,";
        }
        out << ',' << row.error << '\n';
      }
      break;
    case OutputFormat::human:
      out << std::left << std::setw(9) << "model" << std::setw(10) << "-L" << std::setw(10) << "AIC" << std::setw(10)
          << "AICC" << std::setw(10) << "BIC" << std::setw(10) << "HQIC" << std::setw(9) << "K-S" << std::setw(9)
          << "p" << "estimates\n";
      for (const auto& row : rows) {
        out << std::setw(9) << model_label(row.model);
        if (row.gof) {
          const auto& g = *row.gof;
          out << std::setw(10) << sig4(g.criteria.neg_log_lik) << std::setw(10) << sig4(g.criteria.aic)
              << std::setw(10) << sig4(g.criteria.aicc) << std::setw(10) << sig4(g.criteria.bic) << std::setw(10)
              << sig4(g.criteria.hqic) << std::setw(9) << sig4(g.ks) << std::setw(9) << sig4(g.ks_pvalue);
          for (Eigen::Index k = 0; k < row.fit->estimates.size(); ++k)
            out << (k ? " " : "") << parameter_names(row.model)[static_cast<std::size_t>(k)] << '='
                << sig4(row.fit->estimates[k]);
        }
        if (!row.error.empty()) out << "  (" << row.error << ')';
        out << '\n';
      }
      out << "best:";
      for (const auto& c : criteria)
        if (best.contains(c)) out << ' ' << c << '=' << model_label(best.at(c));
      out << '\n';
      break;
  }

  if (best.empty()) {
    err << "no model could be fitted\n";
    return kExitData;
  }
  for (const auto& row : rows)
    if (row.fit && !row.fit->converged) {
      err << model_label(row.model) << " fit did not converge\n";
      return kExitConvergence;
    }
  return kExitOk;
}

int run_sample(const RunConfig& config, std::ostream& out, std::ostream&) {
  const ModelId model = single_model(config, ModelId::oge_lfr);
  const Eigen::VectorXd params = explicit_params(config, model);
  const auto dist = make_model(model, params, ParamDomain::strict);
  const std::vector<double> values = sample(*dist, config.n, config.seed);

  if (config.format == OutputFormat::json) {
    Json j = envelope(config, nullptr);
    j["model"] = std::string(model_key(model));
    j["parameters"] = parameter_names(model);
    j["parameter_values"] = config.params;
    j["n"] = config.n;
    j["seed"] = config.seed;
    j["values"] = values;
    emit(out, j);
  } else {
    for (double v : values) out << full(v) << '\n';
  }
  return kExitOk;
}

int run_plotdata(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.grid_points < 2) throw UsageError("--grid-points must be at least 2");
  const Dataset data = load_dataset(config.data);
  const std::filesystem::path dir = config.out.empty() ? std::filesystem::path(".") : std::filesystem::path(config.out);
  std::filesystem::create_directories(dir);

  struct Fitted {
    ModelId model;
    Eigen::VectorXd params;
    std::string source;
  };
  std::vector<Fitted> fitted;
  if (!config.params.empty()) {
    const ModelId m = single_model(config, ModelId::oge_lfr);
    fitted.push_back({m, explicit_params(config, m), "params"});
    make_model(m, fitted.back().params, ParamDomain::strict);
  } else {
    for (ModelId m : sorted_models(config.models.empty() ? std::vector<ModelId>{ModelId::oge_lfr} : config.models)) {
      const FitReport r = fit_mle(data, m, config.fit_options());
      if (!r.converged) {
        err << model_label(m) << " fit did not converge; no curves written for an unfitted model\n";
        return kExitConvergence;
      }
      fitted.push_back({m, r.estimates, "fit"});
    }
  }

  const double x_max = config.x_max.value_or(data.max());
  if (!(x_max > 0)) throw UsageError("--x-max must be positive");
  const int npts = config.grid_points;

  Json files = Json::array();
  auto write_csv = [&](const std::string& name, const std::string& model, const std::string& curve,
                       const std::string& header, const std::vector<std::pair<double, double>>& rows) {
    std::ofstream f(dir / name);
    if (!f) throw DataError("cannot write " + (dir / name).string());
    f << header << '\n';
    for (const auto& [x, y] : rows) f << full(x) << ',' << full(y) << '\n';
    files.push_back({{"file", name}, {"model", model}, {"curve", curve}, {"rows", rows.size()}});
  };

  // Kaplan-Meier step curve drawn with both corners of every step.
  {
    std::vector<std::pair<double, double>> rows{{0.0, 1.0}};
    double prev = 1.0;
    for (const Knot& k : kaplan_meier(data).knots) {
      rows.emplace_back(k.x, prev);
      rows.emplace_back(k.x, k.value);
      prev = k.value;
    }
    write_csv("km_survival.csv", "km", "survival", "x,survival", rows);
  }

  Json models = Json::array();
  for (const auto& f : fitted) {
    const auto dist = make_model(f.model, f.params);
    const std::string key(model_key(f.model));
    models.push_back({{"model", key}, {"source", f.source}, {"parameters", parameter_names(f.model)},
                      {"estimates", std::vector<double>(f.params.begin(), f.params.end())}});

    const std::vector<std::pair<std::string, double (LifetimeModel::*)(double) const>> curves = {
        {"pdf", &LifetimeModel::pdf},
        {"cdf", &LifetimeModel::cdf},
        {"survival", &LifetimeModel::survival},
        {"hazard", &LifetimeModel::hazard},
        {"reversed_hazard", &LifetimeModel::reversed_hazard}};
    for (const auto& [curve, fn] : curves) {
      std::vector<std::pair<double, double>> rows;
      for (int i = 1; i <= npts; ++i) {
        const double x = x_max * i / npts;
        rows.emplace_back(x, ((*dist).*fn)(x));
      }
      write_csv(key + "_" + curve + ".csv", key, curve, "x," + curve, rows);
    }

    // Slice profiles: one coordinate varies on a log scale around the
    // estimate, the others stay fixed. An odd count keeps the estimate on the grid.
    const int pp = npts % 2 == 1 ? npts : npts + 1;
    for (Eigen::Index j = 0; j < f.params.size(); ++j) {
      const std::string& name = parameter_names(f.model)[static_cast<std::size_t>(j)];
      std::vector<std::pair<double, double>> rows;
      for (int i = 0; i < pp; ++i) {
        const double t = -0.5 + static_cast<double>(i) / (pp - 1);
        Eigen::VectorXd v = f.params;
        v[j] = i == (pp - 1) / 2 ? f.params[j] : f.params[j] * std::exp(t);
        double ll;
        try {
          ll = log_likelihood(*make_model(f.model, v), data);
        } catch (const std::exception&) {
          ll = -std::numeric_limits<double>::infinity();
        }
        rows.emplace_back(v[j], ll);
      }
      write_csv(key + "_profile_" + name + ".csv", key, "profile_" + name, name + ",log_likelihood", rows);
    }
  }

  if (config.format == OutputFormat::json) {
    Json j = envelope(config, &data);
    j["x_max"] = x_max;
    j["grid_points"] = npts;
    j["profile_kind"] = "slice";
    j["models"] = models;
    j["files"] = files;
    emit(out, j);
  } else {
    for (const auto& f : files)
      out << f["file"].get<std::string>() << " (" << f["rows"].get<std::size_t>() << " rows)\n";
  }
  return kExitOk;
}

int run_tables(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const Dataset data = load_dataset(config.data);
  struct Row {
    const PublishedFit* published;
    std::optional<FitReport> fit;
    std::optional<GofSummary> gof;
    double nll_at_published = 0, ks_at_published = 0;
    std::string error;
  };
  std::vector<Row> rows;
  int status = kExitOk;
  for (const PublishedFit& p : published_fits()) {
    Row row{&p, std::nullopt, std::nullopt, 0, 0, {}};
    try {
      row.fit = fit_mle(data, p.model, config.fit_options());
      row.gof = gof_summary(*row.fit, data);
      if (!row.fit->converged) {
        row.error = "not converged";
        status = kExitConvergence;
      }
    } catch (const std::exception& e) {
      row.fit.reset();
      row.gof.reset();
      row.error = e.what();
      status = kExitConvergence;
    }
    const Eigen::VectorXd pub = Eigen::Map<const Eigen::VectorXd>(p.estimates.data(), static_cast<Eigen::Index>(p.estimates.size()));
    const auto dist = make_model(p.model, pub);
    row.nll_at_published = -log_likelihood(*dist, data);
    row.ks_at_published = ks_statistic(data, [&](double x) { return dist->cdf(x); });
    rows.push_back(std::move(row));
  }

  auto diff = [](double a, double b) { return std::abs(a - b); };

  switch (config.format) {
    case OutputFormat::json: {
      Json j = envelope(config, &data);
      Json t2 = Json::array(), t3 = Json::array();
      for (const auto& row : rows) {
        const auto& p = *row.published;
        const std::string key(model_key(p.model));
        Json r2{{"model", key}, {"parameters", parameter_names(p.model)}, {"published_estimates", p.estimates},
                {"published_ks", p.ks}, {"published_ks_pvalue", p.ks_pvalue}};
        Json r3{{"model", key}, {"published_neg_log_likelihood", p.neg_log_lik}, {"published_aic", p.aic},
                {"published_aicc", p.aicc}, {"published_bic", p.bic}, {"published_hqic", p.hqic}};
        if (row.fit) {
          std::vector<double> est(row.fit->estimates.begin(), row.fit->estimates.end()), d;
          for (std::size_t k = 0; k < est.size(); ++k) d.push_back(diff(est[k], p.estimates[k]));
          r2["estimates"] = est;
          r2["estimates_abs_diff"] = d;
          r2["ks"] = row.gof->ks;
          r2["ks_abs_diff"] = diff(row.gof->ks, p.ks);
          r2["ks_pvalue"] = row.gof->ks_pvalue;
          const auto& c = row.gof->criteria;
          r3["neg_log_likelihood"] = c.neg_log_lik;
          r3["neg_log_likelihood_abs_diff"] = diff(c.neg_log_lik, p.neg_log_lik);
          r3["aic"] = c.aic;
          r3["aic_abs_diff"] = diff(c.aic, p.aic);
          r3["aicc"] = c.aicc;
          r3["aicc_abs_diff"] = diff(c.aicc, p.aicc);
          r3["bic"] = c.bic;
          r3["bic_abs_diff"] = diff(c.bic, p.bic);
          r3["hqic"] = c.hqic;
          r3["hqic_abs_diff"] = diff(c.hqic, p.hqic);
        }
        r2["ks_at_published_estimates"] = row.ks_at_published;
        r3["neg_log_likelihood_at_published_estimates"] = row.nll_at_published;
        r2["error"] = row.error.empty() ? Json(nullptr) : Json(row.error);
        t2.push_back(r2);
        t3.push_back(r3);
      }
      j["estimates"] = t2;
      j["criteria"] = t3;
      emit(out, j);
      break;
    }
    case OutputFormat::csv:
      out << "table,model,quantity,computed,published,abs_diff\n";
      for (const auto& row : rows) {
        const auto& p = *row.published;
        const std::string key(model_key(p.model));
        auto line = [&](const char* table, const std::string& q, double c, double pv) {
          out << table << ',' << key << ',' << q << ',' << full(c) << ',' << full(pv) << ',' << full(diff(c, pv)) << '\n';
        };
        if (row.fit) {
          for (std::size_t k = 0; k < p.estimates.size(); ++k)
            line("estimates", parameter_names(p.model)[k], row.fit->estimates[static_cast<Eigen::Index>(k)], p.estimates[k]);
          line("estimates", "ks", row.gof->ks, p.ks);
          line("estimates", "ks_pvalue", row.gof->ks_pvalue, p.ks_pvalue);
          const auto& c = row.gof->criteria;
          line("criteria", "neg_log_likelihood", c.neg_log_lik, p.neg_log_lik);
          line("criteria", "aic", c.aic, p.aic);
          line("criteria", "aicc", c.aicc, p.aicc);
          line("criteria", "bic", c.bic, p.bic);
          line("criteria", "hqic", c.hqic, p.hqic);
        }
        line("criteria", "neg_log_likelihood_at_published_estimates", row.nll_at_published, p.neg_log_lik);
        line("estimates", "ks_at_published_estimates", row.ks_at_published, p.ks);
      }
      break;
    case OutputFormat::human:
      out << "Estimates and K-S (computed | published)\n";
      for (const auto& row : rows) {
        const auto& p = *row.published;
        out << std::left << std::setw(9) << model_label(p.model);
        for (std::size_t k = 0; k < p.estimates.size(); ++k) {
          out << parameter_names(p.model)[k] << '='
              << (row.fit ? sig4(row.fit->estimates[static_cast<Eigen::Index>(k)]) : std::string("-")) << '|'
              << sig4(p.estimates[k]) << ' ';
        }
        out << " K-S=" << (row.gof ? sig4(row.gof->ks) : "-") << '|' << sig4(p.ks)
            << "  p=" << (row.gof ? sig4(row.gof->ks_pvalue) : "-") << '|' << sig4(p.ks_pvalue);
        if (!row.error.empty()) out << "  (" << row.error << ')';
        out << '\n';
      }
      out << "\n-L and information criteria (computed | published)\n";
      for (const auto& row : rows) {
        const auto& p = *row.published;
        out << std::left << std::setw(9) << model_label(p.model);
        if (row.gof) {
          const auto& c = row.gof->criteria;
          out << "-L=" << sig4(c.neg_log_lik) << '|' << sig4(p.neg_log_lik) << "  AIC=" << sig4(c.aic) << '|'
              << sig4(p.aic) << "  AICC=" << sig4(c.aicc) << '|' << sig4(p.aicc) << "  BIC=" << sig4(c.bic) << '|'
              << sig4(p.bic) << "  HQIC=" << sig4(c.hqic) << '|' << sig4(p.hqic);
        }
        out << '\n';
      }
      out << "\nAt the published estimates:\n";
      for (const auto& row : rows)
        out << std::left << std::setw(9) << model_label(row.published->model) << "-L=" << sig4(row.nll_at_published)
            << "  K-S=" << sig4(row.ks_at_published) << '\n';
      break;
  }
  if (status != kExitOk) err << "some fits failed; see the annotated rows\n";
  return status;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (!(config.level > 0 && config.level < 1)) throw UsageError("--level must lie in (0,1)");
    if (config.starts < 1) throw UsageError("--starts must be at least 1");
    if (config.max_evals < 1) throw UsageError("--max-evals must be at least 1");

    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out.empty() && config.subcommand != Subcommand::plot_data) {
      file.open(config.out);
      if (!file) throw DataError("cannot write '" + config.out + "'");
      sink = &file;
    }
    switch (config.subcommand) {
      case Subcommand::fit: return run_fit(config, *sink, err);
      case Subcommand::compare: return run_compare(config, *sink, err);
      case Subcommand::sample: return run_sample(config, *sink, err);
      case Subcommand::plot_data: return run_plotdata(config, *sink, err);
      case Subcommand::tables: return run_tables(config, *sink, err);
    }
    throw UsageError("no subcommand");
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const InvalidParameter& e) {
    err << "invalid parameter: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const ConvergenceError& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const SingularInformation& e) {
    err << "convergence failure: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "data error: " << e.what() << '\n';
    return kExitData;
  }
}

}  // namespace ogelfr::cli
