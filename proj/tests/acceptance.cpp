// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ogelfr/aarset.hpp"
#include "ogelfr/cli.hpp"
#include "ogelfr/estimation.hpp"
#include "ogelfr/gof.hpp"
#include "ogelfr/moment_series.hpp"
#include "ogelfr/oge_lfr.hpp"
#include "ogelfr/orderstats.hpp"

using namespace ogelfr;
namespace fs = std::filesystem;

namespace {

using P = OgeLfrParams<double>;

int failures = 0;

void report(int id, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::cout << "criterion " << id << ": " << (pass ? "PASS" : "FAIL") << "  " << detail << std::endl;
}

std::string fmt(double v, int digits = 6) {
  std::ostringstream s;
  s.precision(digits);
  s << v;
  return s.str();
}

bool within(double got, double want, double tol, std::string& detail, const std::string& name) {
  const bool ok = std::abs(got - want) <= tol;
  detail += name + " " + fmt(got) + " vs " + fmt(want) + " (tol " + fmt(tol) + ")" + (ok ? "" : " x") + "; ";
  return ok;
}

struct Fitted {
  FitReport fit;
  cli::GofSummary gof;
};

std::map<ModelId, Fitted> fit_all(const Dataset& d) {
  std::map<ModelId, Fitted> out;
  for (ModelId m : {ModelId::exponential, ModelId::ge, ModelId::lfr, ModelId::oge_lfr}) {
    FitReport r = fit_mle(d, m);
    out.emplace(m, Fitted{r, cli::gof_summary(r, d)});
  }
  return out;
}

void criterion1(const Fitted& oge) {
  std::string detail;
  bool ok = within(oge.fit.neg_log_likelihood, 232.865, 0.5, detail, "-L");
  ok &= within(oge.gof.ks, 0.1627, 0.005, detail, "K-S");
  ok &= within(oge.gof.criteria.aic, 473.730, 1.0, detail, "AIC");
  ok &= within(oge.gof.criteria.aicc, 474.618, 1.0, detail, "AICC");
  ok &= within(oge.gof.criteria.bic, 481.378, 1.0, detail, "BIC");
  ok &= within(oge.gof.criteria.hqic, 476.642, 1.0, detail, "HQIC");
  report(1, ok, detail);
}

void criterion2(const std::map<ModelId, Fitted>& f) {
  std::string detail;
  const auto& e = f.at(ModelId::exponential);
  const auto& ge = f.at(ModelId::ge);
  const auto& lfr = f.at(ModelId::lfr);
  bool ok = within(e.fit.estimates[0], 0.0219, 0.0005, detail, "E lambda");
  ok &= within(e.fit.neg_log_likelihood, 241.09, 0.05, detail, "E -L");
  ok &= within(ge.fit.neg_log_likelihood, 240.39, 0.3, detail, "GE -L");
  ok &= within(lfr.fit.neg_log_likelihood, 238.06, 0.3, detail, "LFR -L");
  // "approximately" read as the precision the published values are printed to
  ok &= within(lfr.fit.estimates[0], 0.014, 0.0005, detail, "LFR a");
  ok &= within(lfr.fit.estimates[1], 2.4e-4, 0.05e-4, detail, "LFR b");
  ok &= within(e.gof.ks, 0.1911, 0.005, detail, "E K-S");
  ok &= within(ge.gof.ks, 0.1940, 0.005, detail, "GE K-S");
  ok &= within(lfr.gof.ks, 0.1955, 0.005, detail, "LFR K-S");
  report(2, ok, detail);
}

void criterion3() {
  cli::RunConfig config;
  config.subcommand = cli::Subcommand::compare;
  config.format = cli::OutputFormat::json;
  std::ostringstream out, err;
  const int code = cli::run_compare(config, out, err);
  bool ok = code == cli::kExitOk;
  std::string detail = "best:";
  if (ok) {
    const auto j = cli::Json::parse(out.str());
    for (const auto& [criterion, model] : j["best"].items()) {
      const std::string m = model.is_null() ? "none" : model.get<std::string>();
      detail += " " + criterion + "=" + m;
      ok &= m == "oge-lfr";
    }
  } else {
    detail += " compare exited with " + std::to_string(code);
  }
  report(3, ok, detail);
}

void criterion4(const std::map<ModelId, Fitted>& f) {
  const double p = f.at(ModelId::oge_lfr).gof.ks_pvalue;
  const bool in_band = p >= 0.08 && p <= 0.20;
  std::vector<std::pair<double, double>> ks_p;
  for (const auto& [id, fitted] : f) ks_p.emplace_back(fitted.gof.ks, fitted.gof.ks_pvalue);
  std::sort(ks_p.begin(), ks_p.end());
  bool inverse = true;
  for (std::size_t i = 1; i < ks_p.size(); ++i) inverse &= ks_p[i].second <= ks_p[i - 1].second;
  std::string detail = "OGE-LFR p " + fmt(p) + " in [0.08, 0.20]" + (in_band ? "" : " x") +
                       "; p-values rank inversely to K-S" + (inverse ? "" : " x");
  report(4, in_band && inverse, detail);
}

std::vector<P> distribution_params() {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> la(-1.0, 1.0), lr(-2.0, 0.5), ls(-0.7, 0.7);
  std::vector<P> out;
  for (int i = 0; i < 4; ++i)
    out.push_back({std::pow(10.0, la(gen)), std::pow(10.0, lr(gen)), std::pow(10.0, lr(gen) - 1), std::pow(10.0, ls(gen))});
  out.push_back({250.0, 0.02, 0.003, 0.6});
  return out;
}

void criterion5() {
  double norm_err = 0, inv_err = 0, fd_err = 0, hz_err = 0;
  for (const P& p : distribution_params()) {
    HalflineOptions<double> opt;
    opt.scale = median(p);
    norm_err = std::max(norm_err, std::abs(integrate_halfline([&](double x) { return pdf(p, x); }, 1e-9, opt).value - 1));

    for (double q : {0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999})
      inv_err = std::max(inv_err, std::abs(cdf(p, quantile(p, q)) - q));

    const double lo = quantile(p, 0.01), hi = quantile(p, 0.99);
    for (int i = 0; i < 50; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / 50, h = 1e-5 * x;
      const double fd = (cdf(p, x + h) - cdf(p, x - h)) / (2 * h);
      fd_err = std::max(fd_err, std::abs(fd - pdf(p, x)) / pdf(p, x));
    }
    const double top = quantile(p, 0.999);
    for (int i = 1; i <= 100; ++i) {
      const double x = top * i / 100, f = pdf(p, x), s = survival(p, x), F = cdf(p, x);
      if (s >= 1e-12) hz_err = std::max(hz_err, std::abs(hazard(p, x) * s - f) / f);
      if (F >= 1e-12) hz_err = std::max(hz_err, std::abs(reversed_hazard(p, x) * F - f) / f);
    }
  }
  const bool ok = norm_err <= 1e-6 && inv_err <= 1e-9 && fd_err <= 1e-5 && hz_err <= 1e-10;
  report(5, ok,
         "normalization " + fmt(norm_err, 3) + " <= 1e-6; quantile inversion " + fmt(inv_err, 3) +
             " <= 1e-9; cdf/pdf " + fmt(fd_err, 3) + " <= 1e-5; hazard identities " + fmt(hz_err, 3) + " <= 1e-10");
}

double score_fd(const P& p, const Dataset& d, int j) {
  auto at = [&](double step) {
    P q = p;
    double* c[] = {&q.alpha, &q.a, &q.b, &q.beta};
    *c[j] += step;
    return log_likelihood(q, d);
  };
  const double coords[] = {p.alpha, p.a, p.b, p.beta};
  const double h = 1e-5 * coords[j];
  return (8 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12 * h);
}

void criterion6() {
  const P gens[] = {{1.0, 0.05, 0.002, 1.5}, {0.5, 0.2, 0.01, 0.7}, {3.0, 0.02, 0.0005, 2.5}};
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> jitter(-0.3, 0.3);
  double score_err = 0, hess_err = 0, stationarity = 0;
  int points = 0;
  for (int d = 0; d < 3; ++d) {
    const Dataset data(sample(gens[d], 100, 1000 + d));
    for (int k = 0; k < (d == 2 ? 6 : 7); ++k, ++points) {
      const P& g = gens[d];
      P p{g.alpha * std::exp(jitter(gen)), g.a * std::exp(jitter(gen)), g.b * std::exp(jitter(gen)),
          g.beta * std::exp(jitter(gen))};
      const Eigen::Vector4d s = score(p, data);
      for (int j = 0; j < 4; ++j) {
        const double fd = score_fd(p, data, j);
        score_err = std::max(score_err, std::abs(s[j] - fd) / std::max(std::abs(s[j]), std::abs(fd)));
      }
      if (k < 2) hess_err = std::max(hess_err, information_discrepancy(observed_information(p, data),
                                                                        observed_information_fd(p, data)));
      p.beta = profile_beta(p.alpha, p.a, p.b, data);
      stationarity = std::max(stationarity, std::abs(score(p, data)[3]));
    }
  }
  const bool ok = points == 20 && score_err <= 1e-5 && hess_err <= 1e-4 && stationarity <= 1e-10;
  report(6, ok,
         "score vs FD " + fmt(score_err, 3) + " <= 1e-5 over " + std::to_string(points) +
             " points; analytic vs FD information " + fmt(hess_err, 3) + " <= 1e-4; profile dL/dbeta " +
             fmt(stationarity, 3) + " <= 1e-10");
}

void criterion7() {
  bool ok = true;
  std::string detail;
  for (const P& p : {P{0.5, 1, 0.1, 1}, P{0.5, 1, 0.1, 2}})
    for (int r : {1, 2}) {
      const double quad = moment_quadrature(p, r);
      const auto series = moment_series(p, r);
      const double rel = std::abs(series.value - quad) / std::abs(quad);
      const bool pass = series.converged && rel <= 1e-3;
      ok &= pass;
      detail += "beta=" + fmt(p.beta) + " r=" + std::to_string(r) + ": series " + fmt(series.value) +
                (series.converged ? "" : " (not converged)") + " vs quadrature " + fmt(quad) + (pass ? "" : " x") +
                "; ";
    }
  report(7, ok, detail);
}

void criterion8() {
  std::mt19937_64 gen(99);
  std::uniform_real_distribution<double> la(-1.0, 1.0), ls(-0.5, 0.5);
  double mix_err = 0, avg_err = 0;
  for (int s = 0; s < 3; ++s) {
    const P p{std::pow(10.0, la(gen)), std::pow(10.0, la(gen) - 0.5), std::pow(10.0, la(gen) - 1),
              std::pow(10.0, ls(gen))};
    const double lo = quantile(p, 0.005), hi = quantile(p, 0.995);
    for (int i = 0; i < 50; ++i) {
      const double x = lo + (hi - lo) * i / 49;
      for (int n = 1; n <= 8; ++n) {
        double sum = 0;
        for (int r = 1; r <= n; ++r) {
          const double direct = order_pdf_direct({r, n}, p, x);
          sum += direct;
          mix_err = std::max(mix_err, std::abs(order_pdf_mixture({r, n}, p, x) - direct) / direct);
        }
        avg_err = std::max(avg_err, std::abs(sum / n - pdf(p, x)) / pdf(p, x));
      }
    }
  }
  report(8, mix_err <= 1e-9 && avg_err <= 1e-9,
         "mixture vs direct " + fmt(mix_err, 3) + " <= 1e-9; mean of order densities vs parent " + fmt(avg_err, 3) +
             " <= 1e-9");
}

void criterion9(const Fitted& oge) {
  const auto& e = oge.fit.estimates;
  const P p{e[0], e[1], e[2], e[3]};
  const int points = 1000;
  std::vector<double> h(points);
  for (int i = 0; i < points; ++i) h[i] = hazard(p, 0.1 + (86.0 - 0.1) * i / (points - 1));
  int changes = 0, last_sign = 0, first_sign = 0;
  for (int i = 1; i < points; ++i) {
    const double dh = h[i] - h[i - 1];
    const int sign = (dh > 0) - (dh < 0);
    if (sign == 0) continue;
    if (first_sign == 0) first_sign = sign;
    if (last_sign != 0 && sign != last_sign) ++changes;
    last_sign = sign;
  }
  const bool ok = changes == 1 && first_sign < 0;
  report(9, ok,
         "hazard derivative sign changes " + std::to_string(changes) + ", starts " +
             (first_sign < 0 ? "decreasing" : "increasing") + ", minimum near x = " +
             fmt(0.1 + (86.0 - 0.1) * (std::min_element(h.begin(), h.end()) - h.begin()) / (points - 1), 4));
}

std::pair<int, std::string> run_cli(const std::string& args) {
  const std::string cmd = std::string(OGELFR_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return {-1, {}};
  std::string out;
  char buf[4096];
  while (std::size_t got = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void criterion10() {
  const fs::path base = fs::temp_directory_path() / "ogelfr_acceptance";
  fs::remove_all(base);
  fs::create_directories(base / "a");
  fs::create_directories(base / "b");
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"fit", "fit --format json --seed 7"},
      {"compare", "compare --format json --seed 7"},
      {"sample", "sample --model oge-lfr --params 1,1,1,2 --n 100 --format json --seed 7"},
      {"plot-data", "plot-data --model oge-lfr --format json --seed 7 --out "},
      {"tables", "tables --format json --seed 7"},
  };
  bool ok = true;
  std::string detail;
  for (const auto& [name, args] : commands) {
    const bool plot = name == "plot-data";
    const auto first = run_cli(args + (plot ? (base / "a").string() : ""));
    const auto second = run_cli(args + (plot ? (base / "b").string() : ""));
    bool same = first.first == 0 && second.first == 0 && !first.second.empty() && first.second == second.second;
    if (plot) {
      int files = 0;
      for (const auto& entry : fs::directory_iterator(base / "a")) {
        same &= slurp(entry.path()) == slurp(base / "b" / entry.path().filename());
        ++files;
      }
      same &= files > 0;
    }
    ok &= same;
    detail += name + (same ? " identical" : " differs") + "; ";
  }
  fs::remove_all(base);
  report(10, ok, detail);
}

}  // namespace

int main() {
  const Dataset aarset = aarset_dataset();
  const auto fits = fit_all(aarset);
  criterion1(fits.at(ModelId::oge_lfr));
  criterion2(fits);
  criterion3();
  criterion4(fits);
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9(fits.at(ModelId::oge_lfr));
  criterion10();
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
