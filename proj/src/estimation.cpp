#include "ogelfr/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Cholesky>

#include "ogelfr/baselines.hpp"
#include "ogelfr/errors.hpp"
#include "ogelfr/numerics.hpp"
#include "ogelfr/oge_lfr.hpp"

namespace ogelfr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBoundaryThreshold = 1e-10;
constexpr int kMaxPolishRestarts = 10;

void require_positive_observations(const Dataset& data, const char* what) {
  require_nonempty(data);
  if (data.has_zero())
    throw DataError(std::string(what) + ": observations equal to 0 make ln(1 - e^{-alpha(phi-1)}) = -inf");
}

// e^y (1 - y) - 1 without cancellation for small y.
double h_kernel(double y) {
  if (std::abs(y) < 0.5) {
    double term = y;  // y^k / k! at k = 1
    double sum = 0.0;
    for (int k = 2; k < 30; ++k) {
      term *= y / k;
      const double add = (1 - k) * term;
      sum += add;
      if (std::abs(add) <= 1e-17 * std::abs(sum)) break;
    }
    return sum;
  }
  return std::exp(y) * (1 - y) - 1;
}

// Ratios of the per-observation kernels that stay finite for any y >= 0.
struct StableRatios {
  double u, phi, phi_m1, y;
  double inv_psi;      // 1 / psi
  double psi1_psi2;    // (psi + 1) / psi^2
  double h_psi2;       // h / psi^2
  double tau_psi2;     // tau / psi^2
};

StableRatios stable_ratios(const OgeLfrParams<>& p, double x) {
  StableRatios s{};
  s.u = x * (p.a + p.b * x / 2);
  s.phi = std::exp(s.u);
  s.phi_m1 = std::expm1(s.u);
  s.y = p.alpha * s.phi_m1;
  const double em = std::exp(-s.y);
  const double one_m = -std::expm1(-s.y);
  s.inv_psi = em / one_m;
  s.psi1_psi2 = em / (one_m * one_m);
  if (s.y < 0.5) {
    const double psi = std::expm1(s.y);
    s.h_psi2 = h_kernel(s.y) / (psi * psi);
  } else {
    s.h_psi2 = (1 - s.y) * s.psi1_psi2 - s.inv_psi * s.inv_psi;
  }
  s.tau_psi2 = s.h_psi2 - p.alpha * s.psi1_psi2;
  return s;
}

}  // namespace

AuxFunctions aux_functions(const OgeLfrParams<>& p, double x) {
  const double u = x * (p.a + p.b * x / 2);
  const double y = p.alpha * std::expm1(u);
  const double ey = std::exp(y);
  return {std::exp(u), std::expm1(y), h_kernel(y), ey * (1 - p.alpha * std::exp(u)) - 1};
}

double log_likelihood(const OgeLfrParams<>& p, const Dataset& data) {
  validate(p, ParamDomain::extended);
  require_nonempty(data);
  const double n = static_cast<double>(data.size());
  double sum_log_rate = 0, sum_u = 0, sum_y = 0, sum_log_bracket = 0, boundary = 0;
  for (double x : data.values()) {
    if (x == 0) {
      boundary += log_pdf(p, 0.0);
      continue;
    }
    const double u = x * (p.a + p.b * x / 2);
    const double y = p.alpha * std::expm1(u);
    sum_log_rate += std::log(p.a + p.b * x);
    sum_u += u;
    sum_y += y;
    sum_log_bracket += log1p_exp_neg(y);
  }
  const double positives = n - static_cast<double>(std::count(data.values().begin(), data.values().end(), 0.0));
  double ll = positives * (std::log(p.alpha) + std::log(p.beta)) + sum_log_rate + sum_u - sum_y + boundary;
  if (p.beta != 1) ll += (p.beta - 1) * sum_log_bracket;
  return ll;
}

Eigen::Vector4d score(const OgeLfrParams<>& p, const Dataset& data) {
  validate(p, ParamDomain::extended);
  require_positive_observations(data, "score");
  const double n = static_cast<double>(data.size());
  const double bm1 = p.beta - 1;
  double s_alpha = n / p.alpha, s_a = 0, s_b = 0, s_beta = n / p.beta;
  for (double x : data.values()) {
    const auto r = stable_ratios(p, x);
    const double rate = p.a + p.b * x;
    const double phi_psi = r.phi * r.inv_psi;
    s_alpha += -r.phi_m1 + bm1 * r.phi_m1 * r.inv_psi;
    s_a += 1 / rate + x - p.alpha * r.phi * x + bm1 * p.alpha * phi_psi * x;
    s_b += x / rate + x * x / 2 - p.alpha / 2 * r.phi * x * x + bm1 * p.alpha / 2 * phi_psi * x * x;
    s_beta += log1p_exp_neg(r.y);
  }
  return {s_alpha, s_a, s_b, s_beta};
}

double profile_beta(double alpha, double a, double b, const Dataset& data) {
  validate(OgeLfrParams<>{alpha, a, b, 1.0}, ParamDomain::extended);
  require_positive_observations(data, "profile_beta");
  double sum = 0;
  for (double x : data.values()) sum += log1p_exp_neg(alpha * std::expm1(x * (a + b * x / 2)));
  return -static_cast<double>(data.size()) / sum;
}

Eigen::Matrix4d observed_information(const OgeLfrParams<>& p, const Dataset& data) {
  validate(p, ParamDomain::extended);
  require_positive_observations(data, "observed_information");
  const double n = static_cast<double>(data.size());
  const double al = p.alpha, bm1 = p.beta - 1;

  double l_bb_beta = -n / (p.beta * p.beta);
  double l_beta_alpha = 0, l_beta_a = 0, l_beta_b = 0;
  double l_alpha_alpha = -n / (al * al), l_alpha_a = 0, l_alpha_b = 0;
  double l_aa = 0, l_ab = 0, l_bb = 0;
  for (double x : data.values()) {
    const auto r = stable_ratios(p, x);
    const double rate = p.a + p.b * x;
    const double x2 = x * x, x3 = x2 * x, x4 = x2 * x2;
    const double phi = r.phi;
    l_beta_alpha += r.phi_m1 * r.inv_psi;
    l_beta_a += al * x * phi * r.inv_psi;
    l_beta_b += al / 2 * x2 * phi * r.inv_psi;
    l_alpha_alpha += -bm1 * r.phi_m1 * r.phi_m1 * r.psi1_psi2;
    l_alpha_a += -x * phi + bm1 * x * phi * r.h_psi2;
    l_alpha_b += -x2 * phi / 2 + bm1 / 2 * x2 * phi * r.h_psi2;
    l_aa += -1 / (rate * rate) - al * x2 * phi + bm1 * al * x2 * phi * r.tau_psi2;
    l_ab += -x / (rate * rate) - al / 2 * x3 * phi + bm1 * al / 2 * x3 * phi * r.tau_psi2;
    l_bb += -x2 / (rate * rate) - al / 4 * x4 * phi + bm1 * al / 4 * x4 * phi * r.tau_psi2;
  }
  Eigen::Matrix4d hess;
  // order: alpha, a, b, beta
  hess << l_alpha_alpha, l_alpha_a, l_alpha_b, l_beta_alpha,
          l_alpha_a, l_aa, l_ab, l_beta_a,
          l_alpha_b, l_ab, l_bb, l_beta_b,
          l_beta_alpha, l_beta_a, l_beta_b, l_bb_beta;
  return -hess;
}

Eigen::Matrix4d observed_information_fd(const OgeLfrParams<>& p, const Dataset& data) {
  const Eigen::Vector4d theta(p.alpha, p.a, p.b, p.beta);
  auto score_at = [&](const Eigen::Vector4d& t) { return score(OgeLfrParams<>{t[0], t[1], t[2], t[3]}, data); };
  Eigen::Matrix4d hess;
  for (int j = 0; j < 4; ++j) {
    const double h = 1e-5 * std::abs(theta[j]);
    Eigen::Vector4d up = theta, down = theta, up2 = theta, down2 = theta;
    up[j] += h;
    down[j] -= h;
    up2[j] += 2 * h;
    down2[j] -= 2 * h;
    hess.col(j) = (-score_at(up2) + 8 * score_at(up) - 8 * score_at(down) + score_at(down2)) / (12 * h);
  }
  return -(hess + hess.transpose()) / 2;
}

double information_discrepancy(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  const Eigen::VectorXd d = b.diagonal().cwiseAbs().cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd diff = d.asDiagonal() * (a - b) * d.asDiagonal();
  return diff.cwiseAbs().maxCoeff();
}

Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                  double rel_step) {
  const Eigen::Index k = x.size();
  Eigen::VectorXd h(k);
  for (Eigen::Index j = 0; j < k; ++j) h[j] = rel_step * std::max(std::abs(x[j]), 1e-300);
  const double f0 = f(x);
  Eigen::MatrixXd hess(k, k);
  for (Eigen::Index i = 0; i < k; ++i) {
    Eigen::VectorXd up = x, down = x;
    up[i] += h[i];
    down[i] -= h[i];
    hess(i, i) = (f(up) - 2 * f0 + f(down)) / (h[i] * h[i]);
    for (Eigen::Index j = 0; j < i; ++j) {
      Eigen::VectorXd pp = x, pm = x, mp = x, mm = x;
      pp[i] += h[i]; pp[j] += h[j];
      pm[i] += h[i]; pm[j] -= h[j];
      mp[i] -= h[i]; mp[j] += h[j];
      mm[i] -= h[i]; mm[j] -= h[j];
      hess(i, j) = hess(j, i) = (f(pp) - f(pm) - f(mp) + f(mm)) / (4 * h[i] * h[j]);
    }
  }
  return hess;
}

Eigen::VectorXd numerical_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   double rel_step) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const double h = rel_step * std::max(std::abs(x[j]), 1e-300);
    Eigen::VectorXd up = x, down = x, up2 = x, down2 = x;
    up[j] += h;
    down[j] -= h;
    up2[j] += 2 * h;
    down2[j] -= 2 * h;
    g[j] = (-f(up2) + 8 * f(up) - 8 * f(down) + f(down2)) / (12 * h);
  }
  return g;
}

Eigen::MatrixXd invert_information(const Eigen::MatrixXd& info) {
  const Eigen::VectorXd diag = info.diagonal();
  if ((diag.array() <= 0).any() || !diag.allFinite())
    throw SingularInformation("information matrix has a non-positive diagonal entry");
  const Eigen::VectorXd d = diag.cwiseSqrt().cwiseInverse();
  const Eigen::MatrixXd scaled = d.asDiagonal() * info * d.asDiagonal();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(scaled);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || (ldlt.vectorD().array() <= 0).any())
    throw SingularInformation("information matrix is not positive definite");
  if (ldlt.rcond() < 1e-12) throw SingularInformation("information matrix is numerically singular");
  const Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(info.rows(), info.cols()));
  return d.asDiagonal() * inv * d.asDiagonal();
}

std::vector<Eigen::VectorXd> multistart_grid(ModelId model, const Dataset& data) {
  const double m = data.mean();
  std::vector<Eigen::VectorXd> grid;
  auto push = [&](std::initializer_list<double> v) {
    Eigen::VectorXd e(static_cast<Eigen::Index>(v.size()));
    Eigen::Index i = 0;
    for (double x : v) e[i++] = x;
    grid.push_back(e);
  };
  switch (model) {
    case ModelId::exponential:
      push({1 / m});
      break;
    case ModelId::ge:
      for (double s : {0.1, 1.0, 10.0}) push({s / m});
      break;
    case ModelId::lfr:
    case ModelId::glfr:
      for (double sa : {0.1, 1.0})
        for (double sb : {0.1, 1.0}) push({sa / m, sb / (m * m)});
      break;
    case ModelId::oge_lfr:
      for (double al : {0.1, 1.0, 10.0, 100.0, 1000.0})
        for (double sa : {0.1, 1.0})
          for (double sb : {0.1, 1.0}) push({al, sa / m, sb / (m * m)});
      break;
  }
  return grid;
}

namespace {

// Maps the simplex coordinates (logs of the searched parameters) to the full
// natural parameter vector, profiling shapes where a closed form exists.
struct SearchProblem {
  std::function<Eigen::VectorXd(const Eigen::VectorXd&)> expand;
  std::function<double(const Eigen::VectorXd&)> neg_log_lik;  // natural parameters
};

double ge_profile_beta(double alpha, const Dataset& data) {
  double s = 0;
  for (double x : data.values()) s += log1p_exp_neg(alpha * x);
  return -static_cast<double>(data.size()) / s;
}

double glfr_profile_beta(double a, double b, const Dataset& data) {
  double s = 0;
  for (double x : data.values()) s += log1p_exp_neg(x * (a + b * x / 2));
  return -static_cast<double>(data.size()) / s;
}

SearchProblem make_problem(ModelId model, const Dataset& data) {
  auto generic_nll = [model, &data](const Eigen::VectorXd& v) {
    return -log_likelihood(*make_model(model, v, ParamDomain::extended), data);
  };
  switch (model) {
    case ModelId::ge:
      return {[&data](const Eigen::VectorXd& t) {
                const double al = std::exp(t[0]);
                return Eigen::Vector2d(al, ge_profile_beta(al, data)).eval();
              },
              generic_nll};
    case ModelId::lfr:
      return {[](const Eigen::VectorXd& t) { return t.array().exp().matrix().eval(); }, generic_nll};
    case ModelId::glfr:
      return {[&data](const Eigen::VectorXd& t) {
                const double a = std::exp(t[0]), b = std::exp(t[1]);
                return Eigen::Vector3d(a, b, glfr_profile_beta(a, b, data)).eval();
              },
              generic_nll};
    case ModelId::oge_lfr:
      return {[&data](const Eigen::VectorXd& t) {
                const double al = std::exp(t[0]), a = std::exp(t[1]), b = std::exp(t[2]);
                return Eigen::Vector4d(al, a, b, profile_beta(al, a, b, data)).eval();
              },
              [&data](const Eigen::VectorXd& v) {
                return -log_likelihood(OgeLfrParams<>{v[0], v[1], v[2], v[3]}, data);
              }};
    case ModelId::exponential:
      break;
  }
  throw InvalidParameter("no search problem for this model");
}

// Profiled shapes are absent from the grid, so every start coordinate is searched.
Eigen::VectorXd search_coordinates(const Eigen::VectorXd& start) { return start.array().log().matrix(); }

// Finite differences of the score are unreliable for a coordinate pinned near
// zero (the step shrinks with it), so the gate only looks at interior ones.
double interior_discrepancy(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& fd, const std::vector<bool>& pinned) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < analytic.rows(); ++j)
    if (!pinned[static_cast<std::size_t>(j)]) keep.push_back(j);
  if (keep.empty()) return 0.0;
  return information_discrepancy(analytic(keep, keep), fd(keep, keep));
}

// The simplex locates the optimum only to the resolution of the objective's
// rounding noise, which leaves score components of order 1e-3 for small
// parameters. A few guarded Newton steps on the interior coordinates drive the
// score to zero; a step is kept only if the log-likelihood does not drop.
void newton_polish(FitReport& rep, const Dataset& data, const std::vector<bool>& pinned) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < 4; ++j)
    if (!pinned[static_cast<std::size_t>(j)]) keep.push_back(j);
  if (keep.empty()) return;
  auto params = [](const Eigen::VectorXd& v) { return OgeLfrParams<>{v[0], v[1], v[2], v[3]}; };
  Eigen::VectorXd theta = rep.estimates;
  double ll = log_likelihood(params(theta), data);
  for (int it = 0; it < 8; ++it) {
    const Eigen::VectorXd s = score(params(theta), data)(keep);
    const Eigen::MatrixXd info = observed_information(params(theta), data)(keep, keep);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) break;
    const Eigen::VectorXd step = ldlt.solve(s);
    Eigen::VectorXd trial = theta;
    trial(keep) += step;
    if ((trial.array() <= 0).any() || !trial.allFinite()) break;
    trial[3] = profile_beta(trial[0], trial[1], trial[2], data);
    const double trial_ll = log_likelihood(params(trial), data);
    if (!(trial_ll >= ll - 1e-9)) break;
    const bool done = (step.cwiseAbs().array() <= 1e-12 * theta(keep).cwiseAbs().array()).all();
    theta = trial;
    ll = std::max(ll, trial_ll);
    if (done) break;
  }
  rep.estimates = theta;
  rep.neg_log_likelihood = -log_likelihood(params(theta), data);
}

// Inverse of the interior block, embedded with NaN rows and columns for
// pinned coordinates.
Eigen::MatrixXd invert_interior(const Eigen::MatrixXd& info, const std::vector<bool>& pinned) {
  std::vector<Eigen::Index> keep;
  for (Eigen::Index j = 0; j < info.rows(); ++j)
    if (!pinned[static_cast<std::size_t>(j)]) keep.push_back(j);
  if (static_cast<Eigen::Index>(keep.size()) == info.rows()) return invert_information(info);
  Eigen::MatrixXd cov = Eigen::MatrixXd::Constant(info.rows(), info.cols(), std::numeric_limits<double>::quiet_NaN());
  if (!keep.empty()) cov(keep, keep) = invert_information(info(keep, keep));
  return cov;
}

void finish_report(FitReport& rep, const Dataset& data, const FitOptions& options, const std::vector<bool>& pinned) {
  const ModelId model = rep.model;
  if (model == ModelId::oge_lfr) {
    const OgeLfrParams<> p{rep.estimates[0], rep.estimates[1], rep.estimates[2], rep.estimates[3]};
    rep.score = score(p, data);
    const Eigen::MatrixXd analytic = observed_information(p, data);
    const Eigen::MatrixXd fd = observed_information_fd(p, data);
    const double gap = interior_discrepancy(analytic, fd, pinned);
    if (std::isfinite(gap) && gap <= kInformationGateTolerance) {
      rep.info_matrix = analytic;
      rep.information_source = "analytic";
    } else {
      rep.info_matrix = fd;
      rep.information_source = "finite-difference";
      rep.notes.push_back("analytic information disagreed with finite differences (scaled gap " +
                          std::to_string(gap) + "); finite-difference information used");
    }
  } else if (model == ModelId::exponential) {
    const double lam = rep.estimates[0];
    const double n = static_cast<double>(data.size());
    rep.score = Eigen::VectorXd::Constant(1, n / lam - data.sum());
    rep.info_matrix = Eigen::MatrixXd::Constant(1, 1, n / (lam * lam));
    rep.information_source = "closed-form";
  } else {
    auto ll = [model, &data](const Eigen::VectorXd& v) {
      return log_likelihood(*make_model(model, v, ParamDomain::extended), data);
    };
    rep.score = numerical_gradient(ll, rep.estimates);
    rep.info_matrix = -numerical_hessian(ll, rep.estimates);
    rep.information_source = "finite-difference";
  }

  rep.level = options.level;
  try {
    rep.covariance = invert_interior(rep.info_matrix, pinned);
    if (std::find(pinned.begin(), pinned.end(), true) != pinned.end())
      rep.notes.push_back("covariance is conditional on the boundary parameters; their standard errors are undefined");
    rep.std_errors = rep.covariance->diagonal().cwiseSqrt();
    rep.intervals = confidence_intervals(rep, options.level);
  } catch (const SingularInformation& e) {
    rep.covariance.reset();
    rep.information_error = e.what();
    rep.std_errors.resize(0);
    rep.intervals.clear();
  }
}

}  // namespace

FitReport fit_mle(const Dataset& data, ModelId model, const FitOptions& options) {
  require_nonempty(data);
  if (!(options.level > 0 && options.level < 1)) throw DomainError("confidence level must be in (0,1)");
  FitReport rep;
  rep.model = model;

  if (model == ModelId::exponential) {
    const double total = data.sum();
    if (!(total > 0)) throw DataError("exponential fit needs a positive total time");
    const double lam = static_cast<double>(data.size()) / total;
    rep.estimates = Eigen::VectorXd::Constant(1, lam);
    rep.neg_log_likelihood = -log_likelihood(*make_model(model, rep.estimates), data);
    rep.converged = true;
    rep.restarts_used = 0;
    rep.start_neg_log_likelihoods = {rep.neg_log_likelihood};
    finish_report(rep, data, options, {false});
    return rep;
  }

  if (model == ModelId::oge_lfr || model == ModelId::ge || model == ModelId::glfr) {
    if (data.has_zero())
      throw DataError(std::string(model_label(model)) +
                      " fitting rejects observations equal to 0: the profiled shape is undefined there");
  }
  if (model == ModelId::oge_lfr && data.size() < 5)
    rep.notes.push_back("fewer than 5 observations: OGE-LFR estimates are poorly determined");

  const SearchProblem problem = make_problem(model, data);
  auto objective = [&](const Eigen::VectorXd& t) {
    if (!t.allFinite()) return kInf;
    try {
      const Eigen::VectorXd v = problem.expand(t);
      if (!v.allFinite() || (v.array() < 0).any()) return kInf;
      const double nll = problem.neg_log_lik(v);
      return std::isnan(nll) ? kInf : nll;
    } catch (const std::exception&) {
      return kInf;
    }
  };

  auto grid = multistart_grid(model, data);
  if (options.max_starts > 0 && grid.size() > static_cast<std::size_t>(options.max_starts))
    grid.resize(static_cast<std::size_t>(options.max_starts));

  std::optional<NelderMeadResult> best;
  for (const auto& start : grid) {
    const NelderMeadResult r = nelder_mead(objective, search_coordinates(start), options.simplex);
    rep.start_neg_log_likelihoods.push_back(r.start_value);
    rep.evaluations += r.evaluations;
    ++rep.restarts_used;
    if (!best || r.value < best->value) best = r;  // strict: ties keep the first found
  }

  // A collapsed simplex can stall on a ridge; restarting from its best vertex
  // with a fresh simplex continues until a restart stops paying off.
  for (int polish = 0; polish < kMaxPolishRestarts && best->converged; ++polish) {
    const NelderMeadResult r = nelder_mead(objective, best->x, options.simplex);
    rep.evaluations += r.evaluations;
    const bool improved = r.value < best->value - options.simplex.f_tol;
    if (r.value < best->value) best = NelderMeadResult{r.x, r.value, best->start_value, r.evaluations, best->iterations + r.iterations, r.converged};
    if (!improved) break;
  }

  rep.estimates = problem.expand(best->x);
  rep.neg_log_likelihood = best->value;
  rep.converged = best->converged && std::isfinite(best->value);
  rep.iterations = best->iterations;
  if (!best->converged) rep.notes.push_back("simplex hit the evaluation limit before meeting its tolerances");

  std::vector<bool> pinned(static_cast<std::size_t>(rep.estimates.size()), false);
  for (Eigen::Index j = 0; j < rep.estimates.size(); ++j) {
    if (rep.estimates[j] >= kBoundaryThreshold) continue;
    pinned[static_cast<std::size_t>(j)] = true;
    std::ostringstream msg;
    msg << parameter_names(model)[static_cast<std::size_t>(j)] << " = " << rep.estimates[j]
        << " sits on the boundary of the parameter space; its score component need not vanish";
    rep.notes.push_back(msg.str());
  }

  if (model == ModelId::oge_lfr && rep.converged) newton_polish(rep, data, pinned);

  finish_report(rep, data, options, pinned);
  return rep;
}

std::vector<Interval> confidence_intervals(const FitReport& report, double level) {
  if (!(level > 0 && level < 1)) throw DomainError("confidence level must be in (0,1)");
  if (!report.covariance) throw SingularInformation("no covariance available: " + report.information_error);
  const double z = std_normal_quantile(1 - (1 - level) / 2);
  std::vector<Interval> out;
  for (Eigen::Index j = 0; j < report.estimates.size(); ++j) {
    const double half = z * std::sqrt((*report.covariance)(j, j));
    const double lo = report.estimates[j] - half;
    out.push_back({lo, report.estimates[j] + half, std::max(lo, 0.0)});
  }
  return out;
}

}  // namespace ogelfr
