#pragma once

// Goodness of fit and model comparison: empirical and product-limit step
// curves, the Kolmogorov-Smirnov distance and the AIC family.

#include <functional>
#include <optional>
#include <vector>

#include "ogelfr/dataset.hpp"

namespace ogelfr {

struct Knot {
  double x;
  double value;
};

/// Right-continuous step function; knots have strictly increasing x.
struct StepCurve {
  std::vector<Knot> knots;

  /// Value at x; before the first knot the curve holds `before`.
  double at(double x, double before) const;
};

/// Jumps of (tie multiplicity)/n at each distinct observation.
StepCurve empirical_cdf(const Dataset& data);

/// sup_x |F_n(x) - F(x)| evaluated on both sides of every jump, ties merged.
double ks_statistic(const Dataset& data, const std::function<double(double)>& cdf);

/// Asymptotic Kolmogorov tail probability at sqrt(n) d.
double ks_pvalue(double d, std::size_t n);

struct CriteriaReport {
  double neg_log_lik;
  int k;
  std::size_t n;
  double aic;
  double aicc;
  double bic;
  double hqic;
};

/// AIC = 2k + 2 nll, AICC = AIC + 2k(k+1)/(n-k-1), BIC = 2 nll + k ln n,
/// HQIC = 2 nll + 2k ln ln n. Throws DomainError when n <= k + 1.
CriteriaReport information_criteria(double neg_log_lik, int k, std::size_t n);

/// Product-limit survival estimate. `observed[i] == false` marks a right
/// censored time; without flags every time is a failure. Knots sit at
/// distinct failure times.
StepCurve kaplan_meier(const Dataset& data, const std::optional<std::vector<bool>>& observed = std::nullopt);

}  // namespace ogelfr
