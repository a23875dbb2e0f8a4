#include "ogelfr/gof.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "ogelfr/errors.hpp"
#include "ogelfr/numerics.hpp"

namespace ogelfr {

namespace {

// Distinct sorted values with their multiplicities.
struct Tally {
  std::vector<double> x;
  std::vector<std::size_t> count;
};

Tally tally(std::vector<double> sorted) {
  Tally t;
  for (double v : sorted) {
    if (!t.x.empty() && t.x.back() == v) {
      ++t.count.back();
    } else {
      t.x.push_back(v);
      t.count.push_back(1);
    }
  }
  return t;
}

}  // namespace

double StepCurve::at(double x, double before) const {
  auto it = std::upper_bound(knots.begin(), knots.end(), x, [](double v, const Knot& k) { return v < k.x; });
  return it == knots.begin() ? before : std::prev(it)->value;
}

StepCurve empirical_cdf(const Dataset& data) {
  require_nonempty(data);
  const Tally t = tally(data.sorted());
  const double n = static_cast<double>(data.size());
  StepCurve curve;
  std::size_t cum = 0;
  for (std::size_t j = 0; j < t.x.size(); ++j) {
    cum += t.count[j];
    curve.knots.push_back({t.x[j], cum == data.size() ? 1.0 : static_cast<double>(cum) / n});
  }
  return curve;
}

double ks_statistic(const Dataset& data, const std::function<double(double)>& cdf) {
  const StepCurve ecdf = empirical_cdf(data);
  double d = 0.0, prev = 0.0;
  for (const Knot& k : ecdf.knots) {
    const double f = cdf(k.x);
    d = std::max({d, std::abs(k.value - f), std::abs(prev - f)});
    prev = k.value;
  }
  return d;
}

double ks_pvalue(double d, std::size_t n) {
  if (!(d >= 0 && d <= 1)) throw DomainError("K-S statistic must lie in [0,1]");
  if (n == 0) throw DomainError("K-S p-value needs n >= 1");
  return kolmogorov_sf(std::sqrt(static_cast<double>(n)) * d);
}

CriteriaReport information_criteria(double neg_log_lik, int k, std::size_t n) {
  if (k < 0) throw DomainError("parameter count must be nonnegative");
  const double nd = static_cast<double>(n);
  if (nd <= k + 1) throw DomainError("information criteria need n > k + 1");
  const double two_nll = 2 * neg_log_lik;
  const double aic = 2.0 * k + two_nll;
  return {neg_log_lik,
          k,
          n,
          aic,
          aic + 2.0 * k * (k + 1) / (nd - k - 1),
          two_nll + k * std::log(nd),
          two_nll + 2.0 * k * std::log(std::log(nd))};
}

StepCurve kaplan_meier(const Dataset& data, const std::optional<std::vector<bool>>& observed) {
  require_nonempty(data);
  if (observed && observed->size() != data.size())
    throw DataError("censoring flags must match the number of observations");

  std::vector<std::size_t> idx(data.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return data[i] < data[j]; });

  StepCurve curve;
  std::size_t at_risk = data.size();
  double surv = 1.0;
  bool censored_so_far = false;
  for (std::size_t p = 0; p < idx.size();) {
    const double t = data[idx[p]];
    std::size_t deaths = 0, leaving = 0;
    for (; p < idx.size() && data[idx[p]] == t; ++p, ++leaving)
      if (!observed || (*observed)[idx[p]]) ++deaths;
    if (deaths > 0) {
      if (deaths == at_risk) {
        surv = 0.0;
      } else if (!censored_so_far) {
        // the product telescopes to 1 - F_n when nobody has left the risk set early
        const std::size_t failed = data.size() - at_risk + deaths;
        surv = 1.0 - static_cast<double>(failed) / static_cast<double>(data.size());
      } else {
        surv *= 1.0 - static_cast<double>(deaths) / static_cast<double>(at_risk);
      }
      curve.knots.push_back({t, surv});
    }
    if (leaving > deaths) censored_so_far = true;
    at_risk -= leaving;
  }
  return curve;
}

}  // namespace ogelfr
