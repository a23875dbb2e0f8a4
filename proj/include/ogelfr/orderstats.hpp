#pragma once

// Densities of the r-th order statistic of an OGE-LFR sample of size n.

#include <cmath>
#include <limits>

#include "ogelfr/errors.hpp"
#include "ogelfr/oge_lfr.hpp"

namespace ogelfr {

struct OrderIndex {
  int r;  // rank, 1-based
  int n;  // sample size
};

/// Factorials are evaluated through lgamma; beyond this n they lose too
/// much precision for the signed mixture sum.
inline constexpr int kMaxOrderSampleSize = 170;

inline void validate(const OrderIndex& idx) {
  if (idx.n < 1 || idx.n > kMaxOrderSampleSize)
    throw DomainError("order statistic: n must be in [1, 170]");
  if (idx.r < 1 || idx.r > idx.n) throw DomainError("order statistic: rank must satisfy 1 <= r <= n");
}

/// f_{r:n}(x) = F^{r-1} (1 - F)^{n-r} f / B(r, n - r + 1).
template <typename Scalar>
Scalar order_pdf_direct(const OrderIndex& idx, const OgeLfrParams<Scalar>& p, Scalar x) {
  validate(idx);
  using std::lgamma;
  const Scalar log_beta_fn = lgamma(Scalar(idx.r)) + lgamma(Scalar(idx.n - idx.r + 1)) - lgamma(Scalar(idx.n + 1));
  Scalar v = log_pdf(p, x) - log_beta_fn;
  if (idx.r > 1) v += Scalar(idx.r - 1) * log_cdf(p, x);
  if (idx.n > idx.r) v += Scalar(idx.n - idx.r) * log_survival(p, x);
  return std::exp(v);
}

/// Signed mixture of OGE-LFR densities with shapes (r + i) beta:
///   sum_{i=0}^{n-r} (-1)^i n! / [i! (r-1)! (n-r-i)! (r+i)] f(x; alpha, a, b, (r+i) beta).
template <typename Scalar>
Scalar order_pdf_mixture(const OrderIndex& idx, const OgeLfrParams<Scalar>& p, Scalar x) {
  validate(idx);
  using std::lgamma;
  const Scalar log_n_fact = lgamma(Scalar(idx.n + 1));
  Scalar sum = 0;
  for (int i = 0; i <= idx.n - idx.r; ++i) {
    const Scalar log_w = log_n_fact - lgamma(Scalar(i + 1)) - lgamma(Scalar(idx.r)) -
                         lgamma(Scalar(idx.n - idx.r - i + 1)) - std::log(Scalar(idx.r + i));
    OgeLfrParams<Scalar> shaped = p;
    shaped.beta = Scalar(idx.r + i) * p.beta;
    const Scalar term = std::exp(log_w + log_pdf(shaped, x));
    sum += (i % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace ogelfr
