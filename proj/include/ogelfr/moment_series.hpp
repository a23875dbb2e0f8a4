#pragma once

// Closed-form quadruple series for the raw moments of OGE-LFR:
//
//   mu'_r = sum_{i,j,L>=0} sum_{k=0}^{j} C(beta-1, i) C(j, k) (-1)^{i+j+k}
//           beta alpha^{j+1} b^L (i+1)^j c^L / (j! L! 2^L)
//           [ (r+2L)! / (a^{r+2L} c^{r+2L+1}) + b (r+2L+1)! / (a^{r+2L+2} c^{r+2L+2}) ],
//   c = j - k + 1.
//
// The term-by-term integration behind this series treats e^{+a c x} as a
// decaying exponential, and the L-sum is asymptotic rather than convergent.
// The evaluator therefore stops the L-sum at its smallest term when terms
// begin to grow and reports that as non-convergence. moment_quadrature is
// the authoritative moment evaluator.

#include <cmath>
#include <limits>
#include <numbers>

#include "ogelfr/errors.hpp"
#include "ogelfr/params.hpp"

namespace ogelfr {

struct SeriesLimits {
  int max_i = 40;
  int max_j = 40;
  int max_l = 40;
  double rel_tol = 1e-12;
};

template <typename Scalar>
struct SeriesResult {
  Scalar value{};
  Scalar last_term{};  // magnitude of the last index layer added
  bool converged = false;
  long terms = 0;
};

namespace detail {

// Generalized binomial coefficient C(x, i) for real x.
template <typename Scalar>
Scalar real_binomial(Scalar x, int i) {
  Scalar c = 1;
  for (int m = 0; m < i; ++m) c *= (x - Scalar(m)) / Scalar(m + 1);
  return c;
}

}  // namespace detail

template <typename Scalar>
SeriesResult<Scalar> moment_series(const OgeLfrParams<Scalar>& p, int r, SeriesLimits lim = {}) {
  validate(p, ParamDomain::extended);
  if (r < 1) throw DomainError("moment_series: r must be >= 1");
  if (!(p.a > 0)) throw DomainError("moment_series: the series requires a > 0");
  using std::lgamma;
  using std::log;

  const Scalar log_alpha = log(p.alpha), log_beta = log(p.beta), log_a = log(p.a);
  const Scalar log_b = p.b > 0 ? log(p.b) : -std::numeric_limits<Scalar>::infinity();
  const Scalar tol = Scalar(lim.rel_tol);
  const Scalar beta_m1 = p.beta - 1;
  const bool integer_shape = beta_m1 >= 0 && std::floor(beta_m1) == beta_m1;
  const int max_l = p.b > 0 ? lim.max_l : 0;

  SeriesResult<Scalar> out;
  bool all_converged = true;
  Scalar total = 0;
  bool i_converged = false;
  for (int i = 0; i <= lim.max_i; ++i) {
    if (integer_shape && i > beta_m1) {
      i_converged = true;
      break;
    }
    const Scalar ci = detail::real_binomial(beta_m1, i);
    if (ci == 0) continue;
    const Scalar log_ci = log(std::abs(ci));
    const int sign_i = (ci < 0 ? -1 : 1) * (i % 2 == 0 ? 1 : -1);

    Scalar layer_i = 0;
    bool j_converged = false;
    for (int j = 0; j <= lim.max_j; ++j) {
      Scalar layer_j = 0;
      for (int k = 0; k <= j; ++k) {
        const Scalar c = Scalar(j - k + 1);
        const Scalar log_c = log(c);
        const int sign = sign_i * (((j + k) % 2 == 0) ? 1 : -1);
        // log of everything that does not depend on L
        const Scalar base = log_ci + lgamma(Scalar(j + 1)) - lgamma(Scalar(k + 1)) - lgamma(Scalar(j - k + 1)) +
                            log_beta + Scalar(j + 1) * log_alpha + Scalar(j) * log(Scalar(i + 1)) -
                            lgamma(Scalar(j + 1));
        Scalar prev_mag = std::numeric_limits<Scalar>::infinity();
        Scalar inner = 0;
        bool l_converged = false;
        for (int l = 0; l <= max_l; ++l) {
          const int m = r + 2 * l;
          const Scalar log_bracket = lgamma(Scalar(m + 1)) - Scalar(m) * log_a - Scalar(m + 1) * log_c +
                                     std::log1p(p.b * Scalar(m + 1) / (p.a * p.a * c));
          const Scalar log_mag = base + (l > 0 ? Scalar(l) * (log_b + log_c) : Scalar(0)) -
                                 lgamma(Scalar(l + 1)) - Scalar(l) * std::numbers::ln2_v<Scalar> + log_bracket;
          const Scalar mag = std::exp(log_mag);
          if (l > 0 && mag > prev_mag) break;  // asymptotic series: stop at the smallest term
          inner += mag;
          ++out.terms;
          prev_mag = mag;
          if (mag <= tol * std::abs(inner) || max_l == 0) {
            l_converged = true;
            break;
          }
        }
        all_converged = all_converged && l_converged;
        layer_j += Scalar(sign) * inner;
      }
      layer_i += layer_j;
      out.last_term = std::abs(layer_j);
      if (j > 0 && std::abs(layer_j) <= tol * std::abs(total + layer_i)) {
        j_converged = true;
        break;
      }
    }
    all_converged = all_converged && j_converged;
    total += layer_i;
    out.last_term = std::abs(layer_i);
    if (i > 0 && std::abs(layer_i) <= tol * std::abs(total)) {
      i_converged = true;
      break;
    }
  }
  out.value = total;
  out.converged = all_converged && i_converged;
  return out;
}

}  // namespace ogelfr
