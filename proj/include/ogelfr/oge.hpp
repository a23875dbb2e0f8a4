#pragma once

// The odd generalized exponential (OGE) class: any base lifetime model G
// becomes F(x) = [1 - exp(-alpha G(x) / (1 - G(x)))]^beta.

#include <cmath>
#include <limits>

#include "ogelfr/errors.hpp"
#include "ogelfr/lifetime.hpp"
#include "ogelfr/numerics.hpp"
#include "ogelfr/params.hpp"

namespace ogelfr {

/// Applies the OGE map to a base cdf value. G = 1 (infinite odds) maps to 1
/// by continuity.
template <typename Scalar>
Scalar oge_transform_cdf(Scalar base_cdf, Scalar alpha, Scalar beta) {
  detail::require_positive(alpha, "alpha");
  detail::require_positive(beta, "beta");
  if (!(base_cdf >= 0 && base_cdf <= 1)) throw DomainError("oge_transform_cdf: G must be in [0,1]");
  if (base_cdf == 1) return Scalar(1);
  if (base_cdf == 0) return Scalar(0);
  const Scalar odds = base_cdf / (1 - base_cdf);
  return std::exp(beta * log1p_exp_neg(alpha * odds));
}

/// OGE-transformed base model. The odds are taken as exp(ln G - ln S) of the
/// base so the transform inherits the base's tail accuracy.
template <LifetimeParams Base>
struct OgeOf {
  using scalar_type = typename Base::scalar_type;
  Base base;
  scalar_type alpha;
  scalar_type beta;
};

namespace detail {

template <typename Base>
auto base_odds(const Base& base, typename Base::scalar_type x) {
  return std::exp(log_cdf(base, x) - log_survival(base, x));
}

}  // namespace detail

template <typename Base>
auto log_cdf(const OgeOf<Base>& p, typename Base::scalar_type x) {
  using S = typename Base::scalar_type;
  if (!(x > 0)) return -std::numeric_limits<S>::infinity();
  return p.beta * log1p_exp_neg(p.alpha * detail::base_odds(p.base, x));
}

template <typename Base>
auto log_survival(const OgeOf<Base>& p, typename Base::scalar_type x) {
  using S = typename Base::scalar_type;
  if (!(x > 0)) return S(0);
  const S y = p.alpha * detail::base_odds(p.base, x);
  if (y > S(700)) return std::log(p.beta) - y;
  return log1p_exp_neg(-p.beta * log1p_exp_neg(y));
}

/// ln f = ln(alpha beta) + ln g - 2 ln(1 - G) - alpha odds + (beta - 1) ln(1 - e^{-alpha odds}).
template <typename Base>
auto log_pdf(const OgeOf<Base>& p, typename Base::scalar_type x) {
  using S = typename Base::scalar_type;
  if (x < 0) return -std::numeric_limits<S>::infinity();
  const S y = p.alpha * detail::base_odds(p.base, x);
  S v = std::log(p.alpha) + std::log(p.beta) + log_pdf(p.base, x) - 2 * log_survival(p.base, x) - y;
  if (p.beta != 1) v += (p.beta - 1) * log1p_exp_neg(y);
  return v;
}

template <typename Base>
auto quantile(const OgeOf<Base>& p, typename Base::scalar_type q) {
  using S = typename Base::scalar_type;
  if (!(q > 0 && q < 1)) throw DomainError("quantile: q must be in (0,1)");
  const S odds = -std::log(-std::expm1(std::log(q) / p.beta)) / p.alpha;
  return quantile(p.base, odds / (1 + odds));
}

}  // namespace ogelfr
