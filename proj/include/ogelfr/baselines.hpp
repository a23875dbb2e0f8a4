#pragma once

// Baseline lifetime models: generalized exponential (GE), linear failure
// rate (LFR, with the exponential as b = 0) and generalized LFR (GLFR).

#include <cmath>
#include <limits>

#include "ogelfr/errors.hpp"
#include "ogelfr/lifetime.hpp"
#include "ogelfr/numerics.hpp"
#include "ogelfr/params.hpp"

namespace ogelfr {

namespace detail {

template <typename Scalar>
Scalar check_probability(Scalar q) {
  if (!(q > 0 && q < 1)) throw DomainError("quantile: q must be in (0,1)");
  return q;
}

// Positive root of a x + b x^2 / 2 = h.
template <typename Scalar>
Scalar invert_lfr_hazard(Scalar a, Scalar b, Scalar h) {
  return 2 * h / (a + std::sqrt(a * a + 2 * b * h));
}

template <typename Scalar>
Scalar neg_log1m_pow(Scalar q, Scalar beta) {
  // -ln(1 - q^{1/beta})
  return -std::log(-std::expm1(std::log(q) / beta));
}

}  // namespace detail

// ---- GE -------------------------------------------------------------------

template <typename Scalar>
Scalar log_cdf(const GeParams<Scalar>& p, Scalar x) {
  validate(p);
  if (!(x > 0)) return -std::numeric_limits<Scalar>::infinity();
  return p.beta * log1p_exp_neg(p.alpha * x);
}

template <typename Scalar>
Scalar log_survival(const GeParams<Scalar>& p, Scalar x) {
  if (!(x > 0)) return Scalar(0);
  if (p.alpha * x > Scalar(700)) return std::log(p.beta) - p.alpha * x;
  return log1p_exp_neg(-log_cdf(p, x));
}

template <typename Scalar>
Scalar log_pdf(const GeParams<Scalar>& p, Scalar x) {
  validate(p);
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  if (x < 0) return -inf;
  if (x == 0) return p.beta < 1 ? inf : (p.beta > 1 ? -inf : std::log(p.alpha));
  Scalar v = std::log(p.alpha) + std::log(p.beta) - p.alpha * x;
  if (p.beta != 1) v += (p.beta - 1) * log1p_exp_neg(p.alpha * x);
  return v;
}

template <typename Scalar>
Scalar quantile(const GeParams<Scalar>& p, Scalar q) {
  validate(p);
  detail::check_probability(q);
  return detail::neg_log1m_pow(q, p.beta) / p.alpha;
}

// ---- LFR ------------------------------------------------------------------

template <typename Scalar>
Scalar log_survival(const LfrParams<Scalar>& p, Scalar x) {
  validate(p, ParamDomain::extended);
  if (!(x > 0)) return Scalar(0);
  return -x * (p.a + p.b * x / 2);
}

template <typename Scalar>
Scalar log_cdf(const LfrParams<Scalar>& p, Scalar x) {
  if (!(x > 0)) return -std::numeric_limits<Scalar>::infinity();
  return log1p_exp_neg(-log_survival(p, x));
}

template <typename Scalar>
Scalar log_pdf(const LfrParams<Scalar>& p, Scalar x) {
  validate(p, ParamDomain::extended);
  if (x < 0) return -std::numeric_limits<Scalar>::infinity();
  return std::log(p.a + p.b * x) - x * (p.a + p.b * x / 2);
}

template <typename Scalar>
Scalar quantile(const LfrParams<Scalar>& p, Scalar q) {
  validate(p, ParamDomain::extended);
  detail::check_probability(q);
  return detail::invert_lfr_hazard(p.a, p.b, -std::log1p(-q));
}

// ---- GLFR -----------------------------------------------------------------

template <typename Scalar>
Scalar log_cdf(const GlfrParams<Scalar>& p, Scalar x) {
  validate(p, ParamDomain::extended);
  if (!(x > 0)) return -std::numeric_limits<Scalar>::infinity();
  return p.beta * log1p_exp_neg(x * (p.a + p.b * x / 2));
}

template <typename Scalar>
Scalar log_survival(const GlfrParams<Scalar>& p, Scalar x) {
  if (!(x > 0)) return Scalar(0);
  const Scalar h = x * (p.a + p.b * x / 2);
  if (h > Scalar(700)) return std::log(p.beta) - h;
  return log1p_exp_neg(-log_cdf(p, x));
}

template <typename Scalar>
Scalar log_pdf(const GlfrParams<Scalar>& p, Scalar x) {
  validate(p, ParamDomain::extended);
  constexpr Scalar inf = std::numeric_limits<Scalar>::infinity();
  if (x < 0) return -inf;
  if (x == 0) {
    if (p.beta < 1) return inf;
    if (p.beta > 1 || p.a == 0) return -inf;
    return std::log(p.a);
  }
  const Scalar h = x * (p.a + p.b * x / 2);
  Scalar v = std::log(p.beta) + std::log(p.a + p.b * x) - h;
  if (p.beta != 1) v += (p.beta - 1) * log1p_exp_neg(h);
  return v;
}

template <typename Scalar>
Scalar quantile(const GlfrParams<Scalar>& p, Scalar q) {
  validate(p, ParamDomain::extended);
  detail::check_probability(q);
  return detail::invert_lfr_hazard(p.a, p.b, detail::neg_log1m_pow(q, p.beta));
}

}  // namespace ogelfr
