#pragma once

#include <cmath>
#include <string>

#include "ogelfr/errors.hpp"

namespace ogelfr {

/// Strict: every rate coefficient strictly positive. Extended: a or b may be
/// zero (exponential- and Rayleigh-based sub-models) as long as a + b > 0.
enum class ParamDomain { strict, extended };

/// OGE-LFR parameters (alpha, a, b, beta).
template <typename Scalar = double>
struct OgeLfrParams {
  using scalar_type = Scalar;
  Scalar alpha;  // odds scale
  Scalar a;      // linear hazard coefficient, 1/time
  Scalar b;      // quadratic hazard coefficient, 1/time^2
  Scalar beta;   // shape
};

/// Generalized exponential (1 - e^{-alpha x})^beta.
template <typename Scalar = double>
struct GeParams {
  using scalar_type = Scalar;
  Scalar alpha;
  Scalar beta;
};

/// Linear failure rate, hazard a + b x. The exponential is b = 0.
template <typename Scalar = double>
struct LfrParams {
  using scalar_type = Scalar;
  Scalar a;
  Scalar b;
};

/// Generalized linear failure rate (1 - e^{-ax - bx^2/2})^beta.
template <typename Scalar = double>
struct GlfrParams {
  using scalar_type = Scalar;
  Scalar a;
  Scalar b;
  Scalar beta;
};

namespace detail {

template <typename Scalar>
void require_positive(Scalar v, const char* what) {
  if (!(v > Scalar(0)) || !std::isfinite(v))
    throw InvalidParameter(std::string(what) + " must be finite and > 0");
}

template <typename Scalar>
void require_rates(Scalar a, Scalar b, ParamDomain domain) {
  if (domain == ParamDomain::strict) {
    require_positive(a, "a");
    require_positive(b, "b");
    return;
  }
  if (!(a >= Scalar(0)) || !(b >= Scalar(0)) || !std::isfinite(a) || !std::isfinite(b))
    throw InvalidParameter("a and b must be finite and >= 0");
  if (!(a + b > Scalar(0))) throw InvalidParameter("a + b must be > 0");
}

}  // namespace detail

template <typename Scalar>
void validate(const OgeLfrParams<Scalar>& p, ParamDomain domain = ParamDomain::strict) {
  detail::require_positive(p.alpha, "alpha");
  detail::require_positive(p.beta, "beta");
  detail::require_rates(p.a, p.b, domain);
}

template <typename Scalar>
void validate(const GeParams<Scalar>& p, ParamDomain = ParamDomain::strict) {
  detail::require_positive(p.alpha, "alpha");
  detail::require_positive(p.beta, "beta");
}

template <typename Scalar>
void validate(const LfrParams<Scalar>& p, ParamDomain domain = ParamDomain::strict) {
  detail::require_rates(p.a, p.b, domain);
}

template <typename Scalar>
void validate(const GlfrParams<Scalar>& p, ParamDomain domain = ParamDomain::strict) {
  detail::require_positive(p.beta, "beta");
  detail::require_rates(p.a, p.b, domain);
}

}  // namespace ogelfr
