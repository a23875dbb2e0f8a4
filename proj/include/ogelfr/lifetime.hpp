#pragma once

// Quantities every lifetime model derives from its log-space primitives.
// A parameter type participates by providing log_cdf, log_survival, log_pdf
// and quantile overloads in namespace ogelfr.

#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "ogelfr/errors.hpp"

namespace ogelfr {

template <typename P>
concept LifetimeParams = requires(const P& p, typename P::scalar_type x) {
  { log_cdf(p, x) } -> std::convertible_to<typename P::scalar_type>;
  { log_survival(p, x) } -> std::convertible_to<typename P::scalar_type>;
  { log_pdf(p, x) } -> std::convertible_to<typename P::scalar_type>;
  { quantile(p, x) } -> std::convertible_to<typename P::scalar_type>;
};

template <LifetimeParams P>
auto cdf(const P& p, typename P::scalar_type x) {
  return std::exp(log_cdf(p, x));
}

template <LifetimeParams P>
auto survival(const P& p, typename P::scalar_type x) {
  return std::exp(log_survival(p, x));
}

template <LifetimeParams P>
auto pdf(const P& p, typename P::scalar_type x) {
  return std::exp(log_pdf(p, x));
}

/// f / S, evaluated as a log difference so it stays finite far into the tail.
template <LifetimeParams P>
auto hazard(const P& p, typename P::scalar_type x) {
  using S = typename P::scalar_type;
  const S log_s = log_survival(p, x);
  if (log_s == -std::numeric_limits<S>::infinity()) return std::numeric_limits<S>::infinity();
  return std::exp(log_pdf(p, x) - log_s);
}

/// f / F; undefined at x <= 0 where F vanishes.
template <LifetimeParams P>
auto reversed_hazard(const P& p, typename P::scalar_type x) {
  if (!(x > 0)) throw DomainError("reversed_hazard: x must be > 0");
  return std::exp(log_pdf(p, x) - log_cdf(p, x));
}

template <LifetimeParams P>
auto median(const P& p) {
  return quantile(p, typename P::scalar_type(0.5));
}

/// Uniform on (0,1) from the top 53 bits of one draw, offset by half an ulp.
inline double open_unit_uniform(std::mt19937_64& gen) {
  return (static_cast<double>(gen() >> 11) + 0.5) * 0x1.0p-53;
}

/// Seeded inverse-transform sampler.
template <LifetimeParams P>
std::vector<typename P::scalar_type> sample(const P& p, std::size_t n, std::uint64_t seed) {
  using S = typename P::scalar_type;
  std::mt19937_64 gen(seed);
  std::vector<S> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(quantile(p, static_cast<S>(open_unit_uniform(gen))));
  return out;
}

}  // namespace ogelfr
