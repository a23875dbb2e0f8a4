#pragma once

// Scalar kernels shared by the distribution, estimation and GOF layers.
// Everything here is a pure function of its arguments.

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "ogelfr/errors.hpp"

namespace ogelfr {

/// ln(1 - e^{-u}) for u >= 0. Splits at ln 2 so neither branch cancels.
template <typename Scalar>
Scalar log1p_exp_neg(Scalar u) {
  if (!(u >= Scalar(0))) throw DomainError("log1p_exp_neg: argument must be >= 0");
  if (u == Scalar(0)) return -std::numeric_limits<Scalar>::infinity();
  if (u <= std::numbers::ln2_v<Scalar>) return std::log(-std::expm1(-u));
  return std::log1p(-std::exp(-u));
}

template <typename Scalar>
Scalar expm1_stable(Scalar u) {
  return std::expm1(u);
}

template <typename Scalar>
struct Bracket {
  Scalar lo;
  Scalar hi;
};

template <typename Scalar>
struct RootOptions {
  Scalar tol_x = Scalar(1e-10);
  Scalar tol_f = Scalar(1e-12);
  int max_iter = 200;
};

/// Brent's bracketing method: inverse quadratic / secant steps, with a
/// bisection step whenever the interpolant leaves the bracket or stalls.
/// The returned point always lies inside the initial bracket.
template <typename Scalar, typename F>
Scalar find_root(F&& f, Bracket<Scalar> bracket, RootOptions<Scalar> opt = {}) {
  using std::abs;
  if (!(bracket.lo < bracket.hi)) throw DomainError("find_root: bracket requires lo < hi");
  Scalar a = bracket.lo, b = bracket.hi;
  Scalar fa = f(a), fb = f(b);
  if (fa == Scalar(0)) return a;
  if (fb == Scalar(0)) return b;
  if ((fa > 0) == (fb > 0)) throw DomainError("find_root: no sign change across bracket");

  Scalar c = a, fc = fa;
  Scalar d = b - a, e = d;
  for (int iter = 0; iter < opt.max_iter; ++iter) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (abs(fc) < abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const Scalar eps = std::numeric_limits<Scalar>::epsilon();
    const Scalar tol = Scalar(2) * eps * abs(b) + opt.tol_x / 2;
    const Scalar half = (c - b) / 2;
    if (abs(half) <= tol || abs(fb) <= opt.tol_f) return b;

    if (abs(e) >= tol && abs(fa) > abs(fb)) {
      Scalar p, q, r;
      const Scalar s = fb / fa;
      if (a == c) {
        p = 2 * half * s;
        q = 1 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2 * half * q * (q - r) - (b - a) * (r - 1));
        q = (q - 1) * (r - 1) * (s - 1);
      }
      if (p > 0) q = -q; else p = -p;
      if (2 * p < std::min(3 * half * q - abs(tol * q), abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = half;
        e = d;
      }
    } else {
      d = half;
      e = d;
    }
    a = b;
    fa = fb;
    b += (abs(d) > tol) ? d : (half > 0 ? tol : -tol);
    fb = f(b);
  }
  throw ConvergenceError("find_root: maximum iterations reached");
}

template <typename Scalar>
struct QuadratureResult {
  Scalar value{};
  Scalar abs_error_estimate{};
  long evaluations = 0;
};

template <typename Scalar>
struct HalflineOptions {
  // Characteristic length of the integrand; x = scale * t / (1 - t).
  Scalar scale = Scalar(1);
  int max_subdivisions = 5000;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

template <typename Scalar>
struct Segment {
  Scalar lo, hi, value, error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

template <typename Scalar, typename G>
Segment<Scalar> gauss_kronrod(G& g, Scalar lo, Scalar hi) {
  const Scalar center = (lo + hi) / 2;
  const Scalar half = (hi - lo) / 2;
  const Scalar f_center = g(center);
  Scalar kronrod = f_center * Scalar(kKronrodWeights[7]);
  Scalar gauss = f_center * Scalar(kGaussWeights[3]);
  for (int j = 0; j < 7; ++j) {
    const Scalar dx = half * Scalar(kKronrodNodes[j]);
    const Scalar pair = g(center - dx) + g(center + dx);
    kronrod += Scalar(kKronrodWeights[j]) * pair;
    if (j % 2 == 1) gauss += Scalar(kGaussWeights[j / 2]) * pair;
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace detail

/// Adaptive G7K15 quadrature of f over [0, inf) after mapping
/// x = scale * t / (1 - t), t in [0, 1). The segment with the largest error
/// is bisected until the summed error estimate is <= tol.
template <typename Scalar, typename F>
QuadratureResult<Scalar> integrate_halfline(F&& f, Scalar tol, HalflineOptions<Scalar> opt = {}) {
  long evaluations = 0;
  auto mapped = [&](Scalar t) -> Scalar {
    ++evaluations;
    const Scalar one_minus = Scalar(1) - t;
    const Scalar x = opt.scale * t / one_minus;
    const Scalar jacobian = opt.scale / (one_minus * one_minus);
    const Scalar v = f(x);
    if (v == Scalar(0)) return Scalar(0);
    return v * jacobian;
  };

  std::priority_queue<detail::Segment<Scalar>> segments;
  Scalar total = 0, total_error = 0;
  for (int k = 0; k < 8; ++k) {
    auto s = detail::gauss_kronrod(mapped, Scalar(k) / 8, Scalar(k + 1) / 8);
    total += s.value;
    total_error += s.error;
    segments.push(s);
  }
  int subdivisions = 0;
  while (total_error > tol) {
    if (subdivisions >= opt.max_subdivisions || !std::isfinite(total)) {
      throw ConvergenceError("integrate_halfline: did not converge, error estimate " +
                             std::to_string(static_cast<double>(total_error)));
    }
    const auto worst = segments.top();
    segments.pop();
    const Scalar mid = (worst.lo + worst.hi) / 2;
    auto left = detail::gauss_kronrod(mapped, worst.lo, mid);
    auto right = detail::gauss_kronrod(mapped, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    segments.push(left);
    segments.push(right);
    ++subdivisions;
    // Rebuild sums periodically so cancellation drift cannot stall the loop.
    if (subdivisions % 64 == 0) {
      auto copy = segments;
      total = 0;
      total_error = 0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, total_error, evaluations};
}

/// Phi^{-1}(p): Acklam's rational approximation refined by one Halley step
/// against the erfc-based normal cdf.
template <typename Scalar>
Scalar std_normal_quantile(Scalar p) {
  if (!(p > Scalar(0) && p < Scalar(1))) throw DomainError("std_normal_quantile: p must be in (0,1)");
  static constexpr double a[] = {-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
                                 1.383577518672690e+02,  -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr double b[] = {-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
                                 6.680131188771972e+01,  -1.328068155288572e+01};
  static constexpr double c[] = {-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
                                 -2.549732539343734e+00, 4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr double d[] = {7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
                                 3.754408661907416e+00};
  const Scalar p_low = Scalar(0.02425);
  Scalar x;
  if (p < p_low) {
    const Scalar q = std::sqrt(-2 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  } else if (p <= 1 - p_low) {
    const Scalar q = p - Scalar(0.5);
    const Scalar r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
  } else {
    const Scalar q = std::sqrt(-2 * std::log1p(-p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  // Halley refinement; err is computed on the tail nearer to p.
  for (int k = 0; k < 2; ++k) {
    const Scalar err = x < 0 ? Scalar(0.5) * std::erfc(-x / std::numbers::sqrt2_v<Scalar>) - p
                             : (1 - p) - Scalar(0.5) * std::erfc(x / std::numbers::sqrt2_v<Scalar>);
    const Scalar u = err * std::sqrt(2 * std::numbers::pi_v<Scalar>) * std::exp(x * x / 2);
    x -= u / (1 + x * u / 2);
  }
  return x;
}

/// Asymptotic Kolmogorov tail Q(t) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 t^2).
/// For t < 1 the Jacobi-dual form 1 - sqrt(2 pi)/t sum exp(-(2k-1)^2 pi^2 / (8 t^2))
/// is used; both are truncated once a term drops below 1e-12 * (partial sum).
template <typename Scalar>
Scalar kolmogorov_sf(Scalar t) {
  if (!(t >= Scalar(0))) throw DomainError("kolmogorov_sf: t must be >= 0");
  if (t == Scalar(0)) return Scalar(1);
  constexpr Scalar kTermTol = Scalar(1e-12);
  if (t < Scalar(1)) {
    const Scalar pi2 = std::numbers::pi_v<Scalar> * std::numbers::pi_v<Scalar>;
    Scalar sum = 0;
    for (int k = 1; k < 100; ++k) {
      const Scalar m = Scalar(2 * k - 1);
      const Scalar term = std::exp(-m * m * pi2 / (8 * t * t));
      sum += term;
      if (term <= kTermTol * sum) break;
    }
    return Scalar(1) - std::sqrt(2 * std::numbers::pi_v<Scalar>) / t * sum;
  }
  Scalar sum = 0;
  for (int k = 1; k < 100; ++k) {
    const Scalar term = std::exp(-2 * Scalar(k) * Scalar(k) * t * t);
    sum += (k % 2 == 1) ? term : -term;
    if (term <= kTermTol * std::abs(sum)) break;
  }
  return std::clamp(Scalar(2) * sum, Scalar(0), Scalar(1));
}

}  // namespace ogelfr
