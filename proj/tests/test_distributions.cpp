#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "ogelfr/baselines.hpp"
#include "ogelfr/oge.hpp"
#include "ogelfr/oge_lfr.hpp"

using namespace ogelfr;
using doctest::Approx;

namespace {

using P = OgeLfrParams<double>;

// Straight transcription of the cdf in long double, used as an oracle.
long double cdf_ld(const P& p, long double x) {
  const long double u = p.a * x + p.b * x * x / 2;
  return std::pow(1.0L - std::exp(-static_cast<long double>(p.alpha) * std::expm1(u)), static_cast<long double>(p.beta));
}

// Parameter sets drawn once from a fixed stream; the last has alpha >= 100.
std::vector<P> random_params() {
  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> la(-1.0, 1.0), lr(-2.0, 0.5), ls(-0.7, 0.7);
  std::vector<P> out;
  for (int i = 0; i < 4; ++i)
    out.push_back({std::pow(10.0, la(gen)), std::pow(10.0, lr(gen)), std::pow(10.0, lr(gen) - 1), std::pow(10.0, ls(gen))});
  out.push_back({250.0, 0.02, 0.003, 0.6});
  return out;
}

const double kQuantileLevels[] = {0.001, 0.01, 0.1, 0.5, 0.9, 0.99, 0.999};

}  // namespace

TEST_CASE("reference values at (1,1,1,2) and (1,1,1,1)") {
  const P p{1, 1, 1, 2};
  CHECK(cdf(p, 1.0) == Approx(0.939435057662200).epsilon(1e-13));
  CHECK(pdf(p, 1.0) == Approx(0.534388058485413).epsilon(1e-13));
  CHECK(log_pdf(p, 1.0) == Approx(-0.626633002657923).epsilon(1e-13));
  CHECK(survival(p, 1.0) == Approx(0.0605649423377997).epsilon(1e-13));
  CHECK(hazard(p, 1.0) == Approx(8.82338920600096).epsilon(1e-13));
  CHECK(reversed_hazard(p, 1.0) == Approx(0.568839808698694).epsilon(1e-13));

  const P q{1, 1, 1, 1};
  CHECK(survival(q, 1.0) == Approx(0.0307554190699851).epsilon(1e-13));
  CHECK(hazard(q, 1.0) == Approx(2 * std::exp(1.5)).epsilon(1e-13));
  CHECK(hazard(q, 1.0) == Approx(8.96337814067613).epsilon(1e-13));
  CHECK(reversed_hazard(q, 1.0) == Approx(0.284419904349347).epsilon(1e-13));
  CHECK(pdf(q, 1.0) == Approx(0.275672450999238).epsilon(1e-13));

  CHECK(cdf(P{1, 1, 0, 1}, 1.0) == Approx(0.820625921265983).epsilon(1e-13));
}

TEST_CASE("boundary behaviour at x = 0") {
  const P p{1, 1, 1, 2};
  CHECK(cdf(p, 0.0) == 0.0);
  CHECK(survival(p, 0.0) == 1.0);
  CHECK(cdf(p, -1.0) == 0.0);
  CHECK(log_pdf(P{2, 3, 1, 1}, 0.0) == Approx(std::log(6.0)).epsilon(1e-15));
  CHECK(log_pdf(P{2, 3, 1, 0.5}, 0.0) == std::numeric_limits<double>::infinity());
  CHECK(log_pdf(P{2, 3, 1, 2}, 0.0) == -std::numeric_limits<double>::infinity());
  CHECK(log_pdf(P{2, 0, 1, 1}, 0.0) == -std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(reversed_hazard(p, 0.0), DomainError);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate(P{0, 1, 1, 1}), InvalidParameter);
  CHECK_THROWS_AS(validate(P{1, 1, 1, -1}), InvalidParameter);
  CHECK_THROWS_AS(validate(P{1, 0, 1, 1}), InvalidParameter);
  CHECK_NOTHROW(validate(P{1, 0, 1, 1}, ParamDomain::extended));
  CHECK_NOTHROW(validate(P{1, 1, 0, 1}, ParamDomain::extended));
  CHECK_THROWS_AS(validate(P{1, 0, 0, 1}, ParamDomain::extended), InvalidParameter);
  CHECK_THROWS_AS(cdf(P{1, 1, std::nan(""), 1}, 1.0), InvalidParameter);
}

TEST_CASE("cdf matches a long double transcription and the OGE transform of LFR") {
  for (const P& p : random_params()) {
    const double hi = quantile(p, 0.999);
    for (int i = 1; i <= 200; ++i) {
      const double x = hi * i / 200;
      const double f = cdf(p, x);
      CHECK(f == Approx(static_cast<double>(cdf_ld(p, x))).epsilon(1e-12));
      CHECK(f == Approx(oge_transform_cdf(cdf(LfrParams<>{p.a, p.b}, x), p.alpha, p.beta)).epsilon(1e-12));
      const OgeOf<LfrParams<>> generic{{p.a, p.b}, p.alpha, p.beta};
      CHECK(log_pdf(generic, x) == Approx(log_pdf(p, x)).epsilon(1e-10));
    }
  }
}

TEST_CASE("oge_transform_cdf values") {
  CHECK(oge_transform_cdf(0.0, 3.0, 2.0) == 0.0);
  CHECK(oge_transform_cdf(0.5, 1.0, 1.0) == Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(oge_transform_cdf(1 - std::exp(-1.5), 1.0, 2.0) == Approx(0.939435057662200).epsilon(1e-13));
  CHECK(oge_transform_cdf(1.0, 1.0, 2.0) == 1.0);
}

TEST_CASE("cdf derivative equals the density") {
  for (const P& p : random_params()) {
    const double lo = quantile(p, 0.01), hi = quantile(p, 0.99);
    for (int i = 0; i < 50; ++i) {
      const double x = lo + (hi - lo) * (i + 0.5) / 50;
      const double h = 1e-5 * x;
      const double fd = (cdf(p, x + h) - cdf(p, x - h)) / (2 * h);
      CHECK(fd == Approx(pdf(p, x)).epsilon(1e-5));
    }
  }
}

TEST_CASE("quantile inverts the cdf") {
  for (const P& p : random_params())
    for (double q : kQuantileLevels) CHECK(std::abs(cdf(p, quantile(p, q)) - q) <= 1e-9);

  const P p{1, 1, 1, 2};
  for (double x : {0.1, 0.5, 1.0}) CHECK(quantile(p, cdf(p, x)) == Approx(x).epsilon(1e-9));
  // F(2) = 1 - 2e-24 rounds to 1 in double, so x = 2 cannot round-trip through q
  CHECK(cdf(p, 2.0) == 1.0);
  CHECK(quantile(p, 0.939435057662200) == Approx(1.0).epsilon(1e-9));
  CHECK(quantile(P{1, 1, 0, 1}, 0.820625921265983) == Approx(1.0).epsilon(1e-9));
  CHECK(quantile(P{1, 0, 1, 1}, 0.5) == Approx(std::sqrt(2 * std::log1p(std::log(2.0)))).epsilon(1e-12));
  CHECK_THROWS_AS(quantile(p, 0.0), DomainError);
  CHECK_THROWS_AS(quantile(p, 1.0), DomainError);
}

TEST_CASE("quantile is continuous as b goes to 0") {
  const double q0 = quantile(P{1, 1, 0, 1.5}, 0.7);
  CHECK(quantile(P{1, 1, 1e-8, 1.5}, 0.7) == Approx(q0).epsilon(1e-7));
}

TEST_CASE("hazard and reversed hazard identities") {
  for (const P& p : random_params()) {
    const double hi = quantile(p, 0.999);
    for (int i = 1; i <= 100; ++i) {
      const double x = hi * i / 100;
      const double f = pdf(p, x), s = survival(p, x), F = cdf(p, x);
      if (s >= 1e-12) CHECK(hazard(p, x) * s == Approx(f).epsilon(1e-10));
      if (F >= 1e-12) CHECK(reversed_hazard(p, x) * F == Approx(f).epsilon(1e-10));
    }
  }
}

TEST_CASE("densities integrate to one") {
  auto params = random_params();
  params.push_back({0.5, 0.1, 0.01, 3});
  for (const P& p : params) {
    const double m = median(p);
    HalflineOptions<double> opt;
    opt.scale = m;
    const auto r = integrate_halfline([&](double x) { return pdf(p, x); }, 1e-9, opt);
    CHECK(r.value == Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("survival far in the tail stays in log space") {
  const P p{472.404, 8.218e-6, 6.427e-7, 0.529};
  CHECK(std::isfinite(log_survival(p, 3000.0)));
  CHECK(log_survival(p, 3000.0) < -700);
  CHECK(std::isfinite(hazard(p, 500.0)));
  CHECK(hazard(p, 500.0) > 0);
}

TEST_CASE("special cases") {
  // beta = 1, b = 0: survival exp(-alpha (e^{ax} - 1))
  const P p{0.7, 0.4, 0, 1};
  for (double x : {0.1, 1.0, 3.0, 7.0})
    CHECK(survival(p, x) == Approx(std::exp(-0.7 * std::expm1(0.4 * x))).epsilon(1e-12));
  // GLFR with b -> 0 is GE
  for (double x : {0.1, 1.0, 5.0})
    CHECK(cdf(GlfrParams<>{0.3, 1e-300, 1.7}, x) == Approx(cdf(GeParams<>{0.3, 1.7}, x)).epsilon(1e-12));
}

TEST_CASE("median") {
  const P p{1, 1, 1, 2};
  CHECK(std::abs(cdf(p, median(p)) - 0.5) <= 1e-9);
  CHECK(median(p) == quantile(p, 0.5));
  const P pub{472.404, 8.218e-6, 6.427e-7, 0.529};
  CHECK(median(pub) == Approx(34.47388630).epsilon(1e-8));
  CHECK(std::abs(cdf(pub, median(pub)) - 0.5) <= 1e-9);
}

TEST_CASE("mode") {
  CHECK(mode(P{0.5, 1, 1, 1}) == Approx(0.722550776371024).epsilon(1e-9));
  CHECK(mode(P{5, 1, 1, 1}) == 0.0);
  CHECK(mode(P{1, 1, 1, 0.5}) == 0.0);
  const P p{1, 0.5, 0.2, 3};
  const double m = mode(p), fm = pdf(p, m), hi = quantile(p, 0.999);
  for (int i = 0; i <= 1000; ++i) CHECK(pdf(p, hi * i / 1000) <= fm * (1 + 1e-12));
  // the mode equation vanishes at an interior mode
  CHECK(std::abs(mode_equation(p, m)) < 1e-8);
}

TEST_CASE("moments by quadrature") {
  CHECK(moment_quadrature(P{1, 1, 1, 2}, 0) == Approx(1.0).epsilon(1e-8));
  CHECK(moment_quadrature(P{1, 1, 0, 1}, 1) == Approx(0.596347362323194).epsilon(1e-8));
  const double m1 = moment_quadrature(P{1, 1, 1, 2}, 1), m2 = moment_quadrature(P{1, 1, 1, 2}, 2);
  CHECK(m2 >= m1 * m1);
  CHECK_THROWS_AS(moment_quadrature(P{1, 1, 1, 2}, -1), DomainError);
}

TEST_CASE("sampling") {
  const P p{1, 1, 1, 2};
  CHECK(sample(p, 0, 5).empty());
  CHECK(sample(p, 5, 42) == sample(p, 5, 42));
  CHECK(sample(p, 5, 42) != sample(p, 5, 43));

  const std::size_t n = 10000;
  auto xs = sample(p, n, 7);
  std::sort(xs.begin(), xs.end());
  double d = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double f = cdf(p, xs[i]);
    d = std::max({d, (i + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(n)));
}
