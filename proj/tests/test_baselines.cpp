#include <doctest.h>

#include <cmath>

#include "ogelfr/aarset.hpp"
#include "ogelfr/baselines.hpp"
#include "ogelfr/gof.hpp"
#include "ogelfr/model.hpp"
#include "ogelfr/oge_lfr.hpp"

using namespace ogelfr;
using doctest::Approx;

TEST_CASE("closed forms") {
  CHECK(cdf(LfrParams<>{1, 0}, 1.0) == Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(cdf(GeParams<>{0.5, 2}, 2.0) == Approx(std::pow(1 - std::exp(-1.0), 2)).epsilon(1e-14));
  CHECK(cdf(LfrParams<>{0.5, 0.2}, 3.0) == Approx(1 - std::exp(-1.5 - 0.9)).epsilon(1e-14));
  CHECK(cdf(GlfrParams<>{0.5, 0.2, 3}, 3.0) == Approx(std::pow(1 - std::exp(-2.4), 3)).epsilon(1e-14));
  CHECK(pdf(LfrParams<>{0.5, 0.2}, 3.0) == Approx(1.1 * std::exp(-2.4)).epsilon(1e-14));
  CHECK(pdf(GeParams<>{0.5, 2}, 2.0) == Approx(2 * 0.5 * std::exp(-1.0) * (1 - std::exp(-1.0))).epsilon(1e-14));
}

TEST_CASE("GE at the published estimate") {
  const double v = cdf(GeParams<>{0.0212, 0.9012}, 45.686);
  CHECK(v > 0);
  CHECK(v < 1);
  CHECK(v == Approx(std::pow(1 - std::exp(-0.0212 * 45.686), 0.9012)).epsilon(1e-14));
}

TEST_CASE("GLFR with beta = 1 is LFR") {
  const LfrParams<> l{0.3, 0.05};
  const GlfrParams<> g{0.3, 0.05, 1.0};
  double worst = 0;
  for (int i = 1; i <= 100; ++i) worst = std::max(worst, std::abs(cdf(g, i * 0.1) - cdf(l, i * 0.1)));
  CHECK(worst <= 1e-15);
}

TEST_CASE("baseline quantiles invert their cdfs") {
  const double qs[] = {0.001, 0.1, 0.5, 0.9, 0.999};
  for (double q : qs) {
    CHECK(cdf(GeParams<>{0.7, 0.4}, quantile(GeParams<>{0.7, 0.4}, q)) == Approx(q).epsilon(1e-12));
    CHECK(cdf(LfrParams<>{0.7, 0.4}, quantile(LfrParams<>{0.7, 0.4}, q)) == Approx(q).epsilon(1e-12));
    CHECK(cdf(LfrParams<>{0.7, 0}, quantile(LfrParams<>{0.7, 0}, q)) == Approx(q).epsilon(1e-12));
    CHECK(cdf(LfrParams<>{0, 0.4}, quantile(LfrParams<>{0, 0.4}, q)) == Approx(q).epsilon(1e-12));
    CHECK(cdf(GlfrParams<>{0.7, 0.4, 2.5}, quantile(GlfrParams<>{0.7, 0.4, 2.5}, q)) == Approx(q).epsilon(1e-12));
  }
}

TEST_CASE("baseline hazards") {
  CHECK(hazard(LfrParams<>{0.5, 0.2}, 3.0) == Approx(1.1).epsilon(1e-12));
  CHECK(hazard(LfrParams<>{0.5, 0}, 300.0) == Approx(0.5).epsilon(1e-12));
  CHECK(hazard(GeParams<>{0.5, 1}, 2000.0) == Approx(0.5).epsilon(1e-12));
}

TEST_CASE("runtime model wrapper") {
  const auto e = make_model(ModelId::exponential, Eigen::VectorXd::Constant(1, 0.5));
  CHECK(e->cdf(2.0) == Approx(1 - std::exp(-1.0)).epsilon(1e-15));
  CHECK(e->parameters()[0] == 0.5);
  CHECK(parse_model_id("oge-lfr") == ModelId::oge_lfr);
  CHECK(!parse_model_id("weibull").has_value());
  CHECK(parameter_count(ModelId::glfr) == 3);
  CHECK_THROWS_AS(make_model(ModelId::ge, Eigen::VectorXd::Constant(1, 0.5)), InvalidParameter);
  CHECK_THROWS_AS(make_model(ModelId::exponential, Eigen::VectorXd::Constant(1, -0.5)), InvalidParameter);
  Eigen::VectorXd v(4);
  v << 1, 1, 1, 2;
  const auto m = make_model(ModelId::oge_lfr, v);
  CHECK(m->pdf(1.0) == Approx(0.534388058485413).epsilon(1e-13));
  CHECK(sample(*m, 5, 42) == sample(OgeLfrParams<>{1, 1, 1, 2}, 5, 42));
}

TEST_CASE("E on Aarset at the published rate") {
  const Dataset d = aarset_dataset();
  const auto e = make_model(ModelId::exponential, Eigen::VectorXd::Constant(1, 0.0219));
  CHECK(ks_statistic(d, [&](double x) { return e->cdf(x); }) == Approx(0.1911).epsilon(0.005 / 0.1911));
}
