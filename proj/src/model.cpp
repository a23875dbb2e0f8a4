#include "ogelfr/model.hpp"

#include <array>

#include "ogelfr/baselines.hpp"
#include "ogelfr/errors.hpp"
#include "ogelfr/oge_lfr.hpp"

namespace ogelfr {

namespace {

struct ModelInfo {
  ModelId id;
  std::string_view key;
  std::string_view label;
  std::vector<std::string> names;
};

const std::array<ModelInfo, 5>& model_table() {
  static const std::array<ModelInfo, 5> table = {{
      {ModelId::exponential, "e", "E", {"lambda"}},
      {ModelId::ge, "ge", "GE", {"alpha", "beta"}},
      {ModelId::lfr, "lfr", "LFR", {"a", "b"}},
      {ModelId::glfr, "glfr", "GLFR", {"a", "b", "beta"}},
      {ModelId::oge_lfr, "oge-lfr", "OGE-LFR", {"alpha", "a", "b", "beta"}},
  }};
  return table;
}

const ModelInfo& info(ModelId id) { return model_table()[static_cast<std::size_t>(id)]; }

template <typename P>
class ParametricModel final : public LifetimeModel {
 public:
  ParametricModel(ModelId id, P params, Eigen::VectorXd raw) : id_(id), p_(params), raw_(std::move(raw)) {}

  ModelId id() const override { return id_; }
  Eigen::VectorXd parameters() const override { return raw_; }
  double cdf(double x) const override { return ogelfr::cdf(p_, x); }
  double survival(double x) const override { return ogelfr::survival(p_, x); }
  double pdf(double x) const override { return ogelfr::pdf(p_, x); }
  double log_pdf(double x) const override { return ogelfr::log_pdf(p_, x); }
  double hazard(double x) const override { return ogelfr::hazard(p_, x); }
  double reversed_hazard(double x) const override { return ogelfr::reversed_hazard(p_, x); }
  double quantile(double q) const override { return ogelfr::quantile(p_, q); }

 private:
  ModelId id_;
  P p_;
  Eigen::VectorXd raw_;
};

template <typename P>
std::unique_ptr<LifetimeModel> wrap(ModelId id, P p, const Eigen::VectorXd& raw, ParamDomain domain) {
  validate(p, domain);
  return std::make_unique<ParametricModel<P>>(id, p, raw);
}

}  // namespace

std::string_view model_key(ModelId id) { return info(id).key; }
std::string_view model_label(ModelId id) { return info(id).label; }
const std::vector<std::string>& parameter_names(ModelId id) { return info(id).names; }

std::optional<ModelId> parse_model_id(std::string_view key) {
  for (const auto& m : model_table())
    if (m.key == key) return m.id;
  return std::nullopt;
}

std::unique_ptr<LifetimeModel> make_model(ModelId id, const Eigen::VectorXd& v, ParamDomain domain) {
  if (v.size() != parameter_count(id))
    throw InvalidParameter(std::string(model_label(id)) + " expects " + std::to_string(parameter_count(id)) +
                           " parameters");
  switch (id) {
    case ModelId::exponential:
      detail::require_positive(v[0], "lambda");
      return wrap(id, LfrParams<>{v[0], 0.0}, v, ParamDomain::extended);
    case ModelId::ge:
      return wrap(id, GeParams<>{v[0], v[1]}, v, domain);
    case ModelId::lfr:
      return wrap(id, LfrParams<>{v[0], v[1]}, v, domain);
    case ModelId::glfr:
      return wrap(id, GlfrParams<>{v[0], v[1], v[2]}, v, domain);
    case ModelId::oge_lfr:
      return wrap(id, OgeLfrParams<>{v[0], v[1], v[2], v[3]}, v, domain);
  }
  throw InvalidParameter("unknown model");
}

std::vector<double> sample(const LifetimeModel& model, std::size_t n, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(model.quantile(open_unit_uniform(gen)));
  return out;
}

double log_likelihood(const LifetimeModel& model, const Dataset& data) {
  require_nonempty(data);
  double total = 0.0;
  for (double x : data.values()) total += model.log_pdf(x);
  return total;
}

}  // namespace ogelfr
