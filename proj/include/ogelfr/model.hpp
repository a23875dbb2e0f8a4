#pragma once

// Runtime model zoo. The templated free functions are the evaluators; this
// layer type-erases them behind LifetimeModel so fitting, GOF and the CLI can
// work over a list of models chosen at run time.

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "ogelfr/dataset.hpp"
#include "ogelfr/params.hpp"

namespace ogelfr {

enum class ModelId { exponential, ge, lfr, glfr, oge_lfr };

/// Lower-case command-line key: e, ge, lfr, glfr, oge-lfr.
std::string_view model_key(ModelId id);
/// Display label: E, GE, LFR, GLFR, OGE-LFR.
std::string_view model_label(ModelId id);
std::optional<ModelId> parse_model_id(std::string_view key);
const std::vector<std::string>& parameter_names(ModelId id);
inline Eigen::Index parameter_count(ModelId id) { return static_cast<Eigen::Index>(parameter_names(id).size()); }

class LifetimeModel {
 public:
  virtual ~LifetimeModel() = default;

  virtual ModelId id() const = 0;
  virtual Eigen::VectorXd parameters() const = 0;

  virtual double cdf(double x) const = 0;
  virtual double survival(double x) const = 0;
  virtual double pdf(double x) const = 0;
  virtual double log_pdf(double x) const = 0;
  virtual double hazard(double x) const = 0;
  virtual double reversed_hazard(double x) const = 0;
  virtual double quantile(double q) const = 0;
};

/// Parameters are in the order of parameter_names(id). Throws InvalidParameter.
std::unique_ptr<LifetimeModel> make_model(ModelId id, const Eigen::VectorXd& params,
                                          ParamDomain domain = ParamDomain::extended);

/// Inverse-transform draws; same stream as the templated sample().
std::vector<double> sample(const LifetimeModel& model, std::size_t n, std::uint64_t seed);

/// Sum of log densities.
double log_likelihood(const LifetimeModel& model, const Dataset& data);

}  // namespace ogelfr
