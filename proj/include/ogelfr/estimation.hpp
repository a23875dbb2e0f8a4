#pragma once

// Maximum likelihood for OGE-LFR and the baseline models.
//
// For OGE-LFR the shape beta has a closed-form conditional maximizer, so the
// search runs over (ln alpha, ln a, ln b) with beta profiled out. The analytic
// score and observed information are used to verify and summarize the fit,
// not to drive the search.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ogelfr/dataset.hpp"
#include "ogelfr/model.hpp"
#include "ogelfr/nelder_mead.hpp"
#include "ogelfr/params.hpp"

namespace ogelfr {

/// Per-observation building blocks of the score and information:
///   phi = e^{ax + bx^2/2},  psi = e^{alpha(phi - 1)} - 1,
///   h   = e^{alpha(phi - 1)} [1 - alpha(phi - 1)] - 1,
///   tau = e^{alpha(phi - 1)} [1 - alpha phi] - 1.
struct AuxFunctions {
  double phi;
  double psi;
  double h;
  double tau;
};

AuxFunctions aux_functions(const OgeLfrParams<>& p, double x);

double log_likelihood(const OgeLfrParams<>& p, const Dataset& data);

/// (dL/dalpha, dL/da, dL/db, dL/dbeta). Requires every observation > 0.
Eigen::Vector4d score(const OgeLfrParams<>& p, const Dataset& data);

/// beta maximizing L for fixed (alpha, a, b): -n / sum ln(1 - e^{-alpha(phi_i - 1)}).
double profile_beta(double alpha, double a, double b, const Dataset& data);

/// Negative Hessian of L from the closed-form second partials.
Eigen::Matrix4d observed_information(const OgeLfrParams<>& p, const Dataset& data);

/// Negative Hessian from central differences of the analytic score, symmetrized.
Eigen::Matrix4d observed_information_fd(const OgeLfrParams<>& p, const Dataset& data);

/// Largest entry of |A - B| after scaling both by diag(|B|)^{-1/2} on each side.
double information_discrepancy(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b);

/// Gate threshold above which the finite-difference information replaces the
/// analytic one.
inline constexpr double kInformationGateTolerance = 1e-3;

/// Central-difference Hessian of f with steps proportional to |x_j|.
Eigen::MatrixXd numerical_hessian(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                  double rel_step = 1e-4);

/// Five-point central-difference gradient with steps proportional to |x_j|.
Eigen::VectorXd numerical_gradient(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x,
                                   double rel_step = 1e-4);

/// Covariance = info^{-1}. The matrix is equilibrated to unit diagonal before
/// an LDL^T factorization; non-positive pivots or a reciprocal condition
/// number below 1e-12 raise SingularInformation.
Eigen::MatrixXd invert_information(const Eigen::MatrixXd& info);

struct Interval {
  double lower;
  double upper;
  double lower_clipped;  // max(lower, 0): all parameters are positive
};

struct FitOptions {
  int max_starts = 20;
  NelderMeadOptions simplex{};
  double level = 0.95;
};

struct FitReport {
  ModelId model = ModelId::oge_lfr;
  Eigen::VectorXd estimates;
  double neg_log_likelihood = 0.0;
  Eigen::VectorXd score;
  Eigen::MatrixXd info_matrix;
  std::string information_source;  // "analytic", "finite-difference" or "closed-form"
  std::optional<Eigen::MatrixXd> covariance;
  std::string information_error;  // set when the information could not be inverted
  Eigen::VectorXd std_errors;
  double level = 0.95;
  std::vector<Interval> intervals;
  bool converged = false;
  int iterations = 0;   // simplex iterations of the winning start
  int evaluations = 0;  // objective evaluations over all starts
  int restarts_used = 0;
  std::vector<double> start_neg_log_likelihoods;
  std::vector<std::string> notes;
};

/// Deterministic starting points in natural parameters for the given model.
std::vector<Eigen::VectorXd> multistart_grid(ModelId model, const Dataset& data);

FitReport fit_mle(const Dataset& data, ModelId model, const FitOptions& options = {});

/// theta_j +- z_{(1-level)/2} sqrt(cov_jj). Throws SingularInformation when the
/// report carries no covariance.
std::vector<Interval> confidence_intervals(const FitReport& report, double level);

}  // namespace ogelfr
