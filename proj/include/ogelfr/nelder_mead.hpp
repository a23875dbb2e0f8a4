#pragma once

#include <functional>

#include <Eigen/Core>

namespace ogelfr {

struct NelderMeadOptions {
  double initial_step = 0.5;
  double x_tol = 1e-8;   // max vertex distance from the best vertex (infinity norm)
  double f_tol = 1e-10;  // spread of function values across the simplex
  int max_evals = 5000;
};

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  double start_value = 0.0;
  int evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Downhill simplex minimization with the standard reflection / expansion /
/// contraction / shrink coefficients (1, 2, 1/2, 1/2). NaN objective values
/// are treated as +inf so invalid regions repel the simplex.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opt = {});

}  // namespace ogelfr
