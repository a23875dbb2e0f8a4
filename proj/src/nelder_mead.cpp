#include "ogelfr/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace ogelfr {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f, const Eigen::VectorXd& x0,
                             const NelderMeadOptions& opt) {
  const Eigen::Index dim = x0.size();
  const auto npts = static_cast<std::size_t>(dim + 1);
  NelderMeadResult res;

  auto eval = [&](const Eigen::VectorXd& x) {
    ++res.evaluations;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<Eigen::VectorXd> pts(npts, x0);
  std::vector<double> vals(npts);
  vals[0] = eval(x0);
  res.start_value = vals[0];
  for (Eigen::Index i = 0; i < dim; ++i) {
    pts[static_cast<std::size_t>(i + 1)][i] += opt.initial_step;
    vals[static_cast<std::size_t>(i + 1)] = eval(pts[static_cast<std::size_t>(i + 1)]);
  }

  std::vector<std::size_t> order(npts);
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), 0);
    // stable: ties keep the earlier vertex first
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<Eigen::VectorXd> p2(npts);
    std::vector<double> v2(npts);
    for (std::size_t k = 0; k < npts; ++k) {
      p2[k] = pts[order[k]];
      v2[k] = vals[order[k]];
    }
    pts.swap(p2);
    vals.swap(v2);
  };

  while (true) {
    sort_simplex();
    double diameter = 0.0;
    for (std::size_t k = 1; k < npts; ++k) diameter = std::max(diameter, (pts[k] - pts[0]).lpNorm<Eigen::Infinity>());
    const double spread = vals.back() - vals.front();
    if (diameter <= opt.x_tol && spread <= opt.f_tol) {
      res.converged = true;
      break;
    }
    if (res.evaluations >= opt.max_evals) break;
    ++res.iterations;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (std::size_t k = 0; k + 1 < npts; ++k) centroid += pts[k];
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd& worst = pts.back();
    const Eigen::VectorXd reflected = centroid + (centroid - worst);
    const double f_reflected = eval(reflected);

    if (f_reflected < vals.front()) {
      const Eigen::VectorXd expanded = centroid + 2.0 * (centroid - worst);
      const double f_expanded = eval(expanded);
      if (f_expanded < f_reflected) {
        pts.back() = expanded;
        vals.back() = f_expanded;
      } else {
        pts.back() = reflected;
        vals.back() = f_reflected;
      }
      continue;
    }
    if (f_reflected < vals[npts - 2]) {
      pts.back() = reflected;
      vals.back() = f_reflected;
      continue;
    }
    const bool outside = f_reflected < vals.back();
    const Eigen::VectorXd contracted =
        outside ? Eigen::VectorXd(centroid + 0.5 * (reflected - centroid)) : Eigen::VectorXd(centroid + 0.5 * (worst - centroid));
    const double f_contracted = eval(contracted);
    if (f_contracted < (outside ? f_reflected : vals.back())) {
      pts.back() = contracted;
      vals.back() = f_contracted;
      continue;
    }
    for (std::size_t k = 1; k < npts; ++k) {
      pts[k] = pts[0] + 0.5 * (pts[k] - pts[0]);
      vals[k] = eval(pts[k]);
    }
  }

  res.x = pts.front();
  res.value = vals.front();
  return res;
}

}  // namespace ogelfr
