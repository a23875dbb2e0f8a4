#include "ogelfr/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "ogelfr/errors.hpp"

namespace ogelfr {

Dataset::Dataset(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!std::isfinite(v)) throw DataError("observation " + std::to_string(i + 1) + " is not finite");
    if (v < 0) throw DataError("observation " + std::to_string(i + 1) + " is negative");
  }
}

double Dataset::sum() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

double Dataset::mean() const {
  require_nonempty(*this);
  return sum() / static_cast<double>(values_.size());
}

double Dataset::min() const {
  require_nonempty(*this);
  return *std::min_element(values_.begin(), values_.end());
}

double Dataset::max() const {
  require_nonempty(*this);
  return *std::max_element(values_.begin(), values_.end());
}

bool Dataset::has_zero() const {
  return std::any_of(values_.begin(), values_.end(), [](double v) { return v == 0.0; });
}

std::vector<double> Dataset::sorted() const {
  std::vector<double> out = values_;
  std::sort(out.begin(), out.end());
  return out;
}

void require_nonempty(const Dataset& data) {
  if (data.empty()) throw DataError("dataset is empty");
}

}  // namespace ogelfr
