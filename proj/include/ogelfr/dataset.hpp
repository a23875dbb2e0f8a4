#pragma once

#include <span>
#include <vector>

namespace ogelfr {

/// A complete (uncensored) sample of nonnegative lifetimes, kept in input order.
class Dataset {
 public:
  Dataset() = default;
  /// Throws DataError on a negative or non-finite value.
  explicit Dataset(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double sum() const;
  double mean() const;
  double min() const;
  double max() const;
  bool has_zero() const;
  std::vector<double> sorted() const;

 private:
  std::vector<double> values_;
};

/// Throws DataError if the dataset is empty.
void require_nonempty(const Dataset& data);

}  // namespace ogelfr
