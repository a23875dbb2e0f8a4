#pragma once

// Aarset (1987) device lifetimes, n = 50, and the published fits of the
// in-scope models used by the reproduction tables.

#include <array>
#include <vector>

#include "ogelfr/dataset.hpp"
#include "ogelfr/model.hpp"

namespace ogelfr {

Dataset aarset_dataset();

struct PublishedFit {
  ModelId model;
  std::vector<double> estimates;  // parameter_names(model) order
  double ks;
  double ks_pvalue;
  double neg_log_lik;
  double aic;
  double aicc;
  double bic;
  double hqic;
};

/// E, GE, LFR and OGE-LFR rows as printed.
const std::array<PublishedFit, 4>& published_fits();

}  // namespace ogelfr
