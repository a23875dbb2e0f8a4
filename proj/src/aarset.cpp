#include "ogelfr/aarset.hpp"

namespace ogelfr {

Dataset aarset_dataset() {
  return Dataset({0.1, 0.2, 1,  1,  1,  1,  1,  2,  3,  6,  7,  11, 12, 18, 18, 18, 18,
                  18,  21,  32, 36, 40, 45, 46, 47, 50, 55, 60, 63, 63, 67, 67, 67, 67,
                  72,  75,  79, 82, 82, 83, 84, 84, 84, 85, 85, 85, 85, 85, 86, 86});
}

const std::array<PublishedFit, 4>& published_fits() {
  static const std::array<PublishedFit, 4> rows = {{
      {ModelId::exponential, {0.0219}, 0.1911, 0.0519, 241.090, 484.1792, 484.2625, 486.0912, 484.908},
      {ModelId::ge, {0.0212, 0.9012}, 0.1940, 0.0514, 240.3855, 484.7710, 485.0264, 488.5951, 486.227},
      {ModelId::lfr, {0.014, 2.4e-4}, 0.1955, 0.0370, 238.064, 480.128, 480.383, 483.952, 481.584},
      {ModelId::oge_lfr, {472.404, 8.218e-6, 6.427e-7, 0.529}, 0.1627, 0.12830, 232.865, 473.730, 474.618, 481.378,
       476.642},
  }};
  return rows;
}

}  // namespace ogelfr
