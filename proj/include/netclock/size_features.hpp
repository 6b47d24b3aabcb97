#pragma once

#include <cstddef>
#include <vector>

#include "netclock/cascade.hpp"
#include "netclock/clock.hpp"

namespace netclock {

/// Temporal features of the first m activations of a cascade, measured in
/// clock steps.
struct SizeFeatureRow {
  CascadeId cascade_id = 0;
  std::size_t m = 0;
  std::size_t size = 0;
  double time_to_mth = 0.0;
  double mean_gap = 0.0;
  double median_gap = 0.0;
  double max_gap = 0.0;
  std::size_t distinct_steps = 0;
  /// size >= alpha * m
  bool large = false;
};

/// One row per cascade with at least m activations. Throws
/// std::invalid_argument when m < 2.
std::vector<SizeFeatureRow> extract_size_features(const CascadeSet& cs, const Clock& clock,
                                                  std::size_t m, double alpha = 1.5);

}  // namespace netclock
