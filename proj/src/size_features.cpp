#include "netclock/size_features.hpp"

#include <algorithm>
#include <stdexcept>

namespace netclock {

std::vector<SizeFeatureRow> extract_size_features(const CascadeSet& cs, const Clock& clock,
                                                  std::size_t m, double alpha) {
  if (m < 2) {
    throw std::invalid_argument("prefix length m must be at least 2");
  }
  std::vector<SizeFeatureRow> rows;
  std::vector<double> steps;
  std::vector<double> gaps;
  for (const auto& x : cs.cascades()) {
    if (x.size() < m) {
      continue;
    }
    steps.clear();
    for (std::size_t i = 0; i < m; ++i) {
      steps.push_back(static_cast<double>(clock.remap(x.activations()[i].time)));
    }
    gaps.clear();
    for (std::size_t i = 1; i < m; ++i) {
      gaps.push_back(steps[i] - steps[i - 1]);
    }
    SizeFeatureRow row;
    row.cascade_id = x.id();
    row.m = m;
    row.size = x.size();
    row.time_to_mth = steps.back() - steps.front();
    double sum = 0.0;
    for (double gap : gaps) {
      sum += gap;
    }
    row.mean_gap = sum / static_cast<double>(gaps.size());
    row.max_gap = *std::max_element(gaps.begin(), gaps.end());
    std::sort(gaps.begin(), gaps.end());
    const std::size_t mid = gaps.size() / 2;
    row.median_gap = gaps.size() % 2 == 1 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
    row.distinct_steps =
        static_cast<std::size_t>(std::unique(steps.begin(), steps.end()) - steps.begin());
    row.large = static_cast<double>(x.size()) >= alpha * static_cast<double>(m);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace netclock
