#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace crosspost::analytics {

struct Kmeans1D {
  // Cluster id per input index; ids ordered by ascending centroid.
  std::vector<std::size_t> assignment;
  std::vector<double> centroids;  // ascending
  double sse = 0.0;               // within-cluster sum of squared deviations
};

// Exact 1-D k-means by dynamic programming over the sorted values: optimal
// clusters are contiguous runs, so the global SSE minimum is found directly.
// The result depends only on the multiset of values, not their order.
// Throws config_error when k < 1 or k > values.size().
Kmeans1D kmeans1d_exact(std::span<const double> values, int k);

}  // namespace crosspost::analytics
