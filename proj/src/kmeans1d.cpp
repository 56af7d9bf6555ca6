#include "crosspost/kmeans1d.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

#include "crosspost/errors.hpp"

namespace crosspost::analytics {

namespace {

// Within-cluster SSE of sorted[l..r] via prefix sums, in O(1).
struct Prefix {
  std::vector<double> sum;
  std::vector<double> sumsq;

  explicit Prefix(std::span<const double> sorted)
      : sum(sorted.size() + 1, 0.0), sumsq(sorted.size() + 1, 0.0) {
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      sum[i + 1] = sum[i] + sorted[i];
      sumsq[i + 1] = sumsq[i] + sorted[i] * sorted[i];
    }
  }

  double cost(std::size_t l, std::size_t r) const {  // inclusive bounds
    double s = sum[r + 1] - sum[l];
    double sq = sumsq[r + 1] - sumsq[l];
    double m = static_cast<double>(r - l + 1);
    return std::max(0.0, sq - s * s / m);
  }

  double mean(std::size_t l, std::size_t r) const {
    return (sum[r + 1] - sum[l]) / static_cast<double>(r - l + 1);
  }
};

}  // namespace

Kmeans1D kmeans1d_exact(std::span<const double> values, int k) {
  const std::size_t n = values.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw config_error("kmeans1d: need 1 <= k <= n, got k=" + std::to_string(k) +
                       ", n=" + std::to_string(n));
  }
  const std::size_t kk = static_cast<std::size_t>(k);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> sorted(n);
  for (std::size_t i = 0; i < n; ++i) sorted[i] = values[order[i]];

  Prefix pre(sorted);

  constexpr double kInf = std::numeric_limits<double>::infinity();
  // best[j][i]: min SSE of splitting sorted[0..i] into j+1 clusters.
  std::vector<std::vector<double>> best(kk, std::vector<double>(n, kInf));
  std::vector<std::vector<std::size_t>> cut(kk, std::vector<std::size_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) best[0][i] = pre.cost(0, i);
  for (std::size_t j = 1; j < kk; ++j) {
    for (std::size_t i = j; i < n; ++i) {
      for (std::size_t s = j; s <= i; ++s) {  // cluster j covers sorted[s..i]
        double c = best[j - 1][s - 1] + pre.cost(s, i);
        if (c < best[j][i]) {
          best[j][i] = c;
          cut[j][i] = s;
        }
      }
    }
  }

  std::vector<std::size_t> starts(kk);
  {
    std::size_t i = n - 1;
    for (std::size_t j = kk; j-- > 1;) {
      starts[j] = cut[j][i];
      i = starts[j] - 1;
    }
    starts[0] = 0;
  }

  Kmeans1D out;
  out.sse = best[kk - 1][n - 1];
  out.assignment.resize(n);
  out.centroids.resize(kk);
  for (std::size_t j = 0; j < kk; ++j) {
    std::size_t l = starts[j];
    std::size_t r = (j + 1 < kk ? starts[j + 1] : n) - 1;
    out.centroids[j] = pre.mean(l, r);
    for (std::size_t i = l; i <= r; ++i) out.assignment[order[i]] = j;
  }
  return out;
}

}  // namespace crosspost::analytics
