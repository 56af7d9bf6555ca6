#include "crosspost/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "crosspost/errors.hpp"

namespace crosspost::similarity {

namespace {

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double squared_norm(const textnorm::NormalizedText& t) {
  double s = 0.0;
  for (const auto& [token, count] : t.token_counts) {
    s += static_cast<double>(count) * static_cast<double>(count);
  }
  return s;
}

}  // namespace

bool stage1_exact(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b) {
  return !a.canonical.empty() && a.canonical == b.canonical;
}

double cosine_sim(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b) {
  if (a.tokens.empty() || b.tokens.empty()) return 0.0;
  const auto& small = a.token_counts.size() <= b.token_counts.size() ? a : b;
  const auto& large = a.token_counts.size() <= b.token_counts.size() ? b : a;
  double dot = 0.0;
  for (const auto& [token, count] : small.token_counts) {
    auto it = large.token_counts.find(token);
    if (it != large.token_counts.end()) {
      dot += static_cast<double>(count) * static_cast<double>(it->second);
    }
  }
  if (dot == 0.0) return 0.0;
  return clamp01(dot / (std::sqrt(squared_norm(a)) * std::sqrt(squared_norm(b))));
}

double string_sim(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b) {
  if (a.tokens.empty() || b.tokens.empty()) return 0.0;
  const auto& small = a.token_counts.size() <= b.token_counts.size() ? a : b;
  const auto& large = a.token_counts.size() <= b.token_counts.size() ? b : a;
  std::int64_t common = 0;
  for (const auto& [token, count] : small.token_counts) {
    auto it = large.token_counts.find(token);
    if (it != large.token_counts.end()) {
      common += std::min(count, it->second);
    }
  }
  const double denom = static_cast<double>(std::max(a.tokens.size(), b.tokens.size()));
  return clamp01(static_cast<double>(common) / denom);
}

SimilarityVerdict classify(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b,
                           double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw config_error("similarity threshold must lie in (0,1), got " +
                       std::to_string(threshold));
  }
  SimilarityVerdict v;
  v.threshold = threshold;
  v.stage1_match = stage1_exact(a, b);
  v.cosine = cosine_sim(a, b);
  v.string_sim = string_sim(a, b);
  v.is_cross = v.stage1_match || (v.cosine >= threshold && v.string_sim >= threshold);
  return v;
}

}  // namespace crosspost::similarity
