#pragma once

// Reference implementations used by the tests only. They stay deliberately
// naive and independent of the library's computation paths.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "crosspost/corpus.hpp"
#include "crosspost/pairing.hpp"
#include "crosspost/similarity.hpp"
#include "crosspost/textnorm.hpp"

namespace oracles {

using namespace crosspost;

// Cosine over explicit vocabulary-union count vectors.
inline double naive_cosine(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::set<std::string> vocab(a.begin(), a.end());
  vocab.insert(b.begin(), b.end());
  double dot = 0, na = 0, nb = 0;
  for (const std::string& t : vocab) {
    double ca = static_cast<double>(std::count(a.begin(), a.end(), t));
    double cb = static_cast<double>(std::count(b.begin(), b.end(), t));
    dot += ca * cb;
    na += ca * ca;
    nb += cb * cb;
  }
  if (dot == 0) return 0.0;
  double v = dot / (std::sqrt(na) * std::sqrt(nb));
  return std::min(1.0, std::max(0.0, v));
}

inline double naive_string_sim(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  if (a.empty() || b.empty()) return 0.0;
  std::set<std::string> vocab(a.begin(), a.end());
  double common = 0;
  for (const std::string& t : vocab) {
    common += static_cast<double>(std::min(std::count(a.begin(), a.end(), t),
                                           std::count(b.begin(), b.end(), t)));
  }
  return common / static_cast<double>(std::max(a.size(), b.size()));
}

inline textnorm::NormalizedText from_tokens(const std::vector<std::string>& tokens) {
  std::string text;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) text.push_back(' ');
    text += tokens[i];
  }
  return textnorm::normalize(text);
}

// All same-author cross-platform pairs, classified exhaustively; positives are
// filtered by the window predicate and then fed through the same greedy
// matcher contract as the engine.
inline pairing::MatchSet brute_force_detect(const corpus::Corpus& corpus, double threshold,
                                            int window_days) {
  const std::int64_t window = static_cast<std::int64_t>(window_days) * 86400;
  pairing::MatchSet out;
  for (const std::string& author : corpus.authors()) {
    std::map<const Post*, textnorm::NormalizedText> norms;
    for (Platform plat : kPlatforms) {
      for (const Post& p : corpus.posts_of(author, plat)) {
        norms.emplace(&p, textnorm::normalize(p.text));
      }
    }
    std::vector<pairing::CandidatePair> in_window;
    for (std::size_t xi = 0; xi < kPlatforms.size(); ++xi) {
      for (std::size_t yi = xi + 1; yi < kPlatforms.size(); ++yi) {
        for (const Post& pa : corpus.posts_of(author, kPlatforms[xi])) {
          for (const Post& pb : corpus.posts_of(author, kPlatforms[yi])) {
            // classify every cross-platform pair, then keep the ones that
            // satisfy the window predicate
            auto verdict = similarity::classify(norms.at(&pa), norms.at(&pb), threshold);
            (void)verdict;
            std::int64_t gap = pa.timestamp >= pb.timestamp ? pa.timestamp - pb.timestamp
                                                            : pb.timestamp - pa.timestamp;
            if (gap <= window) in_window.push_back({&pa, &pb});
          }
        }
      }
    }
    auto matches = pairing::match_author(in_window, threshold);
    auto groups = pairing::build_groups(matches, &out.stats.dropped_edges);
    out.stats.candidates += in_window.size();
    out.stats.positives += matches.size();
    std::move(matches.begin(), matches.end(), std::back_inserter(out.matches));
    std::move(groups.begin(), groups.end(), std::back_inserter(out.groups));
  }
  out.rebuild_member_index();
  return out;
}

// Small random corpora for the equivalence checks: bursts of near-duplicate
// and repetitive texts around shared timestamps.
inline corpus::Corpus random_corpus(std::mt19937_64& rng, std::size_t posts_target) {
  auto pick = [&](std::size_t n) { return static_cast<std::size_t>(rng() % n); };
  static const char* kWords[] = {"win",  "game", "show",  "new",   "live", "fans",
                                 "love", "city", "today", "night", "song", "team"};
  std::vector<Post> posts;
  std::size_t authors = 2 + pick(4);
  std::size_t serial = 0;
  for (std::size_t a = 0; a < authors && posts.size() < posts_target; ++a) {
    std::string author = "author" + std::to_string(a);
    std::size_t n = 5 + pick(posts_target / authors + 1);
    for (std::size_t i = 0; i < n && posts.size() < posts_target; ++i) {
      Post p;
      p.platform = static_cast<Platform>(pick(3));
      p.author_id = author;
      p.post_id = "p" + std::to_string(serial++);
      p.timestamp = 1000000 + static_cast<std::int64_t>(pick(40)) * 43200;  // half-day grid
      std::string text;
      std::size_t words = 1 + pick(6);
      for (std::size_t w = 0; w < words; ++w) {
        if (w > 0) text.push_back(' ');
        text += kWords[pick(std::size(kWords))];
      }
      p.text = text;
      p.content_type = ContentType::Text;
      p.engagement.likes = static_cast<std::int64_t>(pick(100));
      p.engagement.shares = static_cast<std::int64_t>(pick(50));
      if (p.platform != Platform::TW) p.engagement.comments = static_cast<std::int64_t>(pick(20));
      p.urls = textnorm::extract_urls(p.text);
      posts.push_back(std::move(p));
    }
  }
  return corpus::Corpus::build(std::move(posts));
}

// Lloyd's algorithm with random restarts; returns the best SSE found.
inline double lloyd_best_sse(const std::vector<double>& values, int k, int restarts,
                             std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = values.size();
  for (int r = 0; r < restarts; ++r) {
    std::vector<double> centers;
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    for (std::size_t i = n; i > 1; --i) std::swap(idx[i - 1], idx[rng() % i]);
    for (int c = 0; c < k; ++c) centers.push_back(values[idx[static_cast<std::size_t>(c) % n]]);
    std::vector<int> assign(n, 0);
    for (int iter = 0; iter < 200; ++iter) {
      bool moved = false;
      for (std::size_t i = 0; i < n; ++i) {
        int bestc = 0;
        double bestd = std::abs(values[i] - centers[0]);
        for (int c = 1; c < k; ++c) {
          double d = std::abs(values[i] - centers[static_cast<std::size_t>(c)]);
          if (d < bestd) {
            bestd = d;
            bestc = c;
          }
        }
        if (assign[i] != bestc) {
          assign[i] = bestc;
          moved = true;
        }
      }
      for (int c = 0; c < k; ++c) {
        double sum = 0;
        std::size_t cnt = 0;
        for (std::size_t i = 0; i < n; ++i) {
          if (assign[i] == c) {
            sum += values[i];
            ++cnt;
          }
        }
        if (cnt > 0) centers[static_cast<std::size_t>(c)] = sum / static_cast<double>(cnt);
      }
      if (!moved) break;
    }
    double sse = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = values[i] - centers[static_cast<std::size_t>(assign[i])];
      sse += d * d;
    }
    best = std::min(best, sse);
  }
  return best;
}

// Exhaustive minimum SSE over every k-partition (multiset semantics: optimal
// clusters of sorted values are contiguous, so scanning split points exactly
// enumerates the candidates).
inline double exhaustive_kmeans_sse(std::vector<double> values, int k) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  std::vector<std::size_t> cuts;  // k-1 split points in [1, n-1], increasing
  double best = std::numeric_limits<double>::infinity();
  auto cluster_sse = [&](std::size_t lo, std::size_t hi) {  // [lo, hi)
    double mean = 0;
    for (std::size_t i = lo; i < hi; ++i) mean += values[i];
    mean /= static_cast<double>(hi - lo);
    double s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += (values[i] - mean) * (values[i] - mean);
    return s;
  };
  auto recurse = [&](auto&& self, std::size_t next_cut_min) -> void {
    if (cuts.size() == static_cast<std::size_t>(k) - 1) {
      double total = 0;
      std::size_t lo = 0;
      for (std::size_t c : cuts) {
        total += cluster_sse(lo, c);
        lo = c;
      }
      total += cluster_sse(lo, n);
      best = std::min(best, total);
      return;
    }
    for (std::size_t c = next_cut_min; c < n; ++c) {
      cuts.push_back(c);
      self(self, c + 1);
      cuts.pop_back();
    }
  };
  recurse(recurse, 1);
  return best;
}

// Canonical, score-free view of a group for set comparisons.
inline std::string group_key(const pairing::CrossPostGroup& g) {
  std::string key = g.author_id + "|" + std::string(pairing::pattern_name(g.pattern)) + "|" +
                    std::string(pairing::origin_name(g.origin));
  for (const auto& m : g.members) {
    key += "|" + std::string(platform_name(m.platform)) + "/" + m.post_id;
  }
  return key;
}

inline std::vector<std::string> group_keys(const pairing::MatchSet& ms) {
  std::vector<std::string> keys;
  keys.reserve(ms.groups.size());
  for (const auto& g : ms.groups) keys.push_back(group_key(g));
  std::sort(keys.begin(), keys.end());
  return keys;
}

inline const char* test_data_dir() {
  const char* dir = std::getenv("CROSSPOST_TEST_DATA");
  return dir != nullptr ? dir : "tests/data";
}

}  // namespace oracles
