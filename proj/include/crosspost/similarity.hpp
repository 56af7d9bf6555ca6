#pragma once

#include "crosspost/textnorm.hpp"

namespace crosspost::similarity {

struct SimilarityVerdict {
  bool stage1_match = false;
  double cosine = 0.0;      // in [0,1]
  double string_sim = 0.0;  // in [0,1]
  double threshold = 0.5;
  bool is_cross = false;    // stage1_match || (cosine >= t && string_sim >= t)

  // Scalar similarity used by the analytics CDFs; 1.0 for stage-1 matches.
  double mean_score() const { return 0.5 * (cosine + string_sim); }

  bool operator==(const SimilarityVerdict&) const = default;
};

// True iff the canonical forms are equal and non-empty. Empty descriptions
// carry no information, so two empty texts never match.
bool stage1_exact(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b);

// Cosine of the token-frequency vectors over the union vocabulary.
// 0 when either token list is empty.
double cosine_sim(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b);

// Multiset token overlap normalized by the longer token list.
// 0 when either token list is empty.
double string_sim(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b);

// The two-stage hierarchical classifier. Throws config_error unless
// 0 < threshold < 1. Stage-2 metrics are always computed and reported.
SimilarityVerdict classify(const textnorm::NormalizedText& a, const textnorm::NormalizedText& b,
                           double threshold = 0.5);

}  // namespace crosspost::similarity
