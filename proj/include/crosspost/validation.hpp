#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "crosspost/analytics.hpp"
#include "crosspost/corpus.hpp"
#include "crosspost/pairing.hpp"

namespace crosspost::validation {

// ---------------------------------------------------------------------------
// Classifier evaluation against labeled pairs
// ---------------------------------------------------------------------------

struct LabeledPair {
  std::string text_a;
  std::string text_b;
  bool is_cross = false;  // ground truth
};

std::vector<LabeledPair> load_labeled_pairs(const std::filesystem::path& path);
void save_labeled_pairs(std::span<const LabeledPair> pairs, const std::filesystem::path& path);

struct ThresholdEvaluation {
  double threshold = 0.5;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t tn = 0;
  std::size_t fn = 0;

  // Percentages; nullopt when the labeled set lacks the relevant class.
  std::optional<double> fp_rate_pct() const;
  std::optional<double> fn_rate_pct() const;
  std::size_t total() const { return tp + fp + tn + fn; }
};

// Runs the two-stage classifier on every pair. Throws on an empty set.
ThresholdEvaluation evaluate(std::span<const LabeledPair> labeled, double threshold);

// One evaluation per threshold, output ordered by threshold ascending.
// Throws on an empty threshold list.
std::vector<ThresholdEvaluation> sweep(std::span<const LabeledPair> labeled,
                                       std::span<const double> thresholds);

// ---------------------------------------------------------------------------
// Deterministic synthetic corpus with planted ground truth
// ---------------------------------------------------------------------------

struct EngagementModel {
  double likes_min = 50, likes_max = 300;
  double likes_mult = 1.3;
  double comments_min = 10, comments_max = 60;  // ignored for TW
  double comments_mult = 1.3;
  double shares_min = 15, shares_max = 120;
  double shares_mult = 1.3;
  double noise = 0.01;

  bool operator==(const EngagementModel&) const = default;
};

// Every field is a generation parameter; the seed fully determines the output.
struct SynthSpec {
  std::uint64_t seed = 42;
  std::size_t authors = 616;
  std::size_t groups = 5600;

  std::int64_t coverage_start = 1356998400;  // 2013-01-01
  int coverage_days = 150;
  int margin_days = 2;
  std::array<int, 3> fillers{6, 4, 8};  // non-cross posts per author on FB, GP, TW

  // Percentages over {FB-TW, FB-GP, TW-GP, FB-TW-GP} (Pattern enum order).
  std::array<double, 4> pattern_mix{66.52, 19.48, 3.44, 10.56};
  // Per pattern: first-publication shares over {FB, GP, TW, simultaneous}.
  std::array<std::array<double, 4>, 4> origin_mix{{
      {36.28, 0.0, 56.80, 6.92},   // FB-TW
      {73.68, 24.07, 0.0, 2.26},   // FB-GP
      {0.0, 23.79, 75.96, 0.25},   // TW-GP
      {34.93, 12.32, 49.80, 2.95}  // FB-TW-GP
  }};

  // Users whose cross-posts all originate on one platform (FB, GP, TW).
  std::array<std::size_t, 3> preference_plant{11, 2, 19};
  // Users with >= 80% of origins on one platform (includes the 100% users).
  std::array<std::size_t, 3> preference_plant80{75, 5, 102};
  // Users whose maximum origin share stays below 50%.
  std::size_t agnostic_plant = 95;

  // Users holding FB-TW groups, split into Automatic/Quick/Moderate/Slow.
  std::array<std::size_t, 4> interval_class_users{69, 159, 109, 59};
  double automatic_below_s = 10.0;
  double automatic_share = 0.7;  // fraction of an Automatic user's intervals below
  std::array<double, 3> interval_centers_s{498.0, 8460.0, 48600.0};
  double interval_center_jitter = 0.08;
  double interval_spread = 0.15;
  // Inter-posting intervals for groups outside the FB-TW behavioural analysis.
  double other_interval_min_s = 600.0;
  double other_interval_max_s = 21600.0;

  // Replica text perturbation model.
  double p_identical = 0.35;
  double p_shuffle = 0.15;
  double p_token_delete = 0.12;
  double p_token_swap = 0.20;
  double p_url_append = 0.25;
  double p_truncate = 0.15;
  double truncate_max_frac = 0.30;
  double p_case_noise = 0.40;
  double p_punct_noise = 0.30;
  // Planted replicas are perturbed only as far as both stage-2 metrics stay
  // at or above this floor, so every planted pair is detectable at 0.5.
  double min_stage2 = 0.55;

  double p_url_in_tw = 0.8;   // share of FB-TW groups whose tweet carries a url
  double p_shortened = 0.5;   // planted urls emitted through a shortener entry

  // Per derived user class {fb_favourite, tw_favourite, agnostic, other}:
  std::array<std::array<double, 4>, 4> content_mix{{
      {0.12, 0.23, 0.50, 0.15},  // fb_favourite: audiovisual heavy
      {0.35, 0.22, 0.36, 0.07},  // tw_favourite: text heavy
      {0.23, 0.23, 0.43, 0.11},  // agnostic
      {0.25, 0.25, 0.40, 0.10}   // other
  }};
  std::array<std::array<double, 5>, 4> url_mix{{
      {0.26, 0.22, 0.09, 0.03, 0.40},  // fb_favourite
      {0.02, 0.07, 0.09, 0.22, 0.60},  // tw_favourite
      {0.07, 0.08, 0.08, 0.07, 0.70},  // agnostic
      {0.10, 0.10, 0.10, 0.10, 0.60}   // other
  }};

  std::array<EngagementModel, 3> engagement{{
      // FB: cross-posts attract more reactions
      {80, 400, 1.39, 10, 60, 1.32, 15, 120, 1.21, 0.01},
      // GP: cross-posts attract fewer reactions
      {20, 120, 0.50, 4, 30, 0.333, 5, 40, 0.333, 0.01},
      // TW: favourites/retweets only
      {50, 300, 2.47, 0, 0, 1.0, 20, 150, 2.10, 0.01},
  }};

  std::size_t labeled_pairs = 12800;
  // Cross-pair perturbation classes: identical, mild, moderate, heavy, extreme.
  std::array<double, 5> cross_classes{0.300, 0.648, 0.035, 0.014, 0.003};
  // Decoy overlap classes: low, mid, high, very-high token overlap.
  std::array<double, 4> decoy_classes{0.8466, 0.1500, 0.0030, 0.0004};

  bool operator==(const SynthSpec&) const = default;
};

SynthSpec default_synth_spec();
SynthSpec load_synth_spec(const std::filesystem::path& path);  // TOML-style file

enum class UserClass : std::uint8_t { FbFavourite = 0, TwFavourite = 1, Agnostic = 2, Other = 3 };

struct SynthOutput {
  corpus::Corpus corpus;
  pairing::MatchSet ground_truth;  // planted groups, with real classifier scores
  std::vector<LabeledPair> labeled;
  analytics::UrlResolver resolver;

  // Plant bookkeeping for recovery checks and the synth summary.
  std::array<std::size_t, 4> pattern_counts{};
  std::array<std::array<std::size_t, 4>, 4> origin_counts{};  // [pattern][origin]
  std::array<std::vector<std::string>, 3> strong100_plants;
  std::map<std::string, int> interval_class_of;  // 0..3 = Automatic..Slow
  std::map<std::string, UserClass> user_class_of;
};

// Deterministic under spec.seed. Throws config_error on an infeasible spec.
SynthOutput generate_synthetic(const SynthSpec& spec);

}  // namespace crosspost::validation
