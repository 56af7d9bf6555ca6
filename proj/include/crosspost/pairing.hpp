#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "crosspost/corpus.hpp"
#include "crosspost/similarity.hpp"

namespace crosspost::pairing {

enum class Pattern : std::uint8_t { FB_TW = 0, FB_GP = 1, TW_GP = 2, FB_TW_GP = 3 };

inline constexpr std::array<Pattern, 4> kPatterns = {Pattern::FB_TW, Pattern::FB_GP,
                                                     Pattern::TW_GP, Pattern::FB_TW_GP};

std::string_view pattern_name(Pattern p);
std::optional<Pattern> pattern_from_string(std::string_view s);

enum class Origin : std::uint8_t { FB = 0, GP = 1, TW = 2, Simultaneous = 3 };

std::string_view origin_name(Origin o);
std::optional<Origin> origin_from_string(std::string_view s);
inline Origin origin_of(Platform p) { return static_cast<Origin>(p); }

// Same author, different platforms, |t_a - t_b| within the window.
// Oriented so that platform(a) < platform(b).
struct CandidatePair {
  const Post* a = nullptr;
  const Post* b = nullptr;

  std::int64_t interval_seconds() const {
    return a->timestamp >= b->timestamp ? a->timestamp - b->timestamp
                                        : b->timestamp - a->timestamp;
  }
};

// Per-platform sorted range scans; each unordered pair emitted once; the
// window boundary is closed at exactly window_days * 86400 seconds.
std::vector<CandidatePair> generate_candidates(const corpus::Corpus& corpus,
                                               std::string_view author, int window_days = 7);

struct MatchRecord {
  std::string author_id;
  Platform platform_a = Platform::FB;
  std::string post_id_a;
  std::int64_t ts_a = 0;
  Platform platform_b = Platform::TW;
  std::string post_id_b;
  std::int64_t ts_b = 0;
  similarity::SimilarityVerdict verdict;
  std::int64_t interval_seconds = 0;

  bool operator==(const MatchRecord&) const = default;
};

// Classifies every candidate, then enforces one-to-one matching per platform
// pair greedily: positives sorted by mean score descending, interval
// ascending, then (post_id_a, post_id_b); a pair is accepted iff neither post
// is already matched to the same opposite platform.
std::vector<MatchRecord> match_author(std::span<const CandidatePair> candidates,
                                      double threshold);

struct GroupMember {
  Platform platform = Platform::FB;
  std::string post_id;
  std::int64_t timestamp = 0;

  bool operator==(const GroupMember&) const = default;
};

struct GroupEdge {
  Platform platform_a = Platform::FB;
  Platform platform_b = Platform::TW;
  bool stage1 = false;
  double cosine = 0.0;
  double string_sim = 0.0;

  double mean_score() const { return 0.5 * (cosine + string_sim); }
  bool operator==(const GroupEdge&) const = default;
};

struct CrossPostGroup {
  std::string author_id;
  std::vector<GroupMember> members;  // sorted by platform, 2 or 3, one per platform
  Pattern pattern = Pattern::FB_TW;
  Origin origin = Origin::FB;
  std::int64_t first_timestamp = 0;
  std::vector<GroupEdge> edges;

  // Scalar similarity of the cross-post: mean over its match edges.
  double mean_similarity() const;
  const GroupMember* member_on(Platform p) const;
  // |t_x - t_y| when both platforms are present.
  std::optional<std::int64_t> interval_between(Platform x, Platform y) const;

  bool operator==(const CrossPostGroup&) const = default;
};

// Origin of a group: the platform of the unique earliest member, or
// Simultaneous when two or more members share the minimum timestamp.
Origin attribute_origin(const CrossPostGroup& group);

struct MatchSetStats {
  std::size_t candidates = 0;
  std::size_t positives = 0;
  std::size_t dropped_edges = 0;  // removed while splitting invalid components
};

struct MatchSet {
  std::vector<MatchRecord> matches;
  std::vector<CrossPostGroup> groups;
  MatchSetStats stats;

  bool is_cross(Platform platform, std::string_view post_id) const;
  void rebuild_member_index();

  bool operator==(const MatchSet& o) const {
    return matches == o.matches && groups == o.groups;
  }

 private:
  std::unordered_set<std::string> member_keys_;
};

// Connected components over posts via match edges. A component spanning three
// platforms yields FB_TW_GP even when only two pairwise edges exist; a
// component with two posts on one platform is split by dropping its
// lowest-scoring edge until valid.
std::vector<CrossPostGroup> build_groups(std::span<const MatchRecord> matches,
                                         std::size_t* dropped_edges = nullptr);

struct DetectOptions {
  double threshold = 0.5;
  int window_days = 7;
  int jobs = 1;
};

// Full pipeline over a restricted corpus; authors are processed independently
// (in parallel when jobs > 1) and merged in author order, so the result does
// not depend on the parallelism degree.
MatchSet detect(const corpus::Corpus& corpus, const DetectOptions& options = {});

// Line-delimited JSON, one group per line.
void write_matchset(const MatchSet& ms, std::ostream& out);
void save_matchset(const MatchSet& ms, const std::filesystem::path& path);
MatchSet load_matchset(const std::filesystem::path& path);  // groups only

// Throws consistency_error unless every group member exists in the corpus
// with the same timestamp.
void verify_consistency(const corpus::Corpus& corpus, const MatchSet& ms);

}  // namespace crosspost::pairing
