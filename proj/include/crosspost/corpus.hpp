#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "crosspost/post.hpp"

namespace crosspost::corpus {

// Per-author interval where coverage exists on all of the author's platforms.
// start > end marks a non-analyzable author (disjoint coverage).
struct AnalysisWindow {
  std::string author_id;
  std::int64_t start = 0;
  std::int64_t end = -1;

  bool analyzable() const { return start <= end; }
  bool operator==(const AnalysisWindow&) const = default;
};

// Immutable post collection grouped by (author, platform), each group sorted
// ascending by timestamp. Safe for concurrent readers once built.
class Corpus {
 public:
  Corpus() = default;

  // Sorts, indexes and checks (platform, post_id) uniqueness.
  static Corpus build(std::vector<Post> posts);

  const std::vector<Post>& posts() const { return posts_; }
  const std::vector<std::string>& authors() const { return authors_; }
  bool has_author(std::string_view author) const;

  // Contiguous, timestamp-sorted slice; empty when the author has no posts there.
  std::span<const Post> posts_of(std::string_view author, Platform platform) const;

  // [first, last] post timestamps for (author, platform); nullopt when empty.
  std::optional<std::pair<std::int64_t, std::int64_t>> coverage(std::string_view author,
                                                                Platform platform) const;

  bool operator==(const Corpus& other) const { return posts_ == other.posts_; }

 private:
  struct Slice {
    std::size_t begin = 0;
    std::size_t end = 0;
  };

  std::vector<Post> posts_;
  std::vector<std::string> authors_;
  std::map<std::string, std::array<Slice, 3>, std::less<>> index_;
};

struct LoadStats {
  std::size_t records = 0;        // parsed posts
  std::size_t skipped_lines = 0;  // malformed lines skipped (lenient mode)
};

struct LoadResult {
  Corpus corpus;
  LoadStats stats;
};

// Line-delimited JSON, one post per line. In strict mode any malformed line
// aborts with the line number; in lenient mode malformed lines are skipped
// and counted, capped at 1% of the input (at least one line tolerated).
// Duplicate (platform, post_id) aborts in either mode. urls are recomputed
// from text; a urls field, when present, must match.
LoadResult load_corpus(const std::filesystem::path& path, bool strict);
LoadResult read_corpus(std::istream& in, bool strict, std::string_view source_name);

void save_corpus(const Corpus& corpus, const std::filesystem::path& path);
void write_corpus(const Corpus& corpus, std::ostream& out);

// Intersection of the author's per-platform coverage intervals over platforms
// where the author has at least one post. Throws on an unknown author.
AnalysisWindow analysis_window(const Corpus& corpus, std::string_view author);
std::map<std::string, AnalysisWindow> analysis_windows(const Corpus& corpus);

struct RestrictStats {
  std::size_t dropped_posts = 0;
  std::size_t dropped_authors = 0;  // non-analyzable
};

struct RestrictResult {
  Corpus corpus;
  RestrictStats stats;
};

// Keeps posts with start <= timestamp <= end for their author; drops
// non-analyzable authors entirely. windows must cover every corpus author.
RestrictResult restrict(const Corpus& corpus,
                        const std::map<std::string, AnalysisWindow>& windows);

}  // namespace crosspost::corpus
