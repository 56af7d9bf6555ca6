#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "crosspost/corpus.hpp"
#include "crosspost/kmeans1d.hpp"
#include "crosspost/pairing.hpp"

namespace crosspost::analytics {

// ---------------------------------------------------------------------------
// Primitives
// ---------------------------------------------------------------------------

// Sorted unique values with cumulative step heights k/n; the final fraction is
// exactly 1. Throws on empty input.
std::vector<std::pair<double, double>> ecdf(std::vector<double> values);

// Least-squares slope of y = a*x through the origin: sum(x*y) / sum(x^2).
// Throws when every x is zero.
double engagement_slope(std::span<const std::pair<double, double>> points);

// ---------------------------------------------------------------------------
// URL destination classification
// ---------------------------------------------------------------------------

enum class UrlSite : std::uint8_t { Facebook = 0, Twitter, YouTube, Instagram, Other };

inline constexpr std::array<UrlSite, 5> kUrlSites = {UrlSite::Facebook, UrlSite::Twitter,
                                                     UrlSite::YouTube, UrlSite::Instagram,
                                                     UrlSite::Other};

std::string_view url_site_name(UrlSite s);

// Offline short-url cache: {short, resolved} records, one JSON object per
// line. An entry mapping a url to itself marks a known final destination.
class UrlResolver {
 public:
  UrlResolver() = default;

  static UrlResolver load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  void add(std::string short_url, std::string resolved);
  std::optional<std::string> lookup(const std::string& url) const;
  std::size_t size() const { return map_.size(); }

 private:
  std::unordered_map<std::string, std::string> map_;
};

// Follows cache entries (at most 5 hops, cycle-safe) and classifies the final
// url by registrable domain. In strict mode a url that neither terminates at
// a known-final cache entry nor matches the alias table is an error; in
// lenient mode the unresolved host is classified directly.
UrlSite classify_url_host(const std::string& url, const UrlResolver& resolver,
                          bool strict = false);

// ---------------------------------------------------------------------------
// Per-user aggregates
// ---------------------------------------------------------------------------

struct UserCrossStats {
  std::string author_id;

  std::array<std::size_t, 3> posts_per_platform{};
  std::array<std::size_t, 3> cross_posts_per_platform{};

  std::array<std::size_t, 4> pattern_counts{};  // all groups, simultaneous included
  std::array<std::array<std::size_t, 4>, 3> pattern_counts_by_origin{};
  std::array<std::size_t, 3> origin_counts{};   // non-simultaneous groups
  std::size_t simultaneous_groups = 0;
  std::size_t total_groups = 0;

  // FB-TW pattern groups only (the behavioural analyses of the fb/tw pair).
  std::vector<std::int64_t> fbtw_intervals;
  std::vector<double> fbtw_similarities;
  std::array<std::size_t, 4> fbtw_content_counts{};  // fb member: Text, Link, Photo, Video
  std::size_t fbtw_content_unknown = 0;
  std::array<std::size_t, 5> fbtw_url_counts{};      // tw member urls per UrlSite

  std::optional<double> cross_fraction(Platform p) const;
  std::optional<double> median_fbtw_interval() const;
  std::size_t origin_total() const {
    return origin_counts[0] + origin_counts[1] + origin_counts[2];
  }
};

struct StatsOptions {
  bool strict_urls = false;
};

// Verifies matchset/corpus consistency, then folds groups into per-user
// aggregates (one entry per corpus author, ordered by author_id).
std::vector<UserCrossStats> build_user_stats(const corpus::Corpus& corpus,
                                             const pairing::MatchSet& matchset,
                                             const UrlResolver& resolver,
                                             const StatsOptions& options = {});

// ---------------------------------------------------------------------------
// Breakdowns and groupings
// ---------------------------------------------------------------------------

// Fractions over {FB-TW, FB-GP, TW-GP, FB-TW-GP}; nullopt when the author has
// no qualifying group.
std::optional<std::array<double, 4>> pattern_breakdown(const UserCrossStats& u);
std::optional<std::array<double, 4>> pattern_breakdown(const UserCrossStats& u, Platform origin);

struct PreferredPlatform {
  Platform platform;
  bool tie = false;  // broken by the fixed FB < GP < TW order
};

// Plurality of non-simultaneous origin counts; nullopt without any.
std::optional<PreferredPlatform> preferred_platform(const UserCrossStats& u);

struct PreferenceGroups {
  std::array<std::vector<const UserCrossStats*>, 3> strong100;  // all origins on one platform
  std::array<std::vector<const UserCrossStats*>, 3> strong80;   // >= 80% share (superset)
  std::vector<const UserCrossStats*> agnostic;                  // max share < 50%
  std::size_t classified = 0;
  std::size_t unclassified = 0;  // no non-simultaneous origins
};

PreferenceGroups preference_groups(std::span<const UserCrossStats> users);

struct IntervalCluster {
  std::string label;  // Quick / Moderate / Slow for k == 3
  std::vector<const UserCrossStats*> members;
  double centroid = 0.0;     // over per-user median intervals
  double mean_median = 0.0;  // == centroid, kept for reporting symmetry
  double max_median = 0.0;
};

struct IntervalGroups {
  std::vector<const UserCrossStats*> automatic;
  std::vector<IntervalCluster> clusters;  // ascending centroid
};

// Partition of the users having at least one FB-TW group: Automatic = more
// than automatic_share of intervals below automatic_threshold_s; the rest are
// clustered on their median interval with exact 1-D k-means. Throws when
// fewer than k users remain to cluster.
IntervalGroups interval_groups(std::span<const UserCrossStats> users,
                               double automatic_threshold_s = 10.0,
                               double automatic_share = 0.5, int k = 3);

// ---------------------------------------------------------------------------
// Group-level content profiles (unweighted means of per-user fractions)
// ---------------------------------------------------------------------------

struct ContentTypeDistribution {
  std::array<double, 4> avg{};  // Text, Link, Photo, Video
  std::size_t users_counted = 0;
  std::size_t users_excluded = 0;  // no typed fb member in any FB-TW group
  std::size_t unknown_posts = 0;
};

ContentTypeDistribution content_type_distribution(
    std::span<const UserCrossStats* const> users);

struct UrlSiteDistribution {
  std::array<double, 5> avg{};  // Facebook, Twitter, YouTube, Instagram, Other
  std::size_t users_counted = 0;
  std::size_t users_excluded = 0;  // no urls in any FB-TW tw member
};

UrlSiteDistribution url_site_distribution(std::span<const UserCrossStats* const> users);

// ---------------------------------------------------------------------------
// Engagement comparison (y = a*x through the origin)
// ---------------------------------------------------------------------------

enum class Reaction : std::uint8_t { Likes = 0, Comments = 1, Shares = 2 };

std::string_view reaction_name(Reaction r);

struct EngagementPoint {
  std::string author_id;
  double x = 0.0;  // mean engagement of the user's non-cross posts
  double y = 0.0;  // mean engagement of cross-posts originated on the platform
};

struct EngagementComparison {
  Platform platform = Platform::FB;
  Reaction reaction = Reaction::Likes;
  std::vector<EngagementPoint> points;
  std::optional<double> slope;     // nullopt when sum x^2 == 0 or no points
  std::size_t users_excluded = 0;  // either mean undefined
};

std::vector<EngagementComparison> engagement_comparisons(const corpus::Corpus& corpus,
                                                         const pairing::MatchSet& matchset);

}  // namespace crosspost::analytics
