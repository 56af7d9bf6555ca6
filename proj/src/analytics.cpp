#include "crosspost/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>

#include <nlohmann/json.hpp>

#include "crosspost/errors.hpp"

namespace crosspost::analytics {

namespace {

using nlohmann::json;

std::string post_key(Platform p, std::string_view post_id) {
  std::string k(platform_name(p));
  k.push_back('/');
  k.append(post_id);
  return k;
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  }
  return out;
}

std::string host_of(const std::string& url) {
  std::size_t start = 0;
  if (std::size_t scheme = url.find("://"); scheme != std::string::npos) {
    start = scheme + 3;
  }
  std::size_t end = url.find_first_of("/?#", start);
  std::string_view authority(url.data() + start,
                             (end == std::string::npos ? url.size() : end) - start);
  if (std::size_t at = authority.rfind('@'); at != std::string_view::npos) {
    authority.remove_prefix(at + 1);
  }
  if (std::size_t colon = authority.find(':'); colon != std::string_view::npos) {
    authority = authority.substr(0, colon);
  }
  return lower_ascii(authority);
}

bool host_matches(const std::string& host, std::string_view domain) {
  if (host == domain) return true;
  if (host.size() <= domain.size()) return false;
  return host.compare(host.size() - domain.size(), domain.size(), domain) == 0 &&
         host[host.size() - domain.size() - 1] == '.';
}

std::optional<UrlSite> site_by_alias(const std::string& host) {
  if (host_matches(host, "facebook.com") || host_matches(host, "fb.me")) {
    return UrlSite::Facebook;
  }
  if (host_matches(host, "twitter.com") || host_matches(host, "t.co")) {
    return UrlSite::Twitter;
  }
  if (host_matches(host, "youtube.com") || host_matches(host, "youtu.be")) {
    return UrlSite::YouTube;
  }
  if (host_matches(host, "instagram.com") || host_matches(host, "instagr.am")) {
    return UrlSite::Instagram;
  }
  return std::nullopt;
}

double median_of_sorted(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  std::size_t n = v.size();
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

std::vector<std::pair<double, double>> ecdf(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("ecdf: empty input");
  std::sort(values.begin(), values.end());
  std::vector<std::pair<double, double>> out;
  const double n = static_cast<double>(values.size());
  std::size_t cum = 0;
  for (std::size_t i = 0; i < values.size();) {
    std::size_t j = i;
    while (j < values.size() && values[j] == values[i]) ++j;
    cum += j - i;
    out.emplace_back(values[i], static_cast<double>(cum) / n);
    i = j;
  }
  out.back().second = 1.0;  // exact by construction (cum == n), pinned anyway
  return out;
}

double engagement_slope(std::span<const std::pair<double, double>> points) {
  double sxy = 0.0;
  double sxx = 0.0;
  for (const auto& [x, y] : points) {
    sxy += x * y;
    sxx += x * x;
  }
  if (sxx == 0.0) throw std::domain_error("engagement_slope: all x are zero");
  return sxy / sxx;
}

std::string_view url_site_name(UrlSite s) {
  switch (s) {
    case UrlSite::Facebook: return "facebook";
    case UrlSite::Twitter: return "twitter";
    case UrlSite::YouTube: return "youtube";
    case UrlSite::Instagram: return "instagram";
    case UrlSite::Other: return "other";
  }
  return "other";
}

UrlResolver UrlResolver::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open resolver cache " + path.string());
  UrlResolver r;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string where = path.string() + ":" + std::to_string(line_no);
    try {
      json j = json::parse(line);
      r.add(j.at("short").get<std::string>(), j.at("resolved").get<std::string>());
    } catch (const json::exception& e) {
      throw format_error(where + ": " + e.what());
    }
  }
  if (in.bad()) throw io_error("read failure on " + path.string());
  return r;
}

void UrlResolver::save(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  std::map<std::string, std::string> sorted(map_.begin(), map_.end());
  for (const auto& [short_url, resolved] : sorted) {
    json j;
    j["short"] = short_url;
    j["resolved"] = resolved;
    out << j.dump() << '\n';
  }
  out.flush();
  if (!out) throw io_error("write failure on " + path.string());
}

void UrlResolver::add(std::string short_url, std::string resolved) {
  map_[std::move(short_url)] = std::move(resolved);
}

std::optional<std::string> UrlResolver::lookup(const std::string& url) const {
  auto it = map_.find(url);
  if (it == map_.end()) return std::nullopt;
  return it->second;
}

UrlSite classify_url_host(const std::string& url, const UrlResolver& resolver, bool strict) {
  std::string current = url;
  bool known_final = false;
  int hops = 0;
  for (;;) {
    auto next = resolver.lookup(current);
    if (!next) break;
    if (*next == current) {
      known_final = true;
      break;
    }
    if (++hops > 5) {
      throw format_error("url resolution exceeded 5 hops starting from " + url);
    }
    current = *next;
  }
  std::string host = host_of(current);
  if (auto site = site_by_alias(host)) return *site;
  if (known_final) return UrlSite::Other;
  if (strict) {
    throw format_error("unresolved url " + current + " (no resolver cache entry)");
  }
  return UrlSite::Other;
}

std::optional<double> UserCrossStats::cross_fraction(Platform p) const {
  std::size_t total = posts_per_platform[static_cast<std::size_t>(p)];
  if (total == 0) return std::nullopt;
  return static_cast<double>(cross_posts_per_platform[static_cast<std::size_t>(p)]) /
         static_cast<double>(total);
}

std::optional<double> UserCrossStats::median_fbtw_interval() const {
  if (fbtw_intervals.empty()) return std::nullopt;
  std::vector<double> v(fbtw_intervals.begin(), fbtw_intervals.end());
  return median_of_sorted(v);
}

std::vector<UserCrossStats> build_user_stats(const corpus::Corpus& corpus,
                                             const pairing::MatchSet& matchset,
                                             const UrlResolver& resolver,
                                             const StatsOptions& options) {
  std::unordered_map<std::string, const Post*> posts_by_key;
  posts_by_key.reserve(corpus.posts().size());
  for (const Post& p : corpus.posts()) {
    posts_by_key.emplace(post_key(p.platform, p.post_id), &p);
  }

  const auto& authors = corpus.authors();
  std::vector<UserCrossStats> stats(authors.size());
  std::unordered_map<std::string_view, std::size_t> index_of;
  index_of.reserve(authors.size());
  for (std::size_t i = 0; i < authors.size(); ++i) {
    stats[i].author_id = authors[i];
    index_of.emplace(authors[i], i);
    for (Platform p : kPlatforms) {
      stats[i].posts_per_platform[static_cast<std::size_t>(p)] =
          corpus.posts_of(authors[i], p).size();
    }
  }

  for (const pairing::CrossPostGroup& g : matchset.groups) {
    auto idx = index_of.find(g.author_id);
    if (idx == index_of.end()) {
      throw consistency_error("matchset references unknown author " + g.author_id);
    }
    UserCrossStats& u = stats[idx->second];

    const Post* fb_member = nullptr;
    const Post* tw_member = nullptr;
    for (const pairing::GroupMember& m : g.members) {
      auto it = posts_by_key.find(post_key(m.platform, m.post_id));
      if (it == posts_by_key.end()) {
        throw consistency_error("matchset references missing post " +
                                post_key(m.platform, m.post_id));
      }
      const Post* p = it->second;
      if (p->timestamp != m.timestamp || p->author_id != g.author_id) {
        throw consistency_error("matchset disagrees with corpus on post " +
                                post_key(m.platform, m.post_id));
      }
      ++u.cross_posts_per_platform[static_cast<std::size_t>(m.platform)];
      if (m.platform == Platform::FB) fb_member = p;
      if (m.platform == Platform::TW) tw_member = p;
    }

    ++u.total_groups;
    ++u.pattern_counts[static_cast<std::size_t>(g.pattern)];
    if (g.origin == pairing::Origin::Simultaneous) {
      ++u.simultaneous_groups;
    } else {
      std::size_t o = static_cast<std::size_t>(g.origin);
      ++u.origin_counts[o];
      ++u.pattern_counts_by_origin[o][static_cast<std::size_t>(g.pattern)];
    }

    if (g.pattern == pairing::Pattern::FB_TW) {
      u.fbtw_intervals.push_back(*g.interval_between(Platform::FB, Platform::TW));
      u.fbtw_similarities.push_back(g.mean_similarity());
      switch (fb_member->content_type) {
        case ContentType::Text: ++u.fbtw_content_counts[0]; break;
        case ContentType::Link: ++u.fbtw_content_counts[1]; break;
        case ContentType::Photo: ++u.fbtw_content_counts[2]; break;
        case ContentType::Video: ++u.fbtw_content_counts[3]; break;
        case ContentType::Unknown: ++u.fbtw_content_unknown; break;
      }
      for (const std::string& url : tw_member->urls) {
        UrlSite site = classify_url_host(url, resolver, options.strict_urls);
        ++u.fbtw_url_counts[static_cast<std::size_t>(site)];
      }
    }
  }
  return stats;
}

std::optional<std::array<double, 4>> pattern_breakdown(const UserCrossStats& u) {
  if (u.total_groups == 0) return std::nullopt;
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = static_cast<double>(u.pattern_counts[i]) / static_cast<double>(u.total_groups);
  }
  return out;
}

std::optional<std::array<double, 4>> pattern_breakdown(const UserCrossStats& u,
                                                       Platform origin) {
  const auto& counts = u.pattern_counts_by_origin[static_cast<std::size_t>(origin)];
  std::size_t total = counts[0] + counts[1] + counts[2] + counts[3];
  if (total == 0) return std::nullopt;
  std::array<double, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) {
    out[i] = static_cast<double>(counts[i]) / static_cast<double>(total);
  }
  return out;
}

std::optional<PreferredPlatform> preferred_platform(const UserCrossStats& u) {
  if (u.origin_total() == 0) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (u.origin_counts[i] > u.origin_counts[best]) best = i;
  }
  int at_max = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (u.origin_counts[i] == u.origin_counts[best]) ++at_max;
  }
  return PreferredPlatform{static_cast<Platform>(best), at_max > 1};
}

PreferenceGroups preference_groups(std::span<const UserCrossStats> users) {
  PreferenceGroups out;
  for (const UserCrossStats& u : users) {
    std::size_t total = u.origin_total();
    if (total == 0) {
      ++out.unclassified;
      continue;
    }
    ++out.classified;
    std::size_t max_count = 0;
    for (std::size_t i = 0; i < 3; ++i) max_count = std::max(max_count, u.origin_counts[i]);
    for (std::size_t i = 0; i < 3; ++i) {
      if (u.origin_counts[i] == total) out.strong100[i].push_back(&u);
      if (u.origin_counts[i] * 10 >= total * 8) out.strong80[i].push_back(&u);
    }
    if (max_count * 2 < total) out.agnostic.push_back(&u);
  }
  return out;
}

IntervalGroups interval_groups(std::span<const UserCrossStats> users,
                               double automatic_threshold_s, double automatic_share, int k) {
  IntervalGroups out;
  std::vector<const UserCrossStats*> remaining;
  for (const UserCrossStats& u : users) {
    if (u.fbtw_intervals.empty()) continue;
    std::size_t below = 0;
    for (std::int64_t v : u.fbtw_intervals) {
      if (static_cast<double>(v) < automatic_threshold_s) ++below;
    }
    if (static_cast<double>(below) >
        automatic_share * static_cast<double>(u.fbtw_intervals.size())) {
      out.automatic.push_back(&u);
    } else {
      remaining.push_back(&u);
    }
  }
  if (remaining.size() < static_cast<std::size_t>(k)) {
    throw config_error("interval_groups: " + std::to_string(remaining.size()) +
                       " users left to cluster, need at least k=" + std::to_string(k));
  }
  std::vector<double> medians;
  medians.reserve(remaining.size());
  for (const UserCrossStats* u : remaining) medians.push_back(*u->median_fbtw_interval());

  Kmeans1D km = kmeans1d_exact(medians, k);
  out.clusters.resize(static_cast<std::size_t>(k));
  for (std::size_t c = 0; c < out.clusters.size(); ++c) {
    IntervalCluster& cl = out.clusters[c];
    cl.centroid = km.centroids[c];
    cl.mean_median = km.centroids[c];
    if (k == 3) {
      cl.label = c == 0 ? "Quick" : (c == 1 ? "Moderate" : "Slow");
    } else {
      cl.label = "Cluster" + std::to_string(c + 1);
    }
  }
  for (std::size_t i = 0; i < remaining.size(); ++i) {
    IntervalCluster& cl = out.clusters[km.assignment[i]];
    cl.members.push_back(remaining[i]);
    cl.max_median = std::max(cl.max_median, medians[i]);
  }
  return out;
}

ContentTypeDistribution content_type_distribution(
    std::span<const UserCrossStats* const> users) {
  ContentTypeDistribution out;
  for (const UserCrossStats* u : users) {
    std::size_t total = 0;
    for (std::size_t c : u->fbtw_content_counts) total += c;
    out.unknown_posts += u->fbtw_content_unknown;
    if (total == 0) {
      ++out.users_excluded;
      continue;
    }
    ++out.users_counted;
    for (std::size_t i = 0; i < 4; ++i) {
      out.avg[i] += static_cast<double>(u->fbtw_content_counts[i]) / static_cast<double>(total);
    }
  }
  if (out.users_counted > 0) {
    for (double& v : out.avg) v /= static_cast<double>(out.users_counted);
  }
  return out;
}

UrlSiteDistribution url_site_distribution(std::span<const UserCrossStats* const> users) {
  UrlSiteDistribution out;
  for (const UserCrossStats* u : users) {
    std::size_t total = 0;
    for (std::size_t c : u->fbtw_url_counts) total += c;
    if (total == 0) {
      ++out.users_excluded;
      continue;
    }
    ++out.users_counted;
    for (std::size_t i = 0; i < 5; ++i) {
      out.avg[i] += static_cast<double>(u->fbtw_url_counts[i]) / static_cast<double>(total);
    }
  }
  if (out.users_counted > 0) {
    for (double& v : out.avg) v /= static_cast<double>(out.users_counted);
  }
  return out;
}

std::string_view reaction_name(Reaction r) {
  switch (r) {
    case Reaction::Likes: return "likes";
    case Reaction::Comments: return "comments";
    case Reaction::Shares: return "shares";
  }
  return "likes";
}

std::vector<EngagementComparison> engagement_comparisons(const corpus::Corpus& corpus,
                                                         const pairing::MatchSet& matchset) {
  // Post keys of each group's origin member, grouped by platform.
  std::array<std::unordered_map<std::string, std::vector<const pairing::GroupMember*>>, 3>
      origin_members;
  for (const pairing::CrossPostGroup& g : matchset.groups) {
    if (g.origin == pairing::Origin::Simultaneous) continue;
    Platform p = static_cast<Platform>(g.origin);
    const pairing::GroupMember* m = g.member_on(p);
    if (m != nullptr) origin_members[static_cast<std::size_t>(p)][g.author_id].push_back(m);
  }

  std::unordered_map<std::string, const Post*> posts_by_key;
  posts_by_key.reserve(corpus.posts().size());
  for (const Post& p : corpus.posts()) {
    posts_by_key.emplace(post_key(p.platform, p.post_id), &p);
  }

  auto reaction_value = [](const Post& p, Reaction r) -> std::optional<double> {
    switch (r) {
      case Reaction::Likes: return static_cast<double>(p.engagement.likes);
      case Reaction::Shares: return static_cast<double>(p.engagement.shares);
      case Reaction::Comments:
        if (!p.engagement.comments) return std::nullopt;
        return static_cast<double>(*p.engagement.comments);
    }
    return std::nullopt;
  };

  std::vector<EngagementComparison> out;
  for (Platform platform : kPlatforms) {
    for (Reaction reaction : {Reaction::Likes, Reaction::Comments, Reaction::Shares}) {
      if (platform == Platform::TW && reaction == Reaction::Comments) continue;
      EngagementComparison cmp;
      cmp.platform = platform;
      cmp.reaction = reaction;
      for (const std::string& author : corpus.authors()) {
        auto posts = corpus.posts_of(author, platform);
        if (posts.empty()) continue;
        double x_sum = 0.0;
        std::size_t x_n = 0;
        for (const Post& p : posts) {
          if (matchset.is_cross(p.platform, p.post_id)) continue;
          if (auto v = reaction_value(p, reaction)) {
            x_sum += *v;
            ++x_n;
          }
        }
        double y_sum = 0.0;
        std::size_t y_n = 0;
        const auto& by_author = origin_members[static_cast<std::size_t>(platform)];
        if (auto it = by_author.find(author); it != by_author.end()) {
          for (const pairing::GroupMember* m : it->second) {
            const Post* p = posts_by_key.at(post_key(m->platform, m->post_id));
            if (auto v = reaction_value(*p, reaction)) {
              y_sum += *v;
              ++y_n;
            }
          }
        }
        if (x_n == 0 || y_n == 0) {
          ++cmp.users_excluded;
          continue;
        }
        cmp.points.push_back({author, x_sum / static_cast<double>(x_n),
                              y_sum / static_cast<double>(y_n)});
      }
      double sxx = 0.0;
      for (const EngagementPoint& p : cmp.points) sxx += p.x * p.x;
      if (!cmp.points.empty() && sxx > 0.0) {
        std::vector<std::pair<double, double>> pts;
        pts.reserve(cmp.points.size());
        for (const EngagementPoint& p : cmp.points) pts.emplace_back(p.x, p.y);
        cmp.slope = engagement_slope(pts);
      }
      out.push_back(std::move(cmp));
    }
  }
  return out;
}

}  // namespace crosspost::analytics
