#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "crosspost/analytics.hpp"
#include "crosspost/errors.hpp"
#include "support/oracles.hpp"

using namespace crosspost;
using namespace crosspost::analytics;

TEST_CASE("ecdf steps through sorted unique values and ends at one") {
  auto e = ecdf({0.2, 0.2, 0.8});
  REQUIRE(e.size() == 2);
  CHECK(e[0].first == 0.2);
  CHECK(e[0].second == doctest::Approx(2.0 / 3.0));
  CHECK(e[1].first == 0.8);
  CHECK(e[1].second == 1.0);

  auto single = ecdf({0.42});
  REQUIRE(single.size() == 1);
  CHECK(single[0] == std::pair<double, double>{0.42, 1.0});

  CHECK_THROWS_AS(ecdf({}), std::invalid_argument);
}

TEST_CASE("ecdf of uniform draws stays within the ks band") {
  std::mt19937_64 rng(4242);
  std::vector<double> values(1000);
  for (double& v : values) {
    v = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  }
  auto e = ecdf(values);
  // KS statistic against U(0,1), computed here directly
  double d = 0.0;
  double prev = 0.0;
  for (const auto& [x, f] : e) {
    d = std::max(d, std::abs(f - x));
    d = std::max(d, std::abs(prev - x));
    prev = f;
  }
  CHECK(d < 0.0515);  // 1% critical value at n = 1000

  double last_x = -1e300;
  double last_f = -1.0;
  for (const auto& [x, f] : e) {
    CHECK(x > last_x);
    CHECK(f > last_f);
    last_x = x;
    last_f = f;
  }
  CHECK(last_f == 1.0);
}

TEST_CASE("slope through the origin") {
  std::vector<std::pair<double, double>> exact = {{1, 2}, {2, 4}};
  CHECK(engagement_slope(exact) == doctest::Approx(2.0));
  std::vector<std::pair<double, double>> skew = {{1, 1}, {2, 1}};
  CHECK(engagement_slope(skew) == doctest::Approx(0.6));
  std::vector<std::pair<double, double>> zeros = {{0, 1}, {0, 2}};
  CHECK_THROWS_AS(engagement_slope(zeros), std::domain_error);

  std::mt19937_64 rng(55);
  for (int iter = 0; iter < 200; ++iter) {
    std::vector<std::pair<double, double>> pts(1 + rng() % 40);
    long double sxy = 0, sxx = 0;
    for (auto& [x, y] : pts) {
      x = static_cast<double>(rng() % 1000) / 7.0 + 0.1;
      y = static_cast<double>(rng() % 1000) / 3.0;
      sxy += static_cast<long double>(x) * y;
      sxx += static_cast<long double>(x) * x;
    }
    CHECK(engagement_slope(pts) ==
          doctest::Approx(static_cast<double>(sxy / sxx)).epsilon(1e-9));
  }
}

TEST_CASE("url classification follows the cache and the alias table") {
  UrlResolver r;
  CHECK(classify_url_host("https://youtu.be/abc", r, false) == UrlSite::YouTube);
  CHECK(classify_url_host("https://youtu.be/abc", r, true) == UrlSite::YouTube);
  CHECK(classify_url_host("https://WWW.FACEBOOK.COM/page", r, false) == UrlSite::Facebook);
  CHECK(classify_url_host("https://notfacebook.com/x", r, false) == UrlSite::Other);
  CHECK(classify_url_host("https://instagr.am/p/1/", r, false) == UrlSite::Instagram);
  CHECK(classify_url_host("http://t.co/SHORT", r, false) == UrlSite::Twitter);
  CHECK(classify_url_host("http://t.co/SHORT", r, true) == UrlSite::Twitter);
  CHECK(classify_url_host("https://user:pw@twitter.com:8080/x", r, false) == UrlSite::Twitter);

  r.add("http://bit.ly/x", "https://www.instagram.com/p/1/");
  CHECK(classify_url_host("http://bit.ly/x", r, true) == UrlSite::Instagram);

  r.add("https://final.example/x", "https://final.example/x");  // known final
  CHECK(classify_url_host("https://final.example/x", r, true) == UrlSite::Other);

  CHECK(classify_url_host("https://unknown.example/y", r, false) == UrlSite::Other);
  CHECK_THROWS_AS(classify_url_host("https://unknown.example/y", r, true), format_error);

  r.add("https://a.short/1", "https://b.short/1");
  r.add("https://b.short/1", "https://a.short/1");
  CHECK_THROWS_AS(classify_url_host("https://a.short/1", r, false), format_error);
}

namespace {

Post make_post(Platform plat, const std::string& author, const std::string& id,
               std::int64_t ts, const std::string& text, ContentType type = ContentType::Text,
               std::int64_t likes = 0, std::int64_t comments = 0, std::int64_t shares = 0) {
  Post p;
  p.platform = plat;
  p.author_id = author;
  p.post_id = id;
  p.timestamp = ts;
  p.text = text;
  p.content_type = type;
  p.engagement.likes = likes;
  p.engagement.shares = shares;
  if (plat != Platform::TW) p.engagement.comments = comments;
  p.urls = textnorm::extract_urls(text);
  return p;
}

pairing::CrossPostGroup make_group(const std::string& author,
                                   std::vector<pairing::GroupMember> members) {
  pairing::CrossPostGroup g;
  g.author_id = author;
  g.members = std::move(members);
  std::sort(g.members.begin(), g.members.end(),
            [](const pairing::GroupMember& a, const pairing::GroupMember& b) {
              return std::tie(a.platform, a.post_id) < std::tie(b.platform, b.post_id);
            });
  bool fb = false, gp = false, tw = false;
  g.first_timestamp = g.members.front().timestamp;
  for (const auto& m : g.members) {
    g.first_timestamp = std::min(g.first_timestamp, m.timestamp);
    fb |= m.platform == Platform::FB;
    gp |= m.platform == Platform::GP;
    tw |= m.platform == Platform::TW;
  }
  if (fb && gp && tw) {
    g.pattern = pairing::Pattern::FB_TW_GP;
  } else if (fb && tw) {
    g.pattern = pairing::Pattern::FB_TW;
  } else if (fb && gp) {
    g.pattern = pairing::Pattern::FB_GP;
  } else {
    g.pattern = pairing::Pattern::TW_GP;
  }
  for (std::size_t i = 1; i < g.members.size(); ++i) {
    g.edges.push_back({g.members[0].platform, g.members[i].platform, false, 0.9, 0.7});
  }
  g.origin = pairing::attribute_origin(g);
  return g;
}

}  // namespace

TEST_CASE("per-user aggregates from a hand built corpus") {
  std::vector<Post> posts;
  posts.push_back(make_post(Platform::FB, "u", "f1", 100, "launch day video",
                            ContentType::Photo, 100, 10, 5));
  posts.push_back(make_post(Platform::FB, "u", "f2", 200, "aa", ContentType::Text, 10, 1, 0));
  posts.push_back(make_post(Platform::FB, "u", "f3", 300, "bb", ContentType::Text, 20, 2, 0));
  posts.push_back(make_post(Platform::FB, "u", "f4", 400, "cc", ContentType::Text, 30, 3, 0));
  posts.push_back(make_post(Platform::TW, "u", "t1", 150,
                            "launch day video https://www.instagram.com/p/9/",
                            ContentType::Link, 7, 0, 2));
  posts.push_back(make_post(Platform::GP, "u", "g1", 500, "dd", ContentType::Text, 1, 0, 0));
  auto corpus = corpus::Corpus::build(std::move(posts));

  pairing::MatchSet ms;
  ms.groups.push_back(make_group("u", {{Platform::FB, "f1", 100}, {Platform::TW, "t1", 150}}));
  ms.rebuild_member_index();

  UrlResolver resolver;
  auto stats = build_user_stats(corpus, ms, resolver);
  REQUIRE(stats.size() == 1);
  const UserCrossStats& u = stats[0];

  CHECK(u.posts_per_platform == std::array<std::size_t, 3>{4, 1, 1});
  CHECK(u.cross_posts_per_platform == std::array<std::size_t, 3>{1, 0, 1});
  CHECK(*u.cross_fraction(Platform::FB) == doctest::Approx(0.25));
  CHECK(*u.cross_fraction(Platform::TW) == doctest::Approx(1.0));
  CHECK(*u.cross_fraction(Platform::GP) == doctest::Approx(0.0));

  CHECK(u.total_groups == 1);
  CHECK(u.pattern_counts[0] == 1);
  CHECK(u.origin_counts[0] == 1);  // fb first at 100 < 150
  CHECK(u.fbtw_intervals == std::vector<std::int64_t>{50});
  CHECK(*u.median_fbtw_interval() == doctest::Approx(50.0));
  CHECK(u.fbtw_content_counts == std::array<std::size_t, 4>{0, 0, 1, 0});  // photo
  CHECK(u.fbtw_url_counts[static_cast<std::size_t>(UrlSite::Instagram)] == 1);
  CHECK(u.fbtw_similarities.size() == 1);
  CHECK(u.fbtw_similarities[0] == doctest::Approx(0.8));  // mean of 0.9 and 0.7

  auto breakdown = pattern_breakdown(u);
  REQUIRE(breakdown.has_value());
  CHECK((*breakdown)[0] == doctest::Approx(1.0));
  CHECK_FALSE(pattern_breakdown(u, Platform::GP).has_value());

  auto pref = preferred_platform(u);
  REQUIRE(pref.has_value());
  CHECK(pref->platform == Platform::FB);
  CHECK_FALSE(pref->tie);
}

TEST_CASE("pattern breakdown fractions") {
  UserCrossStats u;
  u.pattern_counts = {7, 2, 0, 1};
  u.total_groups = 10;
  auto b = pattern_breakdown(u);
  REQUIRE(b.has_value());
  CHECK((*b)[0] == doctest::Approx(0.7));
  CHECK((*b)[1] == doctest::Approx(0.2));
  CHECK((*b)[2] == doctest::Approx(0.0));
  CHECK((*b)[3] == doctest::Approx(0.1));
  CHECK((*b)[0] + (*b)[1] + (*b)[2] + (*b)[3] == doctest::Approx(1.0).epsilon(1e-9));

  UserCrossStats empty;
  CHECK_FALSE(pattern_breakdown(empty).has_value());

  std::mt19937_64 rng(66);
  for (int iter = 0; iter < 200; ++iter) {
    UserCrossStats r;
    for (std::size_t i = 0; i < 4; ++i) {
      r.pattern_counts[i] = rng() % 20;
      r.total_groups += r.pattern_counts[i];
      for (std::size_t o = 0; o < 3; ++o) {
        r.pattern_counts_by_origin[o][i] = rng() % 10;
      }
    }
    if (auto overall = pattern_breakdown(r)) {
      double sum = (*overall)[0] + (*overall)[1] + (*overall)[2] + (*overall)[3];
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    }
    for (Platform p : kPlatforms) {
      if (auto cond = pattern_breakdown(r, p)) {
        double sum = (*cond)[0] + (*cond)[1] + (*cond)[2] + (*cond)[3];
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("preferred platform plurality with fixed tie-break") {
  UserCrossStats u;
  u.origin_counts = {10, 6, 4};
  CHECK(preferred_platform(u)->platform == Platform::FB);
  CHECK_FALSE(preferred_platform(u)->tie);

  u.origin_counts = {0, 0, 1};
  CHECK(preferred_platform(u)->platform == Platform::TW);

  u.origin_counts = {3, 0, 3};
  auto tied = preferred_platform(u);
  CHECK(tied->platform == Platform::FB);
  CHECK(tied->tie);

  u.origin_counts = {0, 0, 0};
  CHECK_FALSE(preferred_platform(u).has_value());

  // plurality is scale free
  std::mt19937_64 rng(77);
  for (int iter = 0; iter < 200; ++iter) {
    UserCrossStats a;
    for (auto& c : a.origin_counts) c = rng() % 20;
    if (a.origin_total() == 0) continue;
    UserCrossStats b = a;
    std::size_t m = 1 + rng() % 9;
    for (auto& c : b.origin_counts) c *= m;
    CHECK(preferred_platform(a)->platform == preferred_platform(b)->platform);
    CHECK(preferred_platform(a)->tie == preferred_platform(b)->tie);
  }
}

TEST_CASE("preference groups thresholds") {
  std::vector<UserCrossStats> users(4);
  users[0].author_id = "eighty";
  users[0].origin_counts = {17, 2, 1};  // 85% fb
  users[1].author_id = "agnostic";
  users[1].origin_counts = {8, 7, 5};  // max 40%
  users[2].author_id = "always";
  users[2].origin_counts = {0, 0, 9};  // 100% tw
  users[3].author_id = "silent";
  users[3].origin_counts = {0, 0, 0};

  auto g = preference_groups(users);
  REQUIRE(g.strong80[0].size() == 1);
  CHECK(g.strong80[0][0]->author_id == "eighty");
  CHECK(g.strong100[0].empty());
  REQUIRE(g.agnostic.size() == 1);
  CHECK(g.agnostic[0]->author_id == "agnostic");
  REQUIRE(g.strong100[2].size() == 1);
  CHECK(g.strong100[2][0]->author_id == "always");
  CHECK(g.strong80[2].size() == 1);  // strong-100 users sit inside strong-80
  CHECK(g.unclassified == 1);
  CHECK(g.classified == 3);

  // exactly 80% qualifies, just below does not
  UserCrossStats edge;
  edge.origin_counts = {4, 1, 0};
  auto ge = preference_groups(std::vector<UserCrossStats>{edge});
  CHECK(ge.strong80[0].size() == 1);
  edge.origin_counts = {79, 21, 0};
  ge = preference_groups(std::vector<UserCrossStats>{edge});
  CHECK(ge.strong80[0].empty());
}

TEST_CASE("interval groups: automatic rule and clustering") {
  auto user_with = [](const std::string& id, std::vector<std::int64_t> intervals) {
    UserCrossStats u;
    u.author_id = id;
    u.fbtw_intervals = std::move(intervals);
    return u;
  };
  std::vector<UserCrossStats> users;
  users.push_back(user_with("auto", {3, 5, 4000}));       // 2/3 below 10s
  users.push_back(user_with("half", {3, 4000}));          // exactly 1/2, not automatic
  users.push_back(user_with("q1", {60}));
  users.push_back(user_with("q2", {70}));
  users.push_back(user_with("m1", {7200}));
  users.push_back(user_with("m2", {7300}));
  users.push_back(user_with("s1", {86400}));
  users.push_back(user_with("skip", {}));  // no fb-tw groups at all

  auto g = interval_groups(users, 10.0, 0.5, 3);
  REQUIRE(g.automatic.size() == 1);
  CHECK(g.automatic[0]->author_id == "auto");
  REQUIRE(g.clusters.size() == 3);
  CHECK(g.clusters[0].label == "Quick");
  CHECK(g.clusters[1].label == "Moderate");
  CHECK(g.clusters[2].label == "Slow");
  // "half" has median ~2001.5 and joins the quick side of the gap
  CHECK(g.clusters[0].members.size() + g.clusters[1].members.size() +
            g.clusters[2].members.size() ==
        6);
  CHECK(g.clusters[2].members.size() == 1);
  CHECK(g.clusters[2].max_median == doctest::Approx(86400.0));

  std::vector<UserCrossStats> few;
  few.push_back(user_with("a", {100}));
  few.push_back(user_with("b", {200}));
  CHECK_THROWS_AS(interval_groups(few, 10.0, 0.5, 3), config_error);
}

TEST_CASE("content type distribution averages per-user fractions") {
  UserCrossStats one;
  one.fbtw_content_counts = {1, 1, 2, 0};  // text, link, photo, photo
  std::vector<const UserCrossStats*> single = {&one};
  auto d = content_type_distribution(single);
  CHECK(d.users_counted == 1);
  CHECK(d.avg[0] == doctest::Approx(0.25));
  CHECK(d.avg[1] == doctest::Approx(0.25));
  CHECK(d.avg[2] == doctest::Approx(0.5));
  CHECK(d.avg[3] == doctest::Approx(0.0));

  UserCrossStats a, b;
  a.fbtw_content_counts = {3, 0, 0, 0};
  b.fbtw_content_counts = {0, 7, 0, 0};
  std::vector<const UserCrossStats*> both = {&a, &b};
  d = content_type_distribution(both);
  CHECK(d.avg[0] == doctest::Approx(0.5));  // unweighted mean of user fractions
  CHECK(d.avg[1] == doctest::Approx(0.5));

  UserCrossStats unknown_only;
  unknown_only.fbtw_content_unknown = 2;
  std::vector<const UserCrossStats*> skip = {&unknown_only};
  d = content_type_distribution(skip);
  CHECK(d.users_counted == 0);
  CHECK(d.users_excluded == 1);
  CHECK(d.unknown_posts == 2);
}

TEST_CASE("url site distribution averages per-user fractions") {
  UserCrossStats one;
  one.fbtw_url_counts = {0, 0, 0, 1, 2};  // instagram once, other twice
  std::vector<const UserCrossStats*> single = {&one};
  auto d = url_site_distribution(single);
  CHECK(d.users_counted == 1);
  CHECK(d.avg[3] == doctest::Approx(1.0 / 3.0));
  CHECK(d.avg[4] == doctest::Approx(2.0 / 3.0));

  UserCrossStats empty;
  std::vector<const UserCrossStats*> none = {&empty};
  d = url_site_distribution(none);
  CHECK(d.users_counted == 0);
  CHECK(d.users_excluded == 1);
}

TEST_CASE("engagement comparisons pair non-cross means with origin means") {
  std::vector<Post> posts;
  posts.push_back(make_post(Platform::FB, "u", "f1", 100, "same text", ContentType::Text,
                            100, 10, 50));
  posts.push_back(make_post(Platform::FB, "u", "f2", 200, "aa", ContentType::Text, 10, 1, 4));
  posts.push_back(make_post(Platform::FB, "u", "f3", 300, "bb", ContentType::Text, 30, 3, 6));
  posts.push_back(make_post(Platform::TW, "u", "t1", 150, "same text", ContentType::Text,
                            40, 0, 8));
  posts.push_back(make_post(Platform::TW, "u", "t2", 400, "cc", ContentType::Text, 12, 0, 2));
  auto corpus = corpus::Corpus::build(std::move(posts));

  pairing::MatchSet ms;
  ms.groups.push_back(make_group("u", {{Platform::FB, "f1", 100}, {Platform::TW, "t1", 150}}));
  ms.rebuild_member_index();

  auto cmps = engagement_comparisons(corpus, ms);
  CHECK(cmps.size() == 8);  // no (tw, comments) series

  for (const auto& cmp : cmps) {
    if (cmp.platform == Platform::FB && cmp.reaction == Reaction::Likes) {
      REQUIRE(cmp.points.size() == 1);
      CHECK(cmp.points[0].x == doctest::Approx(20.0));   // mean of 10 and 30
      CHECK(cmp.points[0].y == doctest::Approx(100.0));  // origin member f1
      CHECK(*cmp.slope == doctest::Approx(5.0));
    }
    if (cmp.platform == Platform::TW && cmp.reaction == Reaction::Likes) {
      // t1 is cross but tw-originated nowhere: y undefined, user excluded
      CHECK(cmp.points.empty());
      CHECK(cmp.users_excluded == 1);
      CHECK_FALSE(cmp.slope.has_value());
    }
    if (cmp.platform == Platform::GP) {
      CHECK(cmp.points.empty());
      CHECK(cmp.users_excluded == 0);  // no gp posts at all, nobody to exclude
    }
  }
}

TEST_CASE("simultaneous groups count in overall stats but never in origin stats") {
  std::vector<Post> posts;
  posts.push_back(make_post(Platform::FB, "u", "f1", 100, "same text"));
  posts.push_back(make_post(Platform::TW, "u", "t1", 100, "same text"));
  auto corpus = corpus::Corpus::build(std::move(posts));

  pairing::MatchSet ms;
  ms.groups.push_back(make_group("u", {{Platform::FB, "f1", 100}, {Platform::TW, "t1", 100}}));
  ms.rebuild_member_index();
  REQUIRE(ms.groups[0].origin == pairing::Origin::Simultaneous);

  UrlResolver resolver;
  auto stats = build_user_stats(corpus, ms, resolver);
  const UserCrossStats& u = stats[0];
  CHECK(u.total_groups == 1);
  CHECK(u.pattern_counts[0] == 1);
  CHECK(u.simultaneous_groups == 1);
  CHECK(u.origin_total() == 0);
  CHECK_FALSE(preferred_platform(u).has_value());
  CHECK(pattern_breakdown(u).has_value());               // overall includes it
  CHECK_FALSE(pattern_breakdown(u, Platform::FB).has_value());  // conditioned excludes

  auto cmps = engagement_comparisons(corpus, ms);
  for (const auto& cmp : cmps) CHECK(cmp.points.empty());
}
