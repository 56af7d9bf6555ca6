#include "crosspost/pairing.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <numeric>
#include <thread>
#include <tuple>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "crosspost/errors.hpp"

namespace crosspost::pairing {

namespace {

using nlohmann::json;

constexpr std::int64_t kSecondsPerDay = 86400;

std::string member_key(Platform p, std::string_view post_id) {
  std::string k(platform_name(p));
  k.push_back('/');
  k.append(post_id);
  return k;
}

Pattern pattern_for(bool fb, bool gp, bool tw) {
  if (fb && gp && tw) return Pattern::FB_TW_GP;
  if (fb && tw) return Pattern::FB_TW;
  if (fb && gp) return Pattern::FB_GP;
  return Pattern::TW_GP;
}

// Greedy acceptance order: most similar first, then closest in time, then ids.
bool better_match(const MatchRecord& x, const MatchRecord& y) {
  double mx = x.verdict.mean_score();
  double my = y.verdict.mean_score();
  if (mx != my) return mx > my;
  if (x.interval_seconds != y.interval_seconds) return x.interval_seconds < y.interval_seconds;
  if (x.post_id_a != y.post_id_a) return x.post_id_a < y.post_id_a;
  return x.post_id_b < y.post_id_b;
}

struct Dsu {
  std::vector<std::size_t> parent;

  explicit Dsu(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::string_view pattern_name(Pattern p) {
  switch (p) {
    case Pattern::FB_TW: return "fb-tw";
    case Pattern::FB_GP: return "fb-gp";
    case Pattern::TW_GP: return "tw-gp";
    case Pattern::FB_TW_GP: return "fb-tw-gp";
  }
  return "fb-tw";
}

std::optional<Pattern> pattern_from_string(std::string_view s) {
  if (s == "fb-tw") return Pattern::FB_TW;
  if (s == "fb-gp") return Pattern::FB_GP;
  if (s == "tw-gp") return Pattern::TW_GP;
  if (s == "fb-tw-gp") return Pattern::FB_TW_GP;
  return std::nullopt;
}

std::string_view origin_name(Origin o) {
  switch (o) {
    case Origin::FB: return "fb";
    case Origin::GP: return "gp";
    case Origin::TW: return "tw";
    case Origin::Simultaneous: return "simultaneous";
  }
  return "fb";
}

std::optional<Origin> origin_from_string(std::string_view s) {
  if (s == "fb") return Origin::FB;
  if (s == "gp") return Origin::GP;
  if (s == "tw") return Origin::TW;
  if (s == "simultaneous") return Origin::Simultaneous;
  return std::nullopt;
}

std::vector<CandidatePair> generate_candidates(const corpus::Corpus& corpus,
                                               std::string_view author, int window_days) {
  if (window_days < 1) {
    throw config_error("window_days must be >= 1, got " + std::to_string(window_days));
  }
  if (!corpus.has_author(author)) {
    throw std::invalid_argument("unknown author " + std::string(author));
  }
  const std::int64_t window = static_cast<std::int64_t>(window_days) * kSecondsPerDay;
  std::vector<CandidatePair> out;
  for (std::size_t xi = 0; xi < kPlatforms.size(); ++xi) {
    auto xs = corpus.posts_of(author, kPlatforms[xi]);
    if (xs.empty()) continue;
    for (std::size_t yi = xi + 1; yi < kPlatforms.size(); ++yi) {
      auto ys = corpus.posts_of(author, kPlatforms[yi]);
      if (ys.empty()) continue;
      for (const Post& pa : xs) {
        auto lo = std::lower_bound(ys.begin(), ys.end(), pa.timestamp - window,
                                   [](const Post& p, std::int64_t t) { return p.timestamp < t; });
        auto hi = std::upper_bound(ys.begin(), ys.end(), pa.timestamp + window,
                                   [](std::int64_t t, const Post& p) { return t < p.timestamp; });
        for (auto it = lo; it != hi; ++it) {
          out.push_back({&pa, &*it});
        }
      }
    }
  }
  return out;
}

std::vector<MatchRecord> match_author(std::span<const CandidatePair> candidates,
                                      double threshold) {
  std::unordered_map<const Post*, textnorm::NormalizedText> norms;
  auto normalized = [&](const Post* p) -> const textnorm::NormalizedText& {
    auto it = norms.find(p);
    if (it == norms.end()) {
      it = norms.emplace(p, textnorm::normalize(p->text)).first;
    }
    return it->second;
  };

  std::vector<MatchRecord> positives;
  for (const CandidatePair& c : candidates) {
    auto verdict = similarity::classify(normalized(c.a), normalized(c.b), threshold);
    if (!verdict.is_cross) continue;
    MatchRecord m;
    m.author_id = c.a->author_id;
    m.platform_a = c.a->platform;
    m.post_id_a = c.a->post_id;
    m.ts_a = c.a->timestamp;
    m.platform_b = c.b->platform;
    m.post_id_b = c.b->post_id;
    m.ts_b = c.b->timestamp;
    m.verdict = verdict;
    m.interval_seconds = c.interval_seconds();
    positives.push_back(std::move(m));
  }
  std::sort(positives.begin(), positives.end(), better_match);

  // matched[post key] marks the opposite platforms this post is already paired with.
  std::unordered_map<std::string, std::array<bool, 3>> matched;
  std::vector<MatchRecord> accepted;
  for (MatchRecord& m : positives) {
    auto& fa = matched[member_key(m.platform_a, m.post_id_a)];
    auto& fb = matched[member_key(m.platform_b, m.post_id_b)];
    if (fa[static_cast<std::size_t>(m.platform_b)] || fb[static_cast<std::size_t>(m.platform_a)]) {
      continue;
    }
    fa[static_cast<std::size_t>(m.platform_b)] = true;
    fb[static_cast<std::size_t>(m.platform_a)] = true;
    accepted.push_back(std::move(m));
  }
  return accepted;
}

double CrossPostGroup::mean_similarity() const {
  if (edges.empty()) return 0.0;
  double s = 0.0;
  for (const GroupEdge& e : edges) s += e.mean_score();
  return s / static_cast<double>(edges.size());
}

const GroupMember* CrossPostGroup::member_on(Platform p) const {
  for (const GroupMember& m : members) {
    if (m.platform == p) return &m;
  }
  return nullptr;
}

std::optional<std::int64_t> CrossPostGroup::interval_between(Platform x, Platform y) const {
  const GroupMember* a = member_on(x);
  const GroupMember* b = member_on(y);
  if (a == nullptr || b == nullptr) return std::nullopt;
  return a->timestamp >= b->timestamp ? a->timestamp - b->timestamp
                                      : b->timestamp - a->timestamp;
}

Origin attribute_origin(const CrossPostGroup& group) {
  std::int64_t min_ts = group.members.front().timestamp;
  for (const GroupMember& m : group.members) min_ts = std::min(min_ts, m.timestamp);
  int at_min = 0;
  Platform earliest = group.members.front().platform;
  for (const GroupMember& m : group.members) {
    if (m.timestamp == min_ts) {
      ++at_min;
      earliest = m.platform;
    }
  }
  if (at_min >= 2) return Origin::Simultaneous;
  for (const GroupMember& m : group.members) {
    if (m.timestamp == min_ts) return origin_of(m.platform);
  }
  return origin_of(earliest);
}

std::vector<CrossPostGroup> build_groups(std::span<const MatchRecord> matches,
                                         std::size_t* dropped_edges) {
  struct Node {
    Platform platform;
    std::string post_id;
    std::int64_t timestamp;
  };
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> node_of;
  auto intern = [&](Platform p, const std::string& id, std::int64_t ts) {
    auto [it, inserted] = node_of.try_emplace(member_key(p, id), nodes.size());
    if (inserted) nodes.push_back({p, id, ts});
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> endpoints(matches.size());
  for (std::size_t i = 0; i < matches.size(); ++i) {
    endpoints[i] = {intern(matches[i].platform_a, matches[i].post_id_a, matches[i].ts_a),
                    intern(matches[i].platform_b, matches[i].post_id_b, matches[i].ts_b)};
  }

  std::vector<CrossPostGroup> groups;
  std::vector<std::vector<std::size_t>> work;
  {
    Dsu dsu(nodes.size());
    for (const auto& [a, b] : endpoints) dsu.unite(a, b);
    std::map<std::size_t, std::vector<std::size_t>> comps;
    for (std::size_t i = 0; i < matches.size(); ++i) {
      comps[dsu.find(endpoints[i].first)].push_back(i);
    }
    for (auto& [root, edges] : comps) work.push_back(std::move(edges));
  }

  while (!work.empty()) {
    std::vector<std::size_t> edges = std::move(work.back());
    work.pop_back();
    if (edges.empty()) continue;

    std::vector<std::size_t> comp_nodes;
    for (std::size_t e : edges) {
      comp_nodes.push_back(endpoints[e].first);
      comp_nodes.push_back(endpoints[e].second);
    }
    std::sort(comp_nodes.begin(), comp_nodes.end());
    comp_nodes.erase(std::unique(comp_nodes.begin(), comp_nodes.end()), comp_nodes.end());

    std::array<int, 3> per_platform{};
    for (std::size_t n : comp_nodes) ++per_platform[static_cast<std::size_t>(nodes[n].platform)];

    if (per_platform[0] > 1 || per_platform[1] > 1 || per_platform[2] > 1) {
      // Over-merged component (a chain landed two posts on one platform):
      // drop the weakest edge and re-split what remains.
      std::sort(edges.begin(), edges.end(), [&](std::size_t x, std::size_t y) {
        return better_match(matches[x], matches[y]);
      });
      edges.pop_back();
      if (dropped_edges != nullptr) ++*dropped_edges;
      if (edges.empty()) continue;
      Dsu dsu(nodes.size());
      for (std::size_t e : edges) dsu.unite(endpoints[e].first, endpoints[e].second);
      std::map<std::size_t, std::vector<std::size_t>> comps;
      for (std::size_t e : edges) comps[dsu.find(endpoints[e].first)].push_back(e);
      for (auto& [root, sub] : comps) work.push_back(std::move(sub));
      continue;
    }

    CrossPostGroup g;
    g.author_id = matches[edges.front()].author_id;
    for (std::size_t n : comp_nodes) {
      g.members.push_back({nodes[n].platform, nodes[n].post_id, nodes[n].timestamp});
    }
    std::sort(g.members.begin(), g.members.end(), [](const GroupMember& a, const GroupMember& b) {
      return std::tie(a.platform, a.post_id) < std::tie(b.platform, b.post_id);
    });
    g.pattern = pattern_for(per_platform[0] > 0, per_platform[1] > 0, per_platform[2] > 0);
    g.first_timestamp = g.members.front().timestamp;
    for (const GroupMember& m : g.members) {
      g.first_timestamp = std::min(g.first_timestamp, m.timestamp);
    }
    std::sort(edges.begin(), edges.end(), [&](std::size_t x, std::size_t y) {
      return std::tie(matches[x].platform_a, matches[x].platform_b) <
             std::tie(matches[y].platform_a, matches[y].platform_b);
    });
    for (std::size_t e : edges) {
      const MatchRecord& m = matches[e];
      g.edges.push_back({m.platform_a, m.platform_b, m.verdict.stage1_match, m.verdict.cosine,
                         m.verdict.string_sim});
    }
    g.origin = attribute_origin(g);
    groups.push_back(std::move(g));
  }

  std::sort(groups.begin(), groups.end(), [](const CrossPostGroup& a, const CrossPostGroup& b) {
    auto key = [](const CrossPostGroup& g) {
      return std::tie(g.first_timestamp, g.members.front().platform, g.members.front().post_id);
    };
    return key(a) < key(b);
  });
  return groups;
}

bool MatchSet::is_cross(Platform platform, std::string_view post_id) const {
  return member_keys_.contains(member_key(platform, post_id));
}

void MatchSet::rebuild_member_index() {
  member_keys_.clear();
  for (const CrossPostGroup& g : groups) {
    for (const GroupMember& m : g.members) {
      member_keys_.insert(member_key(m.platform, m.post_id));
    }
  }
}

MatchSet detect(const corpus::Corpus& corpus, const DetectOptions& options) {
  if (!(options.threshold > 0.0 && options.threshold < 1.0)) {
    throw config_error("threshold must lie in (0,1)");
  }
  if (options.window_days < 1) throw config_error("window_days must be >= 1");
  if (options.jobs < 1) throw config_error("jobs must be >= 1");

  const auto& authors = corpus.authors();
  struct AuthorResult {
    std::vector<MatchRecord> matches;
    std::vector<CrossPostGroup> groups;
    std::size_t candidates = 0;
    std::size_t dropped = 0;
  };
  std::vector<AuthorResult> results(authors.size());

  auto run_author = [&](std::size_t i) {
    auto candidates = generate_candidates(corpus, authors[i], options.window_days);
    AuthorResult& r = results[i];
    r.candidates = candidates.size();
    r.matches = match_author(candidates, options.threshold);
    r.groups = build_groups(r.matches, &r.dropped);
  };

  const std::size_t jobs =
      std::min<std::size_t>(static_cast<std::size_t>(options.jobs), std::max<std::size_t>(authors.size(), 1));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < authors.size(); ++i) run_author(i);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (std::size_t t = 0; t < jobs; ++t) {
      pool.emplace_back([&, t] {
        for (std::size_t i = t; i < authors.size(); i += jobs) run_author(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  MatchSet ms;
  for (AuthorResult& r : results) {
    ms.stats.candidates += r.candidates;
    ms.stats.positives += r.matches.size();
    ms.stats.dropped_edges += r.dropped;
    std::move(r.matches.begin(), r.matches.end(), std::back_inserter(ms.matches));
    std::move(r.groups.begin(), r.groups.end(), std::back_inserter(ms.groups));
  }
  ms.rebuild_member_index();
  return ms;
}

void write_matchset(const MatchSet& ms, std::ostream& out) {
  for (const CrossPostGroup& g : ms.groups) {
    json members = json::array();
    for (const GroupMember& m : g.members) {
      members.push_back({{"platform", std::string(platform_name(m.platform))},
                         {"post_id", m.post_id},
                         {"timestamp", m.timestamp}});
    }
    json scores = json::array();
    for (const GroupEdge& e : g.edges) {
      scores.push_back({{"a", std::string(platform_name(e.platform_a))},
                        {"b", std::string(platform_name(e.platform_b))},
                        {"stage1", e.stage1},
                        {"cosine", e.cosine},
                        {"string_sim", e.string_sim}});
    }
    json j;
    j["author_id"] = g.author_id;
    j["members"] = std::move(members);
    j["pattern"] = std::string(pattern_name(g.pattern));
    j["origin"] = std::string(origin_name(g.origin));
    j["scores"] = std::move(scores);
    out << j.dump() << '\n';
  }
}

void save_matchset(const MatchSet& ms, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  write_matchset(ms, out);
  out.flush();
  if (!out) throw io_error("write failure on " + path.string());
}

MatchSet load_matchset(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open matchset file " + path.string());
  MatchSet ms;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string where = path.string() + ":" + std::to_string(line_no);
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw format_error(where + ": invalid JSON: " + e.what());
    }
    try {
      CrossPostGroup g;
      g.author_id = j.at("author_id").get<std::string>();
      for (const json& mj : j.at("members")) {
        GroupMember m;
        auto p = platform_from_string(mj.at("platform").get_ref<const std::string&>());
        if (!p) throw format_error(where + ": bad platform");
        m.platform = *p;
        m.post_id = mj.at("post_id").get<std::string>();
        m.timestamp = mj.at("timestamp").get<std::int64_t>();
        g.members.push_back(std::move(m));
      }
      if (g.members.size() < 2 || g.members.size() > 3) {
        throw format_error(where + ": group must have 2 or 3 members");
      }
      auto pattern = pattern_from_string(j.at("pattern").get_ref<const std::string&>());
      auto origin = origin_from_string(j.at("origin").get_ref<const std::string&>());
      if (!pattern || !origin) throw format_error(where + ": bad pattern or origin");
      g.pattern = *pattern;
      g.origin = *origin;
      g.first_timestamp = g.members.front().timestamp;
      for (const GroupMember& m : g.members) {
        g.first_timestamp = std::min(g.first_timestamp, m.timestamp);
      }
      for (const json& sj : j.at("scores")) {
        GroupEdge e;
        auto pa = platform_from_string(sj.at("a").get_ref<const std::string&>());
        auto pb = platform_from_string(sj.at("b").get_ref<const std::string&>());
        if (!pa || !pb) throw format_error(where + ": bad score platforms");
        e.platform_a = *pa;
        e.platform_b = *pb;
        e.stage1 = sj.at("stage1").get<bool>();
        e.cosine = sj.at("cosine").get<double>();
        e.string_sim = sj.at("string_sim").get<double>();
        g.edges.push_back(e);
      }
      ms.groups.push_back(std::move(g));
    } catch (const json::exception& e) {
      throw format_error(where + ": " + e.what());
    }
  }
  if (in.bad()) throw io_error("read failure on " + path.string());
  ms.rebuild_member_index();
  return ms;
}

void verify_consistency(const corpus::Corpus& corpus, const MatchSet& ms) {
  std::unordered_map<std::string, const Post*> by_key;
  by_key.reserve(corpus.posts().size());
  for (const Post& p : corpus.posts()) {
    by_key.emplace(member_key(p.platform, p.post_id), &p);
  }
  for (const CrossPostGroup& g : ms.groups) {
    for (const GroupMember& m : g.members) {
      auto it = by_key.find(member_key(m.platform, m.post_id));
      if (it == by_key.end()) {
        throw consistency_error("matchset references missing post " +
                                member_key(m.platform, m.post_id));
      }
      if (it->second->timestamp != m.timestamp || it->second->author_id != g.author_id) {
        throw consistency_error("matchset disagrees with corpus on post " +
                                member_key(m.platform, m.post_id));
      }
    }
  }
}

}  // namespace crosspost::pairing
