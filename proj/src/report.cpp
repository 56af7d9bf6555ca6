#include "crosspost/report.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "crosspost/errors.hpp"

namespace crosspost::report {

namespace {

using analytics::UserCrossStats;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string fmt_pct(std::size_t num, std::size_t den) {
  if (den == 0) return "-";
  return fmt(100.0 * static_cast<double>(num) / static_cast<double>(den));
}

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& dir, std::string name, std::string header,
            std::vector<CsvFile>* files)
      : name_(std::move(name)), files_(files), out_(dir / name_) {
    if (!out_) throw io_error("cannot open " + (dir / name_).string() + " for writing");
    out_ << header << '\n';
  }

  void row(const std::string& line) {
    out_ << line << '\n';
    ++rows_;
  }

  ~CsvWriter() {
    out_.flush();
    files_->push_back({name_, rows_});
  }

 private:
  std::string name_;
  std::vector<CsvFile>* files_;
  std::ofstream out_;
  std::size_t rows_ = 0;
};

void write_ecdf_file(const std::filesystem::path& dir, const std::string& name,
                     std::vector<double> values, std::vector<CsvFile>* files) {
  CsvWriter w(dir, name, "value,fraction", files);
  if (values.empty()) return;
  for (const auto& [value, fraction] : analytics::ecdf(std::move(values))) {
    w.row(fmt(value) + "," + fmt(fraction));
  }
}

const char* pattern_file_tag(pairing::Pattern p) {
  switch (p) {
    case pairing::Pattern::FB_TW: return "fbtw";
    case pairing::Pattern::FB_GP: return "fbgp";
    case pairing::Pattern::TW_GP: return "twgp";
    case pairing::Pattern::FB_TW_GP: return "fbtwgp";
  }
  return "fbtw";
}

bool pattern_contains(pairing::Pattern p, Platform plat) {
  switch (p) {
    case pairing::Pattern::FB_TW: return plat != Platform::GP;
    case pairing::Pattern::FB_GP: return plat != Platform::TW;
    case pairing::Pattern::TW_GP: return plat != Platform::FB;
    case pairing::Pattern::FB_TW_GP: return true;
  }
  return false;
}

std::optional<double> mean_fbtw_similarity(const UserCrossStats& u) {
  if (u.fbtw_similarities.empty()) return std::nullopt;
  double s = 0;
  for (double v : u.fbtw_similarities) s += v;
  return s / static_cast<double>(u.fbtw_similarities.size());
}

}  // namespace

std::string corpus_digest(const corpus::Corpus& corpus) {
  std::ostringstream ss;
  corpus::write_corpus(corpus, ss);
  std::string bytes = ss.str();
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string detect_summary(const corpus::Corpus& corpus, const pairing::MatchSet& ms) {
  std::ostringstream out;
  std::array<std::size_t, 3> posts{};
  std::array<std::size_t, 3> users{};
  for (const std::string& author : corpus.authors()) {
    for (Platform p : kPlatforms) {
      auto span = corpus.posts_of(author, p);
      posts[static_cast<std::size_t>(p)] += span.size();
      if (!span.empty()) ++users[static_cast<std::size_t>(p)];
    }
  }
  out << "dataset\n  osn  users  posts  avg_posts_per_user\n";
  for (Platform p : kPlatforms) {
    std::size_t i = static_cast<std::size_t>(p);
    double avg = users[i] == 0 ? 0.0
                               : static_cast<double>(posts[i]) / static_cast<double>(users[i]);
    out << "  " << platform_name(p) << "   " << users[i] << "  " << posts[i] << "  "
        << fmt(avg) << "\n";
  }

  std::array<std::size_t, 4> pattern_groups{};
  std::array<std::array<std::size_t, 4>, 4> origin_by_pattern{};
  for (const pairing::CrossPostGroup& g : ms.groups) {
    std::size_t p = static_cast<std::size_t>(g.pattern);
    ++pattern_groups[p];
    ++origin_by_pattern[p][static_cast<std::size_t>(g.origin)];
  }
  out << "groups: " << ms.groups.size() << " (from " << ms.matches.size() << " matches, "
      << ms.stats.candidates << " candidates";
  if (ms.stats.dropped_edges > 0) out << ", " << ms.stats.dropped_edges << " edges dropped";
  out << ")\n";
  out << "  pattern   groups  %groups  %fb_1st  %gp_1st  %tw_1st  %same_time\n";
  for (pairing::Pattern p : pairing::kPatterns) {
    std::size_t i = static_cast<std::size_t>(p);
    out << "  " << pairing::pattern_name(p) << "  " << pattern_groups[i] << "  "
        << fmt_pct(pattern_groups[i], ms.groups.size());
    for (std::size_t o = 0; o < 4; ++o) {
      out << "  " << fmt_pct(origin_by_pattern[i][o], pattern_groups[i]);
    }
    out << "\n";
  }
  return out.str();
}

void write_matchset_meta(const std::filesystem::path& matchset_path,
                         const corpus::Corpus& corpus, double threshold, int window_days) {
  nlohmann::json j;
  j["corpus_digest"] = corpus_digest(corpus);
  j["threshold"] = threshold;
  j["window_days"] = window_days;
  std::filesystem::path p = matchset_path;
  p += ".meta.json";
  std::ofstream out(p);
  if (!out) throw io_error("cannot open " + p.string() + " for writing");
  out << j.dump(2) << '\n';
}

std::string read_matchset_meta_digest(const std::filesystem::path& matchset_path) {
  std::filesystem::path p = matchset_path;
  p += ".meta.json";
  std::ifstream in(p);
  if (!in) return "";
  try {
    nlohmann::json j = nlohmann::json::parse(in);
    return j.value("corpus_digest", "");
  } catch (const nlohmann::json::exception&) {
    throw format_error("malformed matchset meta file " + p.string());
  }
}

AnalyzeResult write_analysis(const corpus::Corpus& corpus, const pairing::MatchSet& ms,
                             const analytics::UrlResolver& resolver,
                             const std::filesystem::path& out_dir,
                             const AnalyzeOptions& options) {
  std::filesystem::create_directories(out_dir);
  AnalyzeResult result;
  auto* files = &result.files;

  analytics::StatsOptions stats_options;
  stats_options.strict_urls = options.strict_urls;
  std::vector<UserCrossStats> stats = analytics::build_user_stats(corpus, ms, resolver,
                                                                  stats_options);

  // Fig 1: per-user cross fractions.
  for (Platform p : kPlatforms) {
    std::vector<double> values;
    for (const UserCrossStats& u : stats) {
      if (auto f = u.cross_fraction(p)) values.push_back(*f);
    }
    write_ecdf_file(out_dir, std::string("ecdf_cross_fraction_") +
                                 std::string(platform_name(p)) + ".csv",
                    std::move(values), files);
  }

  // Fig 2: per-user overall pattern shares.
  for (pairing::Pattern p : pairing::kPatterns) {
    std::vector<double> values;
    for (const UserCrossStats& u : stats) {
      if (auto b = analytics::pattern_breakdown(u)) {
        values.push_back((*b)[static_cast<std::size_t>(p)]);
      }
    }
    write_ecdf_file(out_dir,
                    std::string("ecdf_pattern_share_") + pattern_file_tag(p) + ".csv",
                    std::move(values), files);
  }

  // Fig 3: origin-conditioned pattern shares (patterns containing the origin).
  for (Platform origin : kPlatforms) {
    for (pairing::Pattern p : pairing::kPatterns) {
      if (!pattern_contains(p, origin)) continue;
      std::vector<double> values;
      for (const UserCrossStats& u : stats) {
        if (auto b = analytics::pattern_breakdown(u, origin)) {
          values.push_back((*b)[static_cast<std::size_t>(p)]);
        }
      }
      write_ecdf_file(out_dir,
                      std::string("ecdf_pattern_share_origin_") +
                          std::string(platform_name(origin)) + "_" + pattern_file_tag(p) +
                          ".csv",
                      std::move(values), files);
    }
  }

  // Table IV shape.
  {
    std::array<std::size_t, 4> pattern_groups{};
    std::array<std::array<std::size_t, 4>, 4> origin_by_pattern{};
    for (const pairing::CrossPostGroup& g : ms.groups) {
      std::size_t p = static_cast<std::size_t>(g.pattern);
      ++pattern_groups[p];
      ++origin_by_pattern[p][static_cast<std::size_t>(g.origin)];
    }
    CsvWriter w(out_dir, "patterns.csv",
                "pattern,groups,pct_groups,pct_fb_first,pct_gp_first,pct_tw_first,"
                "pct_same_time",
                files);
    for (pairing::Pattern p : pairing::kPatterns) {
      std::size_t i = static_cast<std::size_t>(p);
      std::string row = std::string(pairing::pattern_name(p)) + "," +
                        std::to_string(pattern_groups[i]) + "," +
                        fmt_pct(pattern_groups[i], ms.groups.size());
      for (std::size_t o = 0; o < 4; ++o) {
        row += "," + fmt_pct(origin_by_pattern[i][o], pattern_groups[i]);
      }
      w.row(row);
    }
  }

  // Fig 4 data: engagement scatter plus y=ax slopes.
  {
    CsvWriter w(out_dir, "engagement.csv", "kind,platform,reaction,author_id,x,y", files);
    for (const auto& cmp : analytics::engagement_comparisons(corpus, ms)) {
      std::string prefix = std::string(platform_name(cmp.platform)) + "," +
                           std::string(analytics::reaction_name(cmp.reaction));
      for (const auto& pt : cmp.points) {
        w.row("point," + prefix + "," + pt.author_id + "," + fmt(pt.x) + "," + fmt(pt.y));
      }
      w.row("slope," + prefix + "," + (cmp.slope ? fmt(*cmp.slope) : std::string("-")) + ",");
    }
  }

  // Tables VI/VII shape: per-user preference rows.
  analytics::PreferenceGroups prefs = analytics::preference_groups(stats);
  {
    CsvWriter w(out_dir, "preference.csv",
                "author_id,origin_fb,origin_gp,origin_tw,simultaneous,preferred,tie,"
                "strong100,strong80,agnostic",
                files);
    for (const UserCrossStats& u : stats) {
      if (u.total_groups == 0) continue;
      auto pref = analytics::preferred_platform(u);
      std::string strong100;
      std::string strong80;
      std::size_t total = u.origin_total();
      for (std::size_t p = 0; p < 3 && total > 0; ++p) {
        if (u.origin_counts[p] == total) strong100 = platform_name(static_cast<Platform>(p));
        if (u.origin_counts[p] * 10 >= total * 8) {
          strong80 = platform_name(static_cast<Platform>(p));
        }
      }
      std::size_t max_c = std::max({u.origin_counts[0], u.origin_counts[1],
                                    u.origin_counts[2]});
      bool agnostic = total > 0 && max_c * 2 < total;
      w.row(u.author_id + "," + std::to_string(u.origin_counts[0]) + "," +
            std::to_string(u.origin_counts[1]) + "," + std::to_string(u.origin_counts[2]) +
            "," + std::to_string(u.simultaneous_groups) + "," +
            (pref ? std::string(platform_name(pref->platform)) : std::string("-")) + "," +
            (pref && pref->tie ? "1" : "0") + "," + strong100 + "," + strong80 + "," +
            (agnostic ? "1" : "0"));
    }
  }

  // Interval grouping (Table VIII shape). Clustering needs at least k users;
  // when the corpus is too small only the Automatic row is emitted.
  std::optional<analytics::IntervalGroups> intervals;
  std::string interval_note;
  try {
    intervals = analytics::interval_groups(stats, options.automatic_threshold_s,
                                           options.automatic_share, options.k);
  } catch (const config_error& e) {
    interval_note = e.what();
  }
  {
    CsvWriter w(out_dir, "interval_groups.csv",
                "group,users,avg_median_interval_s,max_median_interval_s", files);
    std::vector<const UserCrossStats*> automatic;
    if (intervals) {
      automatic = intervals->automatic;
    } else {
      for (const UserCrossStats& u : stats) {
        if (u.fbtw_intervals.empty()) continue;
        std::size_t below = 0;
        for (auto v : u.fbtw_intervals) {
          if (static_cast<double>(v) < options.automatic_threshold_s) ++below;
        }
        if (static_cast<double>(below) >
            options.automatic_share * static_cast<double>(u.fbtw_intervals.size())) {
          automatic.push_back(&u);
        }
      }
    }
    double sum = 0;
    double mx = 0;
    for (const UserCrossStats* u : automatic) {
      double m = *u->median_fbtw_interval();
      sum += m;
      mx = std::max(mx, m);
    }
    w.row("Automatic," + std::to_string(automatic.size()) + "," +
          (automatic.empty() ? "-" : fmt(sum / static_cast<double>(automatic.size()))) + "," +
          (automatic.empty() ? "-" : fmt(mx)));
    if (intervals) {
      for (const auto& cl : intervals->clusters) {
        w.row(cl.label + "," + std::to_string(cl.members.size()) + "," +
              fmt(cl.mean_median) + "," + fmt(cl.max_median));
      }
    }
  }

  // Behavioural profiles per user group (Figs 5/6 data).
  struct NamedGroup {
    std::string kind;
    std::string name;
    std::vector<const UserCrossStats*> members;
  };
  std::vector<NamedGroup> groups;
  groups.push_back({"preference", "fb_favourite", prefs.strong80[0]});
  groups.push_back({"preference", "tw_favourite", prefs.strong80[2]});
  groups.push_back({"preference", "agnostic", prefs.agnostic});
  if (intervals) {
    groups.push_back({"interval", "automatic", intervals->automatic});
    for (const auto& cl : intervals->clusters) {
      std::string lower = cl.label;
      for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      groups.push_back({"interval", lower, cl.members});
    }
  }

  for (const NamedGroup& g : groups) {
    std::vector<double> values;
    for (const UserCrossStats* u : g.members) {
      if (auto s = mean_fbtw_similarity(*u)) values.push_back(*s);
    }
    std::string tag = g.kind == "preference" ? "pref" : "interval";
    write_ecdf_file(out_dir, "ecdf_similarity_" + tag + "_" + g.name + ".csv",
                    std::move(values), files);
  }

  {
    CsvWriter w(out_dir, "content_types.csv",
                "group_kind,group,users,excluded,unknown_posts,text,link,photo,video", files);
    for (const NamedGroup& g : groups) {
      auto d = analytics::content_type_distribution(g.members);
      w.row(g.kind + "," + g.name + "," + std::to_string(d.users_counted) + "," +
            std::to_string(d.users_excluded) + "," + std::to_string(d.unknown_posts) + "," +
            fmt(d.avg[0]) + "," + fmt(d.avg[1]) + "," + fmt(d.avg[2]) + "," + fmt(d.avg[3]));
    }
  }
  {
    CsvWriter w(out_dir, "url_sites.csv",
                "group_kind,group,users,excluded,facebook,twitter,youtube,instagram,other",
                files);
    for (const NamedGroup& g : groups) {
      auto d = analytics::url_site_distribution(g.members);
      w.row(g.kind + "," + g.name + "," + std::to_string(d.users_counted) + "," +
            std::to_string(d.users_excluded) + "," + fmt(d.avg[0]) + "," + fmt(d.avg[1]) +
            "," + fmt(d.avg[2]) + "," + fmt(d.avg[3]) + "," + fmt(d.avg[4]));
    }
  }

  {
    std::ostringstream s;
    s << "authors: " << corpus.authors().size() << ", groups: " << ms.groups.size() << "\n";
    s << "preference groups: fb_favourite " << prefs.strong80[0].size() << ", tw_favourite "
      << prefs.strong80[2].size() << ", agnostic " << prefs.agnostic.size()
      << " (classified " << prefs.classified << ", no qualifying origin " << prefs.unclassified
      << ")\n";
    if (intervals) {
      s << "interval groups: automatic " << intervals->automatic.size();
      for (const auto& cl : intervals->clusters) {
        s << ", " << cl.label << " " << cl.members.size() << " (avg "
          << fmt(cl.mean_median) << " s)";
      }
      s << "\n";
    } else if (!interval_note.empty()) {
      s << "interval clustering skipped: " << interval_note << "\n";
    }
    result.summary = s.str();
  }

  {
    std::vector<CsvFile> listed = *files;
    CsvWriter w(out_dir, "manifest.csv", "file,rows", files);
    for (const CsvFile& f : listed) w.row(f.name + "," + std::to_string(f.rows));
  }
  return result;
}

}  // namespace crosspost::report
