#include "crosspost/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "crosspost/errors.hpp"
#include "crosspost/textnorm.hpp"

namespace crosspost::corpus {

namespace {

using nlohmann::json;

std::string dup_key(Platform p, std::string_view post_id) {
  std::string k(platform_name(p));
  k.push_back('/');
  k.append(post_id);
  return k;
}

std::int64_t require_count(const json& j, const char* field, std::string_view where) {
  if (!j.is_number()) {
    throw format_error(std::string(where) + ": engagement." + field + " must be a number");
  }
  double v = j.get<double>();
  if (v < 0 || std::floor(v) != v) {
    throw format_error(std::string(where) + ": engagement." + field +
                       " must be a non-negative integer");
  }
  return static_cast<std::int64_t>(v);
}

Post parse_record(const std::string& line, std::string_view where) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::parse_error& e) {
    throw format_error(std::string(where) + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw format_error(std::string(where) + ": record is not an object");

  auto require = [&](const char* field) -> const json& {
    auto it = j.find(field);
    if (it == j.end()) {
      throw format_error(std::string(where) + ": missing field `" + field + "`");
    }
    return *it;
  };

  Post p;
  {
    const json& v = require("platform");
    if (!v.is_string()) throw format_error(std::string(where) + ": platform must be a string");
    auto plat = platform_from_string(v.get_ref<const std::string&>());
    if (!plat) {
      throw format_error(std::string(where) + ": unknown platform `" +
                         v.get_ref<const std::string&>() + "`");
    }
    p.platform = *plat;
  }
  {
    const json& v = require("author_id");
    if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
      throw format_error(std::string(where) + ": author_id must be a non-empty string");
    }
    p.author_id = v.get<std::string>();
  }
  {
    const json& v = require("post_id");
    if (!v.is_string() || v.get_ref<const std::string&>().empty()) {
      throw format_error(std::string(where) + ": post_id must be a non-empty string");
    }
    p.post_id = v.get<std::string>();
  }
  {
    const json& v = require("timestamp");
    if (!v.is_number()) throw format_error(std::string(where) + ": timestamp must be a number");
    // Sub-second data is truncated; the engine works at second resolution.
    double t = std::trunc(v.get<double>());
    if (t <= 0) throw format_error(std::string(where) + ": timestamp must be > 0");
    p.timestamp = static_cast<std::int64_t>(t);
  }
  {
    const json& v = require("text");
    if (!v.is_string()) throw format_error(std::string(where) + ": text must be a string");
    p.text = v.get<std::string>();
  }
  {
    const json& v = require("content_type");
    if (!v.is_string()) {
      throw format_error(std::string(where) + ": content_type must be a string");
    }
    p.content_type = content_type_from_string(v.get_ref<const std::string&>());
  }
  {
    const json& v = require("engagement");
    if (!v.is_object()) {
      throw format_error(std::string(where) + ": engagement must be an object");
    }
    auto likes = v.find("likes");
    auto shares = v.find("shares");
    if (likes == v.end() || shares == v.end()) {
      throw format_error(std::string(where) + ": engagement requires likes and shares");
    }
    p.engagement.likes = require_count(*likes, "likes", where);
    p.engagement.shares = require_count(*shares, "shares", where);
    auto comments = v.find("comments");
    if (p.platform == Platform::TW) {
      if (comments != v.end()) {
        throw format_error(std::string(where) + ": tw posts carry no comments count");
      }
    } else {
      if (comments == v.end()) {
        throw format_error(std::string(where) + ": fb/gp posts require engagement.comments");
      }
      p.engagement.comments = require_count(*comments, "comments", where);
    }
  }

  p.urls = textnorm::extract_urls(p.text);
  if (auto it = j.find("urls"); it != j.end()) {
    if (!it->is_array() || *it != json(p.urls)) {
      throw format_error(std::string(where) + ": urls field does not match extract_urls(text)");
    }
  }
  return p;
}

json record_to_json(const Post& p) {
  json eng;
  eng["likes"] = p.engagement.likes;
  if (p.engagement.comments) eng["comments"] = *p.engagement.comments;
  eng["shares"] = p.engagement.shares;
  json j;
  j["platform"] = std::string(platform_name(p.platform));
  j["author_id"] = p.author_id;
  j["post_id"] = p.post_id;
  j["timestamp"] = p.timestamp;
  j["text"] = p.text;
  j["content_type"] = std::string(content_type_name(p.content_type));
  j["engagement"] = std::move(eng);
  return j;
}

}  // namespace

Corpus Corpus::build(std::vector<Post> posts) {
  std::sort(posts.begin(), posts.end(), [](const Post& a, const Post& b) {
    return std::tie(a.author_id, a.platform, a.timestamp, a.post_id) <
           std::tie(b.author_id, b.platform, b.timestamp, b.post_id);
  });
  {
    std::unordered_set<std::string> seen;
    seen.reserve(posts.size());
    for (const Post& p : posts) {
      if (!seen.insert(dup_key(p.platform, p.post_id)).second) {
        throw format_error("duplicate (platform, post_id): " + dup_key(p.platform, p.post_id));
      }
    }
  }
  Corpus c;
  c.posts_ = std::move(posts);
  for (std::size_t i = 0; i < c.posts_.size();) {
    const std::string& author = c.posts_[i].author_id;
    auto& slices = c.index_[author];
    std::size_t j = i;
    while (j < c.posts_.size() && c.posts_[j].author_id == author) {
      Platform plat = c.posts_[j].platform;
      std::size_t k = j;
      while (k < c.posts_.size() && c.posts_[k].author_id == author &&
             c.posts_[k].platform == plat) {
        ++k;
      }
      slices[static_cast<std::size_t>(plat)] = {j, k};
      j = k;
    }
    i = j;
  }
  c.authors_.reserve(c.index_.size());
  for (const auto& [author, slices] : c.index_) c.authors_.push_back(author);
  return c;
}

bool Corpus::has_author(std::string_view author) const {
  return index_.find(author) != index_.end();
}

std::span<const Post> Corpus::posts_of(std::string_view author, Platform platform) const {
  auto it = index_.find(author);
  if (it == index_.end()) return {};
  const Slice& s = it->second[static_cast<std::size_t>(platform)];
  return {posts_.data() + s.begin, s.end - s.begin};
}

std::optional<std::pair<std::int64_t, std::int64_t>> Corpus::coverage(std::string_view author,
                                                                      Platform platform) const {
  auto span = posts_of(author, platform);
  if (span.empty()) return std::nullopt;
  return std::make_pair(span.front().timestamp, span.back().timestamp);
}

LoadResult read_corpus(std::istream& in, bool strict, std::string_view source_name) {
  std::vector<Post> posts;
  LoadStats stats;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  std::size_t data_lines = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++data_lines;
    std::string where = std::string(source_name) + ":" + std::to_string(line_no);
    std::optional<Post> p;
    try {
      p = parse_record(line, where);
    } catch (const format_error&) {
      if (strict) throw;
      ++stats.skipped_lines;
      continue;
    }
    // Duplicates abort in either mode: they mean the corpus itself is broken.
    if (!seen.insert(dup_key(p->platform, p->post_id)).second) {
      throw format_error(where + ": duplicate (platform, post_id) " +
                         dup_key(p->platform, p->post_id));
    }
    posts.push_back(std::move(*p));
  }
  if (in.bad()) throw io_error("read failure on " + std::string(source_name));
  if (!strict && stats.skipped_lines > std::max<std::size_t>(1, data_lines / 100)) {
    throw format_error(std::string(source_name) + ": " + std::to_string(stats.skipped_lines) +
                       " of " + std::to_string(data_lines) +
                       " lines malformed, above the 1% lenient cap");
  }
  stats.records = posts.size();
  LoadResult r{Corpus::build(std::move(posts)), stats};
  return r;
}

LoadResult load_corpus(const std::filesystem::path& path, bool strict) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open corpus file " + path.string());
  return read_corpus(in, strict, path.string());
}

void write_corpus(const Corpus& corpus, std::ostream& out) {
  for (const Post& p : corpus.posts()) {
    out << record_to_json(p).dump() << '\n';
  }
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  write_corpus(corpus, out);
  out.flush();
  if (!out) throw io_error("write failure on " + path.string());
}

AnalysisWindow analysis_window(const Corpus& corpus, std::string_view author) {
  if (!corpus.has_author(author)) {
    throw std::invalid_argument("unknown author " + std::string(author));
  }
  AnalysisWindow w;
  w.author_id = std::string(author);
  bool any = false;
  for (Platform p : kPlatforms) {
    auto cov = corpus.coverage(author, p);
    if (!cov) continue;
    if (!any) {
      w.start = cov->first;
      w.end = cov->second;
      any = true;
    } else {
      w.start = std::max(w.start, cov->first);
      w.end = std::min(w.end, cov->second);
    }
  }
  return w;
}

std::map<std::string, AnalysisWindow> analysis_windows(const Corpus& corpus) {
  std::map<std::string, AnalysisWindow> out;
  for (const std::string& author : corpus.authors()) {
    out.emplace(author, analysis_window(corpus, author));
  }
  return out;
}

RestrictResult restrict(const Corpus& corpus,
                        const std::map<std::string, AnalysisWindow>& windows) {
  RestrictResult r;
  std::vector<Post> kept;
  kept.reserve(corpus.posts().size());
  std::string last_author;
  const AnalysisWindow* w = nullptr;
  for (const Post& p : corpus.posts()) {
    if (w == nullptr || p.author_id != last_author) {
      auto it = windows.find(p.author_id);
      if (it == windows.end()) {
        throw std::invalid_argument("restrict: no window for author " + p.author_id);
      }
      w = &it->second;
      last_author = p.author_id;
      if (!w->analyzable()) ++r.stats.dropped_authors;
    }
    if (!w->analyzable() || p.timestamp < w->start || p.timestamp > w->end) {
      ++r.stats.dropped_posts;
    } else {
      kept.push_back(p);
    }
  }
  r.corpus = Corpus::build(std::move(kept));
  return r;
}

}  // namespace crosspost::corpus
