#include "crosspost/validation.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "crosspost/errors.hpp"
#include "crosspost/similarity.hpp"
#include "crosspost/textnorm.hpp"
#include "crosspost/tomlite.hpp"

namespace crosspost::validation {

namespace {

using nlohmann::json;

}  // namespace

std::vector<LabeledPair> load_labeled_pairs(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open labeled pairs file " + path.string());
  std::vector<LabeledPair> pairs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::string where = path.string() + ":" + std::to_string(line_no);
    try {
      json j = json::parse(line);
      LabeledPair p;
      p.text_a = j.at("text_a").get<std::string>();
      p.text_b = j.at("text_b").get<std::string>();
      p.is_cross = j.at("is_cross").get<bool>();
      pairs.push_back(std::move(p));
    } catch (const json::exception& e) {
      throw format_error(where + ": " + e.what());
    }
  }
  if (in.bad()) throw io_error("read failure on " + path.string());
  return pairs;
}

void save_labeled_pairs(std::span<const LabeledPair> pairs, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot open " + path.string() + " for writing");
  for (const LabeledPair& p : pairs) {
    json j;
    j["text_a"] = p.text_a;
    j["text_b"] = p.text_b;
    j["is_cross"] = p.is_cross;
    out << j.dump() << '\n';
  }
  out.flush();
  if (!out) throw io_error("write failure on " + path.string());
}

std::optional<double> ThresholdEvaluation::fp_rate_pct() const {
  if (fp + tn == 0) return std::nullopt;
  return 100.0 * static_cast<double>(fp) / static_cast<double>(fp + tn);
}

std::optional<double> ThresholdEvaluation::fn_rate_pct() const {
  if (fn + tp == 0) return std::nullopt;
  return 100.0 * static_cast<double>(fn) / static_cast<double>(fn + tp);
}

ThresholdEvaluation evaluate(std::span<const LabeledPair> labeled, double threshold) {
  if (labeled.empty()) throw std::invalid_argument("evaluate: empty labeled set");
  ThresholdEvaluation ev;
  ev.threshold = threshold;
  for (const LabeledPair& p : labeled) {
    auto verdict = similarity::classify(textnorm::normalize(p.text_a),
                                        textnorm::normalize(p.text_b), threshold);
    if (p.is_cross) {
      verdict.is_cross ? ++ev.tp : ++ev.fn;
    } else {
      verdict.is_cross ? ++ev.fp : ++ev.tn;
    }
  }
  return ev;
}

std::vector<ThresholdEvaluation> sweep(std::span<const LabeledPair> labeled,
                                       std::span<const double> thresholds) {
  if (thresholds.empty()) throw config_error("sweep: empty threshold list");
  std::vector<double> sorted(thresholds.begin(), thresholds.end());
  std::sort(sorted.begin(), sorted.end());
  std::vector<ThresholdEvaluation> out;
  out.reserve(sorted.size());
  for (double t : sorted) out.push_back(evaluate(labeled, t));
  return out;
}

SynthSpec default_synth_spec() { return SynthSpec{}; }

namespace {

class SpecReader {
 public:
  explicit SpecReader(const tomlite::Table& t) : table_(t) {}

  template <typename T, typename Get>
  void read(const std::string& key, T* dst, Get getter) {
    consumed_.insert(key);
    if (auto v = (table_.*getter)(key)) *dst = static_cast<T>(*v);
  }

  void number(const std::string& key, double* dst) { read(key, dst, &tomlite::Table::number); }
  void count(const std::string& key, std::size_t* dst) {
    consumed_.insert(key);
    if (auto v = table_.integer(key)) {
      if (*v < 0) throw config_error("config key `" + key + "` must be >= 0");
      *dst = static_cast<std::size_t>(*v);
    }
  }
  void integer(const std::string& key, int* dst) {
    consumed_.insert(key);
    if (auto v = table_.integer(key)) *dst = static_cast<int>(*v);
  }
  void int64(const std::string& key, std::int64_t* dst) {
    consumed_.insert(key);
    if (auto v = table_.integer(key)) *dst = *v;
  }
  void seed(const std::string& key, std::uint64_t* dst) {
    consumed_.insert(key);
    if (auto v = table_.integer(key)) *dst = static_cast<std::uint64_t>(*v);
  }
  // [min, max, mult] triple
  void triple(const std::string& key, double* mn, double* mx, double* mult) {
    consumed_.insert(key);
    if (auto v = table_.number_array(key)) {
      if (v->size() != 3) throw config_error("config key `" + key + "` needs [min, max, mult]");
      *mn = (*v)[0];
      *mx = (*v)[1];
      *mult = (*v)[2];
    }
  }
  template <std::size_t N>
  void fractions(const std::string& key, std::array<double, N>* dst) {
    consumed_.insert(key);
    if (auto v = table_.number_array(key)) {
      if (v->size() != N) {
        throw config_error("config key `" + key + "` needs " + std::to_string(N) + " entries");
      }
      for (std::size_t i = 0; i < N; ++i) (*dst)[i] = (*v)[i];
    }
  }

  void check_unknown() const {
    for (const auto& [key, value] : table_.values()) {
      if (!consumed_.contains(key)) {
        throw config_error("unknown config key `" + key + "`");
      }
    }
  }

 private:
  const tomlite::Table& table_;
  std::set<std::string> consumed_;
};

}  // namespace

SynthSpec load_synth_spec(const std::filesystem::path& path) {
  tomlite::Table t = tomlite::Table::parse_file(path);
  SynthSpec s = default_synth_spec();
  SpecReader r(t);

  r.seed("seed", &s.seed);
  r.count("authors", &s.authors);
  r.count("groups", &s.groups);

  r.int64("coverage.start", &s.coverage_start);
  r.integer("coverage.days", &s.coverage_days);
  r.integer("coverage.margin_days", &s.margin_days);

  r.integer("posts.fillers_fb", &s.fillers[0]);
  r.integer("posts.fillers_gp", &s.fillers[1]);
  r.integer("posts.fillers_tw", &s.fillers[2]);

  r.number("pattern_mix.fb_tw", &s.pattern_mix[0]);
  r.number("pattern_mix.fb_gp", &s.pattern_mix[1]);
  r.number("pattern_mix.tw_gp", &s.pattern_mix[2]);
  r.number("pattern_mix.fb_tw_gp", &s.pattern_mix[3]);

  const std::array<std::string, 4> pat = {"fb_tw", "fb_gp", "tw_gp", "fb_tw_gp"};
  const std::array<std::string, 4> org = {"fb", "gp", "tw", "simultaneous"};
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t o = 0; o < 4; ++o) {
      r.number("origin_mix." + pat[p] + "." + org[o], &s.origin_mix[p][o]);
    }
  }

  r.count("preference_plant.strong100_fb", &s.preference_plant[0]);
  r.count("preference_plant.strong100_gp", &s.preference_plant[1]);
  r.count("preference_plant.strong100_tw", &s.preference_plant[2]);
  r.count("preference_plant.strong80_fb", &s.preference_plant80[0]);
  r.count("preference_plant.strong80_gp", &s.preference_plant80[1]);
  r.count("preference_plant.strong80_tw", &s.preference_plant80[2]);
  r.count("preference_plant.agnostic", &s.agnostic_plant);

  r.count("interval_classes.automatic", &s.interval_class_users[0]);
  r.count("interval_classes.quick", &s.interval_class_users[1]);
  r.count("interval_classes.moderate", &s.interval_class_users[2]);
  r.count("interval_classes.slow", &s.interval_class_users[3]);

  r.number("intervals.automatic_below_s", &s.automatic_below_s);
  r.number("intervals.automatic_share", &s.automatic_share);
  r.number("intervals.quick_center_s", &s.interval_centers_s[0]);
  r.number("intervals.moderate_center_s", &s.interval_centers_s[1]);
  r.number("intervals.slow_center_s", &s.interval_centers_s[2]);
  r.number("intervals.center_jitter", &s.interval_center_jitter);
  r.number("intervals.spread", &s.interval_spread);
  r.number("intervals.other_min_s", &s.other_interval_min_s);
  r.number("intervals.other_max_s", &s.other_interval_max_s);

  r.number("perturbation.p_identical", &s.p_identical);
  r.number("perturbation.p_shuffle", &s.p_shuffle);
  r.number("perturbation.p_token_delete", &s.p_token_delete);
  r.number("perturbation.p_token_swap", &s.p_token_swap);
  r.number("perturbation.p_url_append", &s.p_url_append);
  r.number("perturbation.p_truncate", &s.p_truncate);
  r.number("perturbation.truncate_max_frac", &s.truncate_max_frac);
  r.number("perturbation.p_case_noise", &s.p_case_noise);
  r.number("perturbation.p_punct_noise", &s.p_punct_noise);
  r.number("perturbation.min_stage2", &s.min_stage2);

  r.number("urls.p_url_in_tw", &s.p_url_in_tw);
  r.number("urls.p_shortened", &s.p_shortened);

  const std::array<std::string, 4> cls = {"fb_favourite", "tw_favourite", "agnostic", "other"};
  for (std::size_t c = 0; c < 4; ++c) {
    r.fractions("content_mix." + cls[c], &s.content_mix[c]);
    r.fractions("url_mix." + cls[c], &s.url_mix[c]);
  }

  const std::array<std::string, 3> plat = {"fb", "gp", "tw"};
  for (std::size_t p = 0; p < 3; ++p) {
    EngagementModel& m = s.engagement[p];
    r.triple("engagement." + plat[p] + ".likes", &m.likes_min, &m.likes_max, &m.likes_mult);
    r.triple("engagement." + plat[p] + ".comments", &m.comments_min, &m.comments_max,
             &m.comments_mult);
    r.triple("engagement." + plat[p] + ".shares", &m.shares_min, &m.shares_max, &m.shares_mult);
    r.number("engagement." + plat[p] + ".noise", &m.noise);
  }

  r.count("labeled.pairs", &s.labeled_pairs);
  r.fractions("labeled.cross_classes", &s.cross_classes);
  r.fractions("labeled.decoy_classes", &s.decoy_classes);

  r.check_unknown();
  return s;
}

}  // namespace crosspost::validation
