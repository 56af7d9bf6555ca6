#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "crosspost/errors.hpp"
#include "crosspost/similarity.hpp"
#include "crosspost/textnorm.hpp"
#include "crosspost/validation.hpp"

// Deterministic synthetic-corpus generator. Everything is driven by a single
// seeded stream and integer quotas (largest remainder), so a seed fully
// determines the output and the planted proportions are exact up to rounding.

namespace crosspost::validation {

namespace {

using pairing::Origin;
using pairing::Pattern;

constexpr std::int64_t kDay = 86400;

// ---------------------------------------------------------------------------
// Seeded randomness with stable, implementation-independent draws
// ---------------------------------------------------------------------------

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }

  std::int64_t uniform_int(std::int64_t a, std::int64_t b) {  // inclusive
    return a + static_cast<std::int64_t>(uniform() * static_cast<double>(b - a + 1));
  }

  std::size_t index(std::size_t n) {
    return static_cast<std::size_t>(uniform() * static_cast<double>(n));
  }

  bool chance(double p) { return uniform() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[index(i)]);
    }
  }

  template <std::size_t N>
  std::size_t pick_weighted(const std::array<double, N>& w) {
    double total = 0;
    for (double x : w) total += x;
    double r = uniform() * total;
    for (std::size_t i = 0; i < N; ++i) {
      r -= w[i];
      if (r < 0) return i;
    }
    return N - 1;
  }

 private:
  std::mt19937_64 eng_;
};

// Largest-remainder apportionment; ties broken by lower index.
std::vector<std::size_t> quota_counts(std::size_t total, std::span<const double> weights) {
  double sum = 0;
  for (double w : weights) {
    if (w < 0) throw config_error("negative mix weight");
    sum += w;
  }
  if (total > 0 && sum <= 0) throw config_error("mix weights sum to zero");
  std::vector<std::size_t> counts(weights.size(), 0);
  if (total == 0) return counts;
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    double target = static_cast<double>(total) * weights[i] / sum;
    counts[i] = static_cast<std::size_t>(target);
    assigned += counts[i];
    remainders.emplace_back(-(target - std::floor(target)), i);
  }
  std::sort(remainders.begin(), remainders.end());
  for (std::size_t j = 0; assigned < total; ++j) {
    ++counts[remainders[j % remainders.size()].second];
    ++assigned;
  }
  return counts;
}

// ---------------------------------------------------------------------------
// Text material
// ---------------------------------------------------------------------------

class Lexicon {
 public:
  Lexicon(Rng& rng, std::size_t vocab_size) {
    vocab_.reserve(vocab_size);
    for (std::size_t i = 0; i < vocab_size; ++i) vocab_.push_back(make_word(rng, 2, 3));
  }

  const std::string& vocab_word(Rng& rng) const { return vocab_[rng.index(vocab_.size())]; }

  // Globally unique token (a serial suffix rules out collisions).
  std::string entity(Rng& rng) {
    std::string w = make_word(rng, 2, 4);
    std::size_t n = serial_++;
    do {
      w.push_back(static_cast<char>('0' + n % 10));
      n /= 10;
    } while (n > 0);
    return w;
  }

  std::string serial_token(const char* prefix) {
    return std::string(prefix) + std::to_string(serial_++);
  }

 private:
  static std::string make_word(Rng& rng, int min_syl, int max_syl) {
    static constexpr const char* kOnsets[] = {"b", "d", "f", "g", "k", "l", "m", "n",
                                              "p", "r", "s", "t", "v", "ch", "st", "tr"};
    static constexpr const char* kVowels[] = {"a", "e", "i", "o", "u"};
    std::string w;
    int syllables = static_cast<int>(rng.uniform_int(min_syl, max_syl));
    for (int i = 0; i < syllables; ++i) {
      w += kOnsets[rng.index(std::size(kOnsets))];
      w += kVowels[rng.index(std::size(kVowels))];
    }
    return w;
  }

  std::vector<std::string> vocab_;
  std::size_t serial_ = 0;
};

std::string join_tokens(std::span<const std::string> tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

bool is_url_token(const std::string& t) {
  return t.starts_with("http://") || t.starts_with("https://");
}

// Metric-neutral texture: case flips and edge punctuation.
void apply_noise(std::vector<std::string>& tokens, const SynthSpec& spec, Rng& rng) {
  for (std::string& t : tokens) {
    if (is_url_token(t) || t.empty()) continue;
    if (rng.chance(spec.p_case_noise)) {
      std::size_t i = rng.index(t.size());
      if (t[i] >= 'a' && t[i] <= 'z') t[i] = static_cast<char>(t[i] - 'a' + 'A');
    }
    if (rng.chance(spec.p_punct_noise * 0.2)) t.push_back('!');
  }
}

// ---------------------------------------------------------------------------
// Slot bookkeeping
// ---------------------------------------------------------------------------

struct Slot {
  Pattern pattern;
  Origin origin;
};

struct Pools {
  std::array<std::array<std::size_t, 4>, 4> left{};  // [pattern][origin]

  std::size_t& at(Pattern p, Origin o) {
    return left[static_cast<std::size_t>(p)][static_cast<std::size_t>(o)];
  }

  std::size_t total() const {
    std::size_t t = 0;
    for (const auto& row : left) {
      for (std::size_t c : row) t += c;
    }
    return t;
  }

  // Takes up to n slots, walking the preference list in order.
  std::vector<Slot> take_preferring(std::span<const Slot> preference, std::size_t n,
                                    const char* who) {
    std::vector<Slot> out;
    for (const Slot& s : preference) {
      while (out.size() < n && at(s.pattern, s.origin) > 0) {
        --at(s.pattern, s.origin);
        out.push_back(s);
      }
    }
    if (out.size() < n) {
      throw config_error(std::string("infeasible spec: ran out of group slots for ") + who);
    }
    return out;
  }

  // Takes n slots spread proportionally over the listed pools.
  std::vector<Slot> take_proportional(std::span<const Slot> pools_list, std::size_t n,
                                      const char* who) {
    std::vector<double> weights;
    weights.reserve(pools_list.size());
    for (const Slot& s : pools_list) {
      weights.push_back(static_cast<double>(at(s.pattern, s.origin)));
    }
    double avail = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (avail < static_cast<double>(n)) {
      throw config_error(std::string("infeasible spec: ran out of group slots for ") + who);
    }
    std::vector<std::size_t> want = quota_counts(n, weights);
    std::vector<Slot> out;
    std::size_t short_by = 0;
    for (std::size_t i = 0; i < pools_list.size(); ++i) {
      std::size_t take = std::min(want[i], at(pools_list[i].pattern, pools_list[i].origin));
      short_by += want[i] - take;
      at(pools_list[i].pattern, pools_list[i].origin) -= take;
      for (std::size_t j = 0; j < take; ++j) out.push_back(pools_list[i]);
    }
    for (std::size_t i = 0; i < pools_list.size() && short_by > 0; ++i) {
      std::size_t extra = std::min(short_by, at(pools_list[i].pattern, pools_list[i].origin));
      at(pools_list[i].pattern, pools_list[i].origin) -= extra;
      short_by -= extra;
      for (std::size_t j = 0; j < extra; ++j) out.push_back(pools_list[i]);
    }
    return out;
  }
};

// Deals categories so that cumulative counts track the weights exactly;
// consecutive users in one class share the stream, so class-level averages
// converge to the mix even when every user holds the same group count.
template <std::size_t N>
class DeficitDealer {
 public:
  explicit DeficitDealer(const std::array<double, N>& weights) : weights_(weights) {
    double sum = 0;
    for (double w : weights_) sum += w;
    if (sum > 0) {
      for (double& w : weights_) w /= sum;
    }
  }

  std::size_t next() {
    ++total_;
    std::size_t best = 0;
    double best_deficit = -1e300;
    for (std::size_t i = 0; i < N; ++i) {
      double deficit = weights_[i] * static_cast<double>(total_) -
                       static_cast<double>(assigned_[i]);
      if (deficit > best_deficit + 1e-12) {
        best_deficit = deficit;
        best = i;
      }
    }
    ++assigned_[best];
    return best;
  }

 private:
  std::array<double, N> weights_;
  std::array<std::size_t, N> assigned_{};
  std::size_t total_ = 0;
};

std::array<Platform, 3> pattern_platforms(Pattern p, std::size_t* count) {
  switch (p) {
    case Pattern::FB_TW: *count = 2; return {Platform::FB, Platform::TW, Platform::TW};
    case Pattern::FB_GP: *count = 2; return {Platform::FB, Platform::GP, Platform::GP};
    case Pattern::TW_GP: *count = 2; return {Platform::GP, Platform::TW, Platform::TW};
    case Pattern::FB_TW_GP: *count = 3; return {Platform::FB, Platform::GP, Platform::TW};
  }
  *count = 2;
  return {Platform::FB, Platform::TW, Platform::TW};
}

struct UserPlan {
  std::string id;
  bool interval_user = false;
  int interval_class = -1;  // 0 Automatic, 1 Quick, 2 Moderate, 3 Slow
  int plant100 = -1;        // platform index for strong-100 plants
  int plant80 = -1;
  bool plant_agnostic = false;
  std::vector<Slot> slots;
  UserClass cls = UserClass::Other;
  std::array<std::array<double, 3>, 3> engagement_base{};  // [platform][reaction]
  double median_target_s = 0.0;
};

void validate_spec(const SynthSpec& spec) {
  if (spec.authors == 0) throw config_error("synth spec: authors must be > 0");
  if (spec.coverage_days <= 2 * spec.margin_days || spec.margin_days < 1) {
    throw config_error("synth spec: coverage window too small for the margins");
  }
  for (int f : spec.fillers) {
    if (f < 2) throw config_error("synth spec: fillers must be >= 2 per platform");
  }
  // Origins impossible for a pattern must carry zero weight.
  static constexpr bool kAllowed[4][4] = {{true, false, true, true},
                                          {true, true, false, true},
                                          {false, true, true, true},
                                          {true, true, true, true}};
  for (std::size_t p = 0; p < 4; ++p) {
    for (std::size_t o = 0; o < 4; ++o) {
      if (!kAllowed[p][o] && spec.origin_mix[p][o] > 0) {
        throw config_error("synth spec: origin mix assigns weight to a platform "
                           "outside pattern " +
                           std::string(pairing::pattern_name(static_cast<Pattern>(p))));
      }
    }
  }
  std::size_t interval_users = 0;
  for (std::size_t c : spec.interval_class_users) interval_users += c;
  if (interval_users > spec.authors) {
    throw config_error("synth spec: interval class users exceed author count");
  }
  for (std::size_t p = 0; p < 3; ++p) {
    if (spec.preference_plant80[p] < spec.preference_plant[p]) {
      throw config_error("synth spec: strong-80 plant below the strong-100 plant");
    }
  }
  std::size_t fbtw_plants = spec.preference_plant80[0] + spec.preference_plant80[2] +
                            spec.agnostic_plant;
  if (fbtw_plants > interval_users) {
    throw config_error("synth spec: fb/tw preference plants exceed interval users");
  }
  std::size_t gp_plants = spec.preference_plant80[1];
  if (gp_plants > spec.authors - interval_users) {
    throw config_error("synth spec: gp preference plants exceed non-interval users");
  }
  // Replicas must stay inside the coverage margins after the longest chain of
  // inter-posting intervals (two hops for a three-platform group).
  double max_interval = std::max({spec.interval_centers_s[2] *
                                      (1.0 + spec.interval_center_jitter) *
                                      (1.0 + spec.interval_spread),
                                  spec.other_interval_max_s, 3600.0});
  if (static_cast<double>(spec.margin_days) * kDay <= 2.0 * max_interval) {
    throw config_error("synth spec: margin_days too small for the interval model");
  }
}

// ---------------------------------------------------------------------------
// Generator
// ---------------------------------------------------------------------------

class Generator {
 public:
  explicit Generator(const SynthSpec& spec)
      : spec_(spec), rng_(spec.seed), lex_(rng_, 2000) {
    for (std::size_t c = 0; c < 4; ++c) {
      content_dealer_.emplace_back(spec_.content_mix[c]);
      url_dealer_.emplace_back(spec_.url_mix[c]);
      url_presence_dealer_.emplace_back(
          std::array<double, 2>{spec_.p_url_in_tw, 1.0 - spec_.p_url_in_tw});
    }
  }

  SynthOutput run() {
    validate_spec(spec_);
    w0_ = spec_.coverage_start;
    w1_ = spec_.coverage_start + static_cast<std::int64_t>(spec_.coverage_days) * kDay;
    margin_ = static_cast<std::int64_t>(spec_.margin_days) * kDay;

    plan_quotas();
    plan_users();
    deal_slots();
    repair_regular_users();
    derive_user_classes();
    assign_interval_classes();
    build_groups_and_posts();
    build_labeled_pairs();

    SynthOutput out;
    out.corpus = corpus::Corpus::build(std::move(posts_));
    out.ground_truth.groups = std::move(groups_);
    std::sort(out.ground_truth.groups.begin(), out.ground_truth.groups.end(),
              [](const pairing::CrossPostGroup& a, const pairing::CrossPostGroup& b) {
                auto key = [](const pairing::CrossPostGroup& g) {
                  return std::tie(g.author_id, g.first_timestamp, g.members.front().platform,
                                  g.members.front().post_id);
                };
                return key(a) < key(b);
              });
    out.ground_truth.rebuild_member_index();
    out.labeled = std::move(labeled_);
    out.resolver = std::move(resolver_);
    out.pattern_counts = pattern_counts_;
    out.origin_counts = origin_counts_;
    for (const UserPlan& u : users_) {
      if (u.plant100 >= 0) out.strong100_plants[u.plant100].push_back(u.id);
      if (u.interval_class >= 0) out.interval_class_of[u.id] = u.interval_class;
      out.user_class_of[u.id] = u.cls;
    }
    return out;
  }

 private:
  void plan_quotas() {
    auto pat = quota_counts(spec_.groups, spec_.pattern_mix);
    for (std::size_t p = 0; p < 4; ++p) {
      pattern_counts_[p] = pat[p];
      auto org = quota_counts(pat[p], spec_.origin_mix[p]);
      for (std::size_t o = 0; o < 4; ++o) {
        origin_counts_[p][o] = org[o];
        pools_.left[p][o] = org[o];
      }
    }
  }

  void plan_users() {
    std::size_t width = std::to_string(spec_.authors).size();
    width = std::max<std::size_t>(width, 4);
    users_.resize(spec_.authors);
    for (std::size_t i = 0; i < spec_.authors; ++i) {
      std::string num = std::to_string(i + 1);
      users_[i].id = "u" + std::string(width - num.size(), '0') + num;
      for (std::size_t p = 0; p < 3; ++p) {
        const EngagementModel& m = spec_.engagement[p];
        users_[i].engagement_base[p][0] = rng_.uniform(m.likes_min, m.likes_max);
        users_[i].engagement_base[p][1] = rng_.uniform(m.comments_min, m.comments_max);
        users_[i].engagement_base[p][2] = rng_.uniform(m.shares_min, m.shares_max);
      }
    }

    std::size_t interval_users = 0;
    for (std::size_t c : spec_.interval_class_users) interval_users += c;

    // Interval (FB-TW) users come first in the roster, then the rest.
    for (std::size_t i = 0; i < interval_users; ++i) users_[i].interval_user = true;

    // Preference plants: fb/tw flavours inside the interval population,
    // gp flavours outside it (a gp-origin group is never an FB-TW group).
    std::size_t cursor = 0;
    auto take_interval_plants = [&](std::size_t n, auto mark) {
      for (std::size_t i = 0; i < n; ++i, ++cursor) {
        if (cursor >= interval_users) {
          throw config_error("synth spec: preference plants exceed interval users");
        }
        mark(users_[cursor]);
      }
    };
    take_interval_plants(spec_.preference_plant[0],
                         [](UserPlan& u) { u.plant100 = 0; });
    take_interval_plants(spec_.preference_plant[2],
                         [](UserPlan& u) { u.plant100 = 2; });
    take_interval_plants(spec_.preference_plant80[0] - spec_.preference_plant[0],
                         [](UserPlan& u) { u.plant80 = 0; });
    take_interval_plants(spec_.preference_plant80[2] - spec_.preference_plant[2],
                         [](UserPlan& u) { u.plant80 = 2; });
    take_interval_plants(spec_.agnostic_plant, [](UserPlan& u) { u.plant_agnostic = true; });

    std::size_t gp_cursor = interval_users;
    for (std::size_t i = 0; i < spec_.preference_plant[1]; ++i) {
      users_.at(gp_cursor++).plant100 = 1;
    }
    for (std::size_t i = 0; i < spec_.preference_plant80[1] - spec_.preference_plant[1]; ++i) {
      users_.at(gp_cursor++).plant80 = 1;
    }
    interval_users_ = interval_users;
  }

  // Even per-user group counts: groups/authors rounded, remainder spread.
  std::vector<std::size_t> per_user_counts(std::size_t slots, std::size_t users) const {
    std::vector<double> w(users, 1.0);
    return quota_counts(slots, w);
  }

  void deal_slots() {
    // Per-user totals for the planted users; regulars absorb the remainder.
    std::size_t base = spec_.authors == 0 ? 0 : spec_.groups / spec_.authors;

    auto plant_total = [&](const UserPlan&) -> std::size_t { return std::max<std::size_t>(base, 1); };

    static constexpr Slot kFbPools[] = {{Pattern::FB_TW, Origin::FB},
                                        {Pattern::FB_GP, Origin::FB},
                                        {Pattern::FB_TW_GP, Origin::FB}};
    static constexpr Slot kTwPools[] = {{Pattern::FB_TW, Origin::TW},
                                        {Pattern::TW_GP, Origin::TW},
                                        {Pattern::FB_TW_GP, Origin::TW}};
    static constexpr Slot kGpPools[] = {{Pattern::FB_GP, Origin::GP},
                                        {Pattern::TW_GP, Origin::GP},
                                        {Pattern::FB_TW_GP, Origin::GP}};
    static constexpr Slot kGpMinor[] = {{Pattern::FB_GP, Origin::FB},
                                        {Pattern::TW_GP, Origin::TW},
                                        {Pattern::FB_TW_GP, Origin::FB},
                                        {Pattern::FB_TW_GP, Origin::TW}};

    for (UserPlan& u : users_) {
      if (u.plant100 < 0 && u.plant80 < 0 && !u.plant_agnostic) continue;
      std::size_t c = plant_total(u);
      if (u.plant100 == 0) {
        u.slots = pools_.take_preferring(kFbPools, c, "strong-100 fb plants");
      } else if (u.plant100 == 2) {
        u.slots = pools_.take_preferring(kTwPools, c, "strong-100 tw plants");
      } else if (u.plant100 == 1) {
        u.slots = pools_.take_proportional(kGpPools, c, "strong-100 gp plants");
      } else if (u.plant80 >= 0) {
        if (c < 5) {
          throw config_error("synth spec: strong-80 plants need >= 5 groups per user");
        }
        std::size_t major = (4 * c + 4) / 5;  // smallest k with k/c >= 0.8
        if (major == c) --major;
        if (u.plant80 == 0) {
          u.slots = pools_.take_preferring(kFbPools, major, "strong-80 fb plants");
          auto minor = pools_.take_preferring(kTwPools, c - major, "strong-80 fb plants");
          u.slots.insert(u.slots.end(), minor.begin(), minor.end());
        } else if (u.plant80 == 2) {
          u.slots = pools_.take_preferring(kTwPools, major, "strong-80 tw plants");
          auto minor = pools_.take_preferring(kFbPools, c - major, "strong-80 tw plants");
          u.slots.insert(u.slots.end(), minor.begin(), minor.end());
        } else {
          u.slots = pools_.take_proportional(kGpPools, major, "strong-80 gp plants");
          auto minor = pools_.take_proportional(kGpMinor, c - major, "strong-80 gp plants");
          u.slots.insert(u.slots.end(), minor.begin(), minor.end());
        }
      } else {  // agnostic: near-even thirds, max share strictly below 1/2
        std::size_t third = c / 3;
        std::size_t rem = c - 3 * third;
        std::array<std::size_t, 3> want = {third + (rem > 0 ? 1 : 0),
                                           third + (rem > 1 ? 1 : 0), third};
        if (c == 4 || c < 3) {
          throw config_error("synth spec: agnostic plants need 3 or >= 5 groups per user");
        }
        u.slots = pools_.take_preferring(std::array<Slot, 1>{{{Pattern::FB_TW, Origin::FB}}},
                                         want[0], "agnostic plants (fb share)");
        auto tw = pools_.take_preferring(std::array<Slot, 1>{{{Pattern::FB_TW, Origin::TW}}},
                                         want[1], "agnostic plants (tw share)");
        auto gp = pools_.take_proportional(kGpPools, want[2], "agnostic plants (gp share)");
        u.slots.insert(u.slots.end(), tw.begin(), tw.end());
        u.slots.insert(u.slots.end(), gp.begin(), gp.end());
      }
    }

    // Regular interval users absorb every remaining FB-TW slot.
    std::vector<std::size_t> regular_interval;
    for (std::size_t i = 0; i < interval_users_; ++i) {
      if (users_[i].slots.empty()) regular_interval.push_back(i);
    }
    std::size_t fbtw_left = 0;
    for (std::size_t o = 0; o < 4; ++o) fbtw_left += pools_.left[0][o];
    if (!regular_interval.empty()) {
      if (fbtw_left < regular_interval.size()) {
        throw config_error("infeasible spec: not enough fb-tw groups for the interval users");
      }
      static constexpr Slot kFbtwPools[] = {{Pattern::FB_TW, Origin::FB},
                                            {Pattern::FB_TW, Origin::TW},
                                            {Pattern::FB_TW, Origin::Simultaneous}};
      auto counts = per_user_counts(fbtw_left, regular_interval.size());
      for (std::size_t j = 0; j < regular_interval.size(); ++j) {
        users_[regular_interval[j]].slots =
            pools_.take_proportional(kFbtwPools, counts[j], "interval users");
      }
    } else if (fbtw_left > 0) {
      throw config_error("infeasible spec: fb-tw groups left but no interval users to hold them");
    }

    // Remaining users absorb everything else.
    std::vector<std::size_t> regular_other;
    for (std::size_t i = interval_users_; i < users_.size(); ++i) {
      if (users_[i].slots.empty()) regular_other.push_back(i);
    }
    static constexpr Slot kOtherPools[] = {
        {Pattern::FB_GP, Origin::FB},       {Pattern::FB_GP, Origin::GP},
        {Pattern::FB_GP, Origin::Simultaneous},
        {Pattern::TW_GP, Origin::GP},       {Pattern::TW_GP, Origin::TW},
        {Pattern::TW_GP, Origin::Simultaneous},
        {Pattern::FB_TW_GP, Origin::FB},    {Pattern::FB_TW_GP, Origin::GP},
        {Pattern::FB_TW_GP, Origin::TW},    {Pattern::FB_TW_GP, Origin::Simultaneous}};
    std::size_t other_left = pools_.total();
    if (!regular_other.empty()) {
      auto counts = per_user_counts(other_left, regular_other.size());
      for (std::size_t j = 0; j < regular_other.size(); ++j) {
        users_[regular_other[j]].slots =
            pools_.take_proportional(kOtherPools, counts[j], "remaining users");
      }
    }
    if (pools_.total() != 0) {
      throw config_error("infeasible spec: " + std::to_string(pools_.total()) +
                         " group slots could not be assigned (add authors or groups)");
    }

    for (UserPlan& u : users_) rng_.shuffle(u.slots);
  }

  // Quota drift can hand a regular user an origin profile that reads as a
  // spurious strong-100 / strong-80 / agnostic user and would blur the
  // planted preference census. Swapping origins between same-pattern slots
  // keeps the corpus-level (pattern, origin) totals intact while pushing
  // every non-plant user into the no-strong-preference band.
  void repair_regular_users() {
    auto counts_of = [](const UserPlan& u) {
      std::array<std::size_t, 3> c{};
      for (const Slot& s : u.slots) {
        if (s.origin != Origin::Simultaneous) ++c[static_cast<std::size_t>(s.origin)];
      }
      return c;
    };
    auto is_plant = [](const UserPlan& u) {
      return u.plant100 >= 0 || u.plant80 >= 0 || u.plant_agnostic;
    };
    auto healthy = [&](const UserPlan& u) {
      auto c = counts_of(u);
      std::size_t total = c[0] + c[1] + c[2];
      if (total <= 1) return total == 0;  // a single group cannot be de-biased
      std::size_t mx = std::max({c[0], c[1], c[2]});
      int distinct = (c[0] > 0 ? 1 : 0) + (c[1] > 0 ? 1 : 0) + (c[2] > 0 ? 1 : 0);
      return distinct >= 2 && mx * 10 < total * 8 && mx * 2 >= total;
    };
    auto max_origin = [&](const UserPlan& u) {
      auto c = counts_of(u);
      std::size_t best = 0;
      for (std::size_t i = 1; i < 3; ++i) {
        if (c[i] > c[best]) best = i;
      }
      return best;
    };

    for (int pass = 0; pass < 32; ++pass) {
      bool changed = false;
      bool any_bad = false;
      for (UserPlan& u : users_) {
        if (is_plant(u) || healthy(u)) continue;
        any_bad = true;
        auto c = counts_of(u);
        std::size_t total = c[0] + c[1] + c[2];
        std::size_t mx = max_origin(u);
        bool too_concentrated = c[mx] * 10 >= total * 8 ||
                                (c[0] > 0 ? 1 : 0) + (c[1] > 0 ? 1 : 0) + (c[2] > 0 ? 1 : 0) < 2;
        // too_concentrated: give away a majority slot; otherwise (agnostic-like)
        // acquire one more slot of the leading origin.
        Origin give = static_cast<Origin>(mx);
        for (UserPlan& v : users_) {
          if (changed) break;
          if (&v == &u || is_plant(v) || v.interval_user != u.interval_user) continue;
          for (Slot& su : u.slots) {
            if (changed) break;
            if (su.origin == Origin::Simultaneous) continue;
            if (too_concentrated ? su.origin != give : su.origin == give) continue;
            for (Slot& sv : v.slots) {
              if (sv.origin == Origin::Simultaneous || sv.pattern != su.pattern) continue;
              if (too_concentrated ? sv.origin == give : sv.origin != give) continue;
              std::swap(su.origin, sv.origin);
              auto c2 = counts_of(u);
              bool improved = too_concentrated ? c2[mx] < c[mx] : c2[mx] > c[mx];
              if (improved && healthy(v)) {
                changed = true;
                break;
              }
              std::swap(su.origin, sv.origin);
            }
          }
        }
      }
      if (!any_bad || !changed) break;
    }
  }

  void derive_user_classes() {
    for (UserPlan& u : users_) {
      std::array<std::size_t, 3> c{};
      for (const Slot& s : u.slots) {
        if (s.origin != Origin::Simultaneous) ++c[static_cast<std::size_t>(s.origin)];
      }
      std::size_t total = c[0] + c[1] + c[2];
      if (total == 0) {
        u.cls = UserClass::Other;
        continue;
      }
      std::size_t max_c = std::max({c[0], c[1], c[2]});
      if (c[0] * 10 >= total * 8) {
        u.cls = UserClass::FbFavourite;
      } else if (c[2] * 10 >= total * 8) {
        u.cls = UserClass::TwFavourite;
      } else if (max_c * 2 < total) {
        u.cls = UserClass::Agnostic;
      } else {
        u.cls = UserClass::Other;
      }
    }
  }

  void assign_interval_classes() {
    // Deficit-round-robin keeps the class counts exact and interleaved.
    std::array<std::size_t, 4> want = spec_.interval_class_users;
    std::array<std::size_t, 4> got{};
    std::size_t placed = 0;
    for (std::size_t i = 0; i < interval_users_; ++i) {
      std::size_t best = 0;
      double best_deficit = -1e300;
      for (std::size_t cidx = 0; cidx < 4; ++cidx) {
        double deficit = static_cast<double>(want[cidx]) * static_cast<double>(placed + 1) /
                             static_cast<double>(interval_users_) -
                         static_cast<double>(got[cidx]);
        if (deficit > best_deficit + 1e-12 ||
            (deficit > best_deficit - 1e-12 && want[cidx] > want[best])) {
          best_deficit = deficit;
          best = cidx;
        }
      }
      users_[i].interval_class = static_cast<int>(best);
      ++got[best];
      ++placed;
      if (best > 0) {
        double center = spec_.interval_centers_s[best - 1];
        users_[i].median_target_s =
            center * (1.0 + spec_.interval_center_jitter * rng_.uniform(-1.0, 1.0));
      }
    }
  }

  std::int64_t draw_interval(const UserPlan& u, bool below) {
    if (below) {
      return rng_.uniform_int(1, std::max<std::int64_t>(
                                     1, static_cast<std::int64_t>(spec_.automatic_below_s) - 1));
    }
    if (u.interval_class == 0) return rng_.uniform_int(60, 3600);
    if (u.interval_class > 0) {
      double d = u.median_target_s * (1.0 + spec_.interval_spread * rng_.uniform(-1.0, 1.0));
      return std::max<std::int64_t>(1, std::llround(d));
    }
    return rng_.uniform_int(static_cast<std::int64_t>(spec_.other_interval_min_s),
                            static_cast<std::int64_t>(spec_.other_interval_max_s));
  }

  std::string next_post_id(Platform p) {
    std::size_t n = ++post_serial_[static_cast<std::size_t>(p)];
    char prefix = p == Platform::FB ? 'f' : (p == Platform::GP ? 'g' : 't');
    std::string num = std::to_string(n);
    return prefix + std::string(num.size() >= 6 ? 0 : 6 - num.size(), '0') + num;
  }

  std::int64_t engagement_value(const UserPlan& u, Platform p, int reaction, double mult) {
    const EngagementModel& m = spec_.engagement[static_cast<std::size_t>(p)];
    double base = u.engagement_base[static_cast<std::size_t>(p)][reaction];
    double v = base * mult * (1.0 + m.noise * rng_.uniform(-1.0, 1.0));
    return std::max<std::int64_t>(0, std::llround(v));
  }

  Engagement make_engagement(const UserPlan& u, Platform p, bool boosted) {
    const EngagementModel& m = spec_.engagement[static_cast<std::size_t>(p)];
    Engagement e;
    e.likes = engagement_value(u, p, 0, boosted ? m.likes_mult : 1.0);
    e.shares = engagement_value(u, p, 2, boosted ? m.shares_mult : 1.0);
    if (p != Platform::TW) {
      e.comments = engagement_value(u, p, 1, boosted ? m.comments_mult : 1.0);
    }
    return e;
  }

  std::vector<std::string> base_tokens() {
    std::size_t n = static_cast<std::size_t>(rng_.uniform_int(10, 16));
    std::size_t vocab = n / 3;
    std::vector<std::string> tokens;
    tokens.reserve(n);
    for (std::size_t i = 0; i < vocab; ++i) tokens.push_back(lex_.vocab_word(rng_));
    while (tokens.size() < n) {
      std::string e = lex_.entity(rng_);
      if (tokens.size() + 1 == n && rng_.chance(0.15)) e = "#" + e;
      tokens.push_back(std::move(e));
    }
    rng_.shuffle(tokens);
    // Distinct tokens keep the overlap arithmetic exact.
    std::sort(tokens.begin(), tokens.end());
    tokens.erase(std::unique(tokens.begin(), tokens.end()), tokens.end());
    rng_.shuffle(tokens);
    return tokens;
  }

  std::string junk_url() { return "https://cdn" + lex_.serial_token("") + ".example.org/a"; }

  // Perturbs a replica while keeping both stage-2 metrics at min_stage2 or
  // above, so every planted pair stays detectable at the 0.5 threshold.
  std::vector<std::string> perturb_replica(const std::vector<std::string>& base) {
    double r = rng_.uniform();
    std::vector<std::string> out = base;
    if (r < spec_.p_identical || base.size() < 2) {
      apply_noise(out, spec_, rng_);
      return out;
    }
    if (r < spec_.p_identical + spec_.p_shuffle) {
      rng_.shuffle(out);
      if (out == base) std::rotate(out.begin(), out.begin() + 1, out.end());
      apply_noise(out, spec_, rng_);
      return out;
    }

    std::vector<bool> kept(base.size(), true);
    if (rng_.chance(spec_.p_truncate)) {
      std::size_t cut = static_cast<std::size_t>(
          rng_.uniform(0.1, spec_.truncate_max_frac) * static_cast<double>(base.size()));
      for (std::size_t i = base.size() - cut; i < base.size(); ++i) kept[i] = false;
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
      if (kept[i] && rng_.chance(spec_.p_token_delete)) kept[i] = false;
    }
    bool with_url = rng_.chance(spec_.p_url_append);

    auto assemble = [&] {
      std::vector<std::string> t;
      for (std::size_t i = 0; i < base.size(); ++i) {
        if (kept[i]) t.push_back(base[i]);
      }
      return t;
    };
    auto floor_ok = [&](const std::vector<std::string>& t) {
      auto va = textnorm::normalize(join_tokens(base));
      auto vb = textnorm::normalize(join_tokens(t));
      return similarity::cosine_sim(va, vb) >= spec_.min_stage2 &&
             similarity::string_sim(va, vb) >= spec_.min_stage2;
    };

    std::vector<std::string> tokens = assemble();
    if (with_url) tokens.push_back(junk_url());
    for (std::size_t i = base.size(); i-- > 0 && (tokens.empty() || !floor_ok(tokens));) {
      kept[i] = true;  // restore from the tail until the floor holds
      tokens = assemble();
      if (with_url) tokens.push_back(junk_url());
    }

    for (std::size_t i = 1; i < tokens.size(); ++i) {
      if (rng_.chance(spec_.p_token_swap * 0.5)) std::swap(tokens[i - 1], tokens[i]);
    }
    apply_noise(tokens, spec_, rng_);
    return tokens;
  }

  std::string planted_url(analytics::UrlSite site) {
    std::string token = lex_.serial_token("x");
    std::string final_url;
    switch (site) {
      case analytics::UrlSite::Facebook:
        final_url = "https://www.facebook.com/" + token + "/posts/1";
        break;
      case analytics::UrlSite::Twitter:
        final_url = "https://twitter.com/" + token + "/status/9";
        break;
      case analytics::UrlSite::YouTube:
        final_url = rng_.chance(0.5) ? "https://youtu.be/" + token
                                     : "https://www.youtube.com/watch?v=" + token;
        break;
      case analytics::UrlSite::Instagram:
        final_url = "https://www.instagram.com/p/" + token + "/";
        break;
      case analytics::UrlSite::Other:
        final_url = "https://" + lex_.vocab_word(rng_) + token + ".example.net/p";
        break;
    }
    resolver_.add(final_url, final_url);  // known-final entry for strict runs
    if (rng_.chance(spec_.p_shortened)) {
      static constexpr const char* kShorteners[] = {"https://sho.rt/", "https://bit.ly/",
                                                    "https://tinyurl.com/"};
      std::string short_url =
          std::string(kShorteners[rng_.index(std::size(kShorteners))]) + lex_.serial_token("s");
      resolver_.add(short_url, final_url);
      return short_url;
    }
    return final_url;
  }

  ContentType pick_content(const UserPlan& u) {
    return static_cast<ContentType>(rng_.pick_weighted(spec_.content_mix[
        static_cast<std::size_t>(u.cls)]));
  }

  void build_groups_and_posts() {
    for (UserPlan& u : users_) {
      // Plan the FB-TW group internals up front (quotas per user).
      std::vector<std::size_t> fbtw_slots;
      for (std::size_t i = 0; i < u.slots.size(); ++i) {
        if (u.slots[i].pattern == Pattern::FB_TW) fbtw_slots.push_back(i);
      }
      std::size_t n_fbtw = fbtw_slots.size();

      // Which FB-TW groups run below the automatic threshold.
      std::vector<bool> below(u.slots.size(), false);
      if (u.interval_class == 0 && n_fbtw > 0) {
        std::size_t sims = 0;
        for (std::size_t i : fbtw_slots) {
          if (u.slots[i].origin == Origin::Simultaneous) ++sims;
        }
        std::size_t need = static_cast<std::size_t>(
            std::ceil(spec_.automatic_share * static_cast<double>(n_fbtw)));
        need = need > sims ? need - sims : 0;
        std::vector<std::size_t> non_sim;
        for (std::size_t i : fbtw_slots) {
          if (u.slots[i].origin != Origin::Simultaneous) non_sim.push_back(i);
        }
        rng_.shuffle(non_sim);
        for (std::size_t j = 0; j < std::min(need, non_sim.size()); ++j) {
          below[non_sim[j]] = true;
        }
      }

      // Content types and tweet urls for FB-TW groups: dealt from the user's
      // class-wide streams so group averages recover the planted mixes.
      std::vector<ContentType> fbtw_content;
      std::vector<std::string> fbtw_urls;  // empty string = no url
      if (n_fbtw > 0) {
        std::size_t cls = static_cast<std::size_t>(u.cls);
        for (std::size_t j = 0; j < n_fbtw; ++j) {
          fbtw_content.push_back(static_cast<ContentType>(content_dealer_[cls].next()));
        }
        rng_.shuffle(fbtw_content);
        for (std::size_t j = 0; j < n_fbtw; ++j) {
          if (url_presence_dealer_[cls].next() == 0) {
            fbtw_urls.push_back(
                planted_url(static_cast<analytics::UrlSite>(url_dealer_[cls].next())));
          } else {
            fbtw_urls.emplace_back();
          }
        }
        rng_.shuffle(fbtw_urls);
      }

      std::size_t fbtw_seen = 0;
      for (std::size_t si = 0; si < u.slots.size(); ++si) {
        const Slot& slot = u.slots[si];
        bool is_fbtw = slot.pattern == Pattern::FB_TW;
        ContentType content = is_fbtw ? fbtw_content[fbtw_seen] : pick_content(u);
        std::string tweet_url = is_fbtw ? fbtw_urls[fbtw_seen] : std::string();
        if (is_fbtw) ++fbtw_seen;
        emit_group(u, slot, below[si], content, tweet_url);
      }

      emit_fillers(u);
    }
  }

  void emit_group(UserPlan& u, const Slot& slot, bool below, ContentType content,
                  const std::string& tweet_url) {
    std::size_t member_count = 0;
    auto platforms = pattern_platforms(slot.pattern, &member_count);

    std::int64_t t0 = rng_.uniform_int(w0_ + margin_, w1_ - margin_);

    // Decide per-platform timestamps.
    std::array<std::int64_t, 3> ts{};  // indexed by position in `platforms`
    std::vector<std::size_t> order(member_count);
    std::iota(order.begin(), order.end(), 0);
    std::size_t base_pos = 0;
    if (slot.origin == Origin::Simultaneous) {
      if (member_count == 2) {
        ts[0] = ts[1] = t0;
      } else {
        std::size_t rot = group_serial_ % 3;
        std::size_t third = 2 - rot;  // rotate which member trails
        for (std::size_t i = 0; i < 3; ++i) ts[i] = t0;
        ts[third] = t0 + draw_interval(u, below);
        base_pos = third == 0 ? 1 : 0;
      }
    } else {
      Platform origin_platform = static_cast<Platform>(slot.origin);
      for (std::size_t i = 0; i < member_count; ++i) {
        if (platforms[i] == origin_platform) base_pos = i;
      }
      std::int64_t prev = t0;
      std::size_t step = 0;
      for (std::size_t i = 0; i < member_count; ++i) {
        if (i == base_pos) {
          ts[i] = t0;
          continue;
        }
        prev = prev + draw_interval(u, below && step == 0);
        ts[i] = prev;
        ++step;
      }
    }

    // Texts: base on the origin member (or the earliest sim member), replicas
    // perturbed from it.
    std::vector<std::string> base = base_tokens();
    Platform tw_url_platform = Platform::TW;
    bool plant_url = !tweet_url.empty();
    if (plant_url && platforms[base_pos] == tw_url_platform) {
      base.push_back(tweet_url);
    }

    pairing::CrossPostGroup g;
    g.author_id = u.id;
    g.pattern = slot.pattern;

    std::array<std::string, 3> texts;
    for (std::size_t i = 0; i < member_count; ++i) {
      if (i == base_pos) {
        std::vector<std::string> t = base;
        apply_noise(t, spec_, rng_);
        texts[i] = join_tokens(t);
        continue;
      }
      std::vector<std::string> t = perturb_replica(base);
      if (slot.pattern == Pattern::FB_TW && platforms[i] == tw_url_platform) {
        // The tweet carries exactly its planted url (or none): stray urls
        // would distort the per-user url-site quotas.
        std::erase_if(t, is_url_token);
        if (plant_url) t.push_back(tweet_url);
      }
      texts[i] = join_tokens(t);
    }

    for (std::size_t i = 0; i < member_count; ++i) {
      Post p;
      p.platform = platforms[i];
      p.author_id = u.id;
      p.post_id = next_post_id(p.platform);
      p.timestamp = ts[i];
      p.text = texts[i];
      p.urls = textnorm::extract_urls(p.text);
      if (p.platform == Platform::FB) {
        p.content_type = content;
      } else if (p.platform == Platform::TW) {
        p.content_type = p.urls.empty() ? ContentType::Text : ContentType::Link;
      } else {
        p.content_type = content == ContentType::Photo || content == ContentType::Video
                             ? content
                             : ContentType::Text;
      }
      bool boosted = slot.origin != Origin::Simultaneous &&
                     static_cast<Platform>(slot.origin) == p.platform;
      p.engagement = make_engagement(u, p.platform, boosted);
      g.members.push_back({p.platform, p.post_id, p.timestamp});
      posts_.push_back(std::move(p));
    }

    std::sort(g.members.begin(), g.members.end(),
              [](const pairing::GroupMember& a, const pairing::GroupMember& b) {
                return std::tie(a.platform, a.post_id) < std::tie(b.platform, b.post_id);
              });
    g.first_timestamp = g.members.front().timestamp;
    for (const auto& m : g.members) g.first_timestamp = std::min(g.first_timestamp, m.timestamp);

    auto base_norm = textnorm::normalize(texts[base_pos]);
    for (std::size_t i = 0; i < member_count; ++i) {
      if (i == base_pos) continue;
      auto v = similarity::classify(base_norm, textnorm::normalize(texts[i]), 0.5);
      Platform pa = platforms[base_pos];
      Platform pb = platforms[i];
      if (pb < pa) std::swap(pa, pb);
      g.edges.push_back({pa, pb, v.stage1_match, v.cosine, v.string_sim});
    }
    std::sort(g.edges.begin(), g.edges.end(),
              [](const pairing::GroupEdge& a, const pairing::GroupEdge& b) {
                return std::tie(a.platform_a, a.platform_b) <
                       std::tie(b.platform_a, b.platform_b);
              });
    g.origin = pairing::attribute_origin(g);
    ++group_serial_;
    groups_.push_back(std::move(g));
  }

  void emit_fillers(UserPlan& u) {
    for (Platform plat : kPlatforms) {
      int n = spec_.fillers[static_cast<std::size_t>(plat)];
      for (int i = 0; i < n; ++i) {
        Post p;
        p.platform = plat;
        p.author_id = u.id;
        p.post_id = next_post_id(plat);
        // First and last filler pin the coverage interval to [w0, w1], so the
        // per-author analysis windows line up across platforms.
        p.timestamp = i == 0 ? w0_ : (i == n - 1 ? w1_ : rng_.uniform_int(w0_ + 1, w1_ - 1));
        std::vector<std::string> tokens;
        std::size_t len = static_cast<std::size_t>(rng_.uniform_int(6, 11));
        for (std::size_t j = 0; j < len; ++j) tokens.push_back(lex_.entity(rng_));
        apply_noise(tokens, spec_, rng_);
        p.text = join_tokens(tokens);
        p.urls = textnorm::extract_urls(p.text);
        p.content_type = plat == Platform::TW
                             ? (p.urls.empty() ? ContentType::Text : ContentType::Link)
                             : pick_content(u);
        p.engagement = make_engagement(u, plat, false);
        posts_.push_back(std::move(p));
      }
    }
  }

  // ---- labeled pairs -------------------------------------------------------

  void make_cross_pair(int cls) {
    std::vector<std::string> a = base_tokens();
    const std::size_t n = a.size();
    std::vector<std::string> b;
    if (cls == 0) {  // identical up to normalization
      b = a;
    } else {
      // Bands keep both stage-2 metrics clear of the 0.3 / 0.5 / 0.7 sweep
      // thresholds; with distinct tokens min(cosine, string) == k / n.
      static constexpr double kLo[] = {0, 0.74, 0.55, 0.36, 0.10};
      static constexpr double kHi[] = {0, 0.94, 0.68, 0.47, 0.27};
      std::size_t k_lo = static_cast<std::size_t>(std::ceil(kLo[cls] * static_cast<double>(n)));
      std::size_t k_hi = static_cast<std::size_t>(std::floor(kHi[cls] * static_cast<double>(n)));
      k_lo = std::clamp<std::size_t>(k_lo, 1, n - 1);
      k_hi = std::clamp<std::size_t>(k_hi, k_lo, n - 1);
      std::size_t k = static_cast<std::size_t>(
          rng_.uniform_int(static_cast<std::int64_t>(k_lo), static_cast<std::int64_t>(k_hi)));
      std::vector<std::size_t> idx(n);
      std::iota(idx.begin(), idx.end(), 0);
      rng_.shuffle(idx);
      idx.resize(k);
      std::sort(idx.begin(), idx.end());
      for (std::size_t i : idx) b.push_back(a[i]);
      if (rng_.chance(0.3)) b.push_back(junk_url());  // keeps k + a <= n, min unchanged
    }
    apply_noise(b, spec_, rng_);
    labeled_.push_back({join_tokens(a), join_tokens(b), true});
  }

  void make_decoy_pair(int cls) {
    std::vector<std::string> a = base_tokens();
    const std::size_t n = a.size();
    static constexpr double kLo[] = {0.00, 0.32, 0.52, 0.72};
    static constexpr double kHi[] = {0.27, 0.45, 0.65, 0.80};
    std::size_t s_lo = static_cast<std::size_t>(std::ceil(kLo[cls] * static_cast<double>(n)));
    std::size_t s_hi = static_cast<std::size_t>(std::floor(kHi[cls] * static_cast<double>(n)));
    if (s_hi >= n) s_hi = n - 1;
    if (s_lo > s_hi) s_lo = s_hi;
    std::size_t s = static_cast<std::size_t>(
        rng_.uniform_int(static_cast<std::int64_t>(s_lo), static_cast<std::int64_t>(s_hi)));
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    rng_.shuffle(idx);
    idx.resize(s);
    std::sort(idx.begin(), idx.end());
    std::vector<std::string> b;
    for (std::size_t i : idx) b.push_back(a[i]);
    while (b.size() < n) b.push_back(lex_.entity(rng_));
    rng_.shuffle(b);
    apply_noise(b, spec_, rng_);
    labeled_.push_back({join_tokens(a), join_tokens(b), false});
  }

  void build_labeled_pairs() {
    std::size_t n_cross = spec_.labeled_pairs / 2;
    std::size_t n_decoy = spec_.labeled_pairs - n_cross;
    auto cross_counts = quota_counts(n_cross, spec_.cross_classes);
    auto decoy_counts = quota_counts(n_decoy, spec_.decoy_classes);
    for (std::size_t cls = 0; cls < cross_counts.size(); ++cls) {
      for (std::size_t i = 0; i < cross_counts[cls]; ++i) make_cross_pair(static_cast<int>(cls));
    }
    for (std::size_t cls = 0; cls < decoy_counts.size(); ++cls) {
      for (std::size_t i = 0; i < decoy_counts[cls]; ++i) make_decoy_pair(static_cast<int>(cls));
    }
    rng_.shuffle(labeled_);
  }

  const SynthSpec& spec_;
  Rng rng_;
  Lexicon lex_;
  std::int64_t w0_ = 0, w1_ = 0, margin_ = 0;
  Pools pools_;
  std::array<std::size_t, 4> pattern_counts_{};
  std::array<std::array<std::size_t, 4>, 4> origin_counts_{};
  std::vector<UserPlan> users_;
  std::size_t interval_users_ = 0;
  std::array<std::size_t, 3> post_serial_{};
  std::size_t group_serial_ = 0;
  std::vector<Post> posts_;
  std::vector<pairing::CrossPostGroup> groups_;
  std::vector<LabeledPair> labeled_;
  analytics::UrlResolver resolver_;
  std::vector<DeficitDealer<4>> content_dealer_;
  std::vector<DeficitDealer<5>> url_dealer_;
  std::vector<DeficitDealer<2>> url_presence_dealer_;
};

}  // namespace

SynthOutput generate_synthetic(const SynthSpec& spec) { return Generator(spec).run(); }

}  // namespace crosspost::validation
