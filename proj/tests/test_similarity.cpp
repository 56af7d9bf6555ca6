#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crosspost/errors.hpp"
#include "crosspost/similarity.hpp"
#include "support/oracles.hpp"

using namespace crosspost;
using namespace crosspost::similarity;
using oracles::from_tokens;

TEST_CASE("stage 1 is normalized equality of non-empty texts") {
  CHECK(stage1_exact(textnorm::normalize("Big Win today!"),
                     textnorm::normalize("big   win TODAY!")));
  CHECK(stage1_exact(textnorm::normalize("big win"), textnorm::normalize("big win!!")));
  CHECK_FALSE(stage1_exact(textnorm::normalize(""), textnorm::normalize("")));
  CHECK_FALSE(stage1_exact(textnorm::normalize("a"), textnorm::normalize("b")));
}

TEST_CASE("cosine on token frequency vectors") {
  CHECK(cosine_sim(from_tokens({"a", "b", "c"}), from_tokens({"a", "b", "d"})) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(cosine_sim(from_tokens({"x", "y"}), from_tokens({"x", "y"})) == 1.0);
  CHECK(cosine_sim(from_tokens({"a"}), from_tokens({"b"})) == 0.0);
  CHECK(cosine_sim(from_tokens({}), from_tokens({"b"})) == 0.0);
}

TEST_CASE("string similarity normalizes by the longer text") {
  CHECK(string_sim(from_tokens({"a", "b", "c", "d"}), from_tokens({"a", "b"})) == 0.5);
  CHECK(string_sim(from_tokens({"a", "b"}), from_tokens({"a", "b"})) == 1.0);
  // multiset intersection counts repeated tokens by their paired occurrences
  CHECK(string_sim(from_tokens({"a", "a", "b"}), from_tokens({"a", "c", "c"})) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(string_sim(from_tokens({}), from_tokens({})) == 0.0);
}

TEST_CASE("two stage classification") {
  auto a = from_tokens({"a", "b", "c"});
  auto b = from_tokens({"a", "b", "d"});
  auto at_half = classify(a, b, 0.5);
  CHECK(at_half.cosine == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(at_half.string_sim == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK_FALSE(at_half.stage1_match);
  CHECK(at_half.is_cross);
  CHECK_FALSE(classify(a, b, 0.7).is_cross);

  auto same = classify(from_tokens({"x", "y"}), from_tokens({"x", "y"}), 0.5);
  CHECK(same.stage1_match);
  CHECK(same.is_cross);
  CHECK(same.cosine == 1.0);
  CHECK(same.string_sim == 1.0);
  CHECK(same.mean_score() == 1.0);

  auto disjoint = classify(from_tokens({"a"}), from_tokens({"b"}), 0.5);
  CHECK_FALSE(disjoint.is_cross);
  CHECK(disjoint.cosine == 0.0);
  CHECK(disjoint.string_sim == 0.0);
}

TEST_CASE("threshold domain") {
  auto a = from_tokens({"a"});
  CHECK_THROWS_AS(classify(a, a, 0.0), config_error);
  CHECK_THROWS_AS(classify(a, a, 1.0), config_error);
  CHECK_THROWS_AS(classify(a, a, 1.5), config_error);
  CHECK_NOTHROW(classify(a, a, 0.01));
}

namespace {

std::vector<std::string> random_tokens(std::mt19937_64& rng, std::size_t max_len) {
  static const char* kVocab[] = {"a", "b", "c", "d", "e", "f", "win", "game", "#tag"};
  std::vector<std::string> out;
  std::size_t n = rng() % (max_len + 1);
  for (std::size_t i = 0; i < n; ++i) out.push_back(kVocab[rng() % std::size(kVocab)]);
  return out;
}

}  // namespace

TEST_CASE("metrics agree with naive references on random token lists") {
  std::mt19937_64 rng(23);
  for (int iter = 0; iter < 2000; ++iter) {
    auto ta = random_tokens(rng, 12);
    auto tb = random_tokens(rng, 12);
    auto a = from_tokens(ta);
    auto b = from_tokens(tb);
    CHECK(cosine_sim(a, b) == doctest::Approx(oracles::naive_cosine(ta, tb)).epsilon(1e-12));
    CHECK(string_sim(a, b) ==
          doctest::Approx(oracles::naive_string_sim(ta, tb)).epsilon(1e-12));

    auto v = classify(a, b, 0.5);
    auto w = classify(b, a, 0.5);
    CHECK(v == w);  // symmetry in every field
    CHECK(v.cosine >= 0.0);
    CHECK(v.cosine <= 1.0);
    CHECK(v.string_sim >= 0.0);
    CHECK(v.string_sim <= 1.0);
    if (v.stage1_match) {
      CHECK(v.cosine == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(v.string_sim == doctest::Approx(1.0).epsilon(1e-12));
    }
    // stage-2 monotonicity in the threshold
    if (!v.is_cross) {
      CHECK_FALSE(classify(a, b, 0.7).is_cross);
      CHECK_FALSE(classify(a, b, 0.9).is_cross);
    }
  }
}

TEST_CASE("appending shared tokens never decreases the overlap count") {
  std::mt19937_64 rng(29);
  for (int iter = 0; iter < 300; ++iter) {
    auto ta = random_tokens(rng, 8);
    auto tb = random_tokens(rng, 8);
    if (ta.empty() || tb.empty()) continue;
    double before = string_sim(from_tokens(ta), from_tokens(tb)) *
                    static_cast<double>(std::max(ta.size(), tb.size()));
    std::string shared = "shared";
    ta.push_back(shared);
    tb.push_back(shared);
    double after = string_sim(from_tokens(ta), from_tokens(tb)) *
                   static_cast<double>(std::max(ta.size(), tb.size()));
    CHECK(after >= before - 1e-9);
  }
}
