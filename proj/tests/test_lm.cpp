#include <gtest/gtest.h>

#include <cmath>

#include "gepc/error.hpp"
#include "gepc/lm.hpp"
#include "test_support.hpp"

using namespace gepc;
using namespace gepc::lm;
using gepc::testing::TempDir;

namespace {

TrigramModel toy(double k = 0.5, bool singletons = false) {
  const std::vector<text::TokenStream> s{text::tokenize("The cat sat. The cat ran.")};
  return TrigramModel::train(s, {k, singletons});
}

}  // namespace

TEST(Trigram, HandComputedToyProbabilities) {
  const auto m = toy();
  EXPECT_EQ(m.vocab_size(), 4u);
  EXPECT_NEAR(m.probability("the", "cat", "sat"), 1.0 / 3.0, 1e-12);
  EXPECT_NEAR(m.probability("<s>", "<s>", "the"), 5.0 / 9.0, 1e-12);
  EXPECT_NEAR(m.probability("<s>", "the", "cat"), 5.0 / 9.0, 1e-12);
  EXPECT_NEAR(m.probability("<s>", "<s>", "ran"), 1.0 / 9.0, 1e-12);
  EXPECT_NEAR(m.probability("cat", "sat", "the"), 0.2, 1e-12);  // unseen history: uniform over V + 1
  EXPECT_NEAR(m.probability("the", "cat", "dog"), 0.5 / 4.5, 1e-12);
  EXPECT_EQ(m.history_count("the", "cat"), 2u);
  EXPECT_EQ(m.trigram_count("the", "cat", "ran"), 1u);
  EXPECT_EQ(m.unigram_count("cat"), 2u);
}

TEST(Trigram, ProbabilityMassSumsToOnePerHistory) {
  const std::vector<text::TokenStream> s{
      text::tokenize("The lamb is white. The lamb is meek and mild. A tiger burns. The tiger burns bright.")};
  for (double k : {0.01, 0.5, 2.0}) {
    const auto m = TrigramModel::train(s, {k, false});
    auto outcomes = m.vocabulary();
    outcomes.emplace_back(kUnknown);
    std::vector<std::pair<std::string, std::string>> histories{{"<s>", "<s>"}, {"the", "lamb"}, {"lamb", "is"},
                                                               {"tiger", "burns"}, {"never", "seen"}};
    for (const auto& w1 : m.vocabulary())
      for (const auto& w2 : m.vocabulary()) histories.emplace_back(w1, w2);
    for (const auto& [w1, w2] : histories) {
      double total = 0.0;
      for (const auto& w : outcomes) total += m.probability(w1, w2, w);
      ASSERT_NEAR(total, 1.0, 1e-9) << w1 << " " << w2 << " k=" << k;
    }
  }
}

TEST(Trigram, DeterministicContinuationHasVanishingSurprisal) {
  const std::vector<text::TokenStream> s{text::tokenize("Slow moves the river.")};
  const auto m = TrigramModel::train(s, {1e-15, false});
  const auto r = surprisal(m, s[0]);
  ASSERT_EQ(r.values.size(), 4u);
  for (double v : r.values) EXPECT_LT(v, 1e-12);
  EXPECT_LT(r.mean, 1e-12);
}

TEST(Trigram, SurprisalIsNegativeLog2Probability) {
  const auto m = toy();
  const auto r = surprisal(m, text::tokenize("The cat sat."));
  ASSERT_EQ(r.values.size(), 3u);
  EXPECT_NEAR(r.values[0], -std::log2(5.0 / 9.0), 1e-12);
  EXPECT_NEAR(r.values[2], -std::log2(1.0 / 3.0), 1e-12);
  EXPECT_NEAR(r.mean, (r.values[0] + r.values[1] + r.values[2]) / 3.0, 1e-12);
  EXPECT_TRUE(surprisal(m, {}).values.empty());
}

TEST(Trigram, UnknownWordsAndSingletons) {
  const auto m = toy();
  EXPECT_EQ(m.map_word("dog"), kUnknown);
  EXPECT_EQ(m.map_word("cat"), "cat");
  const auto s = toy(0.5, true);
  EXPECT_FALSE(s.in_vocabulary("sat"));
  EXPECT_TRUE(s.in_vocabulary("cat"));
  EXPECT_EQ(s.vocab_size(), 2u);
  EXPECT_EQ(s.trigram_count("the", "cat", std::string(kUnknown)), 2u);
}

TEST(Trigram, SerializeRoundTrip) {
  const auto m = toy(0.25, true);
  const std::string text = m.serialize();
  const auto back = TrigramModel::parse(text);
  EXPECT_EQ(back.serialize(), text);
  EXPECT_DOUBLE_EQ(back.k(), 0.25);
  EXPECT_TRUE(back.singletons_to_unknown());
  EXPECT_EQ(back.vocabulary(), m.vocabulary());
  for (const char* w : {"the", "cat", "sat", "dog"})
    EXPECT_DOUBLE_EQ(back.probability("the", "cat", w), m.probability("the", "cat", w));
  TempDir dir;
  m.save(dir.path() / "m.counts");
  EXPECT_EQ(TrigramModel::load(dir.path() / "m.counts").serialize(), text);
}

TEST(Trigram, ParseRejectsMalformedInput) {
  EXPECT_THROW(TrigramModel::parse("# k=0.5\nxx\tthe cat sat\n"), ParseError);
  EXPECT_THROW(TrigramModel::parse("# k=0.5\n3\tthe cat\n"), ParseError);
  EXPECT_THROW(TrigramModel::parse("# k=banana\n"), ParseError);
  EXPECT_THROW(TrigramModel::load("/nonexistent/model"), Error);
}

TEST(Trigram, InvalidSmoothing) {
  const std::vector<text::TokenStream> s{text::tokenize("a b")};
  EXPECT_THROW(TrigramModel::train(s, {0.0, false}), std::invalid_argument);
  EXPECT_THROW(TrigramModel::train(s, {-1.0, false}), std::invalid_argument);
}
