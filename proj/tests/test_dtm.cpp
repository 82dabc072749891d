#include <gtest/gtest.h>

#include <map>
#include <random>

#include "gepc/dtm.hpp"
#include "gepc/error.hpp"
#include "test_support.hpp"

using namespace gepc;
using namespace gepc::dtm;
using gepc::testing::TempDir;

namespace {

text::TokenStream prep(const std::string& s) { return text::preprocess(text::tokenize(s), text::default_stopwords(), true); }

}  // namespace

TEST(Dtm, CountsStemsWithSortedVocabulary) {
  const std::vector<std::string> ids{"a", "b"};
  const std::vector<text::TokenStream> streams{prep("The lambs and the lamb sing"), prep("Squires sing of the lamb")};
  const auto r = build_dtm(ids, streams, {1, 1.0});
  EXPECT_EQ(r.vocabulary.terms, (std::vector<std::string>{"lamb", "sing", "squir"}));
  EXPECT_EQ(r.matrix.count(0, 0), 2u);
  EXPECT_EQ(r.matrix.count(1, 2), 1u);
  EXPECT_EQ(r.matrix.count(0, 2), 0u);
  EXPECT_EQ(r.matrix.row_token_totals(), (std::vector<std::uint64_t>{3, 3}));
  EXPECT_DOUBLE_EQ(r.vocabulary.doc_freq[0], 1.0);
  EXPECT_EQ(r.vocabulary.find("sing"), 1u);
  EXPECT_FALSE(r.vocabulary.find("the").has_value());
}

TEST(Dtm, PruningByCountAndDocumentFraction) {
  const std::vector<std::string> ids{"a", "b", "c"};
  const std::vector<text::TokenStream> streams{prep("lamb rose rose"), prep("lamb tiger"), prep("lamb rose")};
  EXPECT_EQ(build_dtm(ids, streams, {1, 0.95}).vocabulary.terms, (std::vector<std::string>{"rose", "tiger"}));
  EXPECT_EQ(build_dtm(ids, streams, {2, 1.0}).vocabulary.terms, (std::vector<std::string>{"lamb", "rose"}));
  // Pruned terms still count toward the document totals.
  EXPECT_EQ(build_dtm(ids, streams, {2, 0.95}).matrix.row_token_totals()[1], 2u);
}

TEST(Dtm, PropertyCountsMatchDirectTally) {
  std::mt19937 rng(5);
  const std::vector<std::string> words{"lamb", "rose", "tiger", "river", "star", "night", "love", "bell"};
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<std::string> ids;
    std::vector<text::TokenStream> streams;
    std::vector<std::map<std::string, std::uint64_t>> tally;
    const std::size_t docs = 1 + rng() % 6;
    for (std::size_t d = 0; d < docs; ++d) {
      std::string s;
      tally.emplace_back();
      const int n = 1 + static_cast<int>(rng() % 40);
      for (int i = 0; i < n; ++i) {
        const auto& w = words[rng() % words.size()];
        s += w + " ";
        ++tally.back()[w];
      }
      ids.push_back("d" + std::to_string(d));
      streams.push_back(prep(s));
    }
    const auto r = build_dtm(ids, streams, {1, 1.0});
    for (std::size_t d = 0; d < docs; ++d) {
      std::uint64_t sum = 0;
      for (const auto& [w, c] : tally[d]) {
        ASSERT_EQ(r.matrix.count(d, *r.vocabulary.find(w)), c);
        sum += c;
      }
      ASSERT_EQ(r.matrix.row_sum(d), sum);
      ASSERT_EQ(r.matrix.row_token_totals()[d], sum);
    }
    for (std::size_t i = 1; i < r.vocabulary.size(); ++i) ASSERT_LT(r.vocabulary.terms[i - 1], r.vocabulary.terms[i]);
  }
}

TEST(Dtm, RatesPerThousandAndDenominators) {
  const std::vector<std::string> ids{"a", "b"};
  const std::vector<text::TokenStream> streams{prep("lamb lamb rose tiger"), prep("rose")};
  const std::vector<std::uint64_t> raw{10, 2};
  const auto r = build_dtm(ids, streams, {1, 1.0}, raw);
  const auto post = rates_per_1000(r.matrix);
  EXPECT_DOUBLE_EQ(post(0, *r.vocabulary.find("lamb")), 500.0);
  EXPECT_DOUBLE_EQ(post(1, *r.vocabulary.find("rose")), 1000.0);
  const auto pre = rates_per_1000(r.matrix, RateDenominator::kPreStopword);
  EXPECT_DOUBLE_EQ(pre(0, *r.vocabulary.find("lamb")), 200.0);
  EXPECT_DOUBLE_EQ(pre(1, *r.vocabulary.find("rose")), 500.0);
}

TEST(Dtm, ZeroLengthDocumentRatesNameTheDocument) {
  const std::vector<std::string> ids{"full", "hollow"};
  const std::vector<text::TokenStream> streams{prep("lamb"), prep("the and of")};
  const auto r = build_dtm(ids, streams, {1, 1.0});
  try {
    rates_per_1000(r.matrix);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("hollow"), std::string::npos);
  }
}

TEST(Dtm, SaveLoadRoundTrip) {
  const std::vector<std::string> ids{"Ann, the elder", "Bo"};
  const std::vector<text::TokenStream> streams{prep("lamb lamb rose"), prep("rose \"tiger\" river")};
  const std::vector<std::uint64_t> raw{7, 9};
  const auto r = build_dtm(ids, streams, {1, 1.0}, raw);
  TempDir dir;
  save(r, dir.path() / "m");
  const auto back = load(dir.path() / "m");
  EXPECT_EQ(back.vocabulary.terms, r.vocabulary.terms);
  EXPECT_EQ(back.matrix.rows(), r.matrix.rows());
  EXPECT_EQ(back.matrix.to_dense(), r.matrix.to_dense());
  EXPECT_EQ(back.matrix.row_token_totals(), r.matrix.row_token_totals());
  EXPECT_EQ(back.matrix.row_raw_totals(), raw);
  EXPECT_THROW(load(dir.path() / "absent"), Error);
}

TEST(Dtm, DenseMatchesSparse) {
  const std::vector<std::string> ids{"a", "b"};
  const std::vector<text::TokenStream> streams{prep("lamb rose rose"), prep("tiger")};
  const auto r = build_dtm(ids, streams, {1, 1.0});
  const auto dense = r.matrix.to_dense();
  for (std::size_t i = 0; i < dense.rows(); ++i)
    for (std::size_t j = 0; j < dense.cols(); ++j) EXPECT_EQ(dense(i, j), static_cast<double>(r.matrix.count(i, j)));
  EXPECT_EQ(r.matrix.row_index("b"), 1u);
  EXPECT_FALSE(r.matrix.row_index("z").has_value());
}
