#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gepc/data.hpp"
#include "gepc/text.hpp"
#include "gepc/utf8.hpp"
#include "test_support.hpp"

using namespace gepc;
using gepc::testing::fixtures;
using gepc::testing::read_file;

namespace {

std::vector<std::string> lowers(const text::TokenStream& s) {
  std::vector<std::string> out;
  for (const auto& t : s) out.push_back(t.lower);
  return out;
}

}  // namespace

TEST(Utf8, DecodesMultibyteAndFlagsInvalid) {
  const std::string s = "a\xc3\xa9\xe2\x80\x99";
  auto d = utf8::decode(s, 1);
  EXPECT_TRUE(d.valid);
  EXPECT_EQ(d.code_point, U'é');
  EXPECT_EQ(d.length, 2u);
  EXPECT_EQ(utf8::decode(s, 3).code_point, U'’');
  EXPECT_FALSE(utf8::first_invalid(s).has_value());
  EXPECT_EQ(utf8::first_invalid("ab\xff"), 2u);
  EXPECT_EQ(utf8::first_invalid("\xc3"), 0u);
}

TEST(Utf8, Latin1RoundTripAndCaseFold) {
  EXPECT_EQ(utf8::from_latin1("caf\xe9"), "caf\xc3\xa9");
  EXPECT_EQ(utf8::fold_case("\xc3\x89T\xc3\x89"), "\xc3\xa9t\xc3\xa9");
  EXPECT_EQ(utf8::fold_case("O\xe2\x80\x99"), "o'");
  std::string out;
  utf8::append(out, U'\U0001F600');
  EXPECT_EQ(out.size(), 4u);
  EXPECT_EQ(utf8::decode(out, 0).code_point, U'\U0001F600');
}

TEST(Stopwords, BundledListHas179Entries) {
  EXPECT_EQ(text::default_stopwords().size(), 179u);
  for (const char* w : {"the", "and", "i", "me", "wouldn't", "y", "ain"}) EXPECT_TRUE(text::default_stopwords().contains(w)) << w;
  EXPECT_FALSE(text::default_stopwords().contains("love"));
}

TEST(WordList, ParseSkipsCommentsAndBlanks) {
  const auto w = text::WordList::parse("# header\n\nOne\ntwo\n  three  \n");
  EXPECT_EQ(w.size(), 3u);
  EXPECT_TRUE(w.contains("one"));
  EXPECT_TRUE(w.contains("three"));
}

TEST(Tokenize, WordsApostrophesAndHyphens) {
  const auto s = text::tokenize("'Tis the dove's well-made nest -- O'er the hill' o' dreams");
  EXPECT_EQ(lowers(s), (std::vector<std::string>{"tis", "the", "dove's", "well-made", "nest", "o'er", "the", "hill",
                                                 "o", "dreams"}));
  EXPECT_EQ(s[0].surface, "Tis");
  EXPECT_EQ(s[0].char_offset, 1u);
}

TEST(Tokenize, SentenceBoundariesRespectAbbreviations) {
  const auto s = text::tokenize("Mr. Gray came. He sang! Then st. Agnes slept? no");
  std::vector<std::size_t> idx;
  for (const auto& t : s) idx.push_back(t.sentence_index);
  // "no" follows '?' but is lowercase, so the sentence continues.
  EXPECT_EQ(idx, (std::vector<std::size_t>{0, 0, 0, 1, 1, 2, 2, 2, 2, 2}));
}

TEST(Tokenize, TypographicApostropheAndUnicodeLetters) {
  const auto s = text::tokenize("Heav\xe2\x80\x99n\xe2\x80\x99s caf\xc3\xa9 NA\xc3\x8fVE 1848");
  EXPECT_EQ(lowers(s), (std::vector<std::string>{"heav'n's", "caf\xc3\xa9", "na\xc3\xafve"}));
}

TEST(Tokenize, OffsetsPointAtSurface) {
  const std::string text = "  The  lamb,\nthe\tmother.";
  for (const auto& t : text::tokenize(text)) EXPECT_EQ(text.substr(t.char_offset, t.surface.size()), t.surface);
}

TEST(Preprocess, DropsStopwordsAndStems) {
  const auto s = text::preprocess(text::tokenize("The lambs are running to their mothers"), text::default_stopwords(), true);
  std::vector<std::string> stems;
  for (const auto& t : s) stems.push_back(t.stem);
  EXPECT_EQ(stems, (std::vector<std::string>{"lamb", "run", "mother"}));
  const auto u = text::preprocess(text::tokenize("The lambs"), text::default_stopwords(), false);
  ASSERT_EQ(u.size(), 1u);
  EXPECT_EQ(u[0].stem, "lambs");
}

TEST(Preprocess, PropertyNeverKeepsStopwordsAndPreservesOrder) {
  std::mt19937 rng(3);
  std::vector<std::string> pool{"the", "lamb", "and", "mother", "is", "singing", "of", "love", "I", "rivers"};
  for (int trial = 0; trial < 200; ++trial) {
    std::string text;
    const int n = static_cast<int>(rng() % 30);
    for (int i = 0; i < n; ++i) text += pool[rng() % pool.size()] + " ";
    const auto tokens = text::tokenize(text);
    const auto kept = text::preprocess(tokens, text::default_stopwords(), true);
    std::size_t expected = 0;
    for (const auto& t : tokens) expected += text::default_stopwords().contains(t.lower) ? 0 : 1;
    ASSERT_EQ(kept.size(), expected);
    for (std::size_t i = 0; i + 1 < kept.size(); ++i) ASSERT_LT(kept[i].char_offset, kept[i + 1].char_offset);
    for (const auto& t : kept) ASSERT_FALSE(text::default_stopwords().contains(t.lower));
  }
}

TEST(Porter2, MatchesFrozenReferenceVocabulary) {
  const std::string vocab = read_file(fixtures() / "oracles" / "porter2_vocab.tsv");
  ASSERT_FALSE(vocab.empty());
  std::istringstream in(vocab);
  std::string line;
  std::size_t n = 0, bad = 0;
  while (std::getline(in, line)) {
    const auto tab = line.find('\t');
    const std::string word = line.substr(0, tab), stem = line.substr(tab + 1);
    if (text::porter2_stem(word) != stem) {
      ADD_FAILURE() << word << ": got " << text::porter2_stem(word) << ", want " << stem;
      if (++bad > 20) break;
    }
    ++n;
  }
  EXPECT_GT(n, 5000u);
}

TEST(Porter2, ClassicCases) {
  EXPECT_EQ(text::porter2_stem("generously"), "generous");
  EXPECT_EQ(text::porter2_stem("running"), "run");
  EXPECT_EQ(text::porter2_stem("skies"), "sky");
  EXPECT_EQ(text::porter2_stem("dying"), "die");
  EXPECT_EQ(text::porter2_stem("squire"), "squir");
  EXPECT_EQ(text::porter2_stem("a"), "a");
}

TEST(Porter2, TotalOnDegenerateInput) {
  for (const char* w : {"", "'", "y", "yyy", "''s", "-"}) EXPECT_NO_THROW(text::porter2_stem(w));
}

TEST(NGrams, WindowsAndErrors) {
  const auto s = text::tokenize("a b c d");
  EXPECT_EQ(text::ngrams(s, 2).size(), 3u);
  EXPECT_EQ(text::ngrams(s, 5).size(), 0u);
  EXPECT_EQ(text::join(text::ngrams(s, 3)[1]), "b c d");
  EXPECT_THROW(text::ngrams(s, 0), std::invalid_argument);
}

TEST(EmbeddedData, MatchesRepositoryFiles) {
  const std::filesystem::path data = std::filesystem::path(GEPC_SOURCE_DIR) / "data";
  EXPECT_EQ(data::stopwords(), read_file(data / "stopwords_en.txt"));
  EXPECT_EQ(data::cleaning_rules(), read_file(data / "cleaning_rules.txt"));
  EXPECT_EQ(data::sonority(), read_file(data / "sonority.txt"));
  EXPECT_EQ(data::affect_labels(), read_file(data / "affect_labels.txt"));
}
