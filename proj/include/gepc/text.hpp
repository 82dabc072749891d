#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace gepc::text {

struct Token {
  std::string surface;
  std::string lower;
  std::string stem;  // filled by preprocess(); equals `lower` when stemming is off
  std::size_t char_offset = 0;  // byte offset of `surface` in the source text
  std::size_t sentence_index = 0;

  friend bool operator==(const Token&, const Token&) = default;
};

using TokenStream = std::vector<Token>;

/// A set of lowercase words loaded from a one-entry-per-line data file.
/// Blank lines and lines starting with '#' are ignored.
class WordList {
 public:
  WordList() = default;
  explicit WordList(std::vector<std::string> entries);

  static WordList parse(std::string_view contents);
  static WordList load(const std::filesystem::path& file);

  bool contains(std::string_view word) const { return entries_.count(std::string(word)) != 0; }
  std::size_t size() const noexcept { return entries_.size(); }
  const std::unordered_set<std::string>& entries() const noexcept { return entries_; }

 private:
  std::unordered_set<std::string> entries_;
};

using StopwordList = WordList;

/// The bundled 179-entry English stopword list.
const StopwordList& default_stopwords();
/// Abbreviations that do not end a sentence ("mr", "mrs", "st", "dr", ...).
const WordList& default_abbreviations();

/// Splits text into word tokens with sentence indices.
///
/// A word is a maximal run of letters; an apostrophe or hyphen is kept only
/// when letters follow it, so leading/trailing apostrophes are dropped and
/// hyphenated compounds stay whole. A sentence ends at '.', '!' or '?' when
/// whitespace and then a capital letter follow, unless the period closes an
/// abbreviation from `abbreviations`.
TokenStream tokenize(std::string_view text, const WordList& abbreviations = default_abbreviations());

/// Drops stopwords (matched on `lower`) and fills `stem`.
TokenStream preprocess(const TokenStream& stream, const StopwordList& stopwords, bool do_stem);

/// English Snowball (Porter2) stemmer, matching the NLTK implementation.
std::string porter2_stem(std::string_view word);

using NGram = std::vector<std::string>;

/// Every contiguous window of `n` lowercase tokens. Throws std::invalid_argument for n == 0.
std::vector<NGram> ngrams(const TokenStream& stream, std::size_t n);

std::string join(const NGram& gram, std::string_view separator = " ");

}  // namespace gepc::text
