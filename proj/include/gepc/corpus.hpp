#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <regex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gepc/text.hpp"

namespace gepc::corpus {

inline constexpr int kEarliestYear = 1623;
inline constexpr int kLatestYear = 1952;

struct RawText {
  std::string id;
  std::string author;
  std::string title;
  std::optional<int> year;
  std::string body;  // UTF-8, LF line endings
  std::string source_path;
};

struct ManifestRow {
  std::string id;
  std::string author;
  std::string title;
  std::optional<int> year;
  std::string path;  // relative to the corpus root
};

/// Reads a manifest CSV with header `id,author,title,year,path`.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& csv_file);
std::vector<ManifestRow> parse_manifest(std::string_view csv_text, const std::string& name = "manifest");

struct IngestError {
  std::string id;
  std::string path;
  std::string message;
  std::optional<std::size_t> offset;
};

struct IngestResult {
  std::vector<RawText> texts;
  std::vector<IngestError> errors;
};

/// Loads every manifest row; failures are collected per row and do not stop ingestion.
IngestResult ingest_directory(const std::filesystem::path& root, std::span<const ManifestRow> manifest);

/// UTF-8 (BOM stripped) with Latin-1 fallback, CRLF/CR normalized to LF.
/// Latin-1 input containing C1 control bytes (0x80-0x9F) is rejected with the
/// offset of the first such byte.
std::string decode_text(std::string_view bytes, const std::string& name);

struct PatternRule {
  std::string source;
  std::regex regex;
};

struct CleaningRules {
  std::vector<PatternRule> drop_before;
  std::vector<PatternRule> footer_markers;
  std::vector<PatternRule> header_markers;
  std::vector<PatternRule> prose_header_markers;
  std::vector<PatternRule> footnote_patterns;
  std::vector<PatternRule> footnote_ref_patterns;
  std::vector<PatternRule> page_number_patterns;
  std::vector<PatternRule> line_number_patterns;
  double prose_min_line_length = 55.0;
  double non_english_threshold = 0.25;
  std::size_t non_english_min_tokens = 8;
  double duplicate_similarity_threshold = 0.9;
  std::size_t duplicate_shingle_size = 5;
  text::WordList function_words;

  /// Parses a `key = value` rule file; throws ParseError on bad keys or patterns.
  static CleaningRules parse(std::string_view contents, const std::string& name = "rules");
  static CleaningRules load(const std::filesystem::path& file);
  /// The bundled rule file plus the bundled function-word list.
  static const CleaningRules& defaults();

  void validate() const;
};

enum class RemovalReason {
  kBoilerplate,
  kFooter,
  kHeader,
  kFootnote,
  kPageNumber,
  kLineNumber,
  kNonEnglish,
  kDuplicate,
};

std::string_view to_string(RemovalReason reason);

struct RemovedSpan {
  std::size_t begin = 0;  // byte offsets into the input body, half-open
  std::size_t end = 0;
  RemovalReason reason{};
  std::string rule;
};

struct CleaningReport {
  std::string text_id;
  std::string source_path;
  std::size_t input_bytes = 0;
  std::size_t output_bytes = 0;
  bool empty = false;
  std::vector<RemovedSpan> removed;
};

std::string to_json(const CleaningReport& report);

struct CleanedText {
  RawText text;
  CleaningReport report;
};

/// Removes non-poem material. Total: never throws for well-formed rules.
CleanedText clean_text(const RawText& raw, const CleaningRules& rules = CleaningRules::defaults());

/// Jaccard similarity of the `shingle`-token shingle sets of two token streams.
double shingle_jaccard(const text::TokenStream& a, const text::TokenStream& b, std::size_t shingle);

/// Fraction of tokens whose lowercase form is a function word (0 for no tokens).
double function_word_rate(const text::TokenStream& tokens, const text::WordList& function_words);

struct CompoundText {
  std::string author;
  std::string body;
  std::vector<std::string> source_ids;
  std::size_t word_count = 0;
};

/// One compound text per author, in first-appearance order, bodies separated by a blank line.
std::vector<CompoundText> concat_by_author(std::span<const RawText> texts);

}  // namespace gepc::corpus
