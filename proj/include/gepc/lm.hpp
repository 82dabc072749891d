#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gepc/text.hpp"

namespace gepc::lm {

inline constexpr std::string_view kPad = "<s>";
inline constexpr std::string_view kUnknown = "<unk>";

struct TrainOptions {
  double k = 0.5;
  bool singletons_to_unknown = false;
};

/// Add-k smoothed trigram model over lowercase tokens. Each sentence is
/// preceded by two pad symbols; the outcome space is the training vocabulary
/// plus the unknown symbol.
class TrigramModel {
 public:
  using Trigram = std::array<std::string, 3>;

  static TrigramModel train(std::span<const text::TokenStream> streams, const TrainOptions& options = {});

  double k() const noexcept { return k_; }
  bool singletons_to_unknown() const noexcept { return singletons_; }
  /// Number of distinct training words, excluding pad and unknown symbols.
  std::size_t vocab_size() const noexcept { return vocab_.size(); }
  bool in_vocabulary(std::string_view w) const { return vocab_.count(std::string(w)) != 0; }
  std::vector<std::string> vocabulary() const;

  std::uint64_t unigram_count(std::string_view w) const;
  /// Number of trigram tokens whose first two words are (w1, w2).
  std::uint64_t history_count(std::string_view w1, std::string_view w2) const;
  std::uint64_t trigram_count(std::string_view w1, std::string_view w2, std::string_view w3) const;

  /// P(w | w1 w2) = (c(w1 w2 w) + k) / (c(w1 w2) + k (V + 1)); unknown words map to <unk>.
  double probability(std::string_view w1, std::string_view w2, std::string_view w) const;

  std::string map_word(std::string_view w) const;

  /// Sorted "count<TAB>w1 w2 w3" lines preceded by '#' metadata lines.
  std::string serialize() const;
  static TrigramModel parse(std::string_view contents, const std::string& name = "model");
  void save(const std::filesystem::path& file) const;
  static TrigramModel load(const std::filesystem::path& file);

 private:
  static std::string key(std::string_view a, std::string_view b);
  static std::string key(std::string_view a, std::string_view b, std::string_view c);
  void add(const std::string& w1, const std::string& w2, const std::string& w3, std::uint64_t count);

  double k_ = 0.5;
  bool singletons_ = false;
  std::unordered_set<std::string> vocab_;
  std::unordered_map<std::string, std::uint64_t> unigrams_;
  std::unordered_map<std::string, std::uint64_t> histories_;
  std::map<std::string, std::uint64_t> trigrams_;  // key "w1 w2 w3"
};

TrigramModel train_trigram(std::span<const text::TokenStream> streams, double k, bool singletons_to_unknown = false);

struct SurprisalResult {
  std::vector<double> values;  // bits, one per token
  double mean = 0.0;
};

SurprisalResult surprisal(const TrigramModel& model, const text::TokenStream& stream);

}  // namespace gepc::lm
