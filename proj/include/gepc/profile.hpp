#pragma once

#include <array>
#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gepc/text.hpp"
#include "gepc/wordnet.hpp"

namespace gepc::profile {

/// Type count of the full poetry corpus, the reference for type_share.
inline constexpr std::size_t kCorpusTypeTotal = 41857;

struct SurfaceProfile {
  std::size_t token_count = 0;
  std::size_t type_count = 0;
  std::size_t hapax_count = 0;
  double ttr = 0.0;
  double type_share = 0.0;
};

/// Counts over `lower`. Throws std::invalid_argument for an empty stream.
SurfaceProfile surface_profile(const text::TokenStream& stream, std::size_t corpus_type_total = kCorpusTypeTotal);

struct RankedWord {
  std::string word;
  std::size_t count = 0;
  friend bool operator==(const RankedWord&, const RankedWord&) = default;
};

struct PosProfile {
  std::size_t noun_count = 0;
  std::size_t verb_count = 0;
  std::size_t adj_count = 0;
  std::optional<double> av_quotient;  // nullopt when verb_count == 0
  std::vector<RankedWord> top_nouns;
  std::vector<RankedWord> top_verbs;
  std::vector<RankedWord> top_adjs;
};

/// A token counts once under each of its WordNet parts of speech (adverbs aside).
PosProfile pos_profile(const text::TokenStream& stream, const wordnet::SynsetGraph& graph, std::size_t top_k = 5);

struct RankedNGram {
  text::NGram gram;
  std::size_t count = 0;
};

/// Top-k n-grams (n = 2 or 3) by frequency, ties broken lexicographically.
std::vector<RankedNGram> collocations(const text::TokenStream& stream, std::size_t n, std::size_t k);

/// Positions i / |stream| of every token whose lower or stem equals the target.
std::vector<std::vector<double>> dispersion(const text::TokenStream& stream, const std::vector<std::string>& targets);

class SonorityTable {
 public:
  static SonorityTable parse(std::string_view contents, const std::string& name = "sonority");
  static SonorityTable load(const std::filesystem::path& file);
  static const SonorityTable& defaults();

  /// Rank of a lowercase ASCII letter, nullopt for anything else.
  std::optional<int> rank(char32_t letter) const;

 private:
  std::array<int, 26> ranks_{};
};

/// Mean rank of the ranked letters of `word` (case-insensitive); nullopt when none.
std::optional<double> sonority_word(std::string_view word, const SonorityTable& table = SonorityTable::defaults());

/// Unweighted mean of sonority_word over the scorable tokens; nullopt when none.
std::optional<double> sonority_text(const text::TokenStream& stream,
                                    const SonorityTable& table = SonorityTable::defaults());

struct AffectLabels {
  std::vector<std::string> pos;
  std::vector<std::string> neg;
  std::vector<std::string> aro;

  static AffectLabels parse(std::string_view contents, const std::string& name = "affect_labels");
  static AffectLabels load(const std::filesystem::path& file);
  static const AffectLabels& defaults();
};

enum Dimension : std::size_t { kPositive = 0, kNegative = 1, kArousal = 2 };

struct WordAffect {
  std::string word;
  std::size_t count = 0;  // tokens of this word in the stream
  std::array<double, 3> score{};
};

struct AffectResult {
  std::array<double, 3> mean{};  // over hit tokens
  std::size_t hits = 0;
  std::size_t in_scope = 0;
  double hit_rate = 0.0;
  std::array<std::string, 3> extremes;  // highest-scoring hit word per dimension
  std::vector<WordAffect> words;        // hit words, lexicographic
};

/// Label-summed path similarity per dimension, averaged over the tokens that
/// have at least one synset. Throws gepc::Error when no token is scorable.
AffectResult affect_scores(const text::TokenStream& stream, const AffectLabels& labels,
                           wordnet::SimilarityCache& cache);
AffectResult affect_scores(const text::TokenStream& stream, const AffectLabels& labels,
                           const wordnet::SynsetGraph& graph);

/// One row of the per-text lexical table.
struct TextProfile {
  std::string id;
  SurfaceProfile surface;
  std::optional<PosProfile> pos;
  std::vector<RankedNGram> bigrams;
  std::vector<RankedNGram> trigrams;
  std::optional<double> sonority_mean;
  std::optional<AffectResult> affect;
};

/// JSON with sorted keys and 4-decimal reals.
std::string to_json(const TextProfile& profile);

}  // namespace gepc::profile
