#pragma once

#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace gepc::wordnet {

enum class Pos : std::uint8_t { kNoun, kVerb, kAdjective, kAdverb };
inline constexpr std::array<Pos, 4> kAllPos{Pos::kNoun, Pos::kVerb, Pos::kAdjective, Pos::kAdverb};

std::string_view to_string(Pos pos);
std::optional<Pos> pos_from_char(char c);  // n v a s r

using SynsetIndex = std::uint32_t;

struct Synset {
  Pos pos;
  std::uint32_t offset;  // byte offset in data.<pos>
  bool satellite = false;
  std::vector<std::string> lemmas;
  std::vector<SynsetIndex> hypernyms;  // '@' and '@i'
  std::vector<SynsetIndex> hyponyms;   // '~', '~i' and inverted hypernyms
};

struct LoadOptions {
  bool virtual_noun_root = true;
  bool load_exceptions = true;
};

/// Part-of-speech set as a bit mask over Pos.
class PosSet {
 public:
  void insert(Pos p) { bits_ |= bit(p); }
  bool contains(Pos p) const { return (bits_ & bit(p)) != 0; }
  bool empty() const { return bits_ == 0; }
  std::size_t size() const { return static_cast<std::size_t>(std::popcount(bits_)); }
  friend bool operator==(PosSet, PosSet) = default;

 private:
  static std::uint8_t bit(Pos p) { return static_cast<std::uint8_t>(1u << static_cast<unsigned>(p)); }
  std::uint8_t bits_ = 0;
};

/// Parsed WordNet 3.0 database. Immutable after load; queries are thread-safe.
class SynsetGraph {
 public:
  static SynsetGraph load(const std::filesystem::path& dir, const LoadOptions& options = {});

  std::size_t size() const noexcept { return synsets_.size(); }
  std::size_t count(Pos pos) const;
  const Synset& synset(SynsetIndex i) const { return synsets_.at(i); }
  std::optional<SynsetIndex> find(Pos pos, std::uint32_t offset) const;
  bool virtual_noun_root() const noexcept { return virtual_root_; }

  /// Synsets listed for an exact lemma in index.<pos>, in sense order.
  std::span<const SynsetIndex> lookup(std::string_view lemma, Pos pos) const;

  /// Base forms of `word` indexed under `pos`: the exception list when it has
  /// an entry, otherwise one pass of the detachment rules; the word itself is
  /// always tried first.
  std::vector<std::string> morphy(std::string_view word, Pos pos) const;

  /// Every synset of `word` across all parts of speech (noun, verb, adj, adv order).
  std::vector<SynsetIndex> synsets_of(std::string_view word) const;

  PosSet pos_of_word(std::string_view word) const;

  /// Minimal hypernym-step distance from `s` to each ancestor (including itself).
  /// The virtual root, when enabled, appears under the key size().
  std::unordered_map<SynsetIndex, std::size_t> ancestor_distances(SynsetIndex s) const;

  /// Shortest path through a common subsumer; nullopt when none exists.
  std::optional<std::size_t> shortest_path_distance(SynsetIndex a, SynsetIndex b) const;

  /// 1 / (1 + distance), or nullopt when unconnected.
  std::optional<double> path_similarity(SynsetIndex a, SynsetIndex b) const;

 private:
  struct LemmaEntry {
    std::array<std::vector<SynsetIndex>, 4> by_pos;
  };

  std::vector<Synset> synsets_;
  std::unordered_map<std::uint64_t, SynsetIndex> by_offset_;
  std::unordered_map<std::string, LemmaEntry> lemma_index_;
  std::array<std::unordered_map<std::string, std::vector<std::string>>, 4> exceptions_;
  bool virtual_root_ = true;
};

std::string normalize_lemma(std::string_view word);

/// Maximum path similarity over all synset pairs; nullopt when either word is
/// unknown or no pair is connected.
std::optional<double> word_path_similarity(std::string_view w1, std::string_view w2, const SynsetGraph& graph);

/// Memoizing front-end for repeated word similarity queries. Not thread-safe;
/// give each thread its own instance.
class SimilarityCache {
 public:
  explicit SimilarityCache(const SynsetGraph& graph) : graph_(&graph) {}

  const std::vector<SynsetIndex>& synsets_of(const std::string& word);
  std::optional<double> similarity(const std::string& w1, const std::string& w2);
  const SynsetGraph& graph() const { return *graph_; }

 private:
  const std::unordered_map<SynsetIndex, std::size_t>& ancestors(SynsetIndex s);

  const SynsetGraph* graph_;
  std::unordered_map<std::string, std::vector<SynsetIndex>> words_;
  std::unordered_map<SynsetIndex, std::unordered_map<SynsetIndex, std::size_t>> ancestors_;
};

}  // namespace gepc::wordnet
