#include "gepc/wordnet.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <fstream>
#include <sstream>

#include "gepc/error.hpp"

namespace gepc::wordnet {
namespace fs = std::filesystem;

std::string_view to_string(Pos pos) {
  switch (pos) {
    case Pos::kNoun: return "noun";
    case Pos::kVerb: return "verb";
    case Pos::kAdjective: return "adjective";
    case Pos::kAdverb: return "adverb";
  }
  return "unknown";
}

std::optional<Pos> pos_from_char(char c) {
  switch (c) {
    case 'n': return Pos::kNoun;
    case 'v': return Pos::kVerb;
    case 'a':
    case 's': return Pos::kAdjective;
    case 'r': return Pos::kAdverb;
    default: return std::nullopt;
  }
}

std::string normalize_lemma(std::string_view word) {
  std::string out;
  out.reserve(word.size());
  for (char c : word) {
    if (c == ' ') out.push_back('_');
    else out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

namespace {

constexpr std::array<const char*, 4> kFileSuffix{"noun", "verb", "adj", "adv"};

std::size_t pos_index(Pos p) { return static_cast<std::size_t>(p); }

std::uint64_t key(Pos pos, std::uint32_t offset) {
  return (static_cast<std::uint64_t>(pos_index(pos)) << 32) | offset;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("missing WordNet file " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Whitespace tokenizer over one line that reports where it failed.
class Fields {
 public:
  Fields(std::string_view line, const std::string& file, std::size_t line_offset)
      : line_(line), file_(file), base_(line_offset) {}

  std::string_view next(const char* what) {
    while (pos_ < line_.size() && line_[pos_] == ' ') ++pos_;
    if (pos_ >= line_.size()) fail(std::string("missing ") + what);
    const std::size_t start = pos_;
    while (pos_ < line_.size() && line_[pos_] != ' ') ++pos_;
    return line_.substr(start, pos_ - start);
  }

  template <typename T>
  T number(const char* what, int base = 10) {
    const auto f = next(what);
    T v{};
    const auto [p, ec] = std::from_chars(f.data(), f.data() + f.size(), v, base);
    if (ec != std::errc() || p != f.data() + f.size()) fail(std::string("bad ") + what + " '" + std::string(f) + "'");
    return v;
  }

  [[noreturn]] void fail(const std::string& message) const { throw ParseError(file_, base_ + pos_, message); }

 private:
  std::string_view line_;
  const std::string& file_;
  std::size_t base_;
  std::size_t pos_ = 0;
};

template <typename F>
void for_each_line(std::string_view contents, F&& f) {
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && !line.starts_with("  ")) f(line, pos);
    pos = end + 1;
  }
}

std::string strip_adjective_marker(std::string_view lemma) {
  // data.adj lemmas may carry a syntactic marker such as "(a)", "(p)" or "(ip)".
  if (lemma.ends_with(")")) {
    const auto open = lemma.rfind('(');
    if (open != std::string_view::npos) lemma = lemma.substr(0, open);
  }
  return std::string(lemma);
}

struct PendingPointer {
  SynsetIndex from;
  Pos target_pos;
  std::uint32_t target_offset;
  bool hypernym;  // otherwise hyponym
  std::string file;
  std::size_t offset;
};

void push_unique(std::vector<SynsetIndex>& v, SynsetIndex x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
}

}  // namespace

SynsetGraph SynsetGraph::load(const fs::path& dir, const LoadOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error("WordNet directory not found: " + dir.string());
  SynsetGraph g;
  g.virtual_root_ = options.virtual_noun_root;
  std::vector<PendingPointer> pointers;

  for (Pos pos : kAllPos) {
    const fs::path file = dir / (std::string("data.") + kFileSuffix[pos_index(pos)]);
    const std::string name = file.string();
    const std::string contents = read_file(file);
    for_each_line(contents, [&](std::string_view line, std::size_t line_offset) {
      Fields f(line, name, line_offset);
      const auto offset = f.number<std::uint32_t>("synset offset");
      if (offset != line_offset) f.fail("synset offset " + std::to_string(offset) + " does not match byte offset");
      f.next("lexicographer file number");
      const auto type = f.next("synset type");
      const auto p = type.size() == 1 ? pos_from_char(type[0]) : std::nullopt;
      if (!p || *p != pos) f.fail("synset type '" + std::string(type) + "' does not belong in " + name);

      Synset s{pos, offset, type[0] == 's', {}, {}, {}};
      const auto n_words = f.number<unsigned>("word count", 16);
      if (n_words == 0) f.fail("synset without lemmas");
      for (unsigned i = 0; i < n_words; ++i) {
        s.lemmas.push_back(strip_adjective_marker(f.next("lemma")));
        f.next("lex id");
      }
      const SynsetIndex index = static_cast<SynsetIndex>(g.synsets_.size());
      const auto n_pointers = f.number<unsigned>("pointer count");
      for (unsigned i = 0; i < n_pointers; ++i) {
        const auto symbol = f.next("pointer symbol");
        const auto target = f.number<std::uint32_t>("pointer offset");
        const auto target_pos_field = f.next("pointer part of speech");
        f.next("source/target");
        const auto target_pos = target_pos_field.size() == 1 ? pos_from_char(target_pos_field[0]) : std::nullopt;
        if (!target_pos) f.fail("bad pointer part of speech '" + std::string(target_pos_field) + "'");
        const bool hyper = symbol == "@" || symbol == "@i";
        const bool hypo = symbol == "~" || symbol == "~i";
        if (hyper || hypo) pointers.push_back({index, *target_pos, target, hyper, name, line_offset});
      }
      if (!g.by_offset_.emplace(key(pos, offset), index).second) f.fail("duplicate synset offset");
      g.synsets_.push_back(std::move(s));
    });
  }

  for (const auto& ptr : pointers) {
    const auto target = g.find(ptr.target_pos, ptr.target_offset);
    if (!target) throw ParseError(ptr.file, ptr.offset, "pointer to missing synset " + std::to_string(ptr.target_offset));
    const SynsetIndex upper = ptr.hypernym ? *target : ptr.from;
    const SynsetIndex lower = ptr.hypernym ? ptr.from : *target;
    push_unique(g.synsets_[lower].hypernyms, upper);
    push_unique(g.synsets_[upper].hyponyms, lower);
  }

  for (Pos pos : kAllPos) {
    const fs::path file = dir / (std::string("index.") + kFileSuffix[pos_index(pos)]);
    const std::string name = file.string();
    const std::string contents = read_file(file);
    for_each_line(contents, [&](std::string_view line, std::size_t line_offset) {
      Fields f(line, name, line_offset);
      const std::string lemma(f.next("lemma"));
      const auto p = f.next("part of speech");
      if (p.size() != 1 || pos_from_char(p[0]) != pos) f.fail("part of speech '" + std::string(p) + "' in " + name);
      const auto n_synsets = f.number<unsigned>("synset count");
      const auto n_pointers = f.number<unsigned>("pointer count");
      for (unsigned i = 0; i < n_pointers; ++i) f.next("pointer symbol");
      f.number<unsigned>("sense count");
      f.number<unsigned>("tagged sense count");
      auto& targets = g.lemma_index_[lemma].by_pos[pos_index(pos)];
      for (unsigned i = 0; i < n_synsets; ++i) {
        const auto offset = f.number<std::uint32_t>("synset offset");
        const auto s = g.find(pos, offset);
        if (!s) f.fail("lemma '" + lemma + "' points to missing synset " + std::to_string(offset));
        targets.push_back(*s);
      }
    });
  }

  if (options.load_exceptions) {
    for (Pos pos : kAllPos) {
      const fs::path file = dir / (std::string(kFileSuffix[pos_index(pos)]) + ".exc");
      if (!fs::exists(file, ec)) continue;
      const std::string contents = read_file(file);
      auto& map = g.exceptions_[pos_index(pos)];
      for_each_line(contents, [&](std::string_view line, std::size_t line_offset) {
        Fields f(line, file.string(), line_offset);
        const std::string inflected(f.next("inflected form"));
        std::vector<std::string> bases;
        std::istringstream rest{std::string(line.substr(inflected.size()))};
        for (std::string b; rest >> b;) bases.push_back(b);
        if (bases.empty()) f.fail("exception without base form");
        map[inflected] = std::move(bases);
      });
    }
  }
  return g;
}

std::size_t SynsetGraph::count(Pos pos) const {
  return static_cast<std::size_t>(
      std::count_if(synsets_.begin(), synsets_.end(), [pos](const Synset& s) { return s.pos == pos; }));
}

std::optional<SynsetIndex> SynsetGraph::find(Pos pos, std::uint32_t offset) const {
  const auto it = by_offset_.find(key(pos, offset));
  if (it == by_offset_.end()) return std::nullopt;
  return it->second;
}

std::span<const SynsetIndex> SynsetGraph::lookup(std::string_view lemma, Pos pos) const {
  const auto it = lemma_index_.find(std::string(lemma));
  if (it == lemma_index_.end()) return {};
  return it->second.by_pos[pos_index(pos)];
}

std::vector<std::string> SynsetGraph::morphy(std::string_view word, Pos pos) const {
  struct Rule {
    std::string_view suffix, replacement;
  };
  static constexpr Rule kNoun[] = {{"s", ""},      {"ses", "s"},    {"ves", "f"},     {"xes", "x"},  {"zes", "z"},
                                   {"ches", "ch"}, {"shes", "sh"},  {"men", "man"},   {"ies", "y"}};
  static constexpr Rule kVerb[] = {{"s", ""},  {"ies", "y"}, {"es", "e"},  {"es", ""},
                                   {"ed", "e"}, {"ed", ""},   {"ing", "e"}, {"ing", ""}};
  static constexpr Rule kAdj[] = {{"er", ""}, {"est", ""}, {"er", "e"}, {"est", "e"}};

  const std::string form = normalize_lemma(word);
  std::vector<std::string> candidates{form};
  const auto& exc = exceptions_[pos_index(pos)];
  if (const auto it = exc.find(form); it != exc.end()) {
    candidates.insert(candidates.end(), it->second.begin(), it->second.end());
  } else {
    std::span<const Rule> rules;
    if (pos == Pos::kNoun) rules = kNoun;
    else if (pos == Pos::kVerb) rules = kVerb;
    else if (pos == Pos::kAdjective) rules = kAdj;
    for (const auto& r : rules)
      if (form.ends_with(r.suffix))
        candidates.push_back(form.substr(0, form.size() - r.suffix.size()) + std::string(r.replacement));
  }
  std::vector<std::string> out;
  for (auto& c : candidates)
    if (!lookup(c, pos).empty() && std::find(out.begin(), out.end(), c) == out.end()) out.push_back(std::move(c));
  return out;
}

std::vector<SynsetIndex> SynsetGraph::synsets_of(std::string_view word) const {
  std::vector<SynsetIndex> out;
  for (Pos pos : kAllPos)
    for (const auto& form : morphy(word, pos))
      for (SynsetIndex s : lookup(form, pos)) out.push_back(s);
  return out;
}

PosSet SynsetGraph::pos_of_word(std::string_view word) const {
  PosSet set;
  for (Pos pos : kAllPos)
    if (!morphy(word, pos).empty()) set.insert(pos);
  return set;
}

std::unordered_map<SynsetIndex, std::size_t> SynsetGraph::ancestor_distances(SynsetIndex s) const {
  std::unordered_map<SynsetIndex, std::size_t> dist{{s, 0}};
  std::deque<SynsetIndex> queue{s};
  const SynsetIndex root = static_cast<SynsetIndex>(synsets_.size());
  while (!queue.empty()) {
    const SynsetIndex cur = queue.front();
    queue.pop_front();
    if (cur == root) continue;
    const std::size_t d = dist[cur];
    const auto& node = synsets_[cur];
    for (SynsetIndex h : node.hypernyms)
      if (dist.emplace(h, d + 1).second) queue.push_back(h);
    if (virtual_root_ && node.pos == Pos::kNoun && node.hypernyms.empty())
      if (dist.emplace(root, d + 1).second) queue.push_back(root);
  }
  return dist;
}

namespace {

std::optional<std::size_t> join_distances(const std::unordered_map<SynsetIndex, std::size_t>& a,
                                          const std::unordered_map<SynsetIndex, std::size_t>& b) {
  const auto& small = a.size() <= b.size() ? a : b;
  const auto& large = a.size() <= b.size() ? b : a;
  std::optional<std::size_t> best;
  for (const auto& [node, da] : small) {
    const auto it = large.find(node);
    if (it == large.end()) continue;
    const std::size_t d = da + it->second;
    if (!best || d < *best) best = d;
  }
  return best;
}

}  // namespace

std::optional<std::size_t> SynsetGraph::shortest_path_distance(SynsetIndex a, SynsetIndex b) const {
  if (a == b) return 0;
  return join_distances(ancestor_distances(a), ancestor_distances(b));
}

std::optional<double> SynsetGraph::path_similarity(SynsetIndex a, SynsetIndex b) const {
  const auto d = shortest_path_distance(a, b);
  if (!d) return std::nullopt;
  return 1.0 / (1.0 + static_cast<double>(*d));
}

std::optional<double> word_path_similarity(std::string_view w1, std::string_view w2, const SynsetGraph& graph) {
  const auto s1 = graph.synsets_of(w1);
  const auto s2 = graph.synsets_of(w2);
  std::optional<double> best;
  for (SynsetIndex a : s1) {
    const auto da = graph.ancestor_distances(a);
    for (SynsetIndex b : s2) {
      const auto d = a == b ? std::optional<std::size_t>(0) : join_distances(da, graph.ancestor_distances(b));
      if (!d) continue;
      const double sim = 1.0 / (1.0 + static_cast<double>(*d));
      if (!best || sim > *best) best = sim;
    }
  }
  return best;
}

const std::vector<SynsetIndex>& SimilarityCache::synsets_of(const std::string& word) {
  auto it = words_.find(word);
  if (it == words_.end()) it = words_.emplace(word, graph_->synsets_of(word)).first;
  return it->second;
}

const std::unordered_map<SynsetIndex, std::size_t>& SimilarityCache::ancestors(SynsetIndex s) {
  auto it = ancestors_.find(s);
  if (it == ancestors_.end()) it = ancestors_.emplace(s, graph_->ancestor_distances(s)).first;
  return it->second;
}

std::optional<double> SimilarityCache::similarity(const std::string& w1, const std::string& w2) {
  const auto s1 = synsets_of(w1);
  const auto& s2 = synsets_of(w2);
  std::optional<double> best;
  for (SynsetIndex a : s1) {
    for (SynsetIndex b : s2) {
      const auto d = a == b ? std::optional<std::size_t>(0) : join_distances(ancestors(a), ancestors(b));
      if (!d) continue;
      const double sim = 1.0 / (1.0 + static_cast<double>(*d));
      if (!best || sim > *best) best = sim;
    }
  }
  return best;
}

}  // namespace gepc::wordnet
