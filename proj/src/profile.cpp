#include "gepc/profile.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include <nlohmann/json.hpp>

#include "gepc/csv.hpp"
#include "gepc/data.hpp"
#include "gepc/error.hpp"
#include "gepc/utf8.hpp"

namespace gepc::profile {

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <typename F>
void for_each_data_line(std::string_view contents, F&& f) {
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.remove_suffix(1);
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.front()))) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') f(line, pos);
    pos = end + 1;
  }
}

std::vector<RankedWord> top_words(const std::map<std::string, std::size_t>& counts, std::size_t k) {
  std::vector<RankedWord> v;
  for (const auto& [w, c] : counts) v.push_back({w, c});
  std::stable_sort(v.begin(), v.end(), [](const RankedWord& a, const RankedWord& b) { return a.count > b.count; });
  if (v.size() > k) v.resize(k);
  return v;
}

double round4(double v) { return std::stod(csv::fixed(v)); }

}  // namespace

SurfaceProfile surface_profile(const text::TokenStream& stream, std::size_t corpus_type_total) {
  if (stream.empty()) throw std::invalid_argument("surface_profile: empty token stream");
  if (corpus_type_total == 0) throw std::invalid_argument("surface_profile: corpus type total must be positive");
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& t : stream) ++freq[t.lower];
  SurfaceProfile p;
  p.token_count = stream.size();
  p.type_count = freq.size();
  p.hapax_count = static_cast<std::size_t>(std::count_if(freq.begin(), freq.end(), [](const auto& e) { return e.second == 1; }));
  p.ttr = static_cast<double>(p.type_count) / static_cast<double>(p.token_count);
  p.type_share = static_cast<double>(p.type_count) / static_cast<double>(corpus_type_total);
  return p;
}

PosProfile pos_profile(const text::TokenStream& stream, const wordnet::SynsetGraph& graph, std::size_t top_k) {
  if (stream.empty()) throw std::invalid_argument("pos_profile: empty token stream");
  std::map<std::string, std::size_t> freq;
  for (const auto& t : stream) ++freq[t.lower];
  std::map<std::string, std::size_t> nouns, verbs, adjs;
  PosProfile p;
  for (const auto& [word, c] : freq) {
    const auto tags = graph.pos_of_word(word);
    if (tags.contains(wordnet::Pos::kNoun)) {
      p.noun_count += c;
      nouns[word] = c;
    }
    if (tags.contains(wordnet::Pos::kVerb)) {
      p.verb_count += c;
      verbs[word] = c;
    }
    if (tags.contains(wordnet::Pos::kAdjective)) {
      p.adj_count += c;
      adjs[word] = c;
    }
  }
  if (p.verb_count > 0) p.av_quotient = static_cast<double>(p.adj_count) / static_cast<double>(p.verb_count);
  p.top_nouns = top_words(nouns, top_k);
  p.top_verbs = top_words(verbs, top_k);
  p.top_adjs = top_words(adjs, top_k);
  return p;
}

std::vector<RankedNGram> collocations(const text::TokenStream& stream, std::size_t n, std::size_t k) {
  if (n != 2 && n != 3) throw std::invalid_argument("collocations: n must be 2 or 3");
  if (k == 0) return {};
  std::map<text::NGram, std::size_t> counts;
  for (auto& g : text::ngrams(stream, n)) ++counts[std::move(g)];
  std::vector<RankedNGram> v;
  for (const auto& [g, c] : counts) v.push_back({g, c});
  std::stable_sort(v.begin(), v.end(), [](const RankedNGram& a, const RankedNGram& b) { return a.count > b.count; });
  if (v.size() > k) v.resize(k);
  return v;
}

std::vector<std::vector<double>> dispersion(const text::TokenStream& stream, const std::vector<std::string>& targets) {
  std::vector<std::vector<double>> out(targets.size());
  const double n = static_cast<double>(stream.size());
  for (std::size_t i = 0; i < stream.size(); ++i)
    for (std::size_t t = 0; t < targets.size(); ++t)
      if (stream[i].lower == targets[t] || stream[i].stem == targets[t]) out[t].push_back(static_cast<double>(i) / n);
  return out;
}

// ---------------------------------------------------------------- sonority

SonorityTable SonorityTable::parse(std::string_view contents, const std::string& name) {
  SonorityTable t;
  for_each_data_line(contents, [&](std::string_view line, std::size_t offset) {
    std::istringstream in{std::string(line)};
    std::string letter;
    int rank = 0;
    if (!(in >> letter >> rank) || letter.size() != 1 || !std::isalpha(static_cast<unsigned char>(letter[0])))
      throw ParseError(name, offset, "expected '<letter> <rank>'");
    if (rank < 1 || rank > 10) throw ParseError(name, offset, "rank outside [1, 10]");
    t.ranks_[static_cast<std::size_t>(std::tolower(static_cast<unsigned char>(letter[0])) - 'a')] = rank;
  });
  for (std::size_t i = 0; i < 26; ++i)
    if (t.ranks_[i] == 0) throw ParseError(name, 0, std::string("no rank for letter '") + char('a' + i) + "'");
  return t;
}

SonorityTable SonorityTable::load(const std::filesystem::path& file) { return parse(read_file(file), file.string()); }

const SonorityTable& SonorityTable::defaults() {
  static const SonorityTable table = parse(data::sonority(), "sonority.txt");
  return table;
}

std::optional<int> SonorityTable::rank(char32_t letter) const {
  if (letter < U'a' || letter > U'z') return std::nullopt;
  return ranks_[static_cast<std::size_t>(letter - U'a')];
}

std::optional<double> sonority_word(std::string_view word, const SonorityTable& table) {
  int sum = 0;
  int n = 0;
  for (std::size_t i = 0; i < word.size();) {
    const auto d = utf8::decode(word, i);
    i += d.length;
    if (const auto r = table.rank(utf8::to_lower(d.code_point))) {
      sum += *r;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return static_cast<double>(sum) / static_cast<double>(n);
}

std::optional<double> sonority_text(const text::TokenStream& stream, const SonorityTable& table) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& t : stream) {
    if (const auto s = sonority_word(t.lower, table)) {
      sum += *s;
      ++n;
    }
  }
  if (n == 0) return std::nullopt;
  return sum / static_cast<double>(n);
}

// ---------------------------------------------------------------- affect

AffectLabels AffectLabels::parse(std::string_view contents, const std::string& name) {
  AffectLabels labels;
  for_each_data_line(contents, [&](std::string_view line, std::size_t offset) {
    const auto colon = line.find(':');
    if (colon == std::string_view::npos) throw ParseError(name, offset, "expected '<dimension>: words'");
    const std::string dim(line.substr(0, colon));
    std::vector<std::string>* target = dim == "pos" ? &labels.pos : dim == "neg" ? &labels.neg
                                     : dim == "aro" ? &labels.aro : nullptr;
    if (!target) throw ParseError(name, offset, "unknown dimension '" + dim + "'");
    std::istringstream in{std::string(line.substr(colon + 1))};
    for (std::string w; in >> w;) target->push_back(utf8::fold_case(w));
  });
  if (labels.pos.empty() || labels.neg.empty() || labels.aro.empty())
    throw ParseError(name, 0, "every dimension needs at least one label");
  return labels;
}

AffectLabels AffectLabels::load(const std::filesystem::path& file) { return parse(read_file(file), file.string()); }

const AffectLabels& AffectLabels::defaults() {
  static const AffectLabels labels = parse(data::affect_labels(), "affect_labels.txt");
  return labels;
}

AffectResult affect_scores(const text::TokenStream& stream, const AffectLabels& labels,
                           wordnet::SimilarityCache& cache) {
  std::map<std::string, std::size_t> freq;
  for (const auto& t : stream) ++freq[t.lower];
  const std::array<const std::vector<std::string>*, 3> dims{&labels.pos, &labels.neg, &labels.aro};

  AffectResult r;
  r.in_scope = stream.size();
  std::array<double, 3> total{};
  std::array<double, 3> best{};
  for (const auto& [word, count] : freq) {
    if (cache.synsets_of(word).empty()) continue;
    WordAffect wa{word, count, {}};
    for (std::size_t d = 0; d < 3; ++d)
      for (const auto& label : *dims[d])
        if (const auto s = cache.similarity(word, label)) wa.score[d] += *s;
    for (std::size_t d = 0; d < 3; ++d) {
      total[d] += wa.score[d] * static_cast<double>(count);
      if (r.extremes[d].empty() || wa.score[d] > best[d]) {
        r.extremes[d] = word;
        best[d] = wa.score[d];
      }
    }
    r.hits += count;
    r.words.push_back(std::move(wa));
  }
  if (r.hits == 0) throw Error("no scorable words");
  for (std::size_t d = 0; d < 3; ++d) r.mean[d] = total[d] / static_cast<double>(r.hits);
  r.hit_rate = static_cast<double>(r.hits) / static_cast<double>(r.in_scope);
  return r;
}

AffectResult affect_scores(const text::TokenStream& stream, const AffectLabels& labels,
                           const wordnet::SynsetGraph& graph) {
  wordnet::SimilarityCache cache(graph);
  return affect_scores(stream, labels, cache);
}

// ---------------------------------------------------------------- json

std::string to_json(const TextProfile& p) {
  using nlohmann::json;
  auto ranked = [](const std::vector<RankedWord>& v) {
    json a = json::array();
    for (const auto& w : v) a.push_back({{"word", w.word}, {"count", w.count}});
    return a;
  };
  auto grams = [](const std::vector<RankedNGram>& v) {
    json a = json::array();
    for (const auto& g : v) a.push_back({{"ngram", text::join(g.gram)}, {"count", g.count}});
    return a;
  };
  json j;
  j["id"] = p.id;
  j["token_count"] = p.surface.token_count;
  j["type_count"] = p.surface.type_count;
  j["hapax_count"] = p.surface.hapax_count;
  j["ttr"] = round4(p.surface.ttr);
  j["type_share"] = round4(p.surface.type_share);
  if (p.pos) {
    j["noun_count"] = p.pos->noun_count;
    j["verb_count"] = p.pos->verb_count;
    j["adj_count"] = p.pos->adj_count;
    j["av_quotient"] = p.pos->av_quotient ? json(round4(*p.pos->av_quotient)) : json(nullptr);
    j["top_nouns"] = ranked(p.pos->top_nouns);
    j["top_verbs"] = ranked(p.pos->top_verbs);
    j["top_adjs"] = ranked(p.pos->top_adjs);
  }
  j["bigrams"] = grams(p.bigrams);
  j["trigrams"] = grams(p.trigrams);
  j["sonority_mean"] = p.sonority_mean ? json(round4(*p.sonority_mean)) : json(nullptr);
  if (p.affect) {
    j["affect"] = {{"pos_valence_mean", round4(p.affect->mean[kPositive])},
                   {"neg_valence_mean", round4(p.affect->mean[kNegative])},
                   {"arousal_mean", round4(p.affect->mean[kArousal])},
                   {"hit_rate", round4(p.affect->hit_rate)},
                   {"hits", p.affect->hits},
                   {"in_scope", p.affect->in_scope},
                   {"most_positive", p.affect->extremes[kPositive]},
                   {"most_negative", p.affect->extremes[kNegative]},
                   {"most_arousing", p.affect->extremes[kArousal]}};
  }
  return j.dump(2) + "\n";
}

}  // namespace gepc::profile
