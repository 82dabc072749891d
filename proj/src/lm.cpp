#include "gepc/lm.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "gepc/error.hpp"

namespace gepc::lm {

namespace {

// Splits a stream into sentences of lowercase words.
std::vector<std::vector<std::string>> sentences(const text::TokenStream& stream) {
  std::vector<std::vector<std::string>> out;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    if (i == 0 || stream[i].sentence_index != stream[i - 1].sentence_index) out.emplace_back();
    out.back().push_back(stream[i].lower);
  }
  return out;
}

std::string format_k(double k) {
  std::ostringstream s;
  s.precision(17);
  s << k;
  return s.str();
}

}  // namespace

std::string TrigramModel::key(std::string_view a, std::string_view b) {
  std::string s(a);
  s += ' ';
  s += b;
  return s;
}

std::string TrigramModel::key(std::string_view a, std::string_view b, std::string_view c) {
  std::string s = key(a, b);
  s += ' ';
  s += c;
  return s;
}

void TrigramModel::add(const std::string& w1, const std::string& w2, const std::string& w3, std::uint64_t count) {
  trigrams_[key(w1, w2, w3)] += count;
  histories_[key(w1, w2)] += count;
  unigrams_[w3] += count;
}

TrigramModel TrigramModel::train(std::span<const text::TokenStream> streams, const TrainOptions& options) {
  if (!(options.k > 0.0)) throw std::invalid_argument("train_trigram: k must be positive");
  std::vector<std::vector<std::string>> all;
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const auto& s : streams)
    for (auto& sentence : sentences(s)) {
      for (const auto& w : sentence) ++freq[w];
      all.push_back(std::move(sentence));
    }
  if (freq.empty()) throw std::invalid_argument("train_trigram: empty training corpus");

  TrigramModel m;
  m.k_ = options.k;
  m.singletons_ = options.singletons_to_unknown;
  for (const auto& [w, c] : freq)
    if (!(options.singletons_to_unknown && c == 1)) m.vocab_.insert(w);
  const std::string pad(kPad);
  for (const auto& sentence : all) {
    std::string h1 = pad, h2 = pad;
    for (const auto& raw : sentence) {
      std::string w = m.map_word(raw);
      m.add(h1, h2, w, 1);
      h1 = std::move(h2);
      h2 = std::move(w);
    }
  }
  return m;
}

TrigramModel train_trigram(std::span<const text::TokenStream> streams, double k, bool singletons_to_unknown) {
  return TrigramModel::train(streams, {k, singletons_to_unknown});
}

std::vector<std::string> TrigramModel::vocabulary() const {
  std::vector<std::string> v(vocab_.begin(), vocab_.end());
  std::sort(v.begin(), v.end());
  return v;
}

std::string TrigramModel::map_word(std::string_view w) const {
  if (w == kPad || in_vocabulary(w)) return std::string(w);
  return std::string(kUnknown);
}

std::uint64_t TrigramModel::unigram_count(std::string_view w) const {
  const auto it = unigrams_.find(std::string(w));
  return it == unigrams_.end() ? 0 : it->second;
}

std::uint64_t TrigramModel::history_count(std::string_view w1, std::string_view w2) const {
  const auto it = histories_.find(key(w1, w2));
  return it == histories_.end() ? 0 : it->second;
}

std::uint64_t TrigramModel::trigram_count(std::string_view w1, std::string_view w2, std::string_view w3) const {
  const auto it = trigrams_.find(key(w1, w2, w3));
  return it == trigrams_.end() ? 0 : it->second;
}

double TrigramModel::probability(std::string_view w1, std::string_view w2, std::string_view w) const {
  const std::string a = map_word(w1), b = map_word(w2), c = map_word(w);
  const double outcomes = static_cast<double>(vocab_.size() + 1);
  return (static_cast<double>(trigram_count(a, b, c)) + k_) /
         (static_cast<double>(history_count(a, b)) + k_ * outcomes);
}

std::string TrigramModel::serialize() const {
  std::string out = "# trigram counts\n";
  out += "# k=" + format_k(k_) + "\n";
  out += std::string("# singletons_to_unknown=") + (singletons_ ? "1" : "0") + "\n";
  out += "# vocab_size=" + std::to_string(vocab_.size()) + "\n";
  for (const auto& w : vocabulary()) out += "# word=" + w + "\n";
  for (const auto& [k, c] : trigrams_) out += std::to_string(c) + "\t" + k + "\n";
  return out;
}

TrigramModel TrigramModel::parse(std::string_view contents, const std::string& name) {
  TrigramModel m;
  std::optional<std::size_t> declared_vocab;
  bool have_k = false;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    const std::size_t offset = pos;
    const std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = line.substr(line.find_first_not_of("# ") == std::string_view::npos
                                                    ? line.size()
                                                    : line.find_first_not_of("# "));
      const auto eq = body.find('=');
      if (eq == std::string_view::npos) continue;
      const std::string k(body.substr(0, eq)), v(body.substr(eq + 1));
      try {
        if (k == "k") {
          m.k_ = std::stod(v);
          have_k = true;
        } else if (k == "singletons_to_unknown") {
          m.singletons_ = v == "1";
        } else if (k == "vocab_size") {
          declared_vocab = std::stoull(v);
        } else if (k == "word") {
          m.vocab_.insert(v);
        }
      } catch (const std::exception&) {
        throw ParseError(name, offset, "bad metadata value '" + v + "'");
      }
      continue;
    }
    const auto tab = line.find('\t');
    if (tab == std::string_view::npos) throw ParseError(name, offset, "expected 'count<TAB>w1 w2 w3'");
    std::uint64_t count = 0;
    try {
      std::size_t used = 0;
      count = std::stoull(std::string(line.substr(0, tab)), &used);
      if (used != tab) throw std::invalid_argument("count");
    } catch (const std::exception&) {
      throw ParseError(name, offset, "bad count");
    }
    std::istringstream words{std::string(line.substr(tab + 1))};
    std::string w1, w2, w3, extra;
    if (!(words >> w1 >> w2 >> w3) || (words >> extra)) throw ParseError(name, offset, "expected three words");
    if (count == 0) throw ParseError(name, offset, "zero count");
    m.add(w1, w2, w3, count);
  }
  if (!have_k || !(m.k_ > 0.0)) throw ParseError(name, 0, "missing or non-positive k");
  if (!declared_vocab || *declared_vocab != m.vocab_.size())
    throw ParseError(name, 0, "vocabulary size does not match the listed words");
  for (const auto& [w, c] : m.unigrams_)
    if (w != kUnknown && !m.vocab_.count(w)) throw ParseError(name, 0, "predicted word '" + w + "' not in vocabulary");
  return m;
}

void TrigramModel::save(const std::filesystem::path& file) const {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw Error("cannot write " + file.string());
  out << serialize();
  if (!out) throw Error("write failed for " + file.string());
}

TrigramModel TrigramModel::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), file.string());
}

SurprisalResult surprisal(const TrigramModel& model, const text::TokenStream& stream) {
  SurprisalResult r;
  const std::string pad(kPad);
  for (const auto& sentence : sentences(stream)) {
    std::string h1 = pad, h2 = pad;
    for (const auto& w : sentence) {
      const double p = model.probability(h1, h2, w);
      r.values.push_back(std::max(0.0, -std::log2(p)));
      h1 = std::move(h2);
      h2 = model.map_word(w);
    }
  }
  if (!r.values.empty()) {
    double s = 0.0;
    for (double v : r.values) s += v;
    r.mean = s / static_cast<double>(r.values.size());
  }
  return r;
}

}  // namespace gepc::lm
