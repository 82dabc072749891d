#include "gepc/text.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "gepc/data.hpp"
#include "gepc/error.hpp"
#include "gepc/utf8.hpp"

namespace gepc::text {

WordList::WordList(std::vector<std::string> entries) {
  for (auto& e : entries) {
    if (e.empty()) throw std::invalid_argument("WordList: empty entry");
    entries_.insert(utf8::fold_case(e));
  }
}

WordList WordList::parse(std::string_view contents) {
  std::vector<std::string> entries;
  std::size_t pos = 0;
  while (pos <= contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
      line.remove_suffix(1);
    while (!line.empty() && (line.front() == ' ' || line.front() == '\t')) line.remove_prefix(1);
    if (!line.empty() && line.front() != '#') entries.emplace_back(line);
    pos = end + 1;
  }
  return WordList(std::move(entries));
}

WordList WordList::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open word list " + file.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

const StopwordList& default_stopwords() {
  static const StopwordList list = WordList::parse(data::stopwords());
  return list;
}

const WordList& default_abbreviations() {
  static const WordList list = WordList::parse(data::abbreviations());
  return list;
}

namespace {

bool is_apostrophe(char32_t cp) { return cp == '\'' || cp == 0x2019 || cp == 0x2018 || cp == 0x02BC; }
bool is_hyphen(char32_t cp) { return cp == '-' || cp == 0x2010 || cp == 0x2011; }
bool is_space(char32_t cp) { return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\f' || cp == 0xA0; }
bool is_terminal(char32_t cp) { return cp == '.' || cp == '!' || cp == '?'; }
bool is_closer(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == ')' || cp == ']' || cp == 0x201D || cp == 0x2019 || is_terminal(cp);
}
bool is_opener(char32_t cp) {
  return cp == '"' || cp == '\'' || cp == '(' || cp == '[' || cp == 0x201C || cp == 0x2018 || cp == '_';
}

// True when the punctuation at `pos` is followed by whitespace and a capital.
bool boundary_follows(std::string_view text, std::size_t pos) {
  std::size_t i = pos + utf8::decode(text, pos).length;
  while (i < text.size()) {
    const auto d = utf8::decode(text, i);
    if (!is_closer(d.code_point)) break;
    i += d.length;
  }
  bool saw_space = false;
  while (i < text.size()) {
    const auto d = utf8::decode(text, i);
    if (!is_space(d.code_point)) break;
    saw_space = true;
    i += d.length;
  }
  if (!saw_space) return false;
  while (i < text.size()) {
    const auto d = utf8::decode(text, i);
    if (!is_opener(d.code_point)) break;
    i += d.length;
  }
  if (i >= text.size()) return false;
  return utf8::is_upper(utf8::decode(text, i).code_point);
}

}  // namespace

TokenStream tokenize(std::string_view text, const WordList& abbreviations) {
  TokenStream out;
  std::size_t sentence = 0;
  bool pending_boundary = false;
  std::size_t i = 0;
  while (i < text.size()) {
    const auto d = utf8::decode(text, i);
    if (utf8::is_letter(d.code_point)) {
      const std::size_t start = i;
      std::size_t j = i + d.length;
      while (j < text.size()) {
        const auto c = utf8::decode(text, j);
        if (utf8::is_letter(c.code_point)) {
          j += c.length;
          continue;
        }
        if ((is_apostrophe(c.code_point) || is_hyphen(c.code_point)) && j + c.length < text.size() &&
            utf8::is_letter(utf8::decode(text, j + c.length).code_point)) {
          j += c.length;
          continue;
        }
        break;
      }
      if (pending_boundary) {
        ++sentence;
        pending_boundary = false;
      }
      Token tok;
      tok.surface = std::string(text.substr(start, j - start));
      tok.lower = utf8::fold_case(tok.surface);
      tok.char_offset = start;
      tok.sentence_index = sentence;
      out.push_back(std::move(tok));
      i = j;
      continue;
    }
    if (is_terminal(d.code_point) && !out.empty() && !pending_boundary) {
      const Token& prev = out.back();
      const bool abbreviation = d.code_point == '.' &&
                                prev.char_offset + prev.surface.size() == i &&
                                abbreviations.contains(prev.lower);
      if (!abbreviation && boundary_follows(text, i)) pending_boundary = true;
    }
    i += d.length;
  }
  return out;
}

TokenStream preprocess(const TokenStream& stream, const StopwordList& stopwords, bool do_stem) {
  TokenStream out;
  out.reserve(stream.size());
  for (const Token& t : stream) {
    if (stopwords.contains(t.lower)) continue;
    Token kept = t;
    kept.stem = do_stem ? porter2_stem(t.lower) : t.lower;
    out.push_back(std::move(kept));
  }
  return out;
}

std::vector<NGram> ngrams(const TokenStream& stream, std::size_t n) {
  if (n == 0) throw std::invalid_argument("ngrams: n must be at least 1");
  std::vector<NGram> out;
  if (stream.size() < n) return out;
  out.reserve(stream.size() - n + 1);
  for (std::size_t i = 0; i + n <= stream.size(); ++i) {
    NGram g;
    g.reserve(n);
    for (std::size_t k = 0; k < n; ++k) g.push_back(stream[i + k].lower);
    out.push_back(std::move(g));
  }
  return out;
}

std::string join(const NGram& gram, std::string_view separator) {
  std::string out;
  for (std::size_t i = 0; i < gram.size(); ++i) {
    if (i) out += separator;
    out += gram[i];
  }
  return out;
}

}  // namespace gepc::text
