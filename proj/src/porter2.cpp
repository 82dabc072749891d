// English Snowball stemmer. This is a line-for-line port of NLTK's
// EnglishStemmer so that stems agree with the toolkit the original analyses
// used, including its R1/R2 bookkeeping quirks.
#include <array>
#include <string>
#include <string_view>
#include <unordered_map>

#include "gepc/text.hpp"

namespace gepc::text {
namespace {

constexpr std::string_view kVowels = "aeiouy";

bool is_vowel(char c) { return kVowels.find(c) != std::string_view::npos; }

bool ends_with(const std::string& s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

// Python's s[:-n].
std::string chop(const std::string& s, std::size_t n) {
  return s.size() > n ? s.substr(0, s.size() - n) : std::string();
}

std::string replace_suffix(const std::string& s, std::size_t old_len, std::string_view repl) {
  return chop(s, old_len) + std::string(repl);
}

// Python's s[-i] for i >= 1, with a sentinel when out of range.
char from_end(const std::string& s, std::size_t i) { return s.size() >= i ? s[s.size() - i] : '\0'; }

bool contains_vowel(std::string_view s) {
  for (char c : s)
    if (is_vowel(c)) return true;
  return false;
}

const std::unordered_map<std::string, std::string>& special_words() {
  static const std::unordered_map<std::string, std::string> words = {
      {"skis", "ski"},         {"skies", "sky"},         {"dying", "die"},
      {"lying", "lie"},        {"tying", "tie"},         {"idly", "idl"},
      {"gently", "gentl"},     {"ugly", "ugli"},         {"early", "earli"},
      {"only", "onli"},        {"singly", "singl"},      {"sky", "sky"},
      {"news", "news"},        {"howe", "howe"},         {"atlas", "atlas"},
      {"cosmos", "cosmos"},    {"bias", "bias"},         {"andes", "andes"},
      {"inning", "inning"},    {"innings", "inning"},    {"outing", "outing"},
      {"outings", "outing"},   {"canning", "canning"},   {"cannings", "canning"},
      {"herring", "herring"},  {"herrings", "herring"},  {"earring", "earring"},
      {"earrings", "earring"}, {"proceed", "proceed"},   {"proceeds", "proceed"},
      {"proceeded", "proceed"}, {"proceeding", "proceed"}, {"exceed", "exceed"},
      {"exceeds", "exceed"},   {"exceeded", "exceed"},   {"exceeding", "exceed"},
      {"succeed", "succeed"},  {"succeeds", "succeed"},  {"succeeded", "succeed"},
      {"succeeding", "succeed"},
  };
  return words;
}

std::pair<std::string, std::string> standard_regions(const std::string& word) {
  std::string r1, r2;
  for (std::size_t i = 1; i < word.size(); ++i) {
    if (!is_vowel(word[i]) && is_vowel(word[i - 1])) {
      r1 = word.substr(i + 1);
      break;
    }
  }
  for (std::size_t i = 1; i < r1.size(); ++i) {
    if (!is_vowel(r1[i]) && is_vowel(r1[i - 1])) {
      r2 = r1.substr(i + 1);
      break;
    }
  }
  return {r1, r2};
}

struct Stemmer {
  std::string word, r1, r2;

  void drop(std::size_t n) {
    word = chop(word, n);
    r1 = chop(r1, n);
    r2 = chop(r2, n);
  }

  // Replace a suffix of length `len` by `repl` in word and (when long enough) the regions.
  void replace(std::size_t len, std::string_view repl, std::string_view r2_fallback = "") {
    word = replace_suffix(word, len, repl);
    r1 = r1.size() >= len ? replace_suffix(r1, len, repl) : std::string();
    r2 = r2.size() >= len ? replace_suffix(r2, len, repl) : std::string(r2_fallback);
  }

  // Replace the final character by `c` in word and regions.
  void replace_last(char c) {
    word = chop(word, 1) + c;
    r1 = r1.empty() ? std::string() : chop(r1, 1) + c;
    r2 = r2.empty() ? std::string() : chop(r2, 1) + c;
  }

  void step0() {
    for (std::string_view suffix : {"'s'", "'s", "'"}) {
      if (ends_with(word, suffix)) {
        drop(suffix.size());
        return;
      }
    }
  }

  void step1a() {
    for (std::string_view suffix : {"sses", "ied", "ies", "us", "ss", "s"}) {
      if (!ends_with(word, suffix)) continue;
      if (suffix == "sses") {
        drop(2);
      } else if (suffix == "ied" || suffix == "ies") {
        drop(word.size() - suffix.size() > 1 ? 2 : 1);
      } else if (suffix == "s") {
        if (word.size() > 2 && contains_vowel(std::string_view(word).substr(0, word.size() - 2))) drop(1);
      }
      return;
    }
  }

  void step1b() {
    for (std::string_view suffix : {"eedly", "ingly", "edly", "eed", "ing", "ed"}) {
      if (!ends_with(word, suffix)) continue;
      if (suffix == "eed" || suffix == "eedly") {
        if (ends_with(r1, suffix)) replace(suffix.size(), "ee");
        return;
      }
      if (!contains_vowel(std::string_view(word).substr(0, word.size() - suffix.size()))) return;
      drop(suffix.size());
      if (ends_with(word, "at") || ends_with(word, "bl") || ends_with(word, "iz")) {
        word += 'e';
        r1 += 'e';
        if (word.size() > 5 || r1.size() >= 3) r2 += 'e';
      } else if (word.size() >= 2 && word[word.size() - 1] == word[word.size() - 2] &&
                 std::string_view("bdfgmnprt").find(word.back()) != std::string_view::npos) {
        drop(1);
      } else if ((r1.empty() && word.size() >= 3 && !is_vowel(from_end(word, 1)) &&
                  std::string_view("wxY").find(from_end(word, 1)) == std::string_view::npos &&
                  is_vowel(from_end(word, 2)) && !is_vowel(from_end(word, 3))) ||
                 (r1.empty() && word.size() == 2 && is_vowel(word[0]) && !is_vowel(word[1]))) {
        word += 'e';
        if (!r1.empty()) r1 += 'e';
        if (!r2.empty()) r2 += 'e';
      }
      return;
    }
  }

  void step1c() {
    if (word.size() > 2 && (word.back() == 'y' || word.back() == 'Y') && !is_vowel(from_end(word, 2)))
      replace_last('i');
  }

  void step2() {
    static constexpr std::array<std::string_view, 24> kSuffixes = {
        "ization", "ational", "fulness", "ousness", "iveness", "tional", "biliti", "lessli",
        "entli",   "ation",   "alism",   "aliti",   "ousli",   "iviti",  "fulli",  "enci",
        "anci",    "abli",    "izer",    "ator",    "alli",    "bli",    "ogi",    "li"};
    for (std::string_view s : kSuffixes) {
      if (!ends_with(word, s)) continue;
      if (!ends_with(r1, s)) return;
      if (s == "tional") {
        drop(2);
      } else if (s == "enci" || s == "anci" || s == "abli") {
        replace_last('e');
      } else if (s == "entli") {
        drop(2);
      } else if (s == "izer" || s == "ization") {
        replace(s.size(), "ize");
      } else if (s == "ational" || s == "ation" || s == "ator") {
        replace(s.size(), "ate", "e");
      } else if (s == "alism" || s == "aliti" || s == "alli") {
        replace(s.size(), "al");
      } else if (s == "fulness") {
        drop(4);
      } else if (s == "ousli" || s == "ousness") {
        replace(s.size(), "ous");
      } else if (s == "iveness" || s == "iviti") {
        replace(s.size(), "ive", "e");
      } else if (s == "biliti" || s == "bli") {
        replace(s.size(), "ble");
      } else if (s == "ogi") {
        if (from_end(word, 4) == 'l') drop(1);
      } else if (s == "fulli" || s == "lessli") {
        drop(2);
      } else if (s == "li") {
        if (std::string_view("cdeghkmnrt").find(from_end(word, 3)) != std::string_view::npos &&
            from_end(word, 3) != '\0')
          drop(2);
      }
      return;
    }
  }

  void step3() {
    static constexpr std::array<std::string_view, 9> kSuffixes = {
        "ational", "tional", "alize", "icate", "iciti", "ative", "ical", "ness", "ful"};
    for (std::string_view s : kSuffixes) {
      if (!ends_with(word, s)) continue;
      if (!ends_with(r1, s)) return;
      if (s == "tional") {
        drop(2);
      } else if (s == "ational") {
        replace(s.size(), "ate");
      } else if (s == "alize") {
        drop(3);
      } else if (s == "icate" || s == "iciti" || s == "ical") {
        replace(s.size(), "ic");
      } else if (s == "ful" || s == "ness") {
        drop(s.size());
      } else if (s == "ative") {
        if (ends_with(r2, s)) drop(5);
      }
      return;
    }
  }

  void step4() {
    static constexpr std::array<std::string_view, 18> kSuffixes = {
        "ement", "ance", "ence", "able", "ible", "ment", "ant", "ent", "ism",
        "ate",   "iti",  "ous",  "ive",  "ize",  "ion",  "al",  "er",  "ic"};
    for (std::string_view s : kSuffixes) {
      if (!ends_with(word, s)) continue;
      if (!ends_with(r2, s)) return;
      if (s == "ion") {
        const char before = from_end(word, 4);
        if (before == 's' || before == 't') drop(3);
      } else {
        drop(s.size());
      }
      return;
    }
  }

  void step5() {
    if (ends_with(r2, "l") && from_end(word, 2) == 'l') {
      drop(1);
    } else if (ends_with(r2, "e")) {
      drop(1);
    } else if (ends_with(r1, "e")) {
      if (word.size() >= 4 &&
          (is_vowel(from_end(word, 2)) || std::string_view("wxY").find(from_end(word, 2)) != std::string_view::npos ||
           !is_vowel(from_end(word, 3)) || is_vowel(from_end(word, 4))))
        drop(1);
    }
  }
};

std::string replace_all(std::string s, std::string_view from, std::string_view to) {
  std::size_t pos = 0;
  while ((pos = s.find(from, pos)) != std::string::npos) {
    s.replace(pos, from.size(), to);
    pos += to.size();
  }
  return s;
}

}  // namespace

std::string porter2_stem(std::string_view input) {
  std::string word(input);
  if (word.size() <= 2) return word;
  if (auto it = special_words().find(word); it != special_words().end()) return it->second;

  word = replace_all(std::move(word), "’", "'");
  word = replace_all(std::move(word), "‘", "'");
  word = replace_all(std::move(word), "‛", "'");
  if (!word.empty() && word.front() == '\'') word.erase(0, 1);
  if (!word.empty() && word.front() == 'y') word.front() = 'Y';
  for (std::size_t i = 1; i < word.size(); ++i)
    if (is_vowel(word[i - 1]) && word[i] == 'y') word[i] = 'Y';

  Stemmer st;
  st.word = word;
  if (word.starts_with("gener") || word.starts_with("commun") || word.starts_with("arsen")) {
    st.r1 = word.substr(word.starts_with("commun") ? 6 : 5);
    for (std::size_t i = 1; i < st.r1.size(); ++i) {
      if (!is_vowel(st.r1[i]) && is_vowel(st.r1[i - 1])) {
        st.r2 = st.r1.substr(i + 1);
        break;
      }
    }
  } else {
    std::tie(st.r1, st.r2) = standard_regions(word);
  }

  st.step0();
  st.step1a();
  static constexpr std::array<std::string_view, 8> kInvariant = {
      "inning", "outing", "canning", "herring", "earring", "proceed", "exceed", "succeed"};
  for (std::string_view w : kInvariant)
    if (st.word == w) return st.word;
  st.step1b();
  st.step1c();
  st.step2();
  st.step3();
  st.step4();
  st.step5();
  for (char& c : st.word)
    if (c == 'Y') c = 'y';
  return st.word;
}

}  // namespace gepc::text
