#include "gepc/corpus.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "gepc/csv.hpp"
#include "gepc/data.hpp"
#include "gepc/error.hpp"
#include "gepc/utf8.hpp"

namespace gepc::corpus {
namespace fs = std::filesystem;

namespace {

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

// ---------------------------------------------------------------- ingest

std::vector<ManifestRow> parse_manifest(std::string_view csv_text, const std::string& name) {
  const auto rows = csv::parse(csv_text);
  if (rows.empty()) return {};
  std::map<std::string, std::size_t> col;
  for (std::size_t i = 0; i < rows[0].size(); ++i) col[std::string(trim(rows[0][i]))] = i;
  for (const char* required : {"id", "author", "title", "year", "path"})
    if (!col.count(required)) throw ParseError(name, 0, std::string("manifest lacks column '") + required + "'");

  std::vector<ManifestRow> out;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    auto field = [&](const char* key) -> std::string {
      const std::size_t i = col.at(key);
      return i < row.size() ? std::string(trim(row[i])) : std::string();
    };
    ManifestRow m;
    m.id = field("id");
    m.author = field("author");
    m.title = field("title");
    m.path = field("path");
    if (m.id.empty()) m.id = m.path;
    if (const std::string y = field("year"); !y.empty()) {
      int year = 0;
      auto [ptr, ec] = std::from_chars(y.data(), y.data() + y.size(), year);
      if (ec != std::errc() || ptr != y.data() + y.size())
        throw ParseError(name, r, "row " + std::to_string(r) + ": bad year '" + y + "'");
      m.year = year;
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<ManifestRow> read_manifest(const fs::path& csv_file) {
  return parse_manifest(read_file(csv_file), csv_file.string());
}

std::string decode_text(std::string_view bytes, const std::string& name) {
  if (bytes.starts_with("\xEF\xBB\xBF")) bytes.remove_prefix(3);
  std::string decoded;
  if (!utf8::first_invalid(bytes)) {
    decoded.assign(bytes);
  } else {
    for (std::size_t i = 0; i < bytes.size(); ++i) {
      const auto b = static_cast<unsigned char>(bytes[i]);
      if (b >= 0x80 && b <= 0x9F)
        throw ParseError(name, i, "byte 0x" + [&] {
          std::ostringstream h;
          h << std::hex << static_cast<int>(b);
          return h.str();
        }() + " is neither UTF-8 nor Latin-1 text");
    }
    decoded = utf8::from_latin1(bytes);
  }
  std::string out;
  out.reserve(decoded.size());
  for (std::size_t i = 0; i < decoded.size(); ++i) {
    if (decoded[i] == '\r') {
      out.push_back('\n');
      if (i + 1 < decoded.size() && decoded[i + 1] == '\n') ++i;
    } else {
      out.push_back(decoded[i]);
    }
  }
  return out;
}

IngestResult ingest_directory(const fs::path& root, std::span<const ManifestRow> manifest) {
  IngestResult result;
  for (const ManifestRow& row : manifest) {
    const fs::path file = root / row.path;
    IngestError err{row.id, file.string(), {}, std::nullopt};
    if (row.author.empty()) {
      err.message = "manifest row has no author";
      result.errors.push_back(std::move(err));
      continue;
    }
    if (row.year && (*row.year < kEarliestYear || *row.year > kLatestYear)) {
      err.message = "year " + std::to_string(*row.year) + " outside [1623, 1952]";
      result.errors.push_back(std::move(err));
      continue;
    }
    std::error_code ec;
    if (!fs::is_regular_file(file, ec)) {
      err.message = "missing file";
      result.errors.push_back(std::move(err));
      continue;
    }
    try {
      RawText t;
      t.id = row.id;
      t.author = row.author;
      t.title = row.title;
      t.year = row.year;
      t.source_path = row.path;
      t.body = decode_text(read_file(file), file.string());
      result.texts.push_back(std::move(t));
    } catch (const ParseError& e) {
      err.message = e.what();
      err.offset = e.offset();
      result.errors.push_back(std::move(err));
    } catch (const Error& e) {
      err.message = e.what();
      result.errors.push_back(std::move(err));
    }
  }
  return result;
}

// ---------------------------------------------------------------- rules

CleaningRules CleaningRules::parse(std::string_view contents, const std::string& name) {
  CleaningRules rules;
  rules.function_words = text::WordList::parse(data::function_words());
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    const std::size_t line_offset = pos;
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const std::string_view stripped = trim(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(name, line_offset, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));

    auto pattern = [&]() {
      try {
        return PatternRule{value, std::regex(value, std::regex::ECMAScript | std::regex::optimize)};
      } catch (const std::regex_error& e) {
        throw ParseError(name, line_offset, "bad pattern for '" + key + "': " + e.what());
      }
    };
    auto number = [&]() {
      try {
        std::size_t used = 0;
        const double v = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
      } catch (const std::exception&) {
        throw ParseError(name, line_offset, "bad number for '" + key + "': " + value);
      }
    };

    if (key == "drop_before") rules.drop_before.push_back(pattern());
    else if (key == "footer") rules.footer_markers.push_back(pattern());
    else if (key == "header") rules.header_markers.push_back(pattern());
    else if (key == "header_prose") rules.prose_header_markers.push_back(pattern());
    else if (key == "footnote") rules.footnote_patterns.push_back(pattern());
    else if (key == "footnote_ref") rules.footnote_ref_patterns.push_back(pattern());
    else if (key == "page_number") rules.page_number_patterns.push_back(pattern());
    else if (key == "line_number") rules.line_number_patterns.push_back(pattern());
    else if (key == "prose_min_line_length") rules.prose_min_line_length = number();
    else if (key == "non_english_threshold") rules.non_english_threshold = number();
    else if (key == "non_english_min_tokens") rules.non_english_min_tokens = static_cast<std::size_t>(number());
    else if (key == "duplicate_threshold") rules.duplicate_similarity_threshold = number();
    else if (key == "duplicate_shingle_size") rules.duplicate_shingle_size = static_cast<std::size_t>(number());
    else if (key == "function_words") rules.function_words = text::WordList::load(value);
    else throw ParseError(name, line_offset, "unknown rule key '" + key + "'");
  }
  try {
    rules.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(name, 0, e.what());
  }
  return rules;
}

CleaningRules CleaningRules::load(const fs::path& file) { return parse(read_file(file), file.string()); }

const CleaningRules& CleaningRules::defaults() {
  static const CleaningRules rules = parse(data::cleaning_rules(), "cleaning_rules.txt");
  return rules;
}

void CleaningRules::validate() const {
  auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
  if (!in_unit(duplicate_similarity_threshold))
    throw std::invalid_argument("duplicate_similarity_threshold must lie in [0, 1]");
  if (!in_unit(non_english_threshold)) throw std::invalid_argument("non_english_threshold must lie in [0, 1]");
  if (duplicate_shingle_size == 0) throw std::invalid_argument("duplicate_shingle_size must be positive");
}

std::string_view to_string(RemovalReason reason) {
  switch (reason) {
    case RemovalReason::kBoilerplate: return "boilerplate";
    case RemovalReason::kFooter: return "footer";
    case RemovalReason::kHeader: return "header";
    case RemovalReason::kFootnote: return "footnote";
    case RemovalReason::kPageNumber: return "page-number";
    case RemovalReason::kLineNumber: return "line-number";
    case RemovalReason::kNonEnglish: return "non-English";
    case RemovalReason::kDuplicate: return "duplicate";
  }
  return "unknown";
}

std::string to_json(const CleaningReport& report) {
  nlohmann::json j;
  j["id"] = report.text_id;
  j["source_path"] = report.source_path;
  j["input_bytes"] = report.input_bytes;
  j["output_bytes"] = report.output_bytes;
  j["empty"] = report.empty;
  j["removed"] = nlohmann::json::array();
  for (const auto& s : report.removed)
    j["removed"].push_back({{"begin", s.begin}, {"end", s.end}, {"reason", to_string(s.reason)}, {"rule", s.rule}});
  return j.dump(2) + "\n";
}

double shingle_jaccard(const text::TokenStream& a, const text::TokenStream& b, std::size_t shingle) {
  auto shingles = [shingle](const text::TokenStream& s) {
    std::set<std::string> out;
    for (const auto& g : text::ngrams(s, shingle)) out.insert(text::join(g, "\x1f"));
    return out;
  };
  const auto sa = shingles(a);
  const auto sb = shingles(b);
  if (sa.empty() && sb.empty()) return 0.0;
  std::size_t common = 0;
  for (const auto& s : sa) common += sb.count(s);
  return static_cast<double>(common) / static_cast<double>(sa.size() + sb.size() - common);
}

double function_word_rate(const text::TokenStream& tokens, const text::WordList& function_words) {
  if (tokens.empty()) return 0.0;
  std::size_t hits = 0;
  for (const auto& t : tokens) hits += function_words.contains(t.lower) ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(tokens.size());
}

// ---------------------------------------------------------------- cleaning

namespace {

struct Line {
  std::size_t begin;  // first byte
  std::size_t end;    // one past the last content byte (excludes '\n')
  std::size_t next;   // start of the following line
};

std::vector<Line> split_lines(std::string_view body) {
  std::vector<Line> lines;
  std::size_t pos = 0;
  while (pos < body.size()) {
    std::size_t nl = body.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.push_back({pos, body.size(), body.size()});
      break;
    }
    lines.push_back({pos, nl, nl + 1});
    pos = nl + 1;
  }
  return lines;
}

// Per-byte ownership of removed text. Index 0 means kept.
class RemovalMask {
 public:
  explicit RemovalMask(std::size_t n) : owner_(n, 0) {}

  void mark(std::size_t begin, std::size_t end, RemovalReason reason, const std::string& rule) {
    std::uint32_t id = 0;
    for (std::size_t i = begin; i < end && i < owner_.size(); ++i) {
      if (owner_[i] != 0) continue;
      if (id == 0) id = intern(reason, rule);
      owner_[i] = id;
    }
  }
  bool kept(std::size_t i) const { return owner_[i] == 0; }

  bool line_gone(const Line& l) const {
    for (std::size_t i = l.begin; i < l.next; ++i)
      if (owner_[i] == 0) return false;
    return true;
  }
  std::string kept_content(const Line& l, std::string_view body) const {
    std::string s;
    for (std::size_t i = l.begin; i < l.end; ++i)
      if (owner_[i] == 0) s.push_back(body[i]);
    return s;
  }
  void mark_line(const Line& l, RemovalReason reason, const std::string& rule) { mark(l.begin, l.next, reason, rule); }

  std::vector<RemovedSpan> spans() const {
    std::vector<RemovedSpan> out;
    std::size_t i = 0;
    while (i < owner_.size()) {
      if (owner_[i] == 0) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < owner_.size() && owner_[j] == owner_[i]) ++j;
      const auto& [reason, rule] = kinds_[owner_[i] - 1];
      out.push_back({i, j, reason, rule});
      i = j;
    }
    return out;
  }

 private:
  std::uint32_t intern(RemovalReason reason, const std::string& rule) {
    for (std::size_t k = 0; k < kinds_.size(); ++k)
      if (kinds_[k].first == reason && kinds_[k].second == rule) return static_cast<std::uint32_t>(k + 1);
    kinds_.emplace_back(reason, rule);
    return static_cast<std::uint32_t>(kinds_.size());
  }

  std::vector<std::uint32_t> owner_;
  std::vector<std::pair<RemovalReason, std::string>> kinds_;
};

const PatternRule* first_match(const std::vector<PatternRule>& rules, const std::string& line) {
  for (const auto& r : rules)
    if (std::regex_search(line, r.regex)) return &r;
  return nullptr;
}

// A visible line after earlier removals: content plus the source lines it covers.
struct VisibleLine {
  std::size_t source;  // index into lines
  std::string content;
  bool blank;
};

struct Block {
  std::size_t first, last;  // indices into visible lines, inclusive
};

struct Layout {
  std::vector<VisibleLine> visible;
  std::vector<Block> blocks;
  // blank_before[b]: number of blank visible lines between block b-1 and b
  // (leading blanks for b == 0); blank_after_last: trailing blanks.
  std::vector<std::size_t> blank_before;
  std::size_t blank_after_last = 0;
};

Layout layout(const std::vector<Line>& lines, const RemovalMask& mask, std::string_view body) {
  Layout out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (mask.line_gone(lines[i])) continue;
    std::string c = mask.kept_content(lines[i], body);
    const bool blank = is_blank(c);
    out.visible.push_back({i, std::move(c), blank});
  }
  std::size_t blanks = 0;
  for (std::size_t v = 0; v < out.visible.size(); ++v) {
    if (out.visible[v].blank) {
      ++blanks;
      continue;
    }
    if (!out.blocks.empty() && out.blocks.back().last + 1 == v) {
      out.blocks.back().last = v;
    } else {
      out.blocks.push_back({v, v});
      out.blank_before.push_back(blanks);
    }
    blanks = 0;
  }
  out.blank_after_last = blanks;
  return out;
}

std::string block_text(const Layout& l, std::size_t first_block, std::size_t last_block) {
  std::string s;
  for (std::size_t v = l.blocks[first_block].first; v <= l.blocks[last_block].last; ++v) {
    s += l.visible[v].content;
    s.push_back('\n');
  }
  return s;
}

// Removes blocks [first, last] together with one adjacent blank run so the
// separation between the surviving neighbours keeps its major/minor class.
void remove_blocks(const Layout& l, std::size_t first, std::size_t last, const std::vector<Line>& lines,
                   RemovalMask& mask, RemovalReason reason, const std::string& rule) {
  const std::size_t n = l.blocks.size();
  std::size_t from = l.blocks[first].first;
  std::size_t to = l.blocks[last].last;
  const bool has_prev = first > 0;
  const bool has_next = last + 1 < n;
  if (has_prev && has_next) {
    const std::size_t before = l.blank_before[first];
    const std::size_t after = l.blank_before[last + 1];
    if (before <= after) from -= before;
    else to += after;
  } else if (has_next) {
    to += l.blank_before[last + 1];
  } else if (has_prev) {
    from -= l.blank_before[first];
  }
  for (std::size_t v = from; v <= to; ++v) mask.mark_line(lines[l.visible[v].source], reason, rule);
}

}  // namespace

CleanedText clean_text(const RawText& raw, const CleaningRules& rules) {
  const std::string_view body = raw.body;
  const auto lines = split_lines(body);
  RemovalMask mask(body.size());
  std::vector<std::string> content(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i)
    content[i] = std::string(body.substr(lines[i].begin, lines[i].end - lines[i].begin));

  // Boilerplate before the last start marker.
  {
    std::optional<std::size_t> last;
    const PatternRule* rule = nullptr;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (const auto* r = first_match(rules.drop_before, content[i])) {
        last = i;
        rule = r;
      }
    if (last) mask.mark(0, lines[*last].next, RemovalReason::kBoilerplate, rule->source);
  }

  // Footer: first marker to end of text.
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (mask.line_gone(lines[i])) continue;
    if (const auto* r = first_match(rules.footer_markers, content[i])) {
      mask.mark(lines[i].begin, body.size(), RemovalReason::kFooter, r->source);
      break;
    }
  }

  // Front-matter sections, up to the next major break.
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (mask.line_gone(lines[i])) continue;
    const PatternRule* rule = first_match(rules.header_markers, content[i]);
    bool prose_only = false;
    if (!rule) {
      rule = first_match(rules.prose_header_markers, content[i]);
      prose_only = rule != nullptr;
    }
    if (!rule) continue;
    std::size_t end = i;
    std::size_t blank_run = 0;
    for (std::size_t k = i + 1; k < lines.size(); ++k) {
      if (mask.line_gone(lines[k])) continue;
      if (is_blank(content[k])) {
        if (++blank_run >= 2) break;
        continue;
      }
      blank_run = 0;
      end = k;
    }
    if (prose_only) {
      double total = 0.0;
      std::size_t count = 0;
      for (std::size_t k = i + 1; k <= end; ++k) {
        if (mask.line_gone(lines[k]) || is_blank(content[k])) continue;
        total += static_cast<double>(trim(content[k]).size());
        ++count;
      }
      if (count == 0 || total / static_cast<double>(count) < rules.prose_min_line_length) continue;
    }
    for (std::size_t k = i; k <= end; ++k) mask.mark_line(lines[k], RemovalReason::kHeader, rule->source);
    i = end;
  }

  // Footnote paragraphs.
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (mask.line_gone(lines[i])) continue;
    const auto* r = first_match(rules.footnote_patterns, content[i]);
    if (!r) continue;
    std::size_t k = i;
    while (k < lines.size() && (mask.line_gone(lines[k]) || !is_blank(content[k]))) {
      mask.mark_line(lines[k], RemovalReason::kFootnote, r->source);
      ++k;
    }
    i = k;
  }

  // Page numbers (whole lines), reference marks and verse numbers (spans).
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (mask.line_gone(lines[i])) continue;
    if (const auto* r = first_match(rules.page_number_patterns, content[i])) {
      mask.mark_line(lines[i], RemovalReason::kPageNumber, r->source);
      continue;
    }
    const std::size_t base = lines[i].begin;
    for (const auto& r : rules.footnote_ref_patterns) {
      for (auto it = std::sregex_iterator(content[i].begin(), content[i].end(), r.regex); it != std::sregex_iterator();
           ++it) {
        if (it->length(0) == 0) continue;
        const std::size_t b = base + static_cast<std::size_t>(it->position(0));
        mask.mark(b, b + static_cast<std::size_t>(it->length(0)), RemovalReason::kFootnote, r.source);
      }
    }
    for (const auto& r : rules.line_number_patterns) {
      std::smatch m;
      if (std::regex_search(content[i], m, r.regex) && m.length(0) > 0) {
        const std::size_t b = base + static_cast<std::size_t>(m.position(0));
        mask.mark(b, b + static_cast<std::size_t>(m.length(0)), RemovalReason::kLineNumber, r.source);
      }
    }
  }

  // Non-English stanzas.
  {
    const Layout l = layout(lines, mask, body);
    const std::string rule = "function-word rate < " + csv::fixed(rules.non_english_threshold, 2);
    for (std::size_t b = 0; b < l.blocks.size(); ++b) {
      const auto tokens = text::tokenize(block_text(l, b, b));
      if (tokens.size() < rules.non_english_min_tokens) continue;
      if (function_word_rate(tokens, rules.function_words) < rules.non_english_threshold)
        remove_blocks(l, b, b, lines, mask, RemovalReason::kNonEnglish, rule);
    }
  }

  // Duplicate poems: blocks joined across single blank lines, compared by shingles.
  {
    const Layout l = layout(lines, mask, body);
    // Recompute on the layout as it stood before this pass; removals below use the same layout
    // with the separator chosen per removed poem.
    std::vector<std::pair<std::size_t, std::size_t>> poems;
    for (std::size_t b = 0; b < l.blocks.size(); ++b) {
      if (b == 0 || l.blank_before[b] >= 2) poems.push_back({b, b});
      else poems.back().second = b;
    }
    const std::string rule = "shingle Jaccard >= " + csv::fixed(rules.duplicate_similarity_threshold, 2);
    std::vector<text::TokenStream> kept;
    for (const auto& [first, last] : poems) {
      auto tokens = text::tokenize(block_text(l, first, last));
      if (tokens.size() < rules.duplicate_shingle_size) continue;
      bool duplicate = false;
      for (const auto& earlier : kept) {
        if (shingle_jaccard(tokens, earlier, rules.duplicate_shingle_size) >= rules.duplicate_similarity_threshold) {
          duplicate = true;
          break;
        }
      }
      if (duplicate) remove_blocks(l, first, last, lines, mask, RemovalReason::kDuplicate, rule);
      else kept.push_back(std::move(tokens));
    }
  }

  CleanedText out;
  out.text = raw;
  out.text.body.clear();
  for (std::size_t i = 0; i < body.size(); ++i)
    if (mask.kept(i)) out.text.body.push_back(body[i]);
  out.report.text_id = raw.id;
  out.report.source_path = raw.source_path;
  out.report.input_bytes = body.size();
  out.report.output_bytes = out.text.body.size();
  out.report.empty = is_blank(out.text.body);
  out.report.removed = mask.spans();
  return out;
}

std::vector<CompoundText> concat_by_author(std::span<const RawText> texts) {
  std::vector<CompoundText> out;
  std::map<std::string, std::size_t> index;
  for (const RawText& t : texts) {
    if (t.author.empty()) throw std::invalid_argument("concat_by_author: text '" + t.id + "' has no author");
    auto [it, inserted] = index.try_emplace(t.author, out.size());
    if (inserted) out.push_back({t.author, {}, {}, 0});
    CompoundText& c = out[it->second];
    std::string_view body = t.body;
    while (!body.empty() && (body.front() == '\n' || body.front() == ' ' || body.front() == '\t')) body.remove_prefix(1);
    while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back()))) body.remove_suffix(1);
    if (!c.source_ids.empty()) c.body += "\n\n";
    c.body += body;
    c.source_ids.push_back(t.id);
  }
  for (auto& c : out) c.word_count = text::tokenize(c.body).size();
  return out;
}

}  // namespace gepc::corpus
