#include "gepc/dtm.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "gepc/csv.hpp"
#include "gepc/error.hpp"

namespace gepc::dtm {

std::optional<std::size_t> Vocabulary::find(const std::string& term) const {
  const auto it = index.find(term);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

DocumentTermMatrix::DocumentTermMatrix(std::vector<std::string> rows, std::size_t n_terms,
                                       std::vector<std::vector<Entry>> entries,
                                       std::vector<std::uint64_t> row_token_totals,
                                       std::vector<std::uint64_t> row_raw_totals)
    : rows_(std::move(rows)), n_terms_(n_terms), totals_(std::move(row_token_totals)),
      raw_totals_(std::move(row_raw_totals)) {
  if (entries.size() != rows_.size() || totals_.size() != rows_.size())
    throw std::invalid_argument("DocumentTermMatrix: row count mismatch");
  if (!raw_totals_.empty() && raw_totals_.size() != rows_.size())
    throw std::invalid_argument("DocumentTermMatrix: raw total count mismatch");
  for (auto& row : entries) {
    std::sort(row.begin(), row.end(), [](const Entry& a, const Entry& b) { return a.column < b.column; });
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (row[i].column >= n_terms_) throw std::invalid_argument("DocumentTermMatrix: column out of range");
      if (i > 0 && row[i].column == row[i - 1].column)
        throw std::invalid_argument("DocumentTermMatrix: duplicate column in row");
      if (row[i].count > 0) entries_.push_back(row[i]);
    }
    row_ptr_.push_back(entries_.size());
  }
}

std::optional<std::size_t> DocumentTermMatrix::row_index(const std::string& doc_id) const {
  const auto it = std::find(rows_.begin(), rows_.end(), doc_id);
  if (it == rows_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

std::uint64_t DocumentTermMatrix::count(std::size_t r, std::size_t column) const {
  const auto entries = row(r);
  const auto it = std::lower_bound(entries.begin(), entries.end(), column,
                                   [](const Entry& e, std::size_t c) { return e.column < c; });
  return it != entries.end() && it->column == column ? it->count : 0;
}

std::uint64_t DocumentTermMatrix::row_sum(std::size_t r) const {
  std::uint64_t s = 0;
  for (const auto& e : row(r)) s += e.count;
  return s;
}

Matrix DocumentTermMatrix::to_dense() const {
  Matrix m(n_rows(), n_terms_);
  for (std::size_t r = 0; r < n_rows(); ++r)
    for (const auto& e : row(r)) m(r, e.column) = static_cast<double>(e.count);
  return m;
}

DtmResult build_dtm(std::span<const std::string> doc_ids, std::span<const text::TokenStream> streams,
                    const DtmOptions& options, std::span<const std::uint64_t> raw_totals) {
  if (streams.empty()) throw std::invalid_argument("build_dtm: no documents");
  if (doc_ids.size() != streams.size()) throw std::invalid_argument("build_dtm: id/stream count mismatch");
  if (!(options.max_doc_fraction > 0.0 && options.max_doc_fraction <= 1.0))
    throw std::invalid_argument("build_dtm: max_doc_fraction must lie in (0, 1]");
  if (!raw_totals.empty() && raw_totals.size() != streams.size())
    throw std::invalid_argument("build_dtm: raw total count mismatch");

  std::vector<std::map<std::string, std::uint64_t>> per_doc(streams.size());
  std::map<std::string, std::pair<std::uint64_t, std::size_t>> corpus;  // count, documents
  std::vector<std::uint64_t> totals(streams.size());
  for (std::size_t d = 0; d < streams.size(); ++d) {
    for (const auto& t : streams[d]) ++per_doc[d][t.stem.empty() ? t.lower : t.stem];
    totals[d] = streams[d].size();
    for (const auto& [term, c] : per_doc[d]) {
      auto& agg = corpus[term];
      agg.first += c;
      agg.second += 1;
    }
  }

  const double n_docs = static_cast<double>(streams.size());
  DtmResult out;
  for (const auto& [term, agg] : corpus) {
    const double fraction = static_cast<double>(agg.second) / n_docs;
    if (agg.first < options.min_count || fraction > options.max_doc_fraction) continue;
    out.vocabulary.index.emplace(term, out.vocabulary.terms.size());
    out.vocabulary.terms.push_back(term);
    out.vocabulary.doc_freq.push_back(fraction);
  }

  std::vector<std::vector<DocumentTermMatrix::Entry>> entries(streams.size());
  for (std::size_t d = 0; d < streams.size(); ++d)
    for (const auto& [term, c] : per_doc[d])
      if (const auto col = out.vocabulary.find(term)) entries[d].push_back({*col, c});

  out.matrix = DocumentTermMatrix(std::vector<std::string>(doc_ids.begin(), doc_ids.end()), out.vocabulary.size(),
                                  std::move(entries), std::move(totals),
                                  std::vector<std::uint64_t>(raw_totals.begin(), raw_totals.end()));
  return out;
}

Matrix rates_per_1000(const DocumentTermMatrix& m, RateDenominator denominator) {
  const bool raw = denominator == RateDenominator::kPreStopword;
  if (raw && m.row_raw_totals().empty())
    throw std::invalid_argument("rates_per_1000: matrix has no pre-stopword totals");
  const auto& totals = raw ? m.row_raw_totals() : m.row_token_totals();
  Matrix rates(m.n_rows(), m.n_terms());
  for (std::size_t r = 0; r < m.n_rows(); ++r) {
    if (totals[r] == 0) throw Error("rates_per_1000: document '" + m.rows()[r] + "' has no tokens");
    const double scale = 1000.0 / static_cast<double>(totals[r]);
    for (const auto& e : m.row(r)) rates(r, e.column) = scale * static_cast<double>(e.count);
  }
  return rates;
}

namespace {

void write_file(const std::filesystem::path& p, const std::string& contents) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error("cannot write " + p.string());
  out << contents;
  if (!out) throw Error("write failed for " + p.string());
}

std::vector<csv::Row> read_table(const std::filesystem::path& p, std::size_t columns) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("cannot open " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  auto rows = csv::parse(ss.str());
  if (rows.empty()) throw ParseError(p.string(), 0, "missing header");
  rows.erase(rows.begin());
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != columns)
      throw ParseError(p.string(), i + 1, "expected " + std::to_string(columns) + " fields");
  return rows;
}

std::uint64_t to_u64(const std::string& s, const std::filesystem::path& p, std::size_t row) {
  try {
    std::size_t used = 0;
    const auto v = std::stoull(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError(p.string(), row, "bad integer '" + s + "'");
  }
}

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return prefix.string() + suffix;
}

}  // namespace

void save(const DtmResult& dtm, const std::filesystem::path& prefix) {
  const auto& m = dtm.matrix;
  std::string triplets = csv::format_row({"doc_id", "term", "count"});
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    for (const auto& e : m.row(r))
      triplets += csv::format_row({m.rows()[r], dtm.vocabulary.terms[e.column], std::to_string(e.count)});
  std::string vocab = csv::format_row({"term", "doc_freq"});
  for (std::size_t t = 0; t < dtm.vocabulary.size(); ++t) {
    std::ostringstream f;
    f.precision(17);
    f << dtm.vocabulary.doc_freq[t];
    vocab += csv::format_row({dtm.vocabulary.terms[t], f.str()});
  }
  std::string docs = csv::format_row({"doc_id", "token_total", "raw_total"});
  for (std::size_t r = 0; r < m.n_rows(); ++r)
    docs += csv::format_row({m.rows()[r], std::to_string(m.row_token_totals()[r]),
                             m.row_raw_totals().empty() ? "" : std::to_string(m.row_raw_totals()[r])});
  write_file(with_suffix(prefix, ".triplets.csv"), triplets);
  write_file(with_suffix(prefix, ".vocab.csv"), vocab);
  write_file(with_suffix(prefix, ".docs.csv"), docs);
}

DtmResult load(const std::filesystem::path& prefix) {
  const auto vocab_path = with_suffix(prefix, ".vocab.csv");
  const auto docs_path = with_suffix(prefix, ".docs.csv");
  const auto triplet_path = with_suffix(prefix, ".triplets.csv");

  DtmResult out;
  const auto vocab_rows = read_table(vocab_path, 2);
  for (std::size_t i = 0; i < vocab_rows.size(); ++i) {
    const auto& term = vocab_rows[i][0];
    if (i > 0 && !(out.vocabulary.terms.back() < term))
      throw ParseError(vocab_path.string(), i + 1, "terms not strictly sorted");
    out.vocabulary.index.emplace(term, i);
    out.vocabulary.terms.push_back(term);
    out.vocabulary.doc_freq.push_back(std::stod(vocab_rows[i][1]));
  }

  std::vector<std::string> ids;
  std::vector<std::uint64_t> totals, raw;
  std::map<std::string, std::size_t> doc_index;
  const auto doc_rows = read_table(docs_path, 3);
  bool has_raw = !doc_rows.empty() && !doc_rows[0][2].empty();
  for (std::size_t i = 0; i < doc_rows.size(); ++i) {
    doc_index.emplace(doc_rows[i][0], i);
    ids.push_back(doc_rows[i][0]);
    totals.push_back(to_u64(doc_rows[i][1], docs_path, i + 1));
    if (has_raw) raw.push_back(to_u64(doc_rows[i][2], docs_path, i + 1));
  }

  std::vector<std::vector<DocumentTermMatrix::Entry>> entries(ids.size());
  const auto triplet_rows = read_table(triplet_path, 3);
  for (std::size_t i = 0; i < triplet_rows.size(); ++i) {
    const auto& row = triplet_rows[i];
    const auto d = doc_index.find(row[0]);
    if (d == doc_index.end()) throw ParseError(triplet_path.string(), i + 1, "unknown document '" + row[0] + "'");
    const auto col = out.vocabulary.find(row[1]);
    if (!col) throw ParseError(triplet_path.string(), i + 1, "unknown term '" + row[1] + "'");
    entries[d->second].push_back({*col, to_u64(row[2], triplet_path, i + 1)});
  }
  out.matrix = DocumentTermMatrix(std::move(ids), out.vocabulary.size(), std::move(entries), std::move(totals),
                                  std::move(raw));
  return out;
}

}  // namespace gepc::dtm
