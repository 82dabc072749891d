#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "gepc/matrix.hpp"
#include "gepc/text.hpp"

namespace gepc::dtm {

struct Vocabulary {
  std::vector<std::string> terms;  // lexicographic
  std::unordered_map<std::string, std::size_t> index;
  std::vector<double> doc_freq;  // fraction of documents containing the term

  std::size_t size() const noexcept { return terms.size(); }
  std::optional<std::size_t> find(const std::string& term) const;
};

/// Sparse counts in compressed-row form.
class DocumentTermMatrix {
 public:
  struct Entry {
    std::size_t column;
    std::uint64_t count;
  };

  DocumentTermMatrix() = default;
  DocumentTermMatrix(std::vector<std::string> rows, std::size_t n_terms, std::vector<std::vector<Entry>> entries,
                     std::vector<std::uint64_t> row_token_totals,
                     std::vector<std::uint64_t> row_raw_totals = {});

  const std::vector<std::string>& rows() const noexcept { return rows_; }
  std::size_t n_rows() const noexcept { return rows_.size(); }
  std::size_t n_terms() const noexcept { return n_terms_; }
  std::optional<std::size_t> row_index(const std::string& doc_id) const;

  std::span<const Entry> row(std::size_t r) const {
    return {entries_.data() + row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]};
  }
  std::uint64_t count(std::size_t r, std::size_t column) const;
  std::uint64_t row_sum(std::size_t r) const;

  /// Tokens per document after stopword removal (in or out of the vocabulary).
  const std::vector<std::uint64_t>& row_token_totals() const noexcept { return totals_; }
  /// Tokens per document before stopword removal; empty when not supplied.
  const std::vector<std::uint64_t>& row_raw_totals() const noexcept { return raw_totals_; }

  Matrix to_dense() const;

 private:
  std::vector<std::string> rows_;
  std::size_t n_terms_ = 0;
  std::vector<std::size_t> row_ptr_{0};
  std::vector<Entry> entries_;
  std::vector<std::uint64_t> totals_;
  std::vector<std::uint64_t> raw_totals_;
};

struct DtmOptions {
  std::uint64_t min_count = 1;
  double max_doc_fraction = 0.95;
};

struct DtmResult {
  Vocabulary vocabulary;
  DocumentTermMatrix matrix;
};

/// Counts the `stem` field (falling back to `lower`) of preprocessed streams.
/// `raw_totals`, when given, records each document's pre-stopword token count.
DtmResult build_dtm(std::span<const std::string> doc_ids, std::span<const text::TokenStream> streams,
                    const DtmOptions& options = {}, std::span<const std::uint64_t> raw_totals = {});

enum class RateDenominator { kPostStopword, kPreStopword };

/// rate[d][t] = 1000 * count / total[d]. Throws gepc::Error naming a zero-length document.
Matrix rates_per_1000(const DocumentTermMatrix& m, RateDenominator denominator = RateDenominator::kPostStopword);

/// Writes `<prefix>.triplets.csv` (doc_id,term,count), `<prefix>.vocab.csv`
/// (term,doc_freq) and `<prefix>.docs.csv` (doc_id,token_total,raw_total).
void save(const DtmResult& dtm, const std::filesystem::path& prefix);
DtmResult load(const std::filesystem::path& prefix);

}  // namespace gepc::dtm
