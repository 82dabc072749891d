#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gepc/dtm.hpp"
#include "gepc/gibbs.hpp"
#include "gepc/matrix.hpp"
#include "gepc/text.hpp"

namespace gepc::distinctive {

/// Per-1000 usage rates with their row (document) and column (term) labels.
struct RateTable {
  std::vector<std::string> docs;
  std::vector<std::string> terms;
  Matrix rates;

  static RateTable from_dtm(const dtm::DtmResult& dtm,
                            dtm::RateDenominator denominator = dtm::RateDenominator::kPostStopword);
  std::size_t doc_index(const std::string& doc) const;  // throws std::invalid_argument when absent
  /// Mean rate of every term over all documents.
  std::vector<double> column_means() const;
};

struct KeynessResult {
  std::string word;
  double rate_a = 0.0;
  double rate_b = 0.0;
  double corpus_avg_rate = 0.0;
  std::optional<std::string> unique_to;
  double keyness = 0.0;
  std::optional<double> p_delta_neg;
};

/// Terms used by exactly one of the two documents, highest nonzero rate first.
std::vector<KeynessResult> unique_words(const RateTable& rates, const std::string& a, const std::string& b);

/// (rate_a - rate_b) / corpus average for every term, ranked by |keyness|.
std::vector<KeynessResult> keyness_scores(const RateTable& rates, const std::string& a, const std::string& b,
                                          std::span<const double> all_docs_avg);

/// Per-1000 rate of `word` (matched on stem) in each full consecutive segment.
std::vector<double> segment_rates(const text::TokenStream& stream, const std::string& word, std::size_t segment_len);

struct NamedStream {
  std::string name;
  const text::TokenStream* stream;
};

struct BayesKeyness {
  KeynessResult result;  // corpus_avg_rate is the mean of the two texts' rates
  std::vector<double> rates_a;
  std::vector<double> rates_b;
  numerics::PosteriorSamples posterior;
};

/// Two-group comparison of segment rates. The chain seed is derived from
/// cfg.seed and the word. Throws gepc::Error naming a text shorter than segment_len.
BayesKeyness bayes_keyness(const std::string& word, const NamedStream& a, const NamedStream& b,
                           std::size_t segment_len, const numerics::GibbsConfig& cfg);

/// CSV with header word,rate_a,rate_b,corpus_avg,unique_to,keyness,p_delta_neg.
std::string to_csv(std::span<const KeynessResult> results);

}  // namespace gepc::distinctive
