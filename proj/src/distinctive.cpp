#include "gepc/distinctive.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gepc/csv.hpp"
#include "gepc/error.hpp"
#include "gepc/rng.hpp"

namespace gepc::distinctive {

RateTable RateTable::from_dtm(const dtm::DtmResult& dtm, dtm::RateDenominator denominator) {
  return {dtm.matrix.rows(), dtm.vocabulary.terms, dtm::rates_per_1000(dtm.matrix, denominator)};
}

std::size_t RateTable::doc_index(const std::string& doc) const {
  const auto it = std::find(docs.begin(), docs.end(), doc);
  if (it == docs.end()) throw std::invalid_argument("unknown document '" + doc + "'");
  return static_cast<std::size_t>(it - docs.begin());
}

std::vector<double> RateTable::column_means() const {
  std::vector<double> mean(rates.cols(), 0.0);
  if (rates.rows() == 0) return mean;
  for (std::size_t r = 0; r < rates.rows(); ++r)
    for (std::size_t c = 0; c < rates.cols(); ++c) mean[c] += rates(r, c);
  for (double& m : mean) m /= static_cast<double>(rates.rows());
  return mean;
}

namespace {

double keyness_of(double ra, double rb, double avg, const std::string& word) {
  if (avg > 0.0) return (ra - rb) / avg;
  if (ra != 0.0 || rb != 0.0)
    throw std::logic_error("keyness: corpus average is zero for used word '" + word + "'");
  return 0.0;
}

void check_pair(const RateTable& rates, const std::string& a, const std::string& b) {
  if (a == b) throw std::invalid_argument("distinctiveness needs two different documents");
  rates.doc_index(a);
  rates.doc_index(b);
}

}  // namespace

std::vector<KeynessResult> unique_words(const RateTable& rates, const std::string& a, const std::string& b) {
  check_pair(rates, a, b);
  const std::size_t ia = rates.doc_index(a), ib = rates.doc_index(b);
  const auto avg = rates.column_means();
  std::vector<KeynessResult> out;
  for (std::size_t t = 0; t < rates.terms.size(); ++t) {
    const double ra = rates.rates(ia, t), rb = rates.rates(ib, t);
    if ((ra > 0.0) == (rb > 0.0)) continue;
    KeynessResult r{rates.terms[t], ra, rb, avg[t], ra > 0.0 ? a : b, keyness_of(ra, rb, avg[t], rates.terms[t]),
                    std::nullopt};
    out.push_back(std::move(r));
  }
  std::stable_sort(out.begin(), out.end(), [](const KeynessResult& x, const KeynessResult& y) {
    return std::max(x.rate_a, x.rate_b) > std::max(y.rate_a, y.rate_b);
  });
  return out;
}

std::vector<KeynessResult> keyness_scores(const RateTable& rates, const std::string& a, const std::string& b,
                                          std::span<const double> all_docs_avg) {
  check_pair(rates, a, b);
  if (all_docs_avg.size() != rates.terms.size())
    throw std::invalid_argument("keyness_scores: average vector does not cover the vocabulary");
  const std::size_t ia = rates.doc_index(a), ib = rates.doc_index(b);
  std::vector<KeynessResult> out;
  for (std::size_t t = 0; t < rates.terms.size(); ++t) {
    const double ra = rates.rates(ia, t), rb = rates.rates(ib, t);
    std::optional<std::string> unique;
    if ((ra > 0.0) != (rb > 0.0)) unique = ra > 0.0 ? a : b;
    out.push_back({rates.terms[t], ra, rb, all_docs_avg[t], std::move(unique),
                   keyness_of(ra, rb, all_docs_avg[t], rates.terms[t]), std::nullopt});
  }
  std::stable_sort(out.begin(), out.end(), [](const KeynessResult& x, const KeynessResult& y) {
    return std::abs(x.keyness) > std::abs(y.keyness);
  });
  return out;
}

std::vector<double> segment_rates(const text::TokenStream& stream, const std::string& word, std::size_t segment_len) {
  if (segment_len == 0) throw std::invalid_argument("segment_rates: segment length must be positive");
  std::vector<double> rates;
  for (std::size_t start = 0; start + segment_len <= stream.size(); start += segment_len) {
    std::size_t hits = 0;
    for (std::size_t i = start; i < start + segment_len; ++i) {
      const auto& t = stream[i];
      hits += (t.stem.empty() ? t.lower : t.stem) == word ? 1 : 0;
    }
    rates.push_back(1000.0 * static_cast<double>(hits) / static_cast<double>(segment_len));
  }
  return rates;
}

BayesKeyness bayes_keyness(const std::string& word, const NamedStream& a, const NamedStream& b,
                           std::size_t segment_len, const numerics::GibbsConfig& cfg) {
  for (const NamedStream* s : {&a, &b})
    if (s->stream->size() < segment_len)
      throw Error("text '" + s->name + "' has " + std::to_string(s->stream->size()) + " tokens, fewer than one " +
                  std::to_string(segment_len) + "-token segment");
  BayesKeyness out;
  out.rates_a = segment_rates(*a.stream, word, segment_len);
  out.rates_b = segment_rates(*b.stream, word, segment_len);
  numerics::GibbsConfig run = cfg;
  run.seed = derive_seed(cfg.seed, word);
  out.posterior = numerics::gibbs_two_group(out.rates_a, out.rates_b, run);

  auto whole_rate = [&word](const text::TokenStream& s) {
    std::size_t hits = 0;
    for (const auto& t : s) hits += (t.stem.empty() ? t.lower : t.stem) == word ? 1 : 0;
    return 1000.0 * static_cast<double>(hits) / static_cast<double>(s.size());
  };
  auto& r = out.result;
  r.word = word;
  r.rate_a = whole_rate(*a.stream);
  r.rate_b = whole_rate(*b.stream);
  r.corpus_avg_rate = (r.rate_a + r.rate_b) / 2.0;
  if ((r.rate_a > 0.0) != (r.rate_b > 0.0)) r.unique_to = r.rate_a > 0.0 ? a.name : b.name;
  r.keyness = keyness_of(r.rate_a, r.rate_b, r.corpus_avg_rate, word);
  r.p_delta_neg = out.posterior.p_delta_neg;
  return out;
}

std::string to_csv(std::span<const KeynessResult> results) {
  std::string out = csv::format_row({"word", "rate_a", "rate_b", "corpus_avg", "unique_to", "keyness", "p_delta_neg"});
  for (const auto& r : results)
    out += csv::format_row({r.word, csv::fixed(r.rate_a), csv::fixed(r.rate_b), csv::fixed(r.corpus_avg_rate),
                            r.unique_to.value_or(""), csv::fixed(r.keyness),
                            r.p_delta_neg ? csv::fixed(*r.p_delta_neg) : ""});
  return out;
}

}  // namespace gepc::distinctive
