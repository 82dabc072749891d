#include "gepc/report.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "gepc/corpus.hpp"
#include "gepc/csv.hpp"
#include "gepc/distinctive.hpp"
#include "gepc/error.hpp"
#include "gepc/lm.hpp"
#include "gepc/profile.hpp"
#include "gepc/rng.hpp"
#include "gepc/svg.hpp"
#include "gepc/wordnet.hpp"

namespace gepc::report {
namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"clean",   "dtm",     "similarity", "topics",    "distinct", "bayes",
                                              "profile", "affect",  "sonority",   "surprisal", "report"};
  return names;
}

std::string slug(std::string_view label) {
  std::string out;
  bool gap = false;
  for (unsigned char c : label) {
    if (std::isalnum(c)) {
      if (gap && !out.empty()) out.push_back('_');
      out.push_back(static_cast<char>(std::tolower(c)));
      gap = false;
    } else {
      gap = true;
    }
  }
  return out.empty() ? "text" : out;
}

namespace {

double round4(double v) { return std::stod(csv::fixed(v)); }

std::string dump(const json& j) { return j.dump(2) + "\n"; }

// Files are written under a staging directory and moved into place on commit.
class Staging {
 public:
  Staging(const fs::path& output_dir, const std::string& name)
      : output_(output_dir), dir_(output_dir / (".staging-" + name)) {
    std::error_code ec;
    fs::create_directories(output_, ec);
    if (ec) throw Error("cannot create output directory " + output_.string() + ": " + ec.message());
    fs::remove_all(dir_, ec);
    fs::create_directories(dir_, ec);
    if (ec) throw Error("output directory " + output_.string() + " is not writable: " + ec.message());
  }
  Staging(const Staging&) = delete;
  Staging& operator=(const Staging&) = delete;
  ~Staging() {
    std::error_code ec;
    fs::remove_all(dir_, ec);
  }

  void write(const fs::path& relative, const std::string& contents) {
    const fs::path target = dir_ / relative;
    fs::create_directories(target.parent_path());
    std::ofstream out(target, std::ios::binary);
    if (!out) throw Error("cannot write " + (output_ / relative).string());
    out << contents;
    if (!out) throw Error("write failed for " + (output_ / relative).string());
    files_.insert(relative.generic_string());
  }

  const std::set<std::string>& files() const { return files_; }

  void commit() {
    for (const auto& entry : fs::directory_iterator(dir_)) {
      const fs::path target = output_ / entry.path().filename();
      std::error_code ec;
      fs::remove_all(target, ec);
      fs::rename(entry.path(), target);
    }
    fs::remove_all(dir_);
  }

 private:
  fs::path output_;
  fs::path dir_;
  std::set<std::string> files_;
};

struct Document {
  std::string id;          // author
  std::string slug;
  text::TokenStream tokens;   // every word
  text::TokenStream content;  // stopwords removed, lowercase
  text::TokenStream stems;    // stopwords removed, stemmed
};

struct Corpus {
  std::vector<corpus::RawText> cleaned;
  std::vector<corpus::CleaningReport> reports;
  std::vector<corpus::IngestError> errors;
  std::vector<corpus::CompoundText> compounds;
  std::vector<Document> docs;

  const Document& doc(const std::string& id) const {
    for (const auto& d : docs)
      if (d.id == id) return d;
    throw Error("unknown author '" + id + "'");
  }
};

void validate_paths(const RunConfig& cfg, bool needs_wordnet) {
  std::error_code ec;
  if (cfg.corpus_dir.empty()) throw Error("no corpus directory given (--corpus)");
  if (!fs::is_directory(cfg.corpus_dir, ec)) throw Error("corpus directory not found: " + cfg.corpus_dir.string());
  if (!fs::is_regular_file(cfg.corpus_dir / "manifest.csv", ec))
    throw Error("manifest not found: " + (cfg.corpus_dir / "manifest.csv").string());
  if (cfg.output_dir.empty()) throw Error("no output directory given (--out)");
  if (!cfg.rules_file.empty() && !fs::is_regular_file(cfg.rules_file, ec))
    throw Error("cleaning rule file not found: " + cfg.rules_file.string());
  if (needs_wordnet) {
    if (cfg.wordnet_dir.empty()) throw Error("no WordNet directory given (--wordnet or WORDNET_DIR)");
    if (!fs::is_directory(cfg.wordnet_dir, ec)) throw Error("WordNet directory not found: " + cfg.wordnet_dir.string());
  }
}

Corpus load_corpus(const RunConfig& cfg, std::ostream& log) {
  Corpus c;
  const auto manifest = corpus::read_manifest(cfg.corpus_dir / "manifest.csv");
  auto ingest = corpus::ingest_directory(cfg.corpus_dir, manifest);
  c.errors = std::move(ingest.errors);
  for (const auto& e : c.errors) log << "warning: skipped " << e.id << " (" << e.path << "): " << e.message << "\n";
  if (ingest.texts.empty()) throw Error("no readable texts in " + cfg.corpus_dir.string());

  const corpus::CleaningRules rules =
      cfg.rules_file.empty() ? corpus::CleaningRules::defaults() : corpus::CleaningRules::load(cfg.rules_file);
  for (auto& raw : ingest.texts) {
    if (cfg.skip_cleaning) {
      corpus::CleaningReport r{raw.id, raw.source_path, raw.body.size(), raw.body.size(), false, {}};
      c.reports.push_back(std::move(r));
      c.cleaned.push_back(std::move(raw));
    } else {
      auto cleaned = corpus::clean_text(raw, rules);
      c.reports.push_back(std::move(cleaned.report));
      c.cleaned.push_back(std::move(cleaned.text));
    }
  }
  c.compounds = corpus::concat_by_author(c.cleaned);
  std::set<std::string> slugs;
  for (const auto& comp : c.compounds) {
    Document d;
    d.id = comp.author;
    d.slug = slug(comp.author);
    for (int n = 2; !slugs.insert(d.slug).second; ++n) d.slug = slug(comp.author) + "_" + std::to_string(n);
    d.tokens = text::tokenize(comp.body);
    d.content = text::preprocess(d.tokens, text::default_stopwords(), false);
    d.stems = text::preprocess(d.tokens, text::default_stopwords(), true);
    c.docs.push_back(std::move(d));
  }
  return c;
}

dtm::DtmResult build_matrix(const Corpus& c, const RunConfig& cfg) {
  std::vector<std::string> ids;
  std::vector<text::TokenStream> streams;
  std::vector<std::uint64_t> raw;
  for (const auto& d : c.docs) {
    ids.push_back(d.id);
    streams.push_back(d.stems);
    raw.push_back(d.tokens.size());
  }
  return dtm::build_dtm(ids, streams, cfg.dtm, raw);
}

std::pair<std::string, std::string> pair_of(const Corpus& c, const RunConfig& cfg) {
  if (c.docs.size() < 2) throw Error("distinctiveness needs at least two authors");
  std::string a = cfg.author_a.empty() ? c.docs[0].id : cfg.author_a;
  std::string b = cfg.author_b.empty() ? (c.docs[0].id == a ? c.docs[1].id : c.docs[0].id) : cfg.author_b;
  c.doc(a);
  c.doc(b);
  if (a == b) throw Error("distinctiveness needs two different authors");
  return {a, b};
}

// ---------------------------------------------------------------- analyses

void do_clean(const Corpus& c, Staging& out) {
  std::string summary = csv::format_row({"id", "source_path", "input_bytes", "output_bytes", "removed_spans", "empty"});
  for (std::size_t i = 0; i < c.cleaned.size(); ++i) {
    const auto& t = c.cleaned[i];
    const auto& r = c.reports[i];
    out.write(fs::path("cleaned") / t.source_path, t.body);
    out.write(fs::path("cleaned") / (t.source_path + ".report.json"), corpus::to_json(r));
    summary += csv::format_row({t.id, t.source_path, std::to_string(r.input_bytes), std::to_string(r.output_bytes),
                                std::to_string(r.removed.size()), r.empty ? "1" : "0"});
  }
  std::string compounds = csv::format_row({"author", "sources", "word_count"});
  for (const auto& comp : c.compounds) {
    std::string sources;
    for (const auto& s : comp.source_ids) sources += (sources.empty() ? "" : ";") + s;
    compounds += csv::format_row({comp.author, sources, std::to_string(comp.word_count)});
  }
  std::string errors = csv::format_row({"id", "path", "message"});
  for (const auto& e : c.errors) errors += csv::format_row({e.id, e.path, e.message});
  out.write("clean_summary.csv", summary);
  out.write("compound_texts.csv", compounds);
  out.write("ingest_errors.csv", errors);
}

void do_dtm(const Corpus& c, const RunConfig& cfg, Staging& out, const fs::path& scratch) {
  const auto m = build_matrix(c, cfg);
  const fs::path prefix = scratch / "dtm";
  dtm::save(m, prefix);
  for (const char* suffix : {".triplets.csv", ".vocab.csv", ".docs.csv"}) {
    std::ifstream in(prefix.string() + suffix, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    out.write(std::string("dtm") + suffix, ss.str());
  }
  json j;
  j["documents"] = m.matrix.n_rows();
  j["terms"] = m.vocabulary.size();
  j["min_count"] = cfg.dtm.min_count;
  j["max_doc_fraction"] = round4(cfg.dtm.max_doc_fraction);
  std::uint64_t tokens = 0, raw = 0;
  for (std::size_t r = 0; r < m.matrix.n_rows(); ++r) {
    tokens += m.matrix.row_token_totals()[r];
    raw += m.matrix.row_raw_totals()[r];
  }
  j["content_tokens"] = tokens;
  j["tokens"] = raw;
  std::set<std::string> types;
  for (const auto& d : c.docs)
    for (const auto& t : d.tokens) types.insert(t.lower);
  j["types"] = types.size();
  out.write("dtm_summary.json", dump(j));
}

void do_similarity(const Corpus& c, const RunConfig& cfg, Staging& out) {
  const auto m = build_matrix(c, cfg);
  const std::size_t n = m.matrix.n_rows();
  if (n < 2) throw Error("similarity needs at least two authors");
  if (m.vocabulary.size() == 0) throw Error("similarity: empty vocabulary");
  const Matrix counts = m.matrix.to_dense();
  const std::size_t k = std::min({cfg.lsa_components, n - 1, m.vocabulary.size()});
  numerics::SvdOptions so;
  so.seed = derive_seed(cfg.seed, "lsa");
  const auto svd = numerics::truncated_svd(counts, k, so);
  Matrix lsa(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) lsa(i, j) = svd.u(i, j) * svd.values[j];
  const Matrix dist = numerics::cosine_distances(lsa);
  const std::size_t d = std::min(cfg.mds_dims, n - 1);
  const auto emb = numerics::classical_mds(dist, d);

  csv::Row head{"author"};
  for (std::size_t j = 0; j < d; ++j) head.push_back("dim" + std::to_string(j + 1));
  std::string coords = csv::format_row(head);
  csv::Row dhead{"author"};
  for (const auto& id : m.matrix.rows()) dhead.push_back(id);
  std::string dists = csv::format_row(dhead);
  for (std::size_t i = 0; i < n; ++i) {
    csv::Row row{m.matrix.rows()[i]};
    for (std::size_t j = 0; j < d; ++j) row.push_back(csv::fixed(emb.coordinates(i, j)));
    coords += csv::format_row(row);
    csv::Row drow{m.matrix.rows()[i]};
    for (std::size_t j = 0; j < n; ++j) drow.push_back(csv::fixed(dist(i, j)));
    dists += csv::format_row(drow);
  }
  out.write("similarity_coordinates.csv", coords);
  out.write("similarity_distances.csv", dists);
  json j;
  j["lsa_components"] = k;
  j["mds_dims"] = d;
  j["stress"] = round4(emb.stress);
  json sv = json::array();
  for (double v : svd.values) sv.push_back(round4(v));
  j["singular_values"] = sv;
  out.write("similarity.json", dump(j));

  svg::ScatterData sd;
  sd.labels = m.matrix.rows();
  sd.title = "Author similarity (MDS of LSA cosine distances)";
  for (std::size_t i = 0; i < n; ++i) {
    sd.x.push_back(emb.coordinates(i, 0));
    sd.y.push_back(d > 1 ? emb.coordinates(i, 1) : 0.0);
  }
  out.write("similarity.svg", svg::render_figure(sd));
}

void do_topics(const Corpus& c, const RunConfig& cfg, Staging& out) {
  const auto m = build_matrix(c, cfg);
  if (m.vocabulary.size() == 0) throw Error("topics: empty vocabulary");
  numerics::NmfOptions o = cfg.nmf;
  o.seed = derive_seed(cfg.seed, "nmf");
  const auto model = numerics::nmf(m.matrix.to_dense(), o);

  csv::Row head{"author"};
  std::vector<std::string> topic_names;
  for (std::size_t t = 0; t < o.k; ++t) topic_names.push_back("T" + std::to_string(t + 1));
  head.insert(head.end(), topic_names.begin(), topic_names.end());
  std::string doc_topic = csv::format_row(head);
  for (std::size_t i = 0; i < m.matrix.n_rows(); ++i) {
    csv::Row row{m.matrix.rows()[i]};
    for (std::size_t t = 0; t < o.k; ++t) row.push_back(csv::fixed(model.doc_topic(i, t)));
    doc_topic += csv::format_row(row);
  }
  std::string terms = csv::format_row({"topic", "rank", "term", "weight"});
  for (std::size_t t = 0; t < o.k; ++t)
    for (std::size_t r = 0; r < model.top_terms[t].size(); ++r) {
      const std::size_t col = model.top_terms[t][r];
      terms += csv::format_row({topic_names[t], std::to_string(r + 1), m.vocabulary.terms[col],
                                csv::fixed(model.topic_term(t, col))});
    }
  out.write("topics_doc_topic.csv", doc_topic);
  out.write("topics_top_terms.csv", terms);
  json j;
  j["k"] = o.k;
  j["iterations"] = model.iterations;
  j["final_error"] = round4(model.final_error());
  j["initial_error"] = round4(model.error_history.front());
  out.write("topics.json", dump(j));
  svg::HeatmapData hd{m.matrix.rows(), topic_names, model.doc_topic, "Topic weights per author (NMF)"};
  out.write("topics_heatmap.svg", svg::render_figure(hd));
}

void do_distinct(const Corpus& c, const RunConfig& cfg, Staging& out) {
  const auto [a, b] = pair_of(c, cfg);
  const auto m = build_matrix(c, cfg);
  const auto table = distinctive::RateTable::from_dtm(m);
  const auto avg = table.column_means();
  const auto unique = distinctive::unique_words(table, a, b);
  const auto key = distinctive::keyness_scores(table, a, b, avg);
  out.write("distinct_unique.csv", distinctive::to_csv(unique));
  out.write("distinct_keyness.csv", distinctive::to_csv(key));

  // Author x word rates for the top unique words of each side.
  std::vector<std::string> words;
  for (const std::string& side : {a, b}) {
    std::size_t taken = 0;
    for (const auto& r : unique)
      if (r.unique_to == side && taken < cfg.top_k) {
        words.push_back(r.word);
        ++taken;
      }
  }
  csv::Row head{"author"};
  head.insert(head.end(), words.begin(), words.end());
  std::string t1 = csv::format_row(head);
  for (const std::string& side : {a, b}) {
    csv::Row row{side};
    const std::size_t r = table.doc_index(side);
    for (const auto& w : words) row.push_back(csv::fixed(table.rates(r, m.vocabulary.index.at(w))));
    t1 += csv::format_row(row);
  }
  out.write("distinct_table.csv", t1);
}

void do_bayes(const Corpus& c, const RunConfig& cfg, Staging& out) {
  const auto [a, b] = pair_of(c, cfg);
  std::vector<std::string> words = cfg.words;
  if (words.empty()) {
    const auto m = build_matrix(c, cfg);
    const auto table = distinctive::RateTable::from_dtm(m);
    const auto key = distinctive::keyness_scores(table, a, b, table.column_means());
    for (std::size_t i = 0; i < key.size() && words.size() < cfg.bayes_top; ++i) words.push_back(key[i].word);
  }
  numerics::GibbsConfig g = cfg.gibbs;
  g.seed = cfg.seed;
  const distinctive::NamedStream sa{a, &c.doc(a).stems}, sb{b, &c.doc(b).stems};
  std::vector<distinctive::KeynessResult> results;
  for (const auto& w : words) {
    const auto r = distinctive::bayes_keyness(w, sa, sb, cfg.segment_len, g);
    std::string draws = csv::format_row({"delta"});
    for (double d : r.posterior.delta_draws) draws += csv::fixed(d, 6) + "\n";
    out.write(fs::path("bayes_draws") / (slug(w) + ".csv"), draws);
    results.push_back(r.result);
  }
  out.write("bayes.csv", distinctive::to_csv(results));
}

std::vector<std::string> dispersion_targets(const profile::PosProfile& p) {
  std::vector<std::string> targets;
  for (const auto* list : {&p.top_nouns, &p.top_verbs, &p.top_adjs})
    for (std::size_t i = 0; i < std::min<std::size_t>(3, list->size()); ++i)
      if (std::find(targets.begin(), targets.end(), (*list)[i].word) == targets.end())
        targets.push_back((*list)[i].word);
  return targets;
}

std::string join_ranked(const std::vector<profile::RankedWord>& v) {
  std::string s;
  for (const auto& w : v) s += (s.empty() ? "" : "; ") + w.word + "(" + std::to_string(w.count) + ")";
  return s;
}

std::string join_grams(const std::vector<profile::RankedNGram>& v) {
  std::string s;
  for (const auto& g : v) s += (s.empty() ? "" : "; ") + text::join(g.gram) + "(" + std::to_string(g.count) + ")";
  return s;
}

void do_profile(const Corpus& c, const RunConfig& cfg, const wordnet::SynsetGraph& graph, Staging& out) {
  wordnet::SimilarityCache cache(graph);
  std::string table = csv::format_row({"id", "tokens", "types", "hapaxes", "ttr", "type_share", "nouns", "verbs",
                                       "adjectives", "av_quotient", "top_nouns", "top_verbs", "top_adjectives",
                                       "bigrams", "trigrams", "sonority", "pos_valence", "neg_valence", "arousal",
                                       "hit_rate", "most_positive", "most_negative", "most_arousing"});
  for (const auto& d : c.docs) {
    if (d.tokens.empty() || d.content.empty()) throw Error("text '" + d.id + "' has no words after cleaning");
    profile::TextProfile p;
    p.id = d.id;
    p.surface = profile::surface_profile(d.tokens);
    p.pos = profile::pos_profile(d.content, graph, cfg.top_k);
    p.bigrams = profile::collocations(d.content, 2, cfg.top_k);
    p.trigrams = profile::collocations(d.content, 3, cfg.top_k);
    p.sonority_mean = profile::sonority_text(d.tokens);
    try {
      p.affect = profile::affect_scores(d.content, profile::AffectLabels::defaults(), cache);
    } catch (const Error&) {
      p.affect.reset();
    }
    out.write("profile_" + d.slug + ".json", profile::to_json(p));

    const auto targets = dispersion_targets(*p.pos);
    if (!targets.empty()) {
      svg::DispersionData dd{targets, profile::dispersion(d.tokens, targets), "Lexical dispersion: " + d.id};
      out.write("dispersion_" + d.slug + ".svg", svg::render_figure(dd));
    }
    const auto opt = [](const std::optional<double>& v) { return v ? csv::fixed(*v) : std::string(); };
    const auto& a = p.affect;
    table += csv::format_row(
        {d.id, std::to_string(p.surface.token_count), std::to_string(p.surface.type_count),
         std::to_string(p.surface.hapax_count), csv::fixed(p.surface.ttr), csv::fixed(p.surface.type_share),
         std::to_string(p.pos->noun_count), std::to_string(p.pos->verb_count), std::to_string(p.pos->adj_count),
         opt(p.pos->av_quotient), join_ranked(p.pos->top_nouns), join_ranked(p.pos->top_verbs),
         join_ranked(p.pos->top_adjs), join_grams(p.bigrams), join_grams(p.trigrams), opt(p.sonority_mean),
         a ? csv::fixed(a->mean[0]) : "", a ? csv::fixed(a->mean[1]) : "", a ? csv::fixed(a->mean[2]) : "",
         a ? csv::fixed(a->hit_rate) : "", a ? a->extremes[0] : "", a ? a->extremes[1] : "",
         a ? a->extremes[2] : ""});
  }
  out.write("profiles.csv", table);
}

void do_affect(const Corpus& c, const wordnet::SynsetGraph& graph, Staging& out) {
  wordnet::SimilarityCache cache(graph);
  std::string summary = csv::format_row({"id", "pos_valence", "neg_valence", "arousal", "hits", "in_scope", "hit_rate",
                                         "most_positive", "most_negative", "most_arousing"});
  for (const auto& d : c.docs) {
    const auto r = profile::affect_scores(d.content, profile::AffectLabels::defaults(), cache);
    summary += csv::format_row({d.id, csv::fixed(r.mean[0]), csv::fixed(r.mean[1]), csv::fixed(r.mean[2]),
                                std::to_string(r.hits), std::to_string(r.in_scope), csv::fixed(r.hit_rate),
                                r.extremes[0], r.extremes[1], r.extremes[2]});
    std::string words = csv::format_row({"word", "count", "pos_valence", "neg_valence", "arousal"});
    Matrix points(r.words.size(), 3);
    for (std::size_t i = 0; i < r.words.size(); ++i) {
      const auto& w = r.words[i];
      words += csv::format_row({w.word, std::to_string(w.count), csv::fixed(w.score[0]), csv::fixed(w.score[1]),
                                csv::fixed(w.score[2])});
      for (std::size_t k = 0; k < 3; ++k) points(i, k) = w.score[k];
    }
    out.write("affect_words_" + d.slug + ".csv", words);

    const auto pc = numerics::pca(points, 3);
    std::string coords = csv::format_row({"word", "pc1", "pc2", "pc3"});
    svg::ScatterData sd;
    sd.title = "Affect principal components: " + d.id;
    for (std::size_t i = 0; i < r.words.size(); ++i) {
      coords += csv::format_row({r.words[i].word, csv::fixed(pc.scores(i, 0)), csv::fixed(pc.scores(i, 1)),
                                 csv::fixed(pc.scores(i, 2))});
      sd.labels.push_back(r.words[i].word);
      sd.x.push_back(pc.scores(i, 0));
      sd.y.push_back(pc.scores(i, 1));
    }
    out.write("affect_pca_" + d.slug + ".csv", coords);
    out.write("affect_pca_" + d.slug + ".svg", svg::render_figure(sd));
  }
  out.write("affect.csv", summary);
}

void do_sonority(const Corpus& c, Staging& out) {
  std::string summary = csv::format_row({"id", "sonority_mean", "scorable_words"});
  for (const auto& d : c.docs) {
    std::size_t scorable = 0;
    for (const auto& t : d.tokens) scorable += profile::sonority_word(t.lower) ? 1 : 0;
    const auto mean = profile::sonority_text(d.tokens);
    summary += csv::format_row({d.id, mean ? csv::fixed(*mean) : "", std::to_string(scorable)});
  }
  out.write("sonority.csv", summary);
}

void do_surprisal(const Corpus& c, const RunConfig& cfg, Staging& out) {
  std::string matrix = csv::format_row({"train", "test", "mean_surprisal", "tokens"});
  for (const auto& train : c.docs) {
    if (train.tokens.empty()) continue;
    const std::vector<text::TokenStream> corpus{train.tokens};
    const auto model = lm::train_trigram(corpus, cfg.lm_k);
    out.write(fs::path("models") / (train.slug + ".counts"), model.serialize());
    for (const auto& test : c.docs) {
      const auto s = lm::surprisal(model, test.tokens);
      matrix += csv::format_row({train.id, test.id, csv::fixed(s.mean), std::to_string(s.values.size())});
    }
  }
  out.write("surprisal.csv", matrix);
}

bool needs_wordnet(const std::string& name) { return name == "profile" || name == "affect"; }

}  // namespace

void run_subcommand(const std::string& name, const RunConfig& cfg, std::ostream& log) {
  const auto& names = subcommands();
  if (std::find(names.begin(), names.end(), name) == names.end()) throw std::invalid_argument("unknown subcommand '" + name + "'");
  const bool full = name == "report";
  validate_paths(cfg, needs_wordnet(name));

  Staging out(cfg.output_dir, name);
  const fs::path scratch = cfg.output_dir / (".scratch-" + name);
  struct ScratchGuard {
    fs::path p;
    ~ScratchGuard() {
      std::error_code ec;
      fs::remove_all(p, ec);
    }
  } guard{scratch};
  fs::create_directories(scratch);

  const Corpus c = load_corpus(cfg, log);
  std::unique_ptr<wordnet::SynsetGraph> graph;
  auto wn = [&]() -> const wordnet::SynsetGraph& {
    if (!graph) graph = std::make_unique<wordnet::SynsetGraph>(wordnet::SynsetGraph::load(cfg.wordnet_dir));
    return *graph;
  };

  if (!full) {
    if (name == "clean") do_clean(c, out);
    else if (name == "dtm") do_dtm(c, cfg, out, scratch);
    else if (name == "similarity") do_similarity(c, cfg, out);
    else if (name == "topics") do_topics(c, cfg, out);
    else if (name == "distinct") do_distinct(c, cfg, out);
    else if (name == "bayes") do_bayes(c, cfg, out);
    else if (name == "profile") do_profile(c, cfg, wn(), out);
    else if (name == "affect") do_affect(c, wn(), out);
    else if (name == "sonority") do_sonority(c, out);
    else if (name == "surprisal") do_surprisal(c, cfg, out);
  } else {
    std::vector<std::pair<std::string, std::function<void()>>> steps{
        {"clean", [&] { do_clean(c, out); }},
        {"dtm", [&] { do_dtm(c, cfg, out, scratch); }},
        {"similarity", [&] { do_similarity(c, cfg, out); }},
        {"topics", [&] { do_topics(c, cfg, out); }},
        {"distinct", [&] { do_distinct(c, cfg, out); }},
        {"bayes", [&] { do_bayes(c, cfg, out); }},
        {"sonority", [&] { do_sonority(c, out); }},
        {"surprisal", [&] { do_surprisal(c, cfg, out); }},
    };
    const bool have_wordnet = !cfg.wordnet_dir.empty();
    if (have_wordnet) {
      steps.push_back({"profile", [&] { do_profile(c, cfg, wn(), out); }});
      steps.push_back({"affect", [&] { do_affect(c, wn(), out); }});
    }
    std::string summary = "Corpus analysis report\n\nAuthors: " + std::to_string(c.docs.size()) +
                          "\nTexts: " + std::to_string(c.cleaned.size()) + "\nSeed: " + std::to_string(cfg.seed) +
                          "\n\nSteps:\n";
    for (const auto& [step, fn] : steps) {
      try {
        fn();
        summary += "  " + step + ": ok\n";
      } catch (const Error& e) {
        summary += "  " + step + ": skipped (" + std::string(e.what()) + ")\n";
        log << "warning: " << step << " skipped: " << e.what() << "\n";
      }
    }
    if (!have_wordnet) summary += "  profile: skipped (no WordNet directory)\n  affect: skipped (no WordNet directory)\n";
    summary += "\nFiles:\n";
    for (const auto& f : out.files()) summary += "  " + f + "\n";
    out.write("summary.txt", summary);
  }
  out.commit();
  log << name << ": wrote " << out.files().size() << " files to " << cfg.output_dir.string() << "\n";
}

}  // namespace gepc::report
