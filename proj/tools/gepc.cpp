#include <cstdlib>
#include <exception>
#include <iostream>
#include <string>
#include <string_view>

#include "CLI11.hpp"
#include "gepc/report.hpp"

namespace {

std::string describe(const std::string& name) {
  if (name == "clean") return "Clean raw texts and write cleaned copies with removal reports";
  if (name == "dtm") return "Build the document-term matrix (triplet CSVs)";
  if (name == "similarity") return "LSA cosine distances and a 2D MDS map";
  if (name == "topics") return "NMF topic model with a doc-topic heatmap";
  if (name == "distinct") return "Unique words and keyness for an author pair";
  if (name == "bayes") return "Gibbs-sampled posterior keyness for selected words";
  if (name == "profile") return "Surface, POS, collocation, sonority and affect profile per author";
  if (name == "affect") return "WordNet affect scores and their PCA";
  if (name == "sonority") return "Mean sonority per author";
  if (name == "surprisal") return "Trigram surprisal matrix (train x test)";
  return "Run every analysis and write summary.txt";
}

bool on_command_line(int argc, char** argv, std::string_view flag) {
  for (int i = 1; i < argc; ++i) {
    const std::string_view arg = argv[i];
    if (arg == flag || (arg.starts_with(flag) && arg.size() > flag.size() && arg[flag.size()] == '=')) return true;
  }
  return false;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative analysis of a poetry corpus", "gepc"};
  app.require_subcommand(0, 1);
  app.allow_extras();
  app.fallthrough();
  app.set_config("--config", "", "key=value configuration file (flags and environment take precedence)");
  app.get_config_formatter_base()->arrayDelimiter(',');

  gepc::report::RunConfig cfg;
  std::string corpus, wordnet, out, rules;
  std::size_t max_iters = cfg.nmf.max_iters;
  app.add_option("--corpus", corpus, "Corpus directory holding manifest.csv")->capture_default_str();
  app.add_option("--wordnet", wordnet, "WordNet 3.0 dict directory (env WORDNET_DIR overrides the config file)");
  app.add_option("--out", out, "Output directory")->default_val("out");
  app.add_option("--rules", rules, "Cleaning rule file (default: bundled rules)");
  app.add_flag("--no-clean", cfg.skip_cleaning, "Use the texts as read, without cleaning");
  app.add_option("--seed", cfg.seed, "Random seed")->capture_default_str();
  app.add_option("--topics", cfg.nmf.k, "Number of NMF topics")->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--nmf-iters", max_iters, "Maximum NMF iterations")->capture_default_str();
  app.add_option("--nmf-tol", cfg.nmf.tol, "NMF relative-improvement stopping tolerance")->capture_default_str();
  app.add_option("--lsa-components", cfg.lsa_components, "LSA rank (capped at documents-1)")->capture_default_str();
  app.add_option("--segment-len", cfg.segment_len, "Tokens per segment for the Bayesian comparison")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_option("--samples", cfg.gibbs.n_samples, "Gibbs draws kept")->capture_default_str();
  app.add_option("--burn-in", cfg.gibbs.burn_in, "Gibbs draws discarded")->capture_default_str();
  app.add_option("--min-count", cfg.dtm.min_count, "Minimum corpus count of a term")->capture_default_str();
  app.add_option("--max-doc-fraction", cfg.dtm.max_doc_fraction, "Drop terms in more than this share of documents")
      ->capture_default_str()
      ->check(CLI::Range(0.0, 1.0));
  app.add_option("--a", cfg.author_a, "First author of the comparison (default: first author)");
  app.add_option("--b", cfg.author_b, "Second author of the comparison (default: second author)");
  app.add_option("--words", cfg.words, "Words for the Bayesian comparison (default: top keyness words)")
      ->delimiter(',');
  app.add_option("--bayes-top", cfg.bayes_top, "Keyness words used when --words is absent")->capture_default_str();
  app.add_option("--top-k", cfg.top_k, "Length of ranked word and collocation lists")->capture_default_str();
  app.add_option("--lm-k", cfg.lm_k, "Add-k smoothing constant of the trigram model")->capture_default_str();

  for (const auto& name : gepc::report::subcommands()) app.add_subcommand(name, describe(name));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() != 0) {
      std::cerr << "error: " << e.what() << "\n" << app.help();
      return e.get_exit_code();
    }
    return app.exit(e);
  }

  if (!app.remaining().empty() || app.get_subcommands().empty()) {
    if (app.remaining().empty())
      std::cerr << "error: a subcommand is required\n";
    else
      std::cerr << "error: unknown subcommand or argument '" << app.remaining().front() << "'\n";
    std::cerr << app.help();
    return 2;
  }

  if (!on_command_line(argc, argv, "--wordnet"))
    if (const char* env = std::getenv("WORDNET_DIR"); env && *env) wordnet = env;

  cfg.corpus_dir = corpus;
  cfg.wordnet_dir = wordnet;
  cfg.output_dir = out;
  cfg.rules_file = rules;
  cfg.nmf.max_iters = max_iters;
  const std::string name = app.get_subcommands().front()->get_name();
  try {
    gepc::report::run_subcommand(name, cfg, std::cerr);
  } catch (const std::exception& e) {
    std::string msg = e.what();
    for (char& c : msg)
      if (c == '\n') c = ' ';
    std::cerr << "gepc " << name << ": error: " << msg << "\n";
    return 1;
  }
  return 0;
}
