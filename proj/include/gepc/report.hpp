#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gepc/dtm.hpp"
#include "gepc/gibbs.hpp"
#include "gepc/numerics.hpp"

namespace gepc::report {

struct RunConfig {
  std::filesystem::path corpus_dir;   // holds manifest.csv and the texts
  std::filesystem::path wordnet_dir;  // WordNet 3.0 dict directory
  std::filesystem::path output_dir;
  std::filesystem::path rules_file;   // empty: bundled cleaning rules
  bool skip_cleaning = false;
  std::uint64_t seed = 42;
  dtm::DtmOptions dtm;
  std::size_t lsa_components = 40;
  std::size_t mds_dims = 2;
  numerics::NmfOptions nmf;
  numerics::GibbsConfig gibbs;
  std::size_t segment_len = 1000;
  std::string author_a;  // distinct/bayes pair; defaults to the first two authors
  std::string author_b;
  std::vector<std::string> words;  // bayes words; defaults to the top keyness words
  std::size_t bayes_top = 10;
  std::size_t top_k = 5;
  double lm_k = 0.5;
};

const std::vector<std::string>& subcommands();

/// Runs one analysis and moves its files into cfg.output_dir. Every output is
/// first written to a staging directory, so a failure leaves no partial files.
/// Throws gepc::Error (or std::invalid_argument) with a one-line message.
void run_subcommand(const std::string& name, const RunConfig& cfg, std::ostream& log);

/// Lowercase file-name-safe form of a label.
std::string slug(std::string_view label);

}  // namespace gepc::report
