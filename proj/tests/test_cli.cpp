#include <gtest/gtest.h>

#include <cstdio>
#include <map>
#include <sys/wait.h>

#include "gepc/csv.hpp"
#include "gepc/report.hpp"
#include "gepc/text.hpp"
#include "json.hpp"
#include "test_support.hpp"

namespace fs = std::filesystem;
using gepc::testing::fixtures;
using gepc::testing::have_wordnet;
using gepc::testing::read_file;
using gepc::testing::TempDir;
using gepc::testing::wordnet_dir;
using gepc::testing::write_file;

namespace {

struct Run {
  int status;
  std::string output;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + std::string(GEPC_CLI) + " " + args + " 2>&1";
  FILE* p = popen(cmd.c_str(), "r");
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string corpus_flags(const fs::path& out) {
  return "--corpus " + (fixtures() / "corpus").string() + " --out " + out.string() + " --topics 3 --segment-len 20";
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
  std::map<std::string, std::string> files;
  for (const auto& e : fs::recursive_directory_iterator(dir))
    if (e.is_regular_file()) files[fs::relative(e.path(), dir).generic_string()] = read_file(e.path());
  return files;
}

std::vector<gepc::csv::Row> csv_rows(const fs::path& f) { return gepc::csv::parse(read_file(f)); }

}  // namespace

TEST(Cli, UnknownSubcommandPrintsUsage) {
  const auto r = run("bogus");
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.output.find("bogus"), std::string::npos);
  EXPECT_NE(r.output.find("Usage"), std::string::npos);
  EXPECT_NE(run("").status, 0);
}

TEST(Cli, HelpDocumentsEveryDefault) {
  const auto r = run("--help");
  EXPECT_EQ(r.status, 0);
  for (const char* s : {"--corpus", "--wordnet", "--out", "--seed UINT [42]", "--topics UINT:POSITIVE [20]",
                        "--segment-len UINT:POSITIVE [1000]", "--min-count UINT [1]", "[0.95]", "--config",
                        "WORDNET_DIR", "[2000]", "[500]", "[0.5]"})
    EXPECT_NE(r.output.find(s), std::string::npos) << s;
  for (const auto& name : gepc::report::subcommands()) EXPECT_NE(r.output.find(name), std::string::npos) << name;
}

TEST(Cli, MissingInputsFailWithOneLineAndNoOutputs) {
  TempDir dir;
  const auto out = dir.path() / "out";
  auto r = run("dtm --corpus /nonexistent --out " + out.string());
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(std::count(r.output.begin(), r.output.end(), '\n'), 1);
  EXPECT_NE(r.output.find("/nonexistent"), std::string::npos);
  EXPECT_FALSE(fs::exists(out));

  r = run("profile " + corpus_flags(out) + " --wordnet /nonexistent/wn");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("WordNet"), std::string::npos);

  // Failure after computation started: unknown author. Nothing is left behind.
  r = run("bayes " + corpus_flags(out) + " --a Nobody");
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.output.find("Nobody"), std::string::npos);
  if (fs::exists(out)) EXPECT_TRUE(fs::is_empty(out));
}

TEST(Cli, SimilarityOnThreeDocumentsGivesThreeByTwoCoordinates) {
  TempDir dir;
  const auto r = run("similarity " + corpus_flags(dir.path()));
  ASSERT_EQ(r.status, 0) << r.output;
  const auto rows = csv_rows(dir.path() / "similarity_coordinates.csv");
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0], (gepc::csv::Row{"author", "dim1", "dim2"}));
  for (const auto& row : rows) EXPECT_EQ(row.size(), 3u);
  EXPECT_EQ(rows[1][0], "Ada Marsh");
  const auto j = nlohmann::json::parse(read_file(dir.path() / "similarity.json"));
  EXPECT_EQ(j.at("lsa_components"), 2);
}

TEST(Cli, IngestErrorsAreReportedButDoNotStopTheRun) {
  TempDir dir;
  const auto r = run("clean " + corpus_flags(dir.path()));
  ASSERT_EQ(r.status, 0) << r.output;
  EXPECT_NE(r.output.find("warning"), std::string::npos);
  const auto errors = csv_rows(dir.path() / "ingest_errors.csv");
  EXPECT_EQ(errors.size(), 3u);
  EXPECT_TRUE(fs::exists(dir.path() / "cleaned" / "marsh_field.txt"));
  EXPECT_EQ(csv_rows(dir.path() / "clean_summary.csv").size(), 5u);
}

TEST(Cli, TopicsAndDistinctTables) {
  TempDir dir;
  ASSERT_EQ(run("topics " + corpus_flags(dir.path())).status, 0);
  const auto dt = csv_rows(dir.path() / "topics_doc_topic.csv");
  ASSERT_EQ(dt.size(), 4u);
  EXPECT_EQ(dt[0].size(), 4u);
  for (std::size_t i = 1; i < dt.size(); ++i) {
    double s = 0.0;
    for (std::size_t j = 1; j < dt[i].size(); ++j) s += std::stod(dt[i][j]);
    EXPECT_NEAR(s, 1.0, 2e-4);
  }
  ASSERT_EQ(run("distinct " + corpus_flags(dir.path()) + " --a \"Bram Ellery\" --b \"Ada Marsh\"").status, 0);
  const auto t1 = csv_rows(dir.path() / "distinct_table.csv");
  ASSERT_EQ(t1.size(), 3u);
  EXPECT_EQ(t1[1][0], "Bram Ellery");
  EXPECT_EQ(t1[0].size(), 11u);
  const auto unique = csv_rows(dir.path() / "distinct_unique.csv");
  EXPECT_EQ(unique[0][0], "word");
}

TEST(Cli, EverySeededSubcommandIsByteIdenticalOnRerun) {
  if (!have_wordnet()) GTEST_SKIP() << "WORDNET_DIR not configured";
  for (const auto& name : gepc::report::subcommands()) {
    TempDir a, b;
    const std::string wn = " --wordnet " + wordnet_dir().string();
    ASSERT_EQ(run(name + " " + corpus_flags(a.path()) + wn).status, 0) << name;
    ASSERT_EQ(run(name + " " + corpus_flags(b.path()) + wn).status, 0) << name;
    const auto sa = snapshot(a.path()), sb = snapshot(b.path());
    EXPECT_FALSE(sa.empty()) << name;
    EXPECT_EQ(sa, sb) << name;
  }
}

TEST(Cli, SeedChangesStochasticOutputs) {
  TempDir a, b;
  ASSERT_EQ(run("bayes " + corpus_flags(a.path()) + " --seed 1").status, 0);
  ASSERT_EQ(run("bayes " + corpus_flags(b.path()) + " --seed 2").status, 0);
  EXPECT_NE(read_file(a.path() / "bayes.csv"), read_file(b.path() / "bayes.csv"));
}

TEST(Cli, ReportRunsTheFullChain) {
  if (!have_wordnet()) GTEST_SKIP() << "WORDNET_DIR not configured";
  TempDir dir;
  const auto r = run("report " + corpus_flags(dir.path()) + " --wordnet " + wordnet_dir().string());
  ASSERT_EQ(r.status, 0) << r.output;
  const std::string summary = read_file(dir.path() / "summary.txt");
  for (const char* f : {"similarity.svg", "topics_heatmap.svg", "profiles.csv", "affect.csv", "sonority.csv",
                        "surprisal.csv", "bayes.csv", "dtm.triplets.csv", "distinct_table.csv"}) {
    EXPECT_NE(summary.find(f), std::string::npos) << f;
    EXPECT_TRUE(fs::exists(dir.path() / f)) << f;
  }
  EXPECT_EQ(summary.find("skipped"), std::string::npos) << summary;
  const auto profile = nlohmann::json::parse(read_file(dir.path() / "profile_ada_marsh.json"));
  EXPECT_GT(profile.at("token_count").get<int>(), 100);
}

TEST(Cli, ReportWithoutWordNetSkipsLexiconSteps) {
  TempDir dir;
  const auto r = run("report " + corpus_flags(dir.path()), "env -u WORDNET_DIR");
  ASSERT_EQ(r.status, 0) << r.output;
  const std::string summary = read_file(dir.path() / "summary.txt");
  EXPECT_NE(summary.find("profile: skipped"), std::string::npos);
  EXPECT_NE(summary.find("similarity: ok"), std::string::npos);
}

TEST(Cli, DispersionTicksMatchADirectScan) {
  if (!have_wordnet()) GTEST_SKIP() << "WORDNET_DIR not configured";
  TempDir dir;
  ASSERT_EQ(run("profile " + corpus_flags(dir.path()) + " --wordnet " + wordnet_dir().string()).status, 0);
  ASSERT_EQ(run("clean " + corpus_flags(dir.path())).status, 0);
  const std::string body = read_file(dir.path() / "cleaned" / "marsh_field.txt") + "\n\n" +
                           read_file(dir.path() / "cleaned" / "marsh_harbour.txt");
  std::size_t mothers = 0;
  for (const auto& t : gepc::text::tokenize(body)) mothers += t.lower == "mother" ? 1 : 0;
  const std::string svg = read_file(dir.path() / "dispersion_ada_marsh.svg");
  // Each row's ticks follow its label; "mother" is the top noun of this author.
  const std::size_t row = svg.find(">mother</text>");
  ASSERT_NE(row, std::string::npos);
  const std::size_t end = svg.find("<text", row);
  std::size_t ticks = 0;
  for (std::size_t p = svg.find("class=\"tick\"", row); p < end; p = svg.find("class=\"tick\"", p + 1)) ++ticks;
  EXPECT_EQ(ticks, mothers);
  EXPECT_GT(mothers, 0u);
}

TEST(Cli, ConfigFileSitsUnderEnvironmentAndFlags) {
  TempDir dir;
  const auto cfg = dir.path() / "run.ini";
  write_file(cfg, "corpus=" + (fixtures() / "corpus").string() + "\nout=" + (dir.path() / "o").string() +
                      "\nwordnet=/from/config\nseed=7\n");
  auto r = run("profile --config " + cfg.string(), "env -u WORDNET_DIR");
  EXPECT_NE(r.output.find("/from/config"), std::string::npos) << r.output;
  r = run("profile --config " + cfg.string(), "env WORDNET_DIR=/from/env");
  EXPECT_NE(r.output.find("/from/env"), std::string::npos) << r.output;
  r = run("profile --config " + cfg.string() + " --wordnet /from/flag", "env WORDNET_DIR=/from/env");
  EXPECT_NE(r.output.find("/from/flag"), std::string::npos) << r.output;
  r = run("sonority --config " + cfg.string());
  EXPECT_EQ(r.status, 0) << r.output;
  EXPECT_TRUE(fs::exists(dir.path() / "o" / "sonority.csv"));
}

TEST(Cli, SlugIsFileNameSafe) {
  EXPECT_EQ(gepc::report::slug("Ada Marsh"), "ada_marsh");
  EXPECT_EQ(gepc::report::slug("  D. G. Rossetti!"), "d_g_rossetti");
  EXPECT_EQ(gepc::report::slug("???"), "text");
}
