// tests/cli_test.cpp

#include "vcleak/cli.hpp"

#include <sstream>

#include <gtest/gtest.h>

#include "experiment_fixture.hpp"
#include "synth_fixture.hpp"
#include "test_util.hpp"
#include "vcleak/report.hpp"

namespace vcleak {
namespace {

using namespace vcleak::testing;
using nlohmann::json;

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::vector<std::string> lines_of(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string pair_manifest(const fs::path &dir, double alpha) {
  write_corpus(leakage_pair(alpha, 32, 60), dir);
  return (dir / "manifest.json").string();
}

TEST(CliValidate, ExitCodes) {
  const auto dir = scratch_dir("cli_validate");
  const auto good = pair_manifest(dir / "good", 0.2);
  Result r = run({"validate", good});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "");

  Corpus dup;
  dup.embedding_dim = 2;
  dup.speakers.push_back(speaker("twin", {vec({1, 0})}));
  dup.speakers.push_back(speaker("twin", {vec({0, 1})}));
  write_corpus(dup, dir / "dup");
  r = run({"validate", (dir / "dup" / "manifest.json").string()});
  EXPECT_EQ(r.status, 1);
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 1u);
  EXPECT_EQ(lines[0].rfind("duplicate-speaker-id\t", 0), 0u);
  EXPECT_EQ(std::count(lines[0].begin(), lines[0].end(), '\t'), 2);

  EXPECT_EQ(run({"validate", (dir / "absent.json").string()}).status, 2);
  write_file(dir / "broken.json", "{ not json");
  EXPECT_EQ(run({"validate", (dir / "broken.json").string()}).status, 2);
}

TEST(CliUsage, BadFlagsExitTwo) {
  EXPECT_EQ(run({}).status, 2);
  EXPECT_EQ(run({"frobnicate"}).status, 2);
  EXPECT_EQ(run({"eval"}).status, 2);
  const auto dir = scratch_dir("cli_usage");
  const auto m = pair_manifest(dir / "c", 0.2);
  EXPECT_EQ(run({"eval", m, "-c", "conv", "--format", "xml"}).status, 2);
  EXPECT_EQ(run({"eval", m, "-c", "conv", "--nbins", "1"}).status, 2);
  EXPECT_EQ(run({"--help"}).status, 0);
}

TEST(CliProximal, Examples) {
  const auto dir = scratch_dir("cli_proximal");
  Corpus c;
  c.embedding_dim = 2;
  c.speakers.push_back(speaker("east", {vec({2, 0})}, {{"gender", "f"}}));
  c.speakers.push_back(speaker("diag", {vec({1, 0}), vec({0, 1})}, {{"gender", "f"}}));
  c.speakers.push_back(speaker("north", {vec({0, 3})}, {{"gender", "m"}}));
  write_corpus(c, dir);
  const auto m = (dir / "manifest.json").string();

  Result r = run({"proximal", m});
  ASSERT_EQ(r.status, 0) << r.err;
  // Oracle: diag sums 2(1 - sqrt(1/2)); east and north 1 + (1 - sqrt(1/2)).
  EXPECT_EQ(r.out, "proximal\tdiag\ndiag\t0.585786\neast\t1.292893\nnorth\t1.292893\n");

  r = run({"proximal", m, "--filter", "gender=m"});
  EXPECT_EQ(r.out, "proximal\tnorth\nnorth\t0.000000\n");

  r = run({"proximal", m, "--filter", "gender=x"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("empty-subset"), std::string::npos);
}

TEST(CliEval, FormatsAndRoundTrip) {
  const auto dir = scratch_dir("cli_eval");
  const auto m = pair_manifest(dir / "c", 0.5);

  Result r = run({"eval", m, "-c", "conv", "--format", "md"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto md = lines_of(r.out);
  ASSERT_EQ(md.size(), 3u);
  EXPECT_NE(md[2].find("| leakage |"), std::string::npos);

  r = run({"eval", m, "-c", "conv", "-p", "spk0", "-d", "spk1", "--format", "json"});
  ASSERT_EQ(r.status, 0) << r.err;
  const Corpus corpus = load_manifest(m);
  EXPECT_EQ(report_from_json(json::parse(r.out)), evaluate(corpus, "spk0", "spk1", "conv"));

  const auto out = dir / "report.csv";
  r = run({"eval", m, "-c", "conv", "--format", "csv", "-o", out.string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(lines_of(read_file(out)).size(), 2u);

  r = run({"eval", m, "-c", "nope"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("missing-conversion"), std::string::npos);

  r = run({"eval", m, "-c", "conv", "-p", "spk1", "-d", "spk0"});
  EXPECT_EQ(r.status, 1);
  EXPECT_NE(r.err.find("conversion-mismatch"), std::string::npos);
}

TEST(CliHist, Rows) {
  const auto dir = scratch_dir("cli_hist");
  const auto m = pair_manifest(dir / "c", 0.3);
  Result r = run({"hist", m, "-c", "conv"});
  ASSERT_EQ(r.status, 0) << r.err;
  auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 51u);
  EXPECT_EQ(lines[0], "bin_lo\tbin_hi\tmass_B\tmass_R\tmass_G");
  double sums[3] = {0, 0, 0};
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    double lo, hi, b, rr, g;
    in >> lo >> hi >> b >> rr >> g;
    EXPECT_LT(lo, hi);
    sums[0] += b;
    sums[1] += rr;
    sums[2] += g;
  }
  for (double s : sums) EXPECT_NEAR(s, 1.0, 1e-9);

  r = run({"hist", m, "-c", "conv", "--nbins", "10", "-o", (dir / "h.tsv").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(lines_of(read_file(dir / "h.tsv")).size(), 11u);
}

TEST(CliSynth, WritesLoadableCorpus) {
  const auto dir = scratch_dir("cli_synth");
  const auto out = (dir / "corpus").string();
  Result r = run({"synth", "-o", out, "--speakers", "4", "--utterances", "50",
                  "--dim", "32", "--sigma", "0.05", "--seed", "7"});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto manifest = (dir / "corpus" / "manifest.json").string();
  EXPECT_EQ(r.out, manifest + "\n");
  EXPECT_EQ(run({"validate", manifest}).status, 0);
  const Corpus c = load_manifest(manifest);
  EXPECT_EQ(c.speakers.size(), 4u);
  EXPECT_TRUE(c.conversions.empty());

  // Refuses to overwrite without --force.
  r = run({"synth", "-o", out, "--seed", "7"});
  EXPECT_EQ(r.status, 2);
  EXPECT_NE(r.err.find("output-exists"), std::string::npos);

  r = run({"synth", "-o", out, "--speakers", "4", "--utterances", "50", "--dim", "32",
           "--sigma", "0.05", "--seed", "7", "--convert", "src=spk1,tgt=spk0,alpha=0.5,n=50",
           "--force"});
  ASSERT_EQ(r.status, 0) << r.err;
  const Corpus withconv = load_manifest(manifest);
  ASSERT_EQ(withconv.conversions.size(), 1u);
  EXPECT_EQ(withconv.conversions[0].source_id, "spk1");
  EXPECT_EQ(withconv.conversions[0].target_id, "spk0");
  EXPECT_EQ(withconv.conversions[0].utterances.size(), 50u);
}

TEST(CliSynth, ForcedRerunIsByteIdentical) {
  const auto dir = scratch_dir("cli_synth_bytes");
  const auto out = (dir / "corpus").string();
  const std::vector<std::string> args = {"synth", "-o", out, "--speakers", "3", "--dim", "16",
                                         "--utterances", "10", "--seed", "11", "--force",
                                         "--convert", "src=spk2,tgt=spk1,alpha=0.25"};
  ASSERT_EQ(run(args).status, 0);
  const auto manifest = read_file(dir / "corpus" / "manifest.json");
  std::vector<std::string> blobs;
  for (const auto &e : fs::directory_iterator(dir / "corpus" / "embeddings"))
    blobs.push_back(read_file(e.path()));
  ASSERT_EQ(run(args).status, 0);
  EXPECT_EQ(read_file(dir / "corpus" / "manifest.json"), manifest);
  std::size_t k = 0;
  for (const auto &e : fs::directory_iterator(dir / "corpus" / "embeddings"))
    EXPECT_EQ(read_file(e.path()), blobs[k++]);
  EXPECT_EQ(k, blobs.size());
}

TEST(CliSynth, BadFlags) {
  const auto dir = scratch_dir("cli_synth_bad");
  EXPECT_EQ(run({"synth", "-o", (dir / "a").string(), "--convert", "src=spk0"}).status, 2);
  EXPECT_EQ(run({"synth", "-o", (dir / "b").string(), "--speakers", "3",
                 "--attr", "gender=f:1,m:1"}).status, 2);
  EXPECT_EQ(run({"synth", "-o", (dir / "c").string(),
                 "--convert", "src=spk0,tgt=ghost,alpha=0.1"}).status, 1);
}

class CliExperiment : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = new fs::path(scratch_dir("cli_experiment"));
    const Result r = run(synth_args((*dir_ / "corpus").string()));
    ASSERT_EQ(r.status, 0) << r.err;
  }
  static void TearDownTestSuite() { delete dir_; }

  static std::string config(double tau, const std::string &name) {
    const auto path = *dir_ / name;
    write_file(path, experiment_config_json((*dir_ / "corpus" / "manifest.json").string(), tau).dump(2));
    return path.string();
  }

  static fs::path *dir_;
};

fs::path *CliExperiment::dir_ = nullptr;

TEST_F(CliExperiment, FourRowsInConfigOrder) {
  const Result r = run({"experiment", config(0.33, "exp.json")});
  ASSERT_EQ(r.status, 0) << r.err;
  const auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 6u);
  EXPECT_EQ(lines[2].rfind("| Gender |", 0), 0u);
  EXPECT_EQ(lines[3].rfind("| Accent |", 0), 0u);
  EXPECT_EQ(lines[4].rfind("| Environment |", 0), 0u);
  EXPECT_EQ(lines[5].rfind("| matched |", 0), 0u);
}

TEST_F(CliExperiment, RepeatRunsAreByteIdentical) {
  const auto cfg = config(0.33, "exp.json");
  const auto a = *dir_ / "a.json";
  const auto b = *dir_ / "b.json";
  ASSERT_EQ(run({"experiment", cfg, "-o", a.string(), "--format", "json"}).status, 0);
  ASSERT_EQ(run({"experiment", cfg, "-o", b.string(), "--format", "json"}).status, 0);
  EXPECT_EQ(read_file(a), read_file(b));
  EXPECT_FALSE(read_file(a).empty());
}

TEST_F(CliExperiment, TauChangesOnlyScenario) {
  const auto lo = run({"experiment", config(0.33, "lo.json"), "--format", "json"});
  const auto hi = run({"experiment", config(0.9, "hi.json"), "--format", "json"});
  ASSERT_EQ(lo.status, 0) << lo.err;
  ASSERT_EQ(hi.status, 0) << hi.err;
  const auto a = json::parse(lo.out);
  const auto b = json::parse(hi.out);
  ASSERT_EQ(a.size(), 4u);
  ASSERT_EQ(b.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    const auto &x = a[i]["report"];
    const auto &y = b[i]["report"];
    for (const char *k : {"emd_br", "emd_rg", "emd_bg", "L", "hist", "edges", "source"})
      EXPECT_EQ(x[k], y[k]) << k;
    EXPECT_EQ(y["tau"], 0.9);
    const auto s = classify({y["emd_br"], y["emd_rg"], y["emd_bg"]}, 0.9);
    EXPECT_EQ(y["scenario"], scenario_name(s.label));
  }
}

TEST_F(CliExperiment, FailedRowExitsOne) {
  auto doc = experiment_config_json((*dir_ / "corpus" / "manifest.json").string());
  doc["mismatches"].push_back({{"attribute", "accent"}, {"value", "z"}});
  write_file(*dir_ / "bad.json", doc.dump());
  const Result r = run({"experiment", (*dir_ / "bad.json").string(), "--format", "csv"});
  EXPECT_EQ(r.status, 1);
  EXPECT_EQ(lines_of(r.out).size(), 6u);
  EXPECT_NE(r.err.find("empty-subset"), std::string::npos);
  EXPECT_EQ(run({"experiment", (*dir_ / "missing.json").string()}).status, 2);
}

}  // namespace
}  // namespace vcleak
