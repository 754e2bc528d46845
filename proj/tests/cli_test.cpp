#include <gtest/gtest.h>

#include "cli_harness.hpp"
#include "json.hpp"
#include "patcom/synthetic.hpp"

using namespace patcom;
using namespace patcom::testing;

namespace {

std::string corpus_file(const TempDir& dir, std::size_t records = 400) {
  const auto path = dir.file("corpus.jsonl");
  write_corpus(path, synthetic::generate_records({.records = records, .seed = 42}));
  return path;
}

std::string id_file(const TempDir& dir, const std::string& name,
                    const std::vector<std::string>& ids) {
  std::string text;
  for (const auto& id : ids) text += id + "\n";
  const auto path = dir.file(name);
  write_text(path, text);
  return path;
}

}  // namespace

TEST(Cli, HelpAndUsageErrors) {
  EXPECT_EQ(run_cli({"--help"}).code, 0);
  EXPECT_EQ(run_cli({}).code, 2);
  EXPECT_EQ(run_cli({"bogus"}).code, 2);
  EXPECT_EQ(run_cli({"com", "--upc-top", "0", "--corpus", "x", "-q", "a"}).code, 2);
  EXPECT_EQ(run_cli({"com", "--format", "xml", "--corpus", "x", "-q", "a"}).code, 2);
}

TEST(Cli, Ingest) {
  TempDir dir;
  const auto path = corpus_file(dir);
  const auto ok = run_cli({"ingest", "--corpus", path});
  EXPECT_EQ(ok.code, 0) << ok.err;
  EXPECT_NE(ok.out.find("records: 400"), std::string::npos);

  EXPECT_EQ(run_cli({"ingest", "--corpus", dir.file("missing.jsonl")}).code, 3);

  const auto bad = dir.file("bad.jsonl");
  write_text(bad, read_text(path) + "{broken\n");
  const auto strict = run_cli({"ingest", "--corpus", bad});
  EXPECT_EQ(strict.code, 2);
  EXPECT_NE(strict.err.find("line 401"), std::string::npos) << strict.err;
  const auto lenient = run_cli({"ingest", "--lenient", "--corpus", bad});
  EXPECT_EQ(lenient.code, 0);
  EXPECT_NE(lenient.out.find("skipped: 1"), std::string::npos);
  EXPECT_EQ(run_cli({"ingest", "--mode", "lenient", "--corpus", bad}).code, 0);
}

TEST(Cli, PresearchAndExplain) {
  TempDir dir;
  const auto path = corpus_file(dir);
  const auto hits = run_cli({"presearch", "--corpus", path, "-q", "photonic"});
  EXPECT_EQ(hits.code, 0) << hits.err;
  EXPECT_FALSE(hits.out.empty());

  const auto explain = run_cli({"presearch", "--explain", "-q", "TTL:(a b) OR c"});
  EXPECT_EQ(explain.code, 0);
  EXPECT_NE(explain.out.find("\"kind\": \"or\""), std::string::npos);

  const auto syntax = run_cli({"presearch", "--corpus", path, "-q", "a AND (b"});
  EXPECT_EQ(syntax.code, 5);
  EXPECT_NE(syntax.err.find("^"), std::string::npos);

  EXPECT_EQ(run_cli({"presearch", "--corpus", path, "-q", "zzzunseen"}).code, 4);
}

TEST(Cli, RankWritesCsv) {
  TempDir dir;
  const auto path = corpus_file(dir);
  const auto r = run_cli({"rank", "--system", "ipc", "--corpus", path, "-q", "photonic"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.rfind("symbol,overlap_count,class_total,recall,precision,mpr\nG02B6,", 0), 0u)
      << r.out;
  EXPECT_EQ(run_cli({"rank", "--system", "cpc", "--corpus", path, "-q", "photonic"}).code, 2);
}

TEST(Cli, ComOutputsAndDeterminism) {
  TempDir dir;
  const auto path = corpus_file(dir, 1000);
  const auto a = dir.file("a");
  const auto b = dir.file("b");
  const auto ra = run_cli({"com", "--corpus", path, "-q", "photonic", "--out-dir", a});
  const auto rb = run_cli({"com", "--corpus", path, "-q", "photonic", "--out-dir", b});
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_NE(ra.out.find("upc_selected: 977"), std::string::npos) << ra.out;
  EXPECT_NE(ra.out.find("ipc_selected: G02B6"), std::string::npos);
  for (const auto* f : {"ranking_upc.csv", "ranking_ipc.csv", "overlap_ids.txt"})
    EXPECT_EQ(read_text(a + "/" + f), read_text(b + "/" + f)) << f;

  auto ma = nlohmann::json::parse(read_text(a + "/manifest.json"));
  auto mb = nlohmann::json::parse(read_text(b + "/manifest.json"));
  EXPECT_EQ(ma["corpus"]["records"], 1000);
  EXPECT_EQ(ma["upc_selected"][0], "977");
  EXPECT_TRUE(ma["warnings"].empty());
  ma.erase("created_utc");
  mb.erase("created_utc");
  EXPECT_EQ(ma, mb);
}

TEST(Cli, ComJsonAndConfigFile) {
  TempDir dir;
  const auto path = corpus_file(dir);
  const auto cfg = dir.file("run.conf");
  write_text(cfg, "# settings\nquery = photonic\nupc.top_n = 2\nformat = json\n");
  const auto out = dir.file("o");
  const auto r = run_cli({"com", "--config", cfg, "--corpus", path, "--out-dir", out,
                          "--ipc-top", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto m = nlohmann::json::parse(read_text(out + "/manifest.json"));
  EXPECT_EQ(m["config"]["settings"]["upc.top_n"], "2");
  EXPECT_EQ(m["config"]["settings"]["ipc.top_n"], "3");
  EXPECT_EQ(m["config"]["settings"]["format"], "json");
  EXPECT_TRUE(nlohmann::json::parse(read_text(out + "/ranking_upc.json")).is_array());

  write_text(cfg, "nonsense = 1\n");
  EXPECT_EQ(run_cli({"com", "--config", cfg, "--corpus", path, "-q", "a"}).code, 2);
  EXPECT_EQ(run_cli({"com", "--config", dir.file("nope.conf"), "--corpus", path}).code, 3);
}

TEST(Cli, ComExitCodes) {
  TempDir dir;
  const auto path = corpus_file(dir);
  EXPECT_EQ(run_cli({"com", "--corpus", path, "-q", "zzzunseen", "--out-dir", dir.file("x")})
                .code,
            4);
  EXPECT_EQ(run_cli({"com", "--corpus", path, "-q", "NOT photonic"}).code, 5);
  EXPECT_EQ(run_cli({"com", "--corpus", path}).code, 2);
}

TEST(Cli, OverlapCommand) {
  TempDir dir;
  const auto path = corpus_file(dir);
  const auto r = run_cli({"overlap", "--corpus", path, "--upc", "977", "--ipc", "G02B6",
                          "-q", "photonic"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("set_mpr: "), std::string::npos);
  EXPECT_EQ(run_cli({"overlap", "--corpus", path, "--upc", "97x", "--ipc", "G02B6"}).code, 2);
  EXPECT_EQ(run_cli({"overlap", "--corpus", path, "--upc", "977"}).code, 2);
}

TEST(Cli, KreportParkinsonRow) {
  TempDir dir;
  const auto corpus = dir.file("c.jsonl");
  write_corpus(corpus, parkinson_like_records());
  std::vector<std::string> ids;
  for (int i = 0; i < 100; ++i) ids.push_back("S" + std::to_string(1000 + i));
  const auto set = id_file(dir, "parkinsons.txt", ids);
  const auto r = run_cli({"kreport", "--corpus", corpus, "--domain", "Drugs for Parkinson's=" + set});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto row_start = r.out.find("Drugs for Parkinson's,100,2004.49,3.07000,");
  ASSERT_NE(row_start, std::string::npos) << r.out;
  const auto k_text = r.out.substr(row_start + 42, 8);
  EXPECT_NEAR(std::stod(k_text), 0.372949, 5e-4) << k_text;
}

TEST(Cli, KreportChartSortsTiesByName) {
  TempDir dir;
  const auto corpus = dir.file("c.jsonl");
  write_corpus(corpus, parkinson_like_records());
  const auto beta = id_file(dir, "beta.txt", {"S1000"});
  const auto alpha = id_file(dir, "alpha.txt", {"S1001"});
  const auto later = id_file(dir, "late.txt", {"C1000"});
  const auto out = dir.file("rep");
  const auto r = run_cli({"indicators", "--corpus", corpus, beta, later, alpha, "--out-dir", out});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto chart = read_text(out + "/k_chart.csv");
  // S1000 and S1001 share year 2005 and three in-window citations.
  const auto alpha_at = chart.find("\nalpha,");
  const auto beta_at = chart.find("\nbeta,");
  const auto late_at = chart.find("\nlate,");
  ASSERT_NE(alpha_at, std::string::npos) << chart;
  EXPECT_LT(alpha_at, beta_at);
  EXPECT_LT(beta_at, late_at);
  EXPECT_EQ(chart.substr(alpha_at + 7, 8), chart.substr(beta_at + 6, 8));
  const auto table = read_text(out + "/indicators.csv");
  EXPECT_LT(table.find("beta"), table.find("late"));
  EXPECT_LT(table.find("late"), table.find("alpha"));
}

TEST(Cli, KreportErrors) {
  TempDir dir;
  const auto corpus = dir.file("c.jsonl");
  write_corpus(corpus, parkinson_like_records());
  const auto empty = id_file(dir, "empty.txt", {});
  EXPECT_EQ(run_cli({"kreport", "--corpus", corpus, empty}).code, 4);
  const auto unknown = id_file(dir, "u.txt", {"S1000", "NOPE1", "NOPE2"});
  const auto r = run_cli({"kreport", "--corpus", corpus, unknown});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("NOPE1"), std::string::npos);
  EXPECT_NE(r.err.find("NOPE2"), std::string::npos);
  EXPECT_EQ(run_cli({"kreport", "--corpus", corpus, dir.file("missing.txt")}).code, 3);
  EXPECT_EQ(run_cli({"kreport", "--corpus", corpus, "--domain", "noequals"}).code, 2);
}

TEST(Cli, PredictAndProject) {
  const auto k = run_cli({"predict-k", "--ave-pub-year", "2004.49", "--cite3", "3.07129"});
  ASSERT_EQ(k.code, 0);
  EXPECT_NEAR(std::stod(k.out), 0.372949, 5e-4);
  const auto custom = run_cli({"predict-k", "--ave-pub-year", "10", "--cite3", "100",
                               "--intercept", "1", "--coef-year", "2", "--coef-cite3", "3"});
  EXPECT_EQ(custom.out, "321.000000\n");

  const auto q = run_cli({"project", "--q0", "1", "--k", "0.372949", "--t0", "0", "--t",
                          "1.858557"});
  ASSERT_EQ(q.code, 0);
  EXPECT_NEAR(std::stod(q.out), 2.0, 1e-5);
  const auto series = run_cli({"project", "--k", "0", "--t", "0", "--until", "2"});
  EXPECT_EQ(series.out, "t,q\n0,1\n1,1\n2,1\n");
  EXPECT_EQ(run_cli({"project", "--q0", "0", "--k", "1", "--t", "1"}).code, 2);
}

TEST(Cli, GenCorpusIsSeeded) {
  TempDir dir;
  EXPECT_EQ(run_cli({"gen-corpus", "--records", "50", "--out", dir.file("a.jsonl")}).code, 0);
  EXPECT_EQ(run_cli({"gen-corpus", "--records", "50", "--out", dir.file("b.jsonl")}).code, 0);
  EXPECT_EQ(run_cli({"gen-corpus", "--records", "50", "--seed", "7", "--out",
                     dir.file("c.jsonl")})
                .code,
            0);
  EXPECT_EQ(read_text(dir.file("a.jsonl")), read_text(dir.file("b.jsonl")));
  EXPECT_NE(read_text(dir.file("a.jsonl")), read_text(dir.file("c.jsonl")));
  EXPECT_EQ(run_cli({"ingest", "--corpus", dir.file("a.jsonl")}).code, 0);
}
