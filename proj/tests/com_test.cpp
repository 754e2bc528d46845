#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "patcom/com.hpp"
#include "patcom/synthetic.hpp"

using namespace patcom;
using namespace patcom::com;
namespace cc = patcom::classcodes;

namespace {

PatentRecord coded(std::string id, std::vector<std::string> upc, std::vector<std::string> ipc,
                   std::string title = "", DocType t = DocType::Issued) {
  PatentRecord r;
  r.id = std::move(id);
  r.title = std::move(title);
  r.pub_year = 2000;
  r.doc_type = t;
  for (auto& s : upc) r.upc_codes.push_back(cc::parse_uspc(s));
  for (auto& s : ipc) r.ipc_codes.push_back(cc::parse_ipc(s));
  return r;
}

RankingConfig upc_cfg(std::size_t top_n = 1) {
  auto cfg = RankingConfig::defaults(cc::System::Uspc);
  cfg.top_n = top_n;
  return cfg;
}

RankingConfig ipc_cfg(std::size_t top_n = 1) {
  auto cfg = RankingConfig::defaults(cc::System::Ipc);
  cfg.top_n = top_n;
  return cfg;
}

}  // namespace

TEST(Metrics, BipolarTransistorRows) {
  for (const auto& row : fixtures::kBipolarRows) {
    const auto m = compute_class_metrics(row.overlap, fixtures::kBipolarPresearch,
                                         row.class_total);
    EXPECT_NEAR(m.precision.value(), row.precision, 1e-3) << row.symbol;
    EXPECT_NEAR(m.recall.value(), row.recall, 1e-3) << row.symbol;
    EXPECT_NEAR(m.mpr.value(), row.mpr, 2e-3) << row.symbol;
  }
  const auto m = compute_class_metrics(495, 18687, 689);
  EXPECT_NEAR(m.mpr.value(), 0.372, 1e-3);
}

TEST(Metrics, ParkinsonsRow) {
  EXPECT_NEAR(compute_class_metrics(452, 1065, 2103).mpr.value(), 0.32, 5e-3);
}

TEST(Metrics, ExactRationals) {
  const auto one = compute_class_metrics(7, 7, 7);
  EXPECT_EQ(one.recall, (Ratio{1, 1}));
  EXPECT_EQ(one.precision, (Ratio{1, 1}));
  EXPECT_EQ(one.mpr, (Ratio{1, 1}));
  const auto zero = compute_class_metrics(0, 10, 10);
  EXPECT_EQ(zero.mpr.num, 0u);
  EXPECT_EQ(zero.recall.value(), 0.0);
  const auto m = compute_class_metrics(1, 2, 4);
  EXPECT_EQ(m.recall, (Ratio{1, 2}));
  EXPECT_EQ(m.precision, (Ratio{1, 4}));
  EXPECT_EQ(m.mpr.num, 3u);
  EXPECT_EQ(m.mpr.den, 8u);
}

TEST(Metrics, DomainErrors) {
  EXPECT_THROW(compute_class_metrics(1, 0, 5), DomainError);
  EXPECT_THROW(compute_class_metrics(1, 5, 0), DomainError);
  EXPECT_THROW(compute_class_metrics(6, 5, 10), DomainError);
  EXPECT_THROW(compute_class_metrics(6, 10, 5), DomainError);
}

TEST(Metrics, Bounds) {
  for (std::uint64_t p = 1; p <= 12; ++p)
    for (std::uint64_t t = 1; t <= 12; ++t)
      for (std::uint64_t o = 0; o <= std::min(p, t); ++o) {
        const auto m = compute_class_metrics(o, p, t);
        EXPECT_GE(m.mpr.value(), 0.0);
        EXPECT_LE(m.mpr.value(), 1.0);
        EXPECT_EQ(m.mpr == (Ratio{1, 1}), o == p && o == t);
      }
}

TEST(SetMpr, FinalSetRows) {
  for (const auto& row : fixtures::kFinalSets) {
    const double v = set_mpr(row.overlap, row.presearch, row.final_total);
    if (row.consistent)
      EXPECT_NEAR(v, row.mpr, 5e-3) << row.domain;
    else
      EXPECT_GT(std::abs(v - row.mpr), 5e-3) << row.domain;
  }
  EXPECT_EQ(set_mpr(0, 10, 0), 0.0);
}

TEST(Score, SinglePatentSingleCode) {
  const auto c = Corpus::from_records({
      coded("A", {"514/1"}, {"A61P25/16"}),
      coded("B", {"514/2"}, {"A61P25/28"}),
      coded("C", {"514/3"}, {"A61P9/12"}),
  });
  const auto scores = score_classes(DocSet{0}, c, upc_cfg());
  ASSERT_EQ(scores.size(), 1u);
  EXPECT_EQ(scores[0].label, "514");
  EXPECT_EQ(scores[0].metrics.recall, (Ratio{1, 1}));
  EXPECT_EQ(scores[0].metrics.precision, (Ratio{1, 3}));

  const auto ipc = score_classes(DocSet{0}, c, ipc_cfg());
  ASSERT_EQ(ipc.size(), 1u);
  EXPECT_EQ(ipc[0].label, "A61P25");
  EXPECT_EQ(ipc[0].class_total, 2u);
}

TEST(Score, TieBreaks) {
  const auto c = Corpus::from_records({
      coded("A", {"514/1", "424/1"}, {}),
      coded("B", {"514/1", "424/1"}, {}),
      coded("C", {"600/1", "601/1"}, {}),
      coded("D", {"600/1", "601/1", "602/1"}, {}),
      coded("E", {"602/1"}, {}),
  });
  const auto s = score_classes(DocSet{0, 1, 2}, c, upc_cfg());
  std::vector<std::string> labels;
  for (const auto& x : s) labels.push_back(x.label);
  // 424 and 514 tie exactly and sort by symbol; 600 and 601 likewise.
  EXPECT_EQ(labels, (std::vector<std::string>{"424", "514", "600", "601"}));
}

TEST(Score, OverlapBreaksEqualMpr) {
  // X: overlap 1 of presearch 6, total 2 -> (1/6 + 1/2)/2 = 1/3
  // Y: overlap 2 of presearch 6, total 6 -> (1/3 + 1/3)/2 = 1/3
  std::vector<PatentRecord> recs;
  for (int i = 0; i < 6; ++i) recs.push_back(coded("P" + std::to_string(i), {}, {}));
  recs[0].upc_codes = {cc::parse_uspc("900")};
  recs[1].upc_codes = {cc::parse_uspc("100")};
  recs[2].upc_codes = {cc::parse_uspc("100")};
  for (int i = 0; i < 4; ++i) {
    auto r = coded("Q" + std::to_string(i), {"100"}, {});
    recs.push_back(r);
  }
  recs.push_back(coded("R", {"900"}, {}));
  const auto c = Corpus::from_records(recs);
  DocSet pre;
  for (int i = 0; i < 6; ++i) pre.push_back(*c.find("P" + std::to_string(i)));
  std::sort(pre.begin(), pre.end());
  const auto s = score_classes(pre, c, upc_cfg());
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].metrics.mpr, s[1].metrics.mpr);
  EXPECT_EQ(s[0].label, "100");
  EXPECT_EQ(s[0].overlap_count, 2u);
}

TEST(Score, ShallowCodesAndFilters) {
  const auto c = Corpus::from_records({
      coded("A", {}, {"A61P"}),
      coded("B", {}, {"A61P25/16"}),
      coded("C", {}, {"A61P25/1"}, "", DocType::Application),
  });
  const auto s = score_classes(DocSet{0, 1, 2}, c, ipc_cfg());
  ASSERT_EQ(s.size(), 1u);
  EXPECT_EQ(s[0].label, "A61P25");
  EXPECT_EQ(s[0].class_total, 1u);

  auto cfg = ipc_cfg();
  cfg.doc_type_filter.reset();
  EXPECT_EQ(score_classes(DocSet{0, 1, 2}, c, cfg)[0].class_total, 2u);
  cfg.min_class_size = 3;
  EXPECT_TRUE(score_classes(DocSet{0, 1, 2}, c, cfg).empty());

  EXPECT_THROW(score_classes(DocSet{}, c, cfg), EmptyPresearch);
  auto bad = upc_cfg();
  bad.depth = cc::Depth::MainGroup;
  EXPECT_THROW(score_classes(DocSet{0}, c, bad), std::invalid_argument);
  bad = upc_cfg(0);
  EXPECT_THROW(score_classes(DocSet{0}, c, bad), std::invalid_argument);
}

TEST(ClassMembers, ContainmentAndOracle) {
  const auto c = synthetic::generate_corpus({.records = 1000, .seed = 42});
  EXPECT_TRUE(class_members(c, cc::parse_uspc("999/9"), std::nullopt).empty());
  for (const std::string label : {"A61P", "A61P25", "G02B6", "H01L"}) {
    const auto sym = cc::parse_ipc(label);
    const auto got = class_members(c, sym, std::nullopt);
    DocSet expected;
    for (DocIndex i = 0; i < c.size(); ++i) {
      bool hit = false;
      for (const auto& code : c[i].ipc_codes) {
        const auto s = cc::format(code);
        hit = hit || (s.rfind(label, 0) == 0 &&
                      (s.size() == label.size() || !std::isdigit(static_cast<unsigned char>(
                                                       s[label.size()])) ||
                       std::isalpha(static_cast<unsigned char>(label.back()))));
      }
      if (hit) expected.push_back(i);
    }
    EXPECT_EQ(got, expected) << label;
  }
}

TEST(Score, MatchesBruteForce) {
  const auto c = synthetic::generate_corpus({.records = 1000, .seed = 42});
  const auto idx = search::PostingsIndex::build(c);
  for (const std::string q : {"photonic", "TTL:photonic OR ABST:photonic", "device"}) {
    const auto pre = search::evaluate(search::parse_query(q), idx, c, {DocType::Issued});
    if (pre.empty()) continue;
    const auto ids = c.ids_of(pre);
    const std::set<std::string> pre_ids(ids.begin(), ids.end());
    for (auto [sys, depth] : {std::pair{cc::System::Uspc, cc::Depth::Class},
                              std::pair{cc::System::Uspc, cc::Depth::Subclass},
                              std::pair{cc::System::Ipc, cc::Depth::Subclass},
                              std::pair{cc::System::Ipc, cc::Depth::MainGroup}}) {
      RankingConfig cfg{sys, depth, 1, 1, DocType::Issued};
      const auto got = score_classes(pre, c, cfg);
      const auto want = oracle::brute_scores(c, pre_ids, sys, depth, DocType::Issued, 1);
      ASSERT_EQ(got.size(), want.size());
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_EQ(got[i].label, want[i].label);
        EXPECT_EQ(got[i].overlap_count, want[i].overlap);
        EXPECT_EQ(got[i].class_total, want[i].total);
        EXPECT_DOUBLE_EQ(got[i].metrics.recall.value(), want[i].recall);
        EXPECT_DOUBLE_EQ(got[i].metrics.precision.value(), want[i].precision);
        EXPECT_NEAR(got[i].metrics.mpr.value(), want[i].mpr, 1e-15);
      }
    }
  }
}

TEST(Score, PlantedTopicRanksFirst) {
  const auto c = synthetic::generate_corpus({.records = 1000, .seed = 42});
  const auto idx = search::PostingsIndex::build(c);
  const auto res = run_com(search::parse_query("photonic"), idx, c, upc_cfg(), ipc_cfg());
  ASSERT_FALSE(res.upc_ranking.empty());
  EXPECT_EQ(res.upc_ranking[0].label, "977");
  EXPECT_EQ(res.ipc_ranking[0].label, "G02B6");
  EXPECT_FALSE(res.empty_overlap);
  EXPECT_GT(res.set_mpr, 0.5);
}

TEST(RunCom, MultiClassTopology) {
  // Two USPC classes and one IPC group; hand-enumerated union then intersection.
  const auto c = Corpus::from_records({
      coded("D1", {"100/1"}, {"B01D1/00"}, "widget"),
      coded("D2", {"200/1"}, {"B01D1/10"}, "widget"),
      coded("D3", {"100/2"}, {"C07K5/00"}, "widget"),
      coded("D4", {"300/1"}, {"B01D1/00"}, "widget"),
      coded("D5", {"100/1", "200/5"}, {"B01D1/00"}),
      coded("D6", {"200/1"}, {"B01D1/00"}, "widget"),
      coded("D7", {"200/1"}, {"C07K5/00"}),
      coded("D8", {"100/3"}, {"B01D1/20"}),
      coded("D9", {"300/1"}, {}),
      coded("E1", {"300/2"}, {}),
      coded("E2", {"300/3"}, {}),
  });
  const auto idx = search::PostingsIndex::build(c);
  const auto res = run_com(search::parse_query("widget"), idx, c, upc_cfg(2), ipc_cfg(1));
  ASSERT_EQ(res.upc_selected.size(), 2u);
  std::set<std::string> upc{cc::format(res.upc_selected[0]), cc::format(res.upc_selected[1])};
  EXPECT_EQ(upc, (std::set<std::string>{"100", "200"}));
  ASSERT_EQ(res.ipc_selected.size(), 1u);
  EXPECT_EQ(cc::format(res.ipc_selected[0]), "B01D1");

  // UPC union: D1 D2 D3 D5 D6 D7 D8; IPC B01D1: D1 D2 D4 D5 D6 D8.
  EXPECT_EQ(c.ids_of(res.final_set), (std::vector<std::string>{"D1", "D2", "D5", "D6", "D8"}));
  EXPECT_EQ(res.final_overlap, 3u);
  EXPECT_NEAR(res.set_mpr, (3.0 / 5 + 3.0 / 5) / 2, 1e-12);
}

TEST(RunCom, DisjointSelectionsGiveEmptyOverlap) {
  const auto c = Corpus::from_records({
      coded("A", {"100/1"}, {"C07K5/00"}, "widget"),
      coded("B", {"100/1"}, {"C07K5/00"}, "widget"),
      coded("C", {"200/1"}, {"B01D1/00"}, "widget"),
      coded("D", {"300/1"}, {"B01D1/00"}, "widget"),
      coded("E", {"300/1"}, {"B01D1/00"}, "widget"),
  });
  const auto res = run_com(DocSet{0, 1, 2, 3, 4}, c, upc_cfg(), ipc_cfg());
  EXPECT_EQ(cc::format(res.upc_selected[0]), "100");
  EXPECT_EQ(cc::format(res.ipc_selected[0]), "B01D1");
  EXPECT_TRUE(res.final_set.empty());
  EXPECT_TRUE(res.empty_overlap);
  EXPECT_EQ(res.set_mpr, 0.0);
}

TEST(RunCom, EmptyPresearch) {
  const auto c = Corpus::from_records({coded("A", {"100/1"}, {"C07K5/00"}, "widget")});
  const auto idx = search::PostingsIndex::build(c);
  EXPECT_THROW(run_com(search::parse_query("gadget"), idx, c, upc_cfg(), ipc_cfg()),
               EmptyPresearch);
}

TEST(Properties, TopNMonotone) {
  const auto c = synthetic::generate_corpus({.records = 1000, .seed = 42});
  const auto idx = search::PostingsIndex::build(c);
  const auto pre = search::evaluate(search::parse_query("photonic"), idx, c,
                                    {DocType::Issued});
  DocSet prev;
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto res = run_com(pre, c, upc_cfg(n), ipc_cfg(n));
    EXPECT_EQ(set_intersection(res.final_set, prev), prev) << n;
    const auto wider_upc = run_com(pre, c, upc_cfg(n + 1), ipc_cfg(n));
    EXPECT_EQ(set_intersection(wider_upc.final_set, res.final_set), res.final_set);
    prev = res.final_set;
  }
}

TEST(Properties, TextDoesNotAffectScores) {
  auto records = synthetic::generate_records({.records = 300, .seed = 4});
  const auto base = Corpus::from_records(records);
  for (auto& r : records) {
    r.abstract += " " + r.abstract;
    r.title += " padding";
  }
  const auto padded = Corpus::from_records(records);
  DocSet pre;
  for (DocIndex i = 0; i < base.size(); i += 7) pre.push_back(i);
  for (auto cfg : {upc_cfg(), ipc_cfg()}) {
    const auto a = score_classes(pre, base, cfg);
    const auto b = score_classes(pre, padded, cfg);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].label, b[i].label);
      EXPECT_EQ(a[i].overlap_count, b[i].overlap_count);
      EXPECT_EQ(a[i].class_total, b[i].class_total);
    }
  }
}

TEST(Properties, UnrelatedPatentKeepsRecall) {
  auto records = synthetic::generate_records({.records = 300, .seed = 4});
  const auto base = Corpus::from_records(records);
  DocSet pre;
  for (DocIndex i = 0; i < base.size(); i += 5) pre.push_back(i);
  const auto pre_ids = base.ids_of(pre);
  records.push_back(coded("ZZZ-EXTRA", {"424/1"}, {"A61P25/16"}));
  const auto grown = Corpus::from_records(records);
  const auto pre2 = grown.resolve(pre_ids);
  for (auto cfg : {upc_cfg(), ipc_cfg()}) {
    const auto a = score_classes(pre, base, cfg);
    const auto b = score_classes(pre2, grown, cfg);
    ASSERT_EQ(a.size(), b.size());
    std::map<std::string, ClassScore> by_label;
    for (const auto& s : b) by_label.emplace(s.label, s);
    for (const auto& s : a) {
      const auto& t = by_label.at(s.label);
      EXPECT_EQ(s.metrics.recall, t.metrics.recall);
      EXPECT_FALSE(t.metrics.precision > s.metrics.precision);
    }
  }
}
