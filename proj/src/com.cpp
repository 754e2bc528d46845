#include "patcom/com.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include <fmt/format.h>

namespace patcom::com {

namespace cc = classcodes;

namespace {

Ratio reduced(std::uint64_t num, std::uint64_t den) {
  const std::uint64_t g = std::gcd(num, den);
  return g > 1 ? Ratio{num / g, den / g} : Ratio{num, den};
}

struct Tally {
  cc::ClassSymbol symbol;
  std::size_t total = 0;
  std::size_t overlap = 0;
};

// Adds the distinct classes of `codes` at `depth` to `out`.
template <typename Symbol>
void classes_at(const std::vector<Symbol>& codes, cc::Depth depth,
                std::map<std::string, cc::ClassSymbol>& out) {
  for (const auto& code : codes)
    if (auto t = cc::truncate(code, depth)) out.try_emplace(cc::format(*t), *t);
}

}  // namespace

ClassMetrics compute_class_metrics(std::uint64_t overlap_count,
                                   std::uint64_t presearch_count,
                                   std::uint64_t class_total) {
  if (presearch_count == 0) throw DomainError("pre-search count must be positive");
  if (class_total == 0) throw DomainError("class total must be positive");
  if (overlap_count > presearch_count || overlap_count > class_total)
    throw DomainError(fmt::format(
        "overlap {} exceeds pre-search count {} or class total {}", overlap_count,
        presearch_count, class_total));
  ClassMetrics m;
  m.recall = reduced(overlap_count, presearch_count);
  m.precision = reduced(overlap_count, class_total);
  m.mpr = reduced(overlap_count * (class_total + presearch_count),
                  2 * presearch_count * class_total);
  return m;
}

RankingConfig RankingConfig::defaults(cc::System system) {
  RankingConfig cfg;
  cfg.system = system;
  cfg.depth = system == cc::System::Ipc ? cc::Depth::MainGroup : cc::Depth::Class;
  return cfg;
}

void RankingConfig::validate() const {
  if (top_n == 0) throw std::invalid_argument("top_n must be at least 1");
  if (!cc::valid_depth(system, depth))
    throw std::invalid_argument(fmt::format("depth '{}' is not valid for {}",
                                            cc::to_string(depth), cc::to_string(system)));
}

bool ranks_before(const ClassScore& a, const ClassScore& b) {
  if (a.metrics.mpr > b.metrics.mpr) return true;
  if (b.metrics.mpr > a.metrics.mpr) return false;
  if (a.overlap_count != b.overlap_count) return a.overlap_count > b.overlap_count;
  return a.label < b.label;
}

DocSet class_members(const Corpus& c, const cc::ClassSymbol& symbol,
                     std::optional<DocType> doc_type_filter) {
  DocSet out;
  const bool ipc = cc::system_of(symbol) == cc::System::Ipc;
  for (DocIndex i = 0; i < c.size(); ++i) {
    const auto& r = c[i];
    if (doc_type_filter && r.doc_type != *doc_type_filter) continue;
    bool member = false;
    if (ipc) {
      const auto& anc = std::get<cc::IpcSymbol>(symbol);
      member = std::any_of(r.ipc_codes.begin(), r.ipc_codes.end(),
                           [&](const auto& s) { return cc::ipc_contains(anc, s); });
    } else {
      const auto& anc = std::get<cc::UspcSymbol>(symbol);
      member = std::any_of(r.upc_codes.begin(), r.upc_codes.end(),
                           [&](const auto& s) { return cc::uspc_contains(anc, s); });
    }
    if (member) out.push_back(i);
  }
  return out;
}

std::vector<ClassScore> score_classes(const DocSet& presearch, const Corpus& c,
                                      const RankingConfig& cfg) {
  cfg.validate();
  if (presearch.empty()) throw EmptyPresearch();

  std::vector<bool> in_presearch(c.size(), false);
  for (DocIndex i : presearch) in_presearch.at(i) = true;

  std::map<std::string, Tally> tallies;
  std::map<std::string, cc::ClassSymbol> classes;
  for (DocIndex i = 0; i < c.size(); ++i) {
    const auto& r = c[i];
    if (cfg.doc_type_filter && r.doc_type != *cfg.doc_type_filter) continue;
    classes.clear();
    if (cfg.system == cc::System::Ipc) classes_at(r.ipc_codes, cfg.depth, classes);
    else classes_at(r.upc_codes, cfg.depth, classes);
    for (auto& [label, sym] : classes) {
      auto [it, fresh] = tallies.try_emplace(label, Tally{sym});
      ++it->second.total;
      if (in_presearch[i]) ++it->second.overlap;
    }
  }

  std::vector<ClassScore> out;
  for (auto& [label, t] : tallies) {
    if (t.overlap == 0 || t.total < cfg.min_class_size) continue;
    ClassScore s;
    s.symbol = std::move(t.symbol);
    s.label = label;
    s.overlap_count = t.overlap;
    s.class_total = t.total;
    s.metrics = compute_class_metrics(t.overlap, presearch.size(), t.total);
    out.push_back(std::move(s));
  }
  std::sort(out.begin(), out.end(), ranks_before);
  return out;
}

DocSet overlap_set(const Corpus& c, const std::vector<cc::UspcSymbol>& upc,
                   std::optional<DocType> upc_filter,
                   const std::vector<cc::IpcSymbol>& ipc,
                   std::optional<DocType> ipc_filter) {
  DocSet upc_union;
  for (const auto& s : upc) upc_union = set_union(upc_union, class_members(c, s, upc_filter));
  DocSet ipc_union;
  for (const auto& s : ipc) ipc_union = set_union(ipc_union, class_members(c, s, ipc_filter));
  return set_intersection(upc_union, ipc_union);
}

double set_mpr(std::size_t overlap, std::size_t presearch_count, std::size_t final_count) {
  if (final_count == 0) return 0.0;
  return compute_class_metrics(overlap, presearch_count, final_count).mpr.value();
}

ComResult run_com(DocSet presearch, const Corpus& c, const RankingConfig& cfg_upc,
                  const RankingConfig& cfg_ipc) {
  if (cfg_upc.system != cc::System::Uspc || cfg_ipc.system != cc::System::Ipc)
    throw std::invalid_argument("run_com needs one USPC and one IPC ranking config");
  if (presearch.empty()) throw EmptyPresearch();

  ComResult res;
  res.presearch = std::move(presearch);
  res.upc_ranking = score_classes(res.presearch, c, cfg_upc);
  res.ipc_ranking = score_classes(res.presearch, c, cfg_ipc);

  for (std::size_t i = 0; i < res.upc_ranking.size() && i < cfg_upc.top_n; ++i)
    res.upc_selected.push_back(std::get<cc::UspcSymbol>(res.upc_ranking[i].symbol));
  for (std::size_t i = 0; i < res.ipc_ranking.size() && i < cfg_ipc.top_n; ++i)
    res.ipc_selected.push_back(std::get<cc::IpcSymbol>(res.ipc_ranking[i].symbol));

  res.final_set = overlap_set(c, res.upc_selected, cfg_upc.doc_type_filter,
                              res.ipc_selected, cfg_ipc.doc_type_filter);
  res.final_overlap = intersection_size(res.final_set, res.presearch);
  if (res.final_set.empty()) {
    res.empty_overlap = true;
    res.set_mpr = 0.0;
  } else {
    res.set_metrics =
        compute_class_metrics(res.final_overlap, res.presearch.size(), res.final_set.size());
    res.set_mpr = res.set_metrics->mpr.value();
  }
  return res;
}

ComResult run_com(const search::QueryNode& query, const search::PostingsIndex& idx,
                  const Corpus& c, const RankingConfig& cfg_upc,
                  const RankingConfig& cfg_ipc) {
  DocSet presearch;
  if (!search::doc_type_filters(query).empty() ||
      cfg_upc.doc_type_filter == cfg_ipc.doc_type_filter) {
    presearch = search::evaluate(query, idx, c, {cfg_upc.doc_type_filter});
  } else if (!cfg_upc.doc_type_filter || !cfg_ipc.doc_type_filter) {
    // Exactly one filter is set; the unfiltered side passes everything.
    presearch = search::evaluate(
        query, idx, c, {cfg_upc.doc_type_filter ? cfg_upc.doc_type_filter
                                                : cfg_ipc.doc_type_filter});
  }
  // Two different filters admit no record, leaving the pre-search empty.
  return run_com(std::move(presearch), c, cfg_upc, cfg_ipc);
}

}  // namespace patcom::com
