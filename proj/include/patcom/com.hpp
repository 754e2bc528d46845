#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "patcom/classcodes.hpp"
#include "patcom/corpus.hpp"
#include "patcom/docset.hpp"
#include "patcom/search.hpp"

namespace patcom::com {

__extension__ typedef unsigned __int128 WideUint;

/// Non-negative fraction kept exact so rankings never depend on rounding.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  double value() const noexcept {
    return static_cast<double>(num) / static_cast<double>(den);
  }
  friend bool operator==(const Ratio& a, const Ratio& b) noexcept {
    return static_cast<WideUint>(a.num) * b.den ==
           static_cast<WideUint>(b.num) * a.den;
  }
  friend bool operator<(const Ratio& a, const Ratio& b) noexcept {
    return static_cast<WideUint>(a.num) * b.den <
           static_cast<WideUint>(b.num) * a.den;
  }
  friend bool operator>(const Ratio& a, const Ratio& b) noexcept { return b < a; }
};

struct ClassMetrics {
  Ratio recall;
  Ratio precision;
  Ratio mpr;
};

class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class EmptyPresearch : public std::runtime_error {
 public:
  EmptyPresearch() : std::runtime_error("pre-search returned no patents") {}
};

/// recall = overlap / presearch, precision = overlap / class_total and
/// mpr = (recall + precision) / 2. Throws DomainError when the counts are
/// inconsistent (zero denominators, overlap larger than either set).
ClassMetrics compute_class_metrics(std::uint64_t overlap_count,
                                   std::uint64_t presearch_count,
                                   std::uint64_t class_total);

struct RankingConfig {
  classcodes::System system = classcodes::System::Uspc;
  classcodes::Depth depth = classcodes::Depth::Class;
  std::size_t min_class_size = 1;
  std::size_t top_n = 1;
  std::optional<DocType> doc_type_filter = DocType::Issued;

  /// USPC grouped by class, IPC by main group.
  static RankingConfig defaults(classcodes::System system);
  /// Throws std::invalid_argument on top_n == 0 or a depth the system lacks.
  void validate() const;
};

struct ClassScore {
  classcodes::ClassSymbol symbol;
  std::string label;  // canonical symbol string
  std::size_t overlap_count = 0;
  std::size_t class_total = 0;
  ClassMetrics metrics;
};

/// Descending MPR, then larger overlap, then ascending canonical symbol.
bool ranks_before(const ClassScore& a, const ClassScore& b);

/// Records listing at least one code contained in `symbol`, restricted to
/// `doc_type_filter` when set.
DocSet class_members(const Corpus& c, const classcodes::ClassSymbol& symbol,
                     std::optional<DocType> doc_type_filter);

/// Groups every code at `cfg.depth` and scores each class that overlaps the
/// pre-search and holds at least `cfg.min_class_size` records. Codes
/// shallower than the grouping depth belong to no class.
std::vector<ClassScore> score_classes(const DocSet& presearch, const Corpus& c,
                                      const RankingConfig& cfg);

struct ComResult {
  DocSet presearch;
  std::vector<ClassScore> upc_ranking;
  std::vector<ClassScore> ipc_ranking;
  std::vector<classcodes::UspcSymbol> upc_selected;
  std::vector<classcodes::IpcSymbol> ipc_selected;
  DocSet final_set;
  /// |final_set ∩ presearch|
  std::size_t final_overlap = 0;
  double set_mpr = 0.0;
  std::optional<ClassMetrics> set_metrics;
  bool empty_overlap = false;
};

/// Union of the members of each selected class in each system, intersected
/// across systems.
DocSet overlap_set(const Corpus& c, const std::vector<classcodes::UspcSymbol>& upc,
                   std::optional<DocType> upc_filter,
                   const std::vector<classcodes::IpcSymbol>& ipc,
                   std::optional<DocType> ipc_filter);

/// MPR of a final set treated as a single pseudo-class; 0 when it is empty.
double set_mpr(std::size_t overlap, std::size_t presearch_count, std::size_t final_count);

/// Full pipeline: pre-search, rank both systems, keep the top_n classes of
/// each, and intersect. A query without its own DOCUMENT_TYPE is evaluated
/// over records that pass both configs' doc-type filters.
ComResult run_com(const search::QueryNode& query, const search::PostingsIndex& idx,
                  const Corpus& c, const RankingConfig& cfg_upc,
                  const RankingConfig& cfg_ipc);

/// Same, starting from an already computed pre-search set.
ComResult run_com(DocSet presearch, const Corpus& c, const RankingConfig& cfg_upc,
                  const RankingConfig& cfg_ipc);

}  // namespace patcom::com
