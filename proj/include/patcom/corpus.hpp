#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "patcom/classcodes.hpp"
#include "patcom/docset.hpp"

namespace patcom {

enum class DocType { Issued, Application, Other };

std::string_view to_string(DocType t);
std::optional<DocType> doc_type_from_string(std::string_view s);

struct PatentRecord {
  std::string id;
  std::string title;
  std::string abstract;
  std::vector<std::string> claims;
  int pub_year = 0;
  DocType doc_type = DocType::Issued;
  std::vector<classcodes::IpcSymbol> ipc_codes;
  std::vector<classcodes::UspcSymbol> upc_codes;
  /// Backward citations: ids of patents this one cites.
  std::vector<std::string> cited_ids;

  friend bool operator==(const PatentRecord&, const PatentRecord&) = default;
};

inline constexpr int kMinPubYear = 1790;
inline constexpr int kMaxPubYear = 2100;

class DuplicateId : public std::runtime_error {
 public:
  explicit DuplicateId(std::string id);
  const std::string& id() const noexcept { return id_; }

 private:
  std::string id_;
};

class MalformedRecord : public std::runtime_error {
 public:
  MalformedRecord(std::size_t line_no, std::string reason);
  std::size_t line_no() const noexcept { return line_no_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_no_;
  std::string reason_;
};

class IoFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnknownId : public std::runtime_error {
 public:
  explicit UnknownId(std::vector<std::string> ids);
  const std::vector<std::string>& ids() const noexcept { return ids_; }

 private:
  std::vector<std::string> ids_;
};

/// An immutable patent collection. Records are held in id order, so a
/// DocIndex order is also lexicographic id order and ingestion order never
/// leaks into results.
class Corpus {
 public:
  Corpus() = default;

  /// Validates and indexes `records`; throws DuplicateId or
  /// std::invalid_argument on a record that breaks an invariant.
  static Corpus from_records(std::vector<PatentRecord> records);

  std::size_t size() const noexcept { return records_.size(); }
  bool empty() const noexcept { return records_.empty(); }

  const PatentRecord& operator[](DocIndex i) const { return records_[i]; }
  std::span<const PatentRecord> records() const noexcept { return records_; }

  std::optional<DocIndex> find(std::string_view id) const;

  /// Indices of in-corpus patents citing `i`, ascending.
  const DocSet& cited_by(DocIndex i) const { return forward_[i]; }
  /// In-corpus backward citations of `i`, ascending and deduplicated.
  const DocSet& cites(DocIndex i) const { return backward_[i]; }

  /// Every record index, i.e. the unfiltered universe.
  DocSet all() const;
  DocSet with_doc_type(std::optional<DocType> filter) const;

  /// Resolves ids to indices; throws UnknownId naming every missing id.
  DocSet resolve(std::span<const std::string> ids) const;
  std::vector<std::string> ids_of(const DocSet& set) const;

 private:
  std::vector<PatentRecord> records_;
  std::unordered_map<std::string, DocIndex> by_id_;
  std::vector<DocSet> forward_;
  std::vector<DocSet> backward_;
};

enum class IngestMode { Strict, Lenient };

struct IngestReport {
  std::size_t lines_read = 0;
  std::size_t records_accepted = 0;
  std::size_t records_skipped = 0;
  /// One "line N: reason" entry per skipped record (lenient mode).
  std::vector<std::string> diagnostics;
};

struct IngestResult {
  Corpus corpus;
  IngestReport report;
};

/// Parses one JSON-lines record. Line numbers are 1-based and only used for
/// diagnostics. Throws MalformedRecord.
PatentRecord parse_record(std::string_view line, std::size_t line_no,
                          IngestMode mode);

IngestResult ingest(std::istream& in, IngestMode mode);
IngestResult ingest(const std::filesystem::path& path, IngestMode mode);

std::string serialize_record(const PatentRecord& r);
void write_jsonl(const Corpus& c, std::ostream& out);

struct CorpusStats {
  std::size_t records = 0;
  std::optional<int> min_year;
  std::optional<int> max_year;
  std::size_t distinct_ipc = 0;
  std::size_t distinct_upc = 0;
  /// (citing, cited) pairs with both ends in the corpus.
  std::size_t citation_edges = 0;
  /// Backward citations naming patents outside the corpus.
  std::size_t external_citations = 0;
};

CorpusStats corpus_stats(const Corpus& c);

}  // namespace patcom
