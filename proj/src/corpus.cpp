#include "patcom/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <unordered_set>

#include <fmt/format.h>

#include "json.hpp"

namespace patcom {

using json = nlohmann::json;

namespace {

constexpr std::string_view kFields[] = {"id",     "title",    "abstract",
                                        "claims", "pub_year", "doc_type",
                                        "ipc",    "upc",      "cited"};

bool known_field(std::string_view key) {
  return std::find(std::begin(kFields), std::end(kFields), key) != std::end(kFields);
}

bool blank(std::string_view line) {
  return std::all_of(line.begin(), line.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

// Accepts 2004, "2004", "2004-05-11", "2004/05/11" and "20040511".
std::optional<int> year_from_date_string(const std::string& s) {
  if (s.size() < 4) return std::nullopt;
  for (std::size_t i = 0; i < 4; ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return std::nullopt;
  const std::string rest = s.substr(4);
  bool ok = rest.empty();
  if (!ok && rest.size() == 4) {
    ok = std::all_of(rest.begin(), rest.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
  }
  if (!ok && (rest[0] == '-' || rest[0] == '/')) {
    ok = std::all_of(rest.begin() + 1, rest.end(), [&](unsigned char c) {
      return std::isdigit(c) != 0 || c == static_cast<unsigned char>(rest[0]);
    });
  }
  if (!ok) return std::nullopt;
  return std::stoi(s.substr(0, 4));
}

std::vector<std::string> string_array(const json& obj, std::string_view key,
                                      std::size_t line_no, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required)
      throw MalformedRecord(line_no, fmt::format("missing field '{}'", key));
    return {};
  }
  if (!it->is_array())
    throw MalformedRecord(line_no, fmt::format("field '{}' must be an array", key));
  std::vector<std::string> out;
  out.reserve(it->size());
  for (const auto& v : *it) {
    if (!v.is_string())
      throw MalformedRecord(line_no,
                            fmt::format("field '{}' must contain only strings", key));
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::string string_field(const json& obj, std::string_view key,
                         std::size_t line_no, bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required)
      throw MalformedRecord(line_no, fmt::format("missing field '{}'", key));
    return {};
  }
  if (!it->is_string())
    throw MalformedRecord(line_no, fmt::format("field '{}' must be a string", key));
  return it->get<std::string>();
}

int year_field(const json& obj, std::size_t line_no) {
  auto it = obj.find("pub_year");
  if (it == obj.end()) throw MalformedRecord(line_no, "missing field 'pub_year'");
  std::optional<int> year;
  if (it->is_number_integer()) {
    const auto v = it->get<std::int64_t>();
    if (v >= kMinPubYear && v <= kMaxPubYear) year = static_cast<int>(v);
    else throw MalformedRecord(line_no, fmt::format("pub_year {} out of range", v));
  } else if (it->is_string()) {
    year = year_from_date_string(it->get<std::string>());
    if (!year) throw MalformedRecord(line_no, "pub_year is not a year or date");
  } else {
    throw MalformedRecord(line_no, "pub_year must be an integer");
  }
  if (*year < kMinPubYear || *year > kMaxPubYear)
    throw MalformedRecord(line_no, fmt::format("pub_year {} out of range", *year));
  return *year;
}

template <typename Parse>
auto parse_codes(const std::vector<std::string>& raw, std::string_view system,
                 std::size_t line_no, Parse parse) {
  std::vector<decltype(parse(std::string_view{}))> out;
  out.reserve(raw.size());
  for (const auto& code : raw) {
    try {
      out.push_back(parse(code));
    } catch (const classcodes::ParseError& e) {
      throw MalformedRecord(line_no, fmt::format("bad {} code '{}': {}", system,
                                                 code, e.what()));
    }
  }
  return out;
}

template <typename T>
void dedupe_stable(std::vector<T>& v) {
  std::vector<T> out;
  out.reserve(v.size());
  for (auto& x : v)
    if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(std::move(x));
  v = std::move(out);
}

}  // namespace

std::string_view to_string(DocType t) {
  switch (t) {
    case DocType::Issued: return "issued";
    case DocType::Application: return "application";
    case DocType::Other: return "other";
  }
  return "other";
}

std::optional<DocType> doc_type_from_string(std::string_view s) {
  if (s == "issued") return DocType::Issued;
  if (s == "application") return DocType::Application;
  if (s == "other") return DocType::Other;
  return std::nullopt;
}

DuplicateId::DuplicateId(std::string id)
    : std::runtime_error(fmt::format("duplicate patent id '{}'", id)),
      id_(std::move(id)) {}

MalformedRecord::MalformedRecord(std::size_t line_no, std::string reason)
    : std::runtime_error(fmt::format("line {}: {}", line_no, reason)),
      line_no_(line_no),
      reason_(std::move(reason)) {}

UnknownId::UnknownId(std::vector<std::string> ids)
    : std::runtime_error(fmt::format("unknown patent id(s): {}",
                                     fmt::join(ids, ", "))),
      ids_(std::move(ids)) {}

Corpus Corpus::from_records(std::vector<PatentRecord> records) {
  std::sort(records.begin(), records.end(),
            [](const PatentRecord& a, const PatentRecord& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    if (r.id.empty()) throw std::invalid_argument("patent id must be nonempty");
    if (i > 0 && records[i - 1].id == r.id) throw DuplicateId(r.id);
    if (r.pub_year < kMinPubYear || r.pub_year > kMaxPubYear)
      throw std::invalid_argument(
          fmt::format("patent {}: pub_year {} out of range", r.id, r.pub_year));
    dedupe_stable(r.cited_ids);
  }

  Corpus c;
  c.records_ = std::move(records);
  c.by_id_.reserve(c.records_.size());
  for (std::size_t i = 0; i < c.records_.size(); ++i)
    c.by_id_.emplace(c.records_[i].id, static_cast<DocIndex>(i));

  c.backward_.resize(c.records_.size());
  c.forward_.resize(c.records_.size());
  for (std::size_t i = 0; i < c.records_.size(); ++i) {
    auto& back = c.backward_[i];
    for (const auto& cited : c.records_[i].cited_ids)
      if (auto j = c.find(cited)) back.push_back(*j);
    std::sort(back.begin(), back.end());
    back.erase(std::unique(back.begin(), back.end()), back.end());
    // i ascends, so each forward list is built already sorted.
    for (DocIndex j : back) c.forward_[j].push_back(static_cast<DocIndex>(i));
  }
  return c;
}

std::optional<DocIndex> Corpus::find(std::string_view id) const {
  auto it = by_id_.find(std::string(id));
  if (it == by_id_.end()) return std::nullopt;
  return it->second;
}

DocSet Corpus::all() const {
  DocSet out(records_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<DocIndex>(i);
  return out;
}

DocSet Corpus::with_doc_type(std::optional<DocType> filter) const {
  if (!filter) return all();
  DocSet out;
  for (std::size_t i = 0; i < records_.size(); ++i)
    if (records_[i].doc_type == *filter) out.push_back(static_cast<DocIndex>(i));
  return out;
}

DocSet Corpus::resolve(std::span<const std::string> ids) const {
  DocSet out;
  std::vector<std::string> missing;
  for (const auto& id : ids) {
    if (auto i = find(id)) out.push_back(*i);
    else missing.push_back(id);
  }
  if (!missing.empty()) throw UnknownId(std::move(missing));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Corpus::ids_of(const DocSet& set) const {
  std::vector<std::string> out;
  out.reserve(set.size());
  for (DocIndex i : set) out.push_back(records_[i].id);
  return out;
}

PatentRecord parse_record(std::string_view line, std::size_t line_no,
                          IngestMode mode) {
  json obj;
  try {
    obj = json::parse(line);
  } catch (const json::parse_error& e) {
    throw MalformedRecord(line_no, fmt::format("invalid JSON: {}", e.what()));
  }
  if (!obj.is_object()) throw MalformedRecord(line_no, "record must be a JSON object");

  const bool strict = mode == IngestMode::Strict;
  if (strict) {
    for (const auto& [key, value] : obj.items())
      if (!known_field(key))
        throw MalformedRecord(line_no, fmt::format("unknown field '{}'", key));
  }

  PatentRecord r;
  r.id = string_field(obj, "id", line_no, true);
  if (r.id.empty()) throw MalformedRecord(line_no, "empty id");
  r.title = string_field(obj, "title", line_no, strict);
  r.abstract = string_field(obj, "abstract", line_no, strict);
  r.claims = string_array(obj, "claims", line_no, strict);
  r.pub_year = year_field(obj, line_no);

  const auto doc_type = string_field(obj, "doc_type", line_no, strict);
  if (doc_type.empty() && !strict) {
    r.doc_type = DocType::Issued;
  } else if (auto t = doc_type_from_string(doc_type)) {
    r.doc_type = *t;
  } else {
    throw MalformedRecord(line_no, fmt::format("unknown doc_type '{}'", doc_type));
  }

  r.ipc_codes = parse_codes(string_array(obj, "ipc", line_no, strict), "IPC",
                            line_no, classcodes::parse_ipc);
  r.upc_codes = parse_codes(string_array(obj, "upc", line_no, strict), "USPC",
                            line_no, classcodes::parse_uspc);
  r.cited_ids = string_array(obj, "cited", line_no, strict);
  dedupe_stable(r.cited_ids);
  return r;
}

IngestResult ingest(std::istream& in, IngestMode mode) {
  IngestReport report;
  std::vector<PatentRecord> records;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (blank(line)) continue;
    ++report.lines_read;
    PatentRecord r;
    try {
      r = parse_record(line, line_no, mode);
    } catch (const MalformedRecord& e) {
      if (mode == IngestMode::Strict) throw;
      ++report.records_skipped;
      report.diagnostics.push_back(e.what());
      continue;
    }
    if (!seen.insert(r.id).second) throw DuplicateId(r.id);
    records.push_back(std::move(r));
  }
  if (in.bad()) throw IoFailure("read error while ingesting corpus");
  report.records_accepted = records.size();
  return {Corpus::from_records(std::move(records)), std::move(report)};
}

IngestResult ingest(const std::filesystem::path& path, IngestMode mode) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFailure(fmt::format("cannot open corpus file '{}'", path.string()));
  return ingest(in, mode);
}

std::string serialize_record(const PatentRecord& r) {
  nlohmann::ordered_json obj;
  obj["id"] = r.id;
  obj["title"] = r.title;
  obj["abstract"] = r.abstract;
  obj["claims"] = r.claims;
  obj["pub_year"] = r.pub_year;
  obj["doc_type"] = std::string(to_string(r.doc_type));
  auto& ipc = obj["ipc"] = nlohmann::ordered_json::array();
  for (const auto& s : r.ipc_codes) ipc.push_back(classcodes::format(s));
  auto& upc = obj["upc"] = nlohmann::ordered_json::array();
  for (const auto& s : r.upc_codes) upc.push_back(classcodes::format(s));
  obj["cited"] = r.cited_ids;
  return obj.dump();
}

void write_jsonl(const Corpus& c, std::ostream& out) {
  for (const auto& r : c.records()) out << serialize_record(r) << '\n';
}

CorpusStats corpus_stats(const Corpus& c) {
  CorpusStats s;
  s.records = c.size();
  std::set<std::string> ipc;
  std::set<std::string> upc;
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& r = c[static_cast<DocIndex>(i)];
    s.min_year = s.min_year ? std::min(*s.min_year, r.pub_year) : r.pub_year;
    s.max_year = s.max_year ? std::max(*s.max_year, r.pub_year) : r.pub_year;
    for (const auto& code : r.ipc_codes) ipc.insert(classcodes::format(code));
    for (const auto& code : r.upc_codes) upc.insert(classcodes::format(code));
    const auto in_corpus = c.cites(static_cast<DocIndex>(i)).size();
    s.citation_edges += in_corpus;
    s.external_citations += r.cited_ids.size() - in_corpus;
  }
  s.distinct_ipc = ipc.size();
  s.distinct_upc = upc.size();
  return s;
}

}  // namespace patcom
