#include "cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <fmt/chrono.h>
#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "patcom/classcodes.hpp"
#include "patcom/com.hpp"
#include "patcom/corpus.hpp"
#include "patcom/indicators.hpp"
#include "patcom/report.hpp"
#include "patcom/search.hpp"
#include "patcom/synthetic.hpp"

namespace patcom::cli {

namespace fs = std::filesystem;
namespace cc = classcodes;
using ordered_json = nlohmann::ordered_json;

namespace {

/// Thrown by command handlers; carries the process exit code.
struct Failure {
  int code;
  std::string message;
};

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) hex += fmt::format("{:02x}", digest[i]);
  return hex;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{kIo, fmt::format("cannot open '{}'", path.string())};
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw Failure{kIo, fmt::format("read error on '{}'", path.string())};
  return ss.str();
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  out.close();
  if (!out) throw Failure{kIo, fmt::format("cannot write '{}'", path.string())};
}

// Every setting keyed by name; defaults, then the --config file, then flags.
const std::map<std::string, std::string>& default_settings() {
  static const std::map<std::string, std::string> defaults = {
      {"corpus", ""},
      {"query", ""},
      {"out_dir", ""},
      {"format", "csv"},
      {"seed", "42"},
      {"mode", "strict"},
      {"doc_type", "issued"},
      {"window", "3"},
      {"upc.depth", "class"},
      {"upc.top_n", "1"},
      {"upc.min_class_size", "1"},
      {"ipc.depth", "main_group"},
      {"ipc.top_n", "1"},
      {"ipc.min_class_size", "1"},
      {"model.intercept", "-31.1285"},
      {"model.coef_year", "0.0155"},
      {"model.coef_cite3", "0.1406"},
  };
  return defaults;
}

/// The resolved run configuration.
struct RunConfig {
  std::map<std::string, std::string> values;

  std::string corpus_path;
  std::string query;
  std::string out_dir;
  std::string format;
  std::uint64_t seed = 42;
  IngestMode mode = IngestMode::Strict;
  std::optional<DocType> doc_type;
  int window = indicators::kDefaultCitationWindow;
  com::RankingConfig upc = com::RankingConfig::defaults(cc::System::Uspc);
  com::RankingConfig ipc = com::RankingConfig::defaults(cc::System::Ipc);
  indicators::RateModel model;

  /// "key=value" lines in key order, excluding paths and output location.
  std::string canonical() const {
    std::string out;
    for (const auto& [k, v] : values) {
      if (k == "corpus" || k == "out_dir") continue;
      out += k + "=" + v + "\n";
    }
    return out;
  }
};

template <typename T>
T parse_number(const std::string& key, const std::string& text) {
  T value{};
  std::istringstream ss(text);
  ss.imbue(std::locale::classic());
  ss >> value;
  if (ss.fail() || !ss.eof())
    throw Failure{kValidation, fmt::format("setting '{}': '{}' is not a valid number", key, text)};
  return value;
}

std::optional<DocType> parse_doc_type_setting(const std::string& text) {
  if (text == "any" || text == "all") return std::nullopt;
  if (auto t = doc_type_from_string(text)) return t;
  throw Failure{kValidation, fmt::format("doc_type must be issued, application, other or any; got '{}'", text)};
}

com::RankingConfig ranking_from(const std::map<std::string, std::string>& v,
                                const std::string& prefix, cc::System system,
                                std::optional<DocType> doc_type) {
  com::RankingConfig cfg = com::RankingConfig::defaults(system);
  const auto depth = cc::depth_from_string(v.at(prefix + ".depth"));
  if (!depth)
    throw Failure{kValidation, fmt::format("unknown depth '{}'", v.at(prefix + ".depth"))};
  cfg.depth = *depth;
  const auto top_n = parse_number<long long>(prefix + ".top_n", v.at(prefix + ".top_n"));
  const auto min_size =
      parse_number<long long>(prefix + ".min_class_size", v.at(prefix + ".min_class_size"));
  if (top_n < 1) throw Failure{kValidation, prefix + ".top_n must be at least 1"};
  if (min_size < 0) throw Failure{kValidation, prefix + ".min_class_size must be >= 0"};
  cfg.top_n = static_cast<std::size_t>(top_n);
  cfg.min_class_size = static_cast<std::size_t>(min_size);
  cfg.doc_type_filter = doc_type;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw Failure{kValidation, e.what()};
  }
  return cfg;
}

void load_config_file(const std::string& path, std::map<std::string, std::string>& values) {
  std::istringstream in(read_file(path));
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw Failure{kValidation, fmt::format("{}:{}: expected key=value", path, line_no)};
    const std::string key = trim(t.substr(0, eq));
    if (!values.count(key))
      throw Failure{kValidation, fmt::format("{}:{}: unknown setting '{}'", path, line_no, key)};
    values[key] = trim(t.substr(eq + 1));
  }
}

RunConfig resolve(std::map<std::string, std::string> values) {
  RunConfig rc;
  rc.corpus_path = values.at("corpus");
  rc.query = values.at("query");
  rc.out_dir = values.at("out_dir");
  rc.format = values.at("format");
  if (rc.format != "csv" && rc.format != "json")
    throw Failure{kValidation, fmt::format("format must be csv or json; got '{}'", rc.format)};
  rc.seed = parse_number<std::uint64_t>("seed", values.at("seed"));
  const auto& mode = values.at("mode");
  if (mode == "strict") rc.mode = IngestMode::Strict;
  else if (mode == "lenient") rc.mode = IngestMode::Lenient;
  else throw Failure{kValidation, fmt::format("mode must be strict or lenient; got '{}'", mode)};
  rc.doc_type = parse_doc_type_setting(values.at("doc_type"));
  rc.window = parse_number<int>("window", values.at("window"));
  if (rc.window < 1) throw Failure{kValidation, "window must be a positive number of years"};
  rc.upc = ranking_from(values, "upc", cc::System::Uspc, rc.doc_type);
  rc.ipc = ranking_from(values, "ipc", cc::System::Ipc, rc.doc_type);
  rc.model.intercept = parse_number<double>("model.intercept", values.at("model.intercept"));
  rc.model.coef_year = parse_number<double>("model.coef_year", values.at("model.coef_year"));
  rc.model.coef_cite3 = parse_number<double>("model.coef_cite3", values.at("model.coef_cite3"));
  rc.model.citation_window_years = rc.window;
  rc.values = std::move(values);
  return rc;
}

struct LoadedCorpus {
  Corpus corpus;
  IngestReport report;
  std::string sha256;
};

LoadedCorpus load_corpus(const RunConfig& rc) {
  if (rc.corpus_path.empty()) throw Failure{kValidation, "no corpus given (use --corpus)"};
  if (!fs::exists(rc.corpus_path))
    throw Failure{kIo, fmt::format("corpus file '{}' does not exist", rc.corpus_path)};
  const std::string bytes = read_file(rc.corpus_path);
  std::istringstream in(bytes);
  try {
    auto result = ingest(in, rc.mode);
    return {std::move(result.corpus), std::move(result.report), sha256_hex(bytes)};
  } catch (const MalformedRecord& e) {
    throw Failure{kValidation, fmt::format("{}: {}", rc.corpus_path, e.what())};
  } catch (const DuplicateId& e) {
    throw Failure{kValidation, fmt::format("{}: {}", rc.corpus_path, e.what())};
  } catch (const IoFailure& e) {
    throw Failure{kIo, e.what()};
  }
}

search::QueryNode parse_query_or_fail(const std::string& text) {
  if (trim(text).empty()) throw Failure{kValidation, "no query given (use --query)"};
  try {
    return search::parse_query(text);
  } catch (const search::SyntaxError& e) {
    const std::string caret(std::min(e.position(), text.size()), ' ');
    throw Failure{kQuerySyntax, fmt::format("{}\n  {}\n  {}^", e.what(), text, caret)};
  }
}

fs::path output_dir(const RunConfig& rc) {
  fs::path dir = rc.out_dir.empty() ? fs::path(".") : fs::path(rc.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Failure{kIo, fmt::format("cannot create '{}': {}", dir.string(), ec.message())};
  return dir;
}

std::string ranking_text(const RunConfig& rc, const std::vector<com::ClassScore>& ranking) {
  if (rc.format == "json") return report::ranking_json(ranking);
  std::ostringstream ss;
  report::write_ranking_csv(ss, ranking);
  return ss.str();
}

std::string id_list_text(const std::vector<std::string>& ids) {
  std::ostringstream ss;
  report::write_id_list(ss, ids);
  return ss.str();
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) now = std::atoll(epoch);
  return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", fmt::gmtime(now));
}

std::vector<std::string> read_id_file(const fs::path& path) {
  std::istringstream in(read_file(path));
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (!t.empty() && t[0] != '#') ids.push_back(t);
  }
  return ids;
}

// ---- subcommands ---------------------------------------------------------

int cmd_ingest(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const auto loaded = load_corpus(rc);
  const auto s = corpus_stats(loaded.corpus);
  for (const auto& d : loaded.report.diagnostics) err << "skipped: " << d << '\n';
  out << "records: " << s.records << '\n';
  if (s.min_year) out << "years: " << *s.min_year << '-' << *s.max_year << '\n';
  else out << "years: none\n";
  out << "distinct_ipc: " << s.distinct_ipc << '\n'
      << "distinct_upc: " << s.distinct_upc << '\n'
      << "citation_edges: " << s.citation_edges << '\n'
      << "external_citations: " << s.external_citations << '\n'
      << "skipped: " << loaded.report.records_skipped << '\n'
      << "sha256: " << loaded.sha256 << '\n';
  return kOk;
}

int cmd_presearch(const RunConfig& rc, bool explain, std::ostream& out) {
  const auto query = parse_query_or_fail(rc.query);
  if (explain) {
    out << search::explain(query) << '\n';
    return kOk;
  }
  const auto loaded = load_corpus(rc);
  const auto idx = search::PostingsIndex::build(loaded.corpus);
  const auto hits = search::evaluate(query, idx, loaded.corpus, {rc.doc_type});
  const auto text = id_list_text(loaded.corpus.ids_of(hits));
  if (rc.out_dir.empty()) out << text;
  else write_file(output_dir(rc) / "presearch_ids.txt", text);
  if (hits.empty()) throw Failure{kEmptyResult, "pre-search matched no patents"};
  return kOk;
}

int cmd_rank(const RunConfig& rc, const std::string& system_name, std::ostream& out) {
  const auto system = cc::system_from_string(system_name);
  if (!system) throw Failure{kValidation, fmt::format("unknown system '{}'", system_name)};
  const auto query = parse_query_or_fail(rc.query);
  const auto loaded = load_corpus(rc);
  const auto idx = search::PostingsIndex::build(loaded.corpus);
  const auto hits = search::evaluate(query, idx, loaded.corpus, {rc.doc_type});
  if (hits.empty()) throw Failure{kEmptyResult, "pre-search matched no patents"};
  const auto& cfg = *system == cc::System::Ipc ? rc.ipc : rc.upc;
  const auto ranking = com::score_classes(hits, loaded.corpus, cfg);
  const auto text = ranking_text(rc, ranking);
  if (rc.out_dir.empty()) {
    out << text;
  } else {
    write_file(output_dir(rc) / fmt::format("ranking_{}.{}", cc::to_string(*system), rc.format),
               text);
  }
  return kOk;
}

std::vector<std::string> split_codes(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    std::string cur;
    for (char c : r + ",") {
      if (c == ',') {
        if (!trim(cur).empty()) out.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
  }
  return out;
}

int cmd_overlap(const RunConfig& rc, const std::vector<std::string>& upc_raw,
                const std::vector<std::string>& ipc_raw, std::ostream& out,
                std::ostream& err) {
  std::vector<cc::UspcSymbol> upc;
  std::vector<cc::IpcSymbol> ipc;
  try {
    for (const auto& s : split_codes(upc_raw)) upc.push_back(cc::parse_uspc(s));
    for (const auto& s : split_codes(ipc_raw)) ipc.push_back(cc::parse_ipc(s));
  } catch (const cc::ParseError& e) {
    throw Failure{kValidation, fmt::format("bad class symbol: {}", e.what())};
  }
  if (upc.empty() || ipc.empty())
    throw Failure{kValidation, "overlap needs at least one --upc and one --ipc class"};

  const auto loaded = load_corpus(rc);
  const auto& c = loaded.corpus;
  const auto final_set = com::overlap_set(c, upc, rc.doc_type, ipc, rc.doc_type);
  out << "final_count: " << final_set.size() << '\n';
  if (!trim(rc.query).empty()) {
    const auto query = parse_query_or_fail(rc.query);
    const auto idx = search::PostingsIndex::build(c);
    const auto hits = search::evaluate(query, idx, c, {rc.doc_type});
    if (hits.empty()) throw Failure{kEmptyResult, "pre-search matched no patents"};
    const auto overlap = intersection_size(final_set, hits);
    out << "presearch_count: " << hits.size() << '\n'
        << "final_overlap: " << overlap << '\n'
        << "set_mpr: "
        << report::fixed(com::set_mpr(overlap, hits.size(), final_set.size()), 6) << '\n';
  }
  if (final_set.empty()) err << "warning: the selected classes do not overlap\n";
  if (!rc.out_dir.empty())
    write_file(output_dir(rc) / "overlap_ids.txt", id_list_text(c.ids_of(final_set)));
  return kOk;
}

int cmd_com(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  const auto query = parse_query_or_fail(rc.query);
  const auto loaded = load_corpus(rc);
  const auto& c = loaded.corpus;
  const auto idx = search::PostingsIndex::build(c);

  com::ComResult res;
  try {
    res = com::run_com(query, idx, c, rc.upc, rc.ipc);
  } catch (const com::EmptyPresearch&) {
    throw Failure{kEmptyResult, "pre-search matched no patents"};
  }

  const fs::path dir = output_dir(rc);
  std::vector<std::pair<std::string, std::string>> outputs = {
      {fmt::format("ranking_upc.{}", rc.format), ranking_text(rc, res.upc_ranking)},
      {fmt::format("ranking_ipc.{}", rc.format), ranking_text(rc, res.ipc_ranking)},
      {"overlap_ids.txt", id_list_text(c.ids_of(res.final_set))},
  };

  ordered_json manifest;
  manifest["tool"] = "patcom";
  manifest["version"] = kToolVersion;
  manifest["command"] = "com";
  manifest["created_utc"] = utc_timestamp();
  manifest["corpus"] = {{"path", rc.corpus_path},
                        {"sha256", loaded.sha256},
                        {"records", c.size()}};
  const std::string canonical = rc.canonical();
  ordered_json settings;
  for (const auto& [k, v] : rc.values)
    if (k != "corpus" && k != "out_dir") settings[k] = v;
  manifest["config"] = {{"settings", settings}, {"sha256", sha256_hex(canonical)}};
  manifest["query"] = search::to_string(query);
  manifest["presearch_count"] = res.presearch.size();
  auto labels = [](const auto& syms) {
    std::vector<std::string> v;
    for (const auto& s : syms) v.push_back(cc::format(s));
    return v;
  };
  manifest["upc_selected"] = labels(res.upc_selected);
  manifest["ipc_selected"] = labels(res.ipc_selected);
  manifest["final_count"] = res.final_set.size();
  manifest["final_overlap"] = res.final_overlap;
  manifest["set_mpr"] = report::fixed(res.set_mpr, 6);
  manifest["warnings"] = ordered_json::array();
  if (res.empty_overlap) manifest["warnings"].push_back("empty_overlap");
  ordered_json hashes;
  for (const auto& [name, text] : outputs) hashes[name] = sha256_hex(text);
  manifest["outputs"] = hashes;

  for (const auto& [name, text] : outputs) write_file(dir / name, text);
  write_file(dir / "manifest.json", manifest.dump(2) + "\n");

  out << "presearch_count: " << res.presearch.size() << '\n'
      << "upc_selected: " << fmt::format("{}", fmt::join(labels(res.upc_selected), " OR ")) << '\n'
      << "ipc_selected: " << fmt::format("{}", fmt::join(labels(res.ipc_selected), " OR ")) << '\n'
      << "final_count: " << res.final_set.size() << '\n'
      << "final_overlap: " << res.final_overlap << '\n'
      << "set_mpr: " << report::fixed(res.set_mpr, 6) << '\n';
  if (res.empty_overlap) err << "warning: top UPC and IPC classes do not overlap\n";
  return kOk;
}

int cmd_indicators(const RunConfig& rc, const std::vector<std::string>& domain_specs,
                   const std::vector<std::string>& id_files, std::ostream& out) {
  std::vector<std::pair<std::string, fs::path>> domains;
  for (const auto& spec : domain_specs) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
      throw Failure{kValidation, fmt::format("--domain expects NAME=PATH; got '{}'", spec)};
    domains.emplace_back(spec.substr(0, eq), spec.substr(eq + 1));
  }
  for (const auto& f : id_files) domains.emplace_back(fs::path(f).stem().string(), f);
  if (domains.empty()) throw Failure{kValidation, "no domains given"};

  const auto loaded = load_corpus(rc);
  const auto& c = loaded.corpus;
  std::vector<report::DomainRow> rows;
  std::vector<std::string> unknown;
  for (const auto& [name, path] : domains) {
    const auto ids = read_id_file(path);
    if (ids.empty())
      throw Failure{kEmptyResult, fmt::format("id file '{}' lists no patents", path.string())};
    try {
      report::DomainRow row;
      row.name = name;
      row.indicators = indicators::compute_indicators(std::span<const std::string>(ids), c,
                                                      rc.window);
      row.predicted_k = indicators::predict_k(row.indicators, rc.model);
      rows.push_back(std::move(row));
    } catch (const UnknownId& e) {
      for (const auto& id : e.ids()) unknown.push_back(fmt::format("{} ({})", id, name));
    }
  }
  if (!unknown.empty())
    throw Failure{kValidation,
                  fmt::format("unknown patent ids: {}", fmt::join(unknown, ", "))};

  std::string table;
  std::string chart;
  if (rc.format == "json") {
    table = report::indicators_json(rows);
    ordered_json arr = ordered_json::array();
    for (const auto& r : report::chart_order(rows))
      arr.push_back({{"domain", r.name}, {"k", r.predicted_k}});
    chart = arr.dump(2) + "\n";
  } else {
    std::ostringstream t;
    report::write_indicators_csv(t, rows);
    table = t.str();
    std::ostringstream k;
    report::write_k_chart_csv(k, rows);
    chart = k.str();
  }
  if (rc.out_dir.empty()) {
    out << table << '\n' << chart;
  } else {
    const auto dir = output_dir(rc);
    write_file(dir / fmt::format("indicators.{}", rc.format), table);
    write_file(dir / fmt::format("k_chart.{}", rc.format), chart);
  }
  return kOk;
}

int cmd_gen_corpus(const RunConfig& rc, std::size_t records, double topic_share,
                   const std::string& out_path, std::ostream& out) {
  synthetic::Options opts;
  opts.records = records;
  opts.seed = rc.seed;
  opts.topic_share = topic_share;
  std::ostringstream ss;
  for (const auto& r : synthetic::generate_records(opts)) ss << serialize_record(r) << '\n';
  if (out_path.empty()) out << ss.str();
  else write_file(out_path, ss.str());
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Patent class-overlap analytics: pre-search, class ranking, overlap "
               "selection and improvement-rate prediction."};
  app.name("patcom");
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);
  app.fallthrough();

  std::map<std::string, std::string> flag_values;
  std::vector<std::pair<CLI::Option*, std::vector<std::string>>> bindings;
  auto setting = [&](const std::string& flag, std::vector<std::string> keys,
                     const std::string& help) {
    auto* opt = app.add_option(flag, flag_values[keys.front()], help);
    bindings.emplace_back(opt, std::move(keys));
  };
  std::string config_path;
  app.add_option("--config", config_path, "key=value settings file");
  setting("--corpus", {"corpus"}, "corpus file (JSON lines)");
  setting("--out-dir", {"out_dir"}, "directory for report files");
  setting("--format", {"format"}, "report format: csv or json");
  setting("--seed", {"seed"}, "seed for synthetic data (default 42)");
  setting("--query,-q", {"query"}, "Boolean pre-search query");
  setting("--mode", {"mode"}, "ingestion mode: strict or lenient");
  setting("--doc-type", {"doc_type"}, "issued, application, other or any");
  setting("--window", {"window"}, "forward-citation window in years");
  setting("--upc-depth", {"upc.depth"}, "USPC grouping depth: class or subclass");
  setting("--upc-top", {"upc.top_n"}, "number of USPC classes kept");
  setting("--ipc-depth", {"ipc.depth"},
          "IPC grouping depth: section, class, subclass, main_group, subgroup");
  setting("--ipc-top", {"ipc.top_n"}, "number of IPC classes kept");
  setting("--min-class-size", {"upc.min_class_size", "ipc.min_class_size"},
          "smallest class considered in rankings");
  setting("--intercept", {"model.intercept"}, "rate model intercept");
  setting("--coef-year", {"model.coef_year"}, "rate model AvePubYear coefficient");
  setting("--coef-cite3", {"model.coef_cite3"}, "rate model Cite3 coefficient");

  auto* ingest_cmd = app.add_subcommand("ingest", "validate and summarize a corpus file");
  bool lenient = false;
  ingest_cmd->add_flag("--lenient", lenient, "skip malformed records instead of failing");

  auto* presearch_cmd = app.add_subcommand("presearch", "evaluate a query, list matching ids");
  bool explain = false;
  presearch_cmd->add_flag("--explain", explain, "print the parsed query tree as JSON");

  auto* rank_cmd = app.add_subcommand("rank", "rank classes of one system against a query");
  std::string system_name = "upc";
  rank_cmd->add_option("--system", system_name, "upc or ipc")->capture_default_str();

  auto* overlap_cmd = app.add_subcommand("overlap", "intersect chosen USPC and IPC classes");
  std::vector<std::string> upc_codes;
  std::vector<std::string> ipc_codes;
  overlap_cmd->add_option("--upc", upc_codes, "USPC classes (repeatable or comma separated)");
  overlap_cmd->add_option("--ipc", ipc_codes, "IPC classes (repeatable or comma separated)");

  auto* com_cmd = app.add_subcommand("com", "run the full class-overlap pipeline");

  auto* ind_cmd = app.add_subcommand("indicators", "indicator and predicted-k report per domain");
  ind_cmd->alias("kreport");
  std::vector<std::string> domain_specs;
  std::vector<std::string> id_files;
  ind_cmd->add_option("--domain", domain_specs, "NAME=PATH of a patent id list");
  ind_cmd->add_option("id_files", id_files, "patent id lists named by file stem");

  auto* predict_cmd = app.add_subcommand("predict-k", "predict k from indicator values");
  double ave_pub_year = 0.0;
  double cite3 = 0.0;
  predict_cmd->add_option("--ave-pub-year", ave_pub_year, "mean publication year")->required();
  predict_cmd->add_option("--cite3", cite3, "mean forward citations in window")->required();

  auto* project_cmd = app.add_subcommand("project", "project performance q0*exp(k(t-t0))");
  indicators::PerformanceProjection proj;
  double t = 0.0;
  std::optional<double> until;
  double step = 1.0;
  project_cmd->add_option("--q0", proj.q0, "performance at t0")->capture_default_str();
  project_cmd->add_option("--k", proj.k, "improvement rate per year")->required();
  project_cmd->add_option("--t0", proj.t0, "reference year")->capture_default_str();
  project_cmd->add_option("--t", t, "target year")->required();
  project_cmd->add_option("--until", until, "emit a t,q series from --t to this year");
  project_cmd->add_option("--step", step, "series step in years")->capture_default_str();

  auto* gen_cmd = app.add_subcommand("gen-corpus", "write a seeded synthetic corpus");
  std::size_t records = 1000;
  double topic_share = 0.08;
  std::string gen_out;
  gen_cmd->add_option("--records", records, "record count")->capture_default_str();
  gen_cmd->add_option("--topic-share", topic_share, "share of planted-topic records")
      ->capture_default_str();
  gen_cmd->add_option("--out,-o", gen_out, "output file (default stdout)");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kValidation;
  }

  try {
    auto values = default_settings();
    if (!config_path.empty()) load_config_file(config_path, values);
    for (const auto& [opt, keys] : bindings)
      if (opt->count() > 0)
        for (const auto& k : keys) values[k] = flag_values[keys.front()];
    if (lenient) values["mode"] = "lenient";
    const RunConfig rc = resolve(std::move(values));

    if (ingest_cmd->parsed()) return cmd_ingest(rc, out, err);
    if (presearch_cmd->parsed()) return cmd_presearch(rc, explain, out);
    if (rank_cmd->parsed()) return cmd_rank(rc, system_name, out);
    if (overlap_cmd->parsed()) return cmd_overlap(rc, upc_codes, ipc_codes, out, err);
    if (com_cmd->parsed()) return cmd_com(rc, out, err);
    if (ind_cmd->parsed()) return cmd_indicators(rc, domain_specs, id_files, out);
    if (predict_cmd->parsed()) {
      out << report::fixed(indicators::predict_k(ave_pub_year, cite3, rc.model), 6) << '\n';
      return kOk;
    }
    if (project_cmd->parsed()) {
      if (!(proj.q0 > 0.0)) throw Failure{kValidation, "--q0 must be positive"};
      if (!until) {
        out << fmt::format("{:.9g}", indicators::project_performance(proj, t)) << '\n';
        return kOk;
      }
      if (!(step > 0.0)) throw Failure{kValidation, "--step must be positive"};
      out << "t,q\n";
      for (double y = t; y <= *until + 1e-9; y += step)
        out << fmt::format("{:g},{:.9g}\n", y, indicators::project_performance(proj, y));
      return kOk;
    }
    if (gen_cmd->parsed()) return cmd_gen_corpus(rc, records, topic_share, gen_out, out);
  } catch (const Failure& f) {
    err << "error: " << f.message << '\n';
    return f.code;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kValidation;
  }
  return kValidation;
}

}  // namespace patcom::cli
