#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "patcom/corpus.hpp"

namespace patcom::testing {

namespace fs = std::filesystem;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

inline CliRun run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "patcom");
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

/// Scratch directory removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("patcom-" + std::to_string(rd()) + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const fs::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream(path, std::ios::binary) << text;
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_corpus(const std::string& path, const std::vector<PatentRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  for (const auto& r : records) out << serialize_record(r) << '\n';
}

/// 100 set patents averaging 2004.49 with 307 in-window forward citations
/// from 100 later records outside the set. Cite3 is 3.07.
inline std::vector<PatentRecord> parkinson_like_records() {
  std::vector<PatentRecord> out;
  for (int i = 0; i < 100; ++i) {
    PatentRecord r;
    r.id = "S" + std::to_string(1000 + i);
    r.pub_year = i < 49 ? 2005 : 2004;
    out.push_back(r);
  }
  for (int k = 0; k < 100; ++k) {
    PatentRecord r;
    r.id = "C" + std::to_string(1000 + k);
    r.pub_year = 2006;
    const int n = k < 7 ? 4 : 3;
    for (int j = 0; j < n; ++j) r.cited_ids.push_back("S" + std::to_string(1000 + (k + j) % 100));
    out.push_back(r);
  }
  return out;
}

}  // namespace patcom::testing
