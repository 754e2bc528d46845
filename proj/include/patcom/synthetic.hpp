#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "patcom/corpus.hpp"

namespace patcom::synthetic {

/// Seeded draws built only on mt19937_64's raw output, whose sequence the
/// standard fixes, so generated corpora are identical across toolchains.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform in [lo, hi].
  int between(int lo, int hi);
  /// Uniform in [0, 1).
  double unit();
  bool chance(double p) { return unit() < p; }

  template <typename T>
  const T& pick(const std::vector<T>& v) {
    return v[static_cast<std::size_t>(below(v.size()))];
  }

 private:
  std::mt19937_64 engine_;
};

struct Options {
  std::size_t records = 1000;
  std::uint64_t seed = 42;
  std::size_t vocabulary = 400;
  /// Share of records about the planted topic.
  double topic_share = 0.08;
};

/// Topic word and the classes the planted topic records concentrate in.
struct PlantedTopic {
  std::string token = "photonic";
  std::string upc_class = "977";
  std::string ipc_main_group = "G02B6";
};

/// Records in generation (not id) order. Roughly `topic_share` of them carry
/// the planted topic token and are mostly filed under the planted classes,
/// which the background pool never uses. Citations mostly point backwards
/// in time, with a little forward-dated and out-of-corpus noise.
std::vector<PatentRecord> generate_records(const Options& opts,
                                           const PlantedTopic& topic = {});

Corpus generate_corpus(const Options& opts, const PlantedTopic& topic = {});

/// The background vocabulary for a seed; never contains operator keywords.
std::vector<std::string> vocabulary(std::size_t size, std::uint64_t seed);

}  // namespace patcom::synthetic
