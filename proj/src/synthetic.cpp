#include "patcom/synthetic.hpp"

#include <algorithm>
#include <limits>
#include <set>

#include <fmt/format.h>

namespace patcom::synthetic {

namespace cc = classcodes;

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

int Rng::between(int lo, int hi) {
  return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

double Rng::unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::vector<std::string> vocabulary(std::size_t size, std::uint64_t seed) {
  static constexpr std::string_view consonants = "bcdfghklmnprstvz";
  static constexpr std::string_view vowels = "aeiou";
  static const std::set<std::string> reserved = {"and", "or", "not", "near"};
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::set<std::string> seen;
  std::vector<std::string> words;
  while (words.size() < size) {
    std::string w;
    const int syllables = rng.between(2, 3);
    for (int s = 0; s < syllables; ++s) {
      w.push_back(consonants[rng.below(consonants.size())]);
      w.push_back(vowels[rng.below(vowels.size())]);
    }
    if (rng.chance(0.2)) w.push_back(consonants[rng.below(consonants.size())]);
    if (reserved.count(w) || !seen.insert(w).second) continue;
    words.push_back(std::move(w));
  }
  return words;
}

namespace {

struct Pools {
  std::vector<cc::IpcSymbol> ipc;
  std::vector<cc::UspcSymbol> upc;
};

Pools make_pools() {
  Pools p;
  const std::vector<std::string> subclasses = {"A61K", "A61P", "C07D",
                                               "H01L", "B01J", "F16H"};
  const std::vector<unsigned> groups = {3, 25, 31};
  const std::vector<std::string> subgroups = {"00", "16"};
  for (const auto& sc : subclasses)
    for (unsigned g : groups)
      for (const auto& sg : subgroups)
        p.ipc.push_back(cc::IpcSymbol::make(sc[0], sc.substr(1, 2), sc[3], g, sg));
  const std::vector<std::string> classes = {"424", "514", "257", "417", "435", "530"};
  const std::vector<std::string> subs = {"1", "17.8", "18.2", "161.1A", "370"};
  for (const auto& c : classes)
    for (const auto& s : subs) p.upc.push_back(cc::UspcSymbol::make(c, s));
  return p;
}

class Writer {
 public:
  Writer(Rng& rng, const std::vector<std::string>& vocab) : rng_(rng), vocab_(vocab) {}

  std::string word() {
    // Squaring the uniform draw skews usage toward the head of the vocabulary.
    const double u = rng_.unit();
    std::string w = vocab_[static_cast<std::size_t>(u * u * static_cast<double>(vocab_.size()))];
    if (rng_.chance(0.1)) w[0] = static_cast<char>(w[0] - 'a' + 'A');
    return w;
  }

  /// Appends the topic word with probability `topic_p` when `topic` is set,
  /// recording whether it did in `used_topic`.
  std::string text(int lo, int hi, const std::string* topic, double topic_p,
                   bool* used_topic = nullptr) {
    const int n = rng_.between(lo, hi);
    std::string out;
    for (int i = 0; i < n; ++i) {
      if (i > 0) {
        const double u = rng_.unit();
        out += u < 0.05 ? "-" : (u < 0.1 ? ", " : " ");
      }
      out += word();
    }
    if (topic && rng_.chance(topic_p)) {
      const auto at = static_cast<int>(rng_.below(static_cast<std::uint64_t>(n) + 1));
      std::string t = *topic;
      if (rng_.chance(0.3)) t[0] = static_cast<char>(t[0] - 'a' + 'A');
      out = insert_word(out, t, at);
      if (used_topic) *used_topic = true;
    }
    return out;
  }

 private:
  static std::string insert_word(const std::string& text, const std::string& w, int at) {
    if (at == 0 || text.empty()) return text.empty() ? w : w + " " + text;
    int spaces = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == ' ' && ++spaces == at) return text.substr(0, i) + " " + w + text.substr(i);
    }
    return text + " " + w;
  }

  Rng& rng_;
  const std::vector<std::string>& vocab_;
};

cc::IpcSymbol background_ipc(Rng& rng, const Pools& pools) {
  const auto& s = rng.pick(pools.ipc);
  const double u = rng.unit();
  if (u < 0.10) return *cc::truncate(s, cc::Depth::Subclass);
  if (u < 0.25) return *cc::truncate(s, cc::Depth::MainGroup);
  return s;
}

cc::UspcSymbol background_upc(Rng& rng, const Pools& pools) {
  const auto& s = rng.pick(pools.upc);
  return rng.chance(0.2) ? *cc::truncate(s, cc::Depth::Class) : s;
}

template <typename T>
void push_unique(std::vector<T>& v, T x) {
  if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(std::move(x));
}

}  // namespace

std::vector<PatentRecord> generate_records(const Options& opts, const PlantedTopic& topic) {
  Rng rng(opts.seed);
  const auto vocab = vocabulary(opts.vocabulary, opts.seed);
  const Pools pools = make_pools();
  const auto planted_ipc = cc::parse_ipc(topic.ipc_main_group);
  Writer writer(rng, vocab);

  std::vector<PatentRecord> records(opts.records);
  std::uint64_t next_number = 4000000;
  for (auto& r : records) {
    next_number += 1 + rng.below(40);
    r.id = fmt::format("US{}", next_number);
    r.pub_year = rng.between(1976, 2015);
    const double d = rng.unit();
    r.doc_type = d < 0.8 ? DocType::Issued : (d < 0.95 ? DocType::Application : DocType::Other);

    const bool on_topic = rng.chance(opts.topic_share);
    const std::string* tok = on_topic ? &topic.token : nullptr;
    bool mentioned = false;
    r.title = writer.text(2, 7, tok, 0.7, &mentioned);
    r.abstract = writer.text(12, 40, tok, 0.8, &mentioned);
    const int claims = rng.between(0, 4);
    for (int i = 0; i < claims; ++i)
      r.claims.push_back(writer.text(3, 15, tok, 0.3, &mentioned));
    if (on_topic && !mentioned) r.title += " " + topic.token;

    const int n_ipc = rng.between(0, 3);
    for (int i = 0; i < n_ipc; ++i) push_unique(r.ipc_codes, background_ipc(rng, pools));
    const int n_upc = rng.between(0, 3);
    for (int i = 0; i < n_upc; ++i) push_unique(r.upc_codes, background_upc(rng, pools));

    const double planted_p = on_topic ? 0.85 : 0.01;
    if (rng.chance(planted_p)) {
      static const std::vector<std::string> subs = {"700", "701", "720"};
      push_unique(r.upc_codes, cc::UspcSymbol::make(topic.upc_class, rng.pick(subs)));
    }
    if (rng.chance(planted_p)) {
      static const std::vector<std::string> subs = {"00", "10", "12"};
      push_unique(r.ipc_codes,
                  cc::IpcSymbol::make(planted_ipc.section(), planted_ipc.class_digits(),
                                      planted_ipc.subclass(), planted_ipc.main_group(),
                                      rng.pick(subs)));
    }
  }

  for (std::size_t i = 0; i < records.size(); ++i) {
    auto& r = records[i];
    const int n_cites = records.size() > 1 ? rng.between(0, 5) : 0;
    for (int k = 0; k < n_cites; ++k) {
      const auto j = static_cast<std::size_t>(rng.below(records.size()));
      if (j == i) continue;
      // Mostly cite older patents; a few forward-dated citations are noise.
      if (records[j].pub_year <= r.pub_year || rng.chance(0.05))
        push_unique(r.cited_ids, records[j].id);
    }
    if (rng.chance(0.05)) r.cited_ids.push_back(fmt::format("EP{}", 100000 + rng.below(900000)));
  }

  for (std::size_t i = records.size(); i > 1; --i)
    std::swap(records[i - 1], records[static_cast<std::size_t>(rng.below(i))]);
  return records;
}

Corpus generate_corpus(const Options& opts, const PlantedTopic& topic) {
  return Corpus::from_records(generate_records(opts, topic));
}

}  // namespace patcom::synthetic
