#pragma once

#include <algorithm>
#include <cstdint>
#include <iterator>
#include <vector>

namespace patcom {

/// Position of a record inside a Corpus.
using DocIndex = std::uint32_t;

/// A set of records as a strictly ascending vector of indices.
using DocSet = std::vector<DocIndex>;

inline DocSet set_union(const DocSet& a, const DocSet& b) {
  DocSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline DocSet set_intersection(const DocSet& a, const DocSet& b) {
  DocSet out;
  out.reserve(std::min(a.size(), b.size()));
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

inline DocSet set_difference(const DocSet& a, const DocSet& b) {
  DocSet out;
  out.reserve(a.size());
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

inline std::size_t intersection_size(const DocSet& a, const DocSet& b) {
  std::size_t n = 0;
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++n;
      ++i;
      ++j;
    }
  }
  return n;
}

}  // namespace patcom
