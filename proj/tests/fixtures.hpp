#pragma once

// Published figures used as arithmetic fixtures.

#include <array>
#include <cstdint>
#include <string_view>

namespace patcom::fixtures {

struct ClassRow {
  std::string_view symbol;
  std::uint64_t overlap;
  double recall;
  std::uint64_t class_total;
  double precision;
  double mpr;
};

// Pre-search size back-derived from the IPC row (3046 / 0.163).
inline constexpr std::uint64_t kBipolarPresearch = 18687;

inline constexpr std::array<ClassRow, 2> kBipolarRows = {{
    {"257/370", 495, 0.027, 689, 0.718, 0.372},
    {"H01L29/73", 3046, 0.163, 6818, 0.447, 0.305},
}};

struct DomainSetRow {
  std::string_view domain;
  std::uint64_t presearch;
  std::uint64_t overlap;
  std::uint64_t final_total;
  double mpr;
  bool consistent;
};

inline constexpr std::array<DomainSetRow, 7> kFinalSets = {{
    {"Drugs for Nervous System Diseases", 9902, 307, 16232, 0.244, false},
    {"Drugs for Alzheimer's", 3414, 984, 5789, 0.229, true},
    {"Drugs for Parkinson's", 1065, 452, 2103, 0.32, true},
    {"Drugs for Cardiovascular System Diseases", 73524, 5403, 14358, 0.225, true},
    {"Drugs for Hypertensive", 3395, 717, 3937, 0.2, true},
    {"Drugs for Respiratory System Diseases", 9783, 2088, 6071, 0.214, false},
    {"Drugs for Asthma", 3637, 822, 3137, 0.244, true},
}};

struct RateRow {
  std::string_view domain;
  double ave_pub_year;
  double cite3;
  double k;
};

inline constexpr std::array<RateRow, 7> kRates = {{
    {"Drugs for Nervous System Diseases", 2000.28, 2.36617, 0.208583},
    {"Drugs for Alzheimer's", 2002.82, 2.35049, 0.245692},
    {"Drugs for Parkinson's", 2004.49, 3.07129, 0.372949},
    {"Drugs for Cardiovascular System Diseases", 1999.91, 2.51658, 0.223867},
    {"Drugs for Hypertensive", 1996.62, 2.41072, 0.158069},
    {"Drugs for Respiratory System Diseases", 2001.53, 2.79493, 0.288165},
    {"Drugs for Asthma", 2005.14, 2.99171, 0.371769},
}};

}  // namespace patcom::fixtures
