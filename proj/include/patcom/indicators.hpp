#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "patcom/corpus.hpp"
#include "patcom/docset.hpp"

namespace patcom::indicators {

inline constexpr int kDefaultCitationWindow = 3;

struct DomainIndicators {
  std::size_t spc = 0;
  double ave_pub_year = 0.0;
  double cite3 = 0.0;
  /// Σ pub_year and the qualifying forward-citation count behind the means.
  long long year_sum = 0;
  std::size_t windowed_citations = 0;
};

/// Linear rate model k = intercept + coef_year * AvePubYear + coef_cite3 * Cite3.
struct RateModel {
  double intercept = -31.1285;
  double coef_year = 0.0155;
  double coef_cite3 = 0.1406;
  int citation_window_years = kDefaultCitationWindow;
};

class EmptySet : public std::invalid_argument {
 public:
  EmptySet() : std::invalid_argument("indicator set is empty") {}
};

/// SPC, mean publication year, and mean forward citations per patent that
/// arrive within `window` years of publication (0 <= t_citing - t_cited <=
/// window). Citing patents may lie outside `ids` but must be in the corpus.
DomainIndicators compute_indicators(const DocSet& ids, const Corpus& c,
                                    int window = kDefaultCitationWindow);

/// Resolves string ids first; throws UnknownId naming every missing id.
DomainIndicators compute_indicators(std::span<const std::string> ids, const Corpus& c,
                                    int window = kDefaultCitationWindow);

double predict_k(const DomainIndicators& ind, const RateModel& model = {});
double predict_k(double ave_pub_year, double cite3, const RateModel& model = {});

/// Exponential performance trend q(t) = q0 * exp(k * (t - t0)).
struct PerformanceProjection {
  double q0 = 1.0;
  double t0 = 0.0;
  double k = 0.0;
};

double project_performance(const PerformanceProjection& p, double t);

/// Years for performance to double at rate k (> 0).
double doubling_time(double k);

}  // namespace patcom::indicators
