#include "patcom/indicators.hpp"

#include <cmath>

namespace patcom::indicators {

DomainIndicators compute_indicators(const DocSet& ids, const Corpus& c, int window) {
  if (window < 1) throw std::invalid_argument("citation window must be positive");
  if (ids.empty()) throw EmptySet();

  DomainIndicators ind;
  ind.spc = ids.size();
  for (DocIndex i : ids) {
    if (i >= c.size()) throw std::out_of_range("document index outside corpus");
    const int t_i = c[i].pub_year;
    ind.year_sum += t_i;
    for (DocIndex j : c.cited_by(i)) {
      // Citations dated before the cited patent are data noise.
      const long long delta = static_cast<long long>(c[j].pub_year) - t_i;
      if (delta >= 0 && delta <= window) ++ind.windowed_citations;
    }
  }
  const auto n = static_cast<double>(ind.spc);
  ind.ave_pub_year = static_cast<double>(ind.year_sum) / n;
  ind.cite3 = static_cast<double>(ind.windowed_citations) / n;
  return ind;
}

DomainIndicators compute_indicators(std::span<const std::string> ids, const Corpus& c,
                                    int window) {
  if (ids.empty()) throw EmptySet();
  return compute_indicators(c.resolve(ids), c, window);
}

double predict_k(double ave_pub_year, double cite3, const RateModel& model) {
  return model.intercept + model.coef_year * ave_pub_year + model.coef_cite3 * cite3;
}

double predict_k(const DomainIndicators& ind, const RateModel& model) {
  return predict_k(ind.ave_pub_year, ind.cite3, model);
}

double project_performance(const PerformanceProjection& p, double t) {
  if (!(p.q0 > 0.0)) throw std::invalid_argument("q0 must be positive");
  return p.q0 * std::exp(p.k * (t - p.t0));
}

double doubling_time(double k) {
  if (!(k > 0.0)) throw std::invalid_argument("doubling time needs k > 0");
  return std::log(2.0) / k;
}

}  // namespace patcom::indicators
