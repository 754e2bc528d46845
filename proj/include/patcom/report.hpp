#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "patcom/com.hpp"
#include "patcom/indicators.hpp"

namespace patcom::report {

/// Fixed-point rendering with '.' as separator; never prints "-0.000".
std::string fixed(double value, int decimals);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_field(std::string_view s);

/// symbol,overlap_count,class_total,recall,precision,mpr
void write_ranking_csv(std::ostream& out, const std::vector<com::ClassScore>& ranking);
std::string ranking_json(const std::vector<com::ClassScore>& ranking);

struct DomainRow {
  std::string name;
  indicators::DomainIndicators indicators;
  double predicted_k = 0.0;
};

/// domain_name,spc,ave_pub_year,cite3,predicted_k in input order.
void write_indicators_csv(std::ostream& out, const std::vector<DomainRow>& rows);
std::string indicators_json(const std::vector<DomainRow>& rows);

/// Rows ordered for the rate chart: k descending, then name ascending.
std::vector<DomainRow> chart_order(std::vector<DomainRow> rows);

/// domain,k in chart order.
void write_k_chart_csv(std::ostream& out, const std::vector<DomainRow>& rows);

/// One id per line, LF terminated.
void write_id_list(std::ostream& out, const std::vector<std::string>& ids);

}  // namespace patcom::report
