#include "patcom/report.hpp"

#include <algorithm>
#include <ostream>

#include <fmt/format.h>

#include "json.hpp"

namespace patcom::report {

std::string fixed(double value, int decimals) {
  std::string s = fmt::format("{:.{}f}", value, decimals);
  if (s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

void write_ranking_csv(std::ostream& out, const std::vector<com::ClassScore>& ranking) {
  out << "symbol,overlap_count,class_total,recall,precision,mpr\n";
  for (const auto& s : ranking) {
    out << csv_field(s.label) << ',' << s.overlap_count << ',' << s.class_total << ','
        << fixed(s.metrics.recall.value(), 6) << ','
        << fixed(s.metrics.precision.value(), 6) << ','
        << fixed(s.metrics.mpr.value(), 6) << '\n';
  }
}

std::string ranking_json(const std::vector<com::ClassScore>& ranking) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& s : ranking) {
    nlohmann::ordered_json j;
    j["symbol"] = s.label;
    j["overlap_count"] = s.overlap_count;
    j["class_total"] = s.class_total;
    j["recall"] = s.metrics.recall.value();
    j["precision"] = s.metrics.precision.value();
    j["mpr"] = s.metrics.mpr.value();
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

void write_indicators_csv(std::ostream& out, const std::vector<DomainRow>& rows) {
  out << "domain_name,spc,ave_pub_year,cite3,predicted_k\n";
  for (const auto& r : rows) {
    out << csv_field(r.name) << ',' << r.indicators.spc << ','
        << fixed(r.indicators.ave_pub_year, 2) << ',' << fixed(r.indicators.cite3, 5)
        << ',' << fixed(r.predicted_k, 6) << '\n';
  }
}

std::string indicators_json(const std::vector<DomainRow>& rows) {
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : rows) {
    nlohmann::ordered_json j;
    j["domain_name"] = r.name;
    j["spc"] = r.indicators.spc;
    j["ave_pub_year"] = r.indicators.ave_pub_year;
    j["cite3"] = r.indicators.cite3;
    j["predicted_k"] = r.predicted_k;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<DomainRow> chart_order(std::vector<DomainRow> rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const DomainRow& a, const DomainRow& b) {
    if (a.predicted_k != b.predicted_k) return a.predicted_k > b.predicted_k;
    return a.name < b.name;
  });
  return rows;
}

void write_k_chart_csv(std::ostream& out, const std::vector<DomainRow>& rows) {
  out << "domain,k\n";
  for (const auto& r : chart_order(rows))
    out << csv_field(r.name) << ',' << fixed(r.predicted_k, 6) << '\n';
}

void write_id_list(std::ostream& out, const std::vector<std::string>& ids) {
  for (const auto& id : ids) out << id << '\n';
}

}  // namespace patcom::report
