#include "qsl2/report.hpp"

#include <algorithm>
#include <cmath>

namespace qsl2 {

nlohmann::json Report::to_json() const {
  return {{"check", check}, {"anchor", anchor},     {"params", params},
          {"residual", residual}, {"threshold", threshold}, {"pass", pass}};
}

Report make_report(std::string check, std::string anchor, double residual, double threshold,
                   nlohmann::json params) {
  Report r;
  r.check = std::move(check);
  r.anchor = std::move(anchor);
  r.params = std::move(params);
  r.residual = residual;
  r.threshold = threshold;
  r.pass = std::isfinite(residual) && residual < threshold;
  return r;
}

nlohmann::json reports_to_json(std::vector<Report> reports, const nlohmann::json& header) {
  std::stable_sort(reports.begin(), reports.end(),
                   [](const Report& a, const Report& b) { return a.check < b.check; });
  nlohmann::json out = header;
  out["checks"] = nlohmann::json::array();
  bool all = true;
  for (const Report& r : reports) {
    out["checks"].push_back(r.to_json());
    all = all && r.pass;
  }
  out["pass"] = all;
  return out;
}

}  // namespace qsl2
