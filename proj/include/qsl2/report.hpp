#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace qsl2 {

/// Outcome of one numerical check. `anchor` names the identity being checked.
struct Report {
  std::string check;
  std::string anchor;
  nlohmann::json params = nlohmann::json::object();
  double residual = 0.0;
  double threshold = 0.0;
  bool pass = false;

  nlohmann::json to_json() const;
};

Report make_report(std::string check, std::string anchor, double residual, double threshold,
                   nlohmann::json params = nlohmann::json::object());

/// Reports sorted by check name, wrapped with an overall pass flag.
nlohmann::json reports_to_json(std::vector<Report> reports, const nlohmann::json& header);

}  // namespace qsl2
