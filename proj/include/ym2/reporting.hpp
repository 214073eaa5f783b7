#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace ym2 {

inline constexpr const char* kToolVersion = "0.1.0";

// %.17g: shortest text that still round-trips a double, so reruns with the
// same seed produce byte-identical files.
std::string format_double(double v);

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Report skeleton every command shares: name, resolved config echo, version.
// nlohmann::json orders keys lexicographically, which keeps dumps stable.
nlohmann::json base_report(const std::string& command, const nlohmann::json& config);

void write_json(const std::string& path, const nlohmann::json& doc);

} // namespace ym2
