#include "ym2/reporting.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace ym2 {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

void ensure_parent(const std::string& path) {
    std::filesystem::path p(path);
    if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
}

} // namespace

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
    for (const auto& row : rows) {
        if (row.size() != header.size())
            throw std::domain_error("CSV row width does not match the header");
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            out << format_double(row[i]);
        }
        out << '\n';
    }
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

nlohmann::json base_report(const std::string& command, const nlohmann::json& config) {
    nlohmann::json doc;
    doc["command"] = command;
    doc["config"] = config;
    doc["version"] = kToolVersion;
    return doc;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    ensure_parent(path);
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << doc.dump(2) << '\n';
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

} // namespace ym2
