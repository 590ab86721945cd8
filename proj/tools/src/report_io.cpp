#include "report_io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "noisestab/errors.hpp"
#include "noisestab/function_io.hpp"
#include "noisestab/version.hpp"

namespace noisestab::cli {

std::string fmt(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

CsvTable::CsvTable(std::vector<std::string> columns) : columns_(std::move(columns)) {}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != columns_.size()) throw InvalidArgument("CSV row width does not match the header");
    rows_.push_back(std::move(cells));
}

std::string CsvTable::str() const {
    std::string text;
    auto line = [&](const std::vector<std::string>& cells, const std::string& last) {
        for (const auto& c : cells) text += c + ",";
        text += last + "\n";
    };
    line(columns_, "tool_version");
    const std::string version = std::string("noisestab ") + kVersion;
    for (const auto& row : rows_) line(row, version);
    return text;
}

void Checks::add(std::string name, bool passed, std::string detail) {
    entries_.push_back({std::move(name), passed, std::move(detail)});
}

bool Checks::all_passed() const {
    for (const auto& e : entries_) {
        if (!e.passed) return false;
    }
    return true;
}

void Checks::print(std::ostream& out) const {
    for (const auto& e : entries_) {
        out << (e.passed ? "PASS " : "FAIL ") << e.name;
        if (!e.detail.empty()) out << "  (" << e.detail << ")";
        out << "\n";
    }
}

nlohmann::json Checks::to_json() const {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& e : entries_) doc.push_back({{"name", e.name}, {"passed", e.passed}, {"detail", e.detail}});
    return doc;
}

nlohmann::json meta_block(const Common& common, const std::string& command, nlohmann::json tolerances) {
    return {{"tool_version", std::string("noisestab ") + kVersion},
            {"command", command},
            {"seed", common.seed},
            {"samples", common.samples},
            {"budget", common.budget},
            {"constants", constants_to_json(common.constants)},
            {"tolerances", std::move(tolerances)}};
}

void write_json(const Common& common, const std::string& name, const nlohmann::json& doc) {
    std::filesystem::create_directories(common.out);
    write_text_atomically(std::filesystem::path(common.out) / name, doc.dump(2) + "\n");
}

void write_csv(const Common& common, const std::string& name, const CsvTable& table) {
    std::filesystem::create_directories(common.out);
    write_text_atomically(std::filesystem::path(common.out) / name, table.str());
}

}  // namespace noisestab::cli
