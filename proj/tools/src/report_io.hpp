#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "noisestab/parameters.hpp"
#include "noisestab/stability.hpp"

namespace noisestab::cli {

/// Flags shared by every subcommand.
struct Common {
    std::string out = "noisestab-out";
    std::uint64_t seed = 1;
    std::size_t samples = 200000;
    double budget = kDefaultEnumerationBudget;
    std::string constants_file;
    ConstantsProfile constants;
};

/// Round-trippable, locale-independent number formatting.
std::string fmt(double value);

class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> columns);
    void add_row(std::vector<std::string> cells);
    /// Header plus rows; every line ends with the tool version column.
    std::string str() const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<std::string>> rows_;
};

/// Pass/fail lines collected by a subcommand.
class Checks {
public:
    void add(std::string name, bool passed, std::string detail = {});
    bool all_passed() const;
    void print(std::ostream& out) const;
    nlohmann::json to_json() const;

private:
    struct Entry {
        std::string name;
        bool passed;
        std::string detail;
    };
    std::vector<Entry> entries_;
};

/// Run metadata embedded in every JSON report.
nlohmann::json meta_block(const Common& common, const std::string& command, nlohmann::json tolerances);

void write_json(const Common& common, const std::string& name, const nlohmann::json& doc);
void write_csv(const Common& common, const std::string& name, const CsvTable& table);

}  // namespace noisestab::cli
