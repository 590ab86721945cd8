#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>

#include "noisestab/table_function.hpp"

namespace noisestab {

/// {"q": int, "n": int, "values": [...], "measure": [...], "range": "..."}.
/// Parse failures raise ParseError carrying the JSON field path.
nlohmann::json function_to_json(const TableFunction& f);
TableFunction function_from_json(const nlohmann::json& doc, const std::string& path = "$");

TableFunction load_function(const std::filesystem::path& file);

/// Writes to a sibling temporary file, then renames over `file`.
void write_text_atomically(const std::filesystem::path& file, const std::string& text);

/// Parses `doc` from a file, mapping syntax errors to ParseError("<file>").
nlohmann::json read_json_file(const std::filesystem::path& file);

}  // namespace noisestab
