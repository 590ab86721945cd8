#include "noisestab/function_io.hpp"

#include <fstream>
#include <sstream>

#include "noisestab/errors.hpp"

namespace noisestab {
namespace {

template <class T>
T field(const nlohmann::json& doc, const std::string& path, const char* key) {
    if (!doc.contains(key)) throw ParseError(path + "." + key, "missing field");
    try {
        return doc.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + "." + key, e.what());
    }
}

std::vector<double> number_array(const nlohmann::json& doc, const std::string& path) {
    if (!doc.is_array()) throw ParseError(path, "expected an array of numbers");
    std::vector<double> out;
    out.reserve(doc.size());
    for (std::size_t k = 0; k < doc.size(); ++k) {
        if (!doc[k].is_number()) throw ParseError(path + "[" + std::to_string(k) + "]", "expected a number");
        out.push_back(doc[k].get<double>());
    }
    return out;
}

}  // namespace

nlohmann::json function_to_json(const TableFunction& f) {
    nlohmann::json doc;
    doc["q"] = f.alphabet_size();
    doc["n"] = f.arity();
    doc["values"] = std::vector<double>(f.values().begin(), f.values().end());
    doc["measure"] = f.measure();
    doc["range"] = std::string(to_string(f.range()));
    return doc;
}

TableFunction function_from_json(const nlohmann::json& doc, const std::string& path) {
    if (!doc.is_object()) throw ParseError(path, "expected an object");
    const int q = field<int>(doc, path, "q");
    const int n = field<int>(doc, path, "n");
    if (!doc.contains("values")) throw ParseError(path + ".values", "missing field");
    auto values = number_array(doc.at("values"), path + ".values");
    std::vector<double> measure;
    if (doc.contains("measure")) measure = number_array(doc.at("measure"), path + ".measure");
    RangeTag range = RangeTag::unrestricted;
    if (doc.contains("range")) {
        try {
            range = range_tag_from_string(field<std::string>(doc, path, "range"));
        } catch (const InvalidArgument& e) {
            throw ParseError(path + ".range", e.what());
        }
    }
    try {
        return TableFunction(q, n, std::move(values), std::move(measure), range);
    } catch (const InvalidArgument& e) {
        throw ParseError(path, e.what());
    }
}

nlohmann::json read_json_file(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError(file.string(), "cannot open file");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(file.string(), e.what());
    }
}

TableFunction load_function(const std::filesystem::path& file) {
    return function_from_json(read_json_file(file), file.string() + ": $");
}

void write_text_atomically(const std::filesystem::path& file, const std::string& text) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    auto tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot write " + tmp.string());
        out << text;
        if (!out) throw Error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, file);
}

}  // namespace noisestab
