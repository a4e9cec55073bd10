#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace wsmf {

using Json = nlohmann::ordered_json;

// Plot-ready table written as tab-separated text; non-finite cells print as
// "-inf", "inf" or "nan".
struct Table {
  std::string name;  // file name inside the TSV directory
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct Document {
  Json json;
  std::vector<Table> tables;
};

// Finite doubles as numbers, everything else as null.
Json json_number(double v);
Json json_array(const std::vector<double>& v);

// Two-space indented JSON with insertion-ordered keys and every double
// printed with 17 significant digits. Ends with a newline.
std::string dump_json(const Json& doc);
std::string format_tsv(const Table& table);

// Writes the JSON document (unless json_path is empty) and every table into
// tsv_dir (unless empty; the directory is created).
void emit_document(const Document& doc, const std::string& json_path, const std::string& tsv_dir);

}  // namespace wsmf
