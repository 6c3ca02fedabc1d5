#pragma once

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace sharpconvex::cli {

using Json = nlohmann::json;

// A rectangular result table. Cells are JSON scalars (number, string, bool).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
};

struct Report {
  std::string command;
  Json parameters = Json::object();  // effective configuration, echoed verbatim
  Json summary = Json::object();
  Table table;
};

// Shortest round-trip decimal form; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double v);

// A double as a JSON cell: a number when finite, otherwise its string form.
Json number_cell(double v);

// RFC 4180-style CSV: header row, '.' decimal separator, fields quoted when
// they contain a comma, quote or line break.
void write_csv(std::ostream& os, const Table& t);

// {"command", "parameters", "config_hash", "summary", "columns", "rows"}.
void write_json(std::ostream& os, const Report& r);

// SHA-1 of "blob <size>\0<content>", as git hashes file contents.
std::string git_blob_sha1(std::string_view content);

// Hash of the canonical serialization of {command, parameters}.
std::string config_hash(const Report& r);

}  // namespace sharpconvex::cli
