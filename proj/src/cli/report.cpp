#include "sharpconvex/cli/report.hpp"

#include <openssl/evp.h>

#include <array>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "sharpconvex/errors.hpp"

namespace sharpconvex::cli {
namespace {

std::string csv_field(const Json& cell) {
  std::string s;
  if (cell.is_string()) s = cell.get<std::string>();
  else if (cell.is_boolean()) s = cell.get<bool>() ? "true" : "false";
  else if (cell.is_number_integer()) s = std::to_string(cell.get<long long>());
  else if (cell.is_number()) s = format_number(cell.get<double>());
  else if (cell.is_null()) s = "";
  else s = cell.dump();
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::array<char, 32> buf;
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

Json number_cell(double v) { return std::isfinite(v) ? Json(v) : Json(format_number(v)); }

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << csv_field(t.columns[i]);
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << csv_field(row[i]);
    }
    os << '\n';
  }
}

void write_json(std::ostream& os, const Report& r) {
  Json j = Json::object();
  j["command"] = r.command;
  j["parameters"] = r.parameters;
  j["config_hash"] = config_hash(r);
  j["summary"] = r.summary;
  j["columns"] = r.table.columns;
  j["rows"] = r.table.rows;
  os << j.dump(2) << '\n';
}

std::string git_blob_sha1(std::string_view content) {
  std::string blob = "blob " + std::to_string(content.size());
  blob.push_back('\0');
  blob.append(content);
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), md.data(), &len, EVP_sha1(), nullptr) != 1) {
    throw InternalError("git_blob_sha1: digest failed");
  }
  std::string hex;
  char byte[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(byte, sizeof byte, "%02x", md[i]);
    hex += byte;
  }
  return hex;
}

std::string config_hash(const Report& r) {
  const Json canonical = {{"command", r.command}, {"parameters", r.parameters}};
  return git_blob_sha1(canonical.dump());
}

}  // namespace sharpconvex::cli
