#include "dtbias/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <string>

namespace dtbias {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
    return static_cast<char>(std::tolower(c));
  });
  return s;
}

std::vector<std::string> split(const std::string& line, char delim) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, delim)) out.push_back(field);
  if (!line.empty() && line.back() == delim) out.push_back("");
  return out;
}

std::optional<double> parse_field(const std::string& raw, std::size_t line_no) {
  const std::string s = trim(raw);
  if (s.empty() || lower(s) == "na") return std::nullopt;
  try {
    std::size_t pos = 0;
    const double value = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return value;
  } catch (const std::logic_error&) {
    throw DatasetError("line " + std::to_string(line_no) +
                       ": cannot parse numeric field '" + s + "'");
  }
}

}  // namespace

std::vector<RawRecord> parse_dataset(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  // Header: find the columns named x, u, v (any order, case insensitive).
  std::string header;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) {
      header = line;
      break;
    }
  }
  if (header.empty()) throw DatasetError("empty input: no header row");

  const char delim = header.find('\t') != std::string::npos ? '\t' : ',';
  const std::vector<std::string> names = split(header, delim);
  std::size_t ix = names.size(), iu = names.size(), iv = names.size();
  for (std::size_t c = 0; c < names.size(); ++c) {
    const std::string name = lower(trim(names[c]));
    if (name == "x") ix = c;
    else if (name == "u") iu = c;
    else if (name == "v") iv = c;
  }
  if (ix == names.size() || iu == names.size() || iv == names.size()) {
    throw DatasetError("header must name columns x, u and v");
  }
  const std::size_t need = std::max({ix, iu, iv}) + 1;

  std::vector<RawRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const std::vector<std::string> fields = split(line, delim);
    if (fields.size() < need) {
      throw DatasetError("line " + std::to_string(line_no) +
                         ": expected at least " + std::to_string(need) +
                         " fields, got " + std::to_string(fields.size()));
    }
    RawRecord rec;
    rec.x = parse_field(fields[ix], line_no);
    rec.u = parse_field(fields[iu], line_no);
    rec.v = parse_field(fields[iv], line_no);
    records.push_back(rec);
  }
  return records;
}

std::vector<RawRecord> read_dataset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DatasetError("cannot open dataset file: " + path);
  return parse_dataset(in);
}

}  // namespace dtbias
