#include "lifegraph/csv.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include "lifegraph/error.hpp"

namespace lifegraph {

CsvWriter& CsvWriter::field(std::string_view value) {
  if (!first_) out_.put(',');
  first_ = false;
  if (value.find_first_of(",\"\r\n") == std::string_view::npos) {
    out_ << value;
    return *this;
  }
  out_.put('"');
  for (char c : value) {
    if (c == '"') out_.put('"');
    out_.put(c);
  }
  out_.put('"');
  return *this;
}

CsvWriter& CsvWriter::field(double value) { return field(format_number(value)); }

CsvWriter& CsvWriter::field(long long value) { return field(std::to_string(value)); }

CsvWriter& CsvWriter::empty() { return field(std::string_view{}); }

void CsvWriter::end_row() {
  out_.put('\n');
  first_ = true;
}

void CsvWriter::row(const std::vector<std::string>& fields) {
  for (const auto& f : fields) field(f);
  end_row();
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  if (ec != std::errc{}) throw Error("number formatting failed");
  return std::string(buf, end);
}

bool CsvReader::next(std::vector<std::string>& fields) {
  fields.clear();
  std::string line;
  if (!std::getline(in_, line)) {
    if (in_.bad()) throw IoError("error while reading CSV");
    return false;
  }
  record_line_ = ++line_;
  std::string current;
  bool quoted = false;
  for (;;) {
    if (!line.empty() && line.back() == '\r' && !quoted) line.pop_back();
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            current.push_back('"');
            ++i;
          } else {
            quoted = false;
          }
        } else {
          current.push_back(c);
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        fields.push_back(std::move(current));
        current.clear();
      } else {
        current.push_back(c);
      }
    }
    if (!quoted) break;
    current.push_back('\n');
    if (!std::getline(in_, line)) throw DataError("unterminated quoted CSV field");
    ++line_;
  }
  fields.push_back(std::move(current));
  return true;
}

}  // namespace lifegraph
