#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lifegraph {

/// Minimal RFC 4180 writer: fields containing ',', '"', CR or LF are quoted.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  CsvWriter& field(std::string_view value);
  CsvWriter& field(double value);
  CsvWriter& field(long long value);
  CsvWriter& empty();
  void end_row();

  void row(const std::vector<std::string>& fields);

 private:
  std::ostream& out_;
  bool first_ = true;
};

/// Shortest round-trip decimal rendering of a double ("%.17g" trimmed).
std::string format_number(double value);

class CsvReader {
 public:
  explicit CsvReader(std::istream& in) : in_(in) {}

  /// Reads the next record. Returns false at end of input. Quoted fields may
  /// span lines.
  bool next(std::vector<std::string>& fields);

  /// Physical line on which the last record started (1-based).
  std::size_t line() const noexcept { return record_line_; }

  /// Lets a caller that reads raw lines from the same stream keep line
  /// numbers in sync.
  void advance_line() noexcept { ++line_; }

 private:
  std::istream& in_;
  std::size_t line_ = 0;
  std::size_t record_line_ = 0;
};

}  // namespace lifegraph
