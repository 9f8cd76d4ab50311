#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "lifegraph/profile.hpp"

namespace lifegraph {

enum class SourceFormat { JsonLines, Gedcom };

std::optional<SourceFormat> parse_source_format(std::string_view text);

enum class IssueKind {
  Malformed,      // record skipped
  Duplicate,      // record skipped, id already seen
  SelfReference,  // kin reference dropped
  UnparsedDate,   // date field kept absent
};

std::string_view issue_kind_name(IssueKind kind) noexcept;

struct ParseIssue {
  IssueKind kind;
  std::size_t line = 0;  // 1-based line where the record starts
  std::string id;        // may be empty when the record had no usable id
  std::string message;
};

struct ParseReport {
  std::size_t records = 0;  // accepted profiles
  std::size_t malformed = 0;
  std::size_t duplicates = 0;
  std::size_t self_references = 0;
  std::size_t unparsed_dates = 0;
  std::vector<ParseIssue> issues;
};

struct ParseResult {
  std::vector<ProfileRecord> profiles;
  ParseReport report;
};

/// Reads a whole source. Malformed records are skipped and reported; only an
/// unreadable stream throws (IoError).
ParseResult parse_profiles(std::istream& source, SourceFormat format);

/// Parses one JSON-lines record; throws DataError when the line is not a
/// valid profile object. Date strings that do not parse become absent and
/// are counted in `unparsed_dates` when a counter is given.
ProfileRecord parse_profile_json(std::string_view line, std::size_t* unparsed_dates = nullptr);

/// Canonical single-line JSON for a profile (no trailing newline). Absent
/// optional fields are omitted.
std::string to_json_line(const ProfileRecord& profile);

void write_json_lines(std::ostream& out, const std::vector<ProfileRecord>& profiles);

}  // namespace lifegraph
