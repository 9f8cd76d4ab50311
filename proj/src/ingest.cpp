#include "lifegraph/ingest.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "gedcom.hpp"
#include "lifegraph/error.hpp"

namespace lifegraph {
namespace {

using nlohmann::json;

std::optional<std::string> optional_string(const json& obj, const char* key) {
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw DataError(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> id_list(const json& obj, const char* key) {
  std::vector<std::string> ids;
  auto it = obj.find(key);
  if (it == obj.end() || it->is_null()) return ids;
  if (!it->is_array()) throw DataError(std::string("field '") + key + "' must be an array");
  ids.reserve(it->size());
  for (const auto& item : *it) {
    if (!item.is_string() || item.get_ref<const std::string&>().empty()) {
      throw DataError(std::string("field '") + key + "' must hold non-empty strings");
    }
    ids.push_back(item.get<std::string>());
  }
  return ids;
}

std::optional<PartialDate> date_field(const json& obj, const char* key,
                                      std::size_t* unparsed_dates) {
  auto text = optional_string(obj, key);
  if (!text || text->empty()) return std::nullopt;
  auto date = parse_date(*text);
  if (!date && unparsed_dates) ++*unparsed_dates;
  return date;
}

std::size_t drop_self_references(ProfileRecord& p) {
  std::size_t dropped = 0;
  for (auto* list : {&p.parent_ids, &p.child_ids, &p.spouse_ids, &p.sibling_ids}) {
    const auto before = list->size();
    std::erase(*list, p.id);
    dropped += before - list->size();
  }
  return dropped;
}

// Shared screening for both formats: first occurrence of an id wins, later
// ones are rejected; self references are removed from kin lists.
void accept(ProfileRecord profile, std::size_t line, std::unordered_set<std::string>& seen,
            ParseResult& result) {
  auto& report = result.report;
  if (!seen.insert(profile.id).second) {
    ++report.duplicates;
    report.issues.push_back({IssueKind::Duplicate, line, profile.id, "duplicate id"});
    return;
  }
  if (auto dropped = drop_self_references(profile); dropped > 0) {
    report.self_references += dropped;
    report.issues.push_back(
        {IssueKind::SelfReference, line, profile.id, "self reference dropped from kin list"});
  }
  result.profiles.push_back(std::move(profile));
  ++report.records;
}

ParseResult parse_json_lines(std::istream& in) {
  ParseResult result;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    ProfileRecord profile;
    std::size_t unparsed = 0;
    try {
      profile = parse_profile_json(line, &unparsed);
    } catch (const DataError& e) {
      ++result.report.malformed;
      result.report.issues.push_back({IssueKind::Malformed, line_no, "", e.what()});
      continue;
    }
    if (unparsed > 0) {
      result.report.unparsed_dates += unparsed;
      result.report.issues.push_back(
          {IssueKind::UnparsedDate, line_no, profile.id, "unparseable or qualified date"});
    }
    accept(std::move(profile), line_no, seen, result);
  }
  if (in.bad()) throw IoError("error while reading profile stream");
  return result;
}

}  // namespace

std::string_view gender_name(Gender g) noexcept {
  switch (g) {
    case Gender::Male:
      return "male";
    case Gender::Female:
      return "female";
    case Gender::Unknown:
      break;
  }
  return "unknown";
}

std::optional<Gender> parse_gender(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (lower == "male" || lower == "m") return Gender::Male;
  if (lower == "female" || lower == "f") return Gender::Female;
  if (lower == "unknown" || lower == "u" || lower.empty()) return Gender::Unknown;
  return std::nullopt;
}

std::optional<SourceFormat> parse_source_format(std::string_view text) {
  if (text == "jsonl" || text == "json-lines" || text == "json") return SourceFormat::JsonLines;
  if (text == "gedcom" || text == "ged") return SourceFormat::Gedcom;
  return std::nullopt;
}

std::string_view issue_kind_name(IssueKind kind) noexcept {
  switch (kind) {
    case IssueKind::Malformed:
      return "malformed";
    case IssueKind::Duplicate:
      return "duplicate";
    case IssueKind::SelfReference:
      return "self_reference";
    case IssueKind::UnparsedDate:
      return "unparsed_date";
  }
  return "unknown";
}

ProfileRecord parse_profile_json(std::string_view line, std::size_t* unparsed_dates) {
  json obj = json::parse(line.begin(), line.end(), nullptr, /*allow_exceptions=*/false);
  if (obj.is_discarded()) throw DataError("invalid JSON");
  if (!obj.is_object()) throw DataError("record is not a JSON object");

  ProfileRecord p;
  auto id = optional_string(obj, "id");
  if (!id || id->empty()) throw DataError("missing or empty id");
  p.id = std::move(*id);
  p.full_name = optional_string(obj, "name").value_or("");
  if (auto g = optional_string(obj, "gender")) {
    auto parsed = parse_gender(*g);
    if (!parsed) throw DataError("unknown gender '" + *g + "'");
    p.gender = *parsed;
  }
  p.birth = date_field(obj, "birth_date", unparsed_dates);
  p.death = date_field(obj, "death_date", unparsed_dates);
  p.birth_location = optional_string(obj, "birth_location");
  p.death_location = optional_string(obj, "death_location");
  if (auto it = obj.find("private"); it != obj.end() && !it->is_null()) {
    if (!it->is_boolean()) throw DataError("field 'private' must be a boolean");
    p.is_private = it->get<bool>();
  }
  p.parent_ids = id_list(obj, "parents");
  p.child_ids = id_list(obj, "children");
  p.spouse_ids = id_list(obj, "spouses");
  p.sibling_ids = id_list(obj, "siblings");
  return p;
}

std::string to_json_line(const ProfileRecord& p) {
  nlohmann::ordered_json obj;
  obj["id"] = p.id;
  obj["name"] = p.full_name;
  obj["gender"] = gender_name(p.gender);
  if (p.birth) obj["birth_date"] = format_date(*p.birth);
  if (p.death) obj["death_date"] = format_date(*p.death);
  if (p.birth_location) obj["birth_location"] = *p.birth_location;
  if (p.death_location) obj["death_location"] = *p.death_location;
  obj["private"] = p.is_private;
  obj["parents"] = p.parent_ids;
  obj["children"] = p.child_ids;
  obj["spouses"] = p.spouse_ids;
  obj["siblings"] = p.sibling_ids;
  return obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

void write_json_lines(std::ostream& out, const std::vector<ProfileRecord>& profiles) {
  for (const auto& p : profiles) out << to_json_line(p) << '\n';
  if (!out) throw IoError("error while writing profile stream");
}

ParseResult parse_profiles(std::istream& source, SourceFormat format) {
  if (source.fail() && !source.eof()) throw IoError("profile stream is not readable");
  if (format == SourceFormat::JsonLines) return parse_json_lines(source);

  ParseResult result;
  auto records = detail::read_gedcom(source, result.report);
  if (source.bad()) throw IoError("error while reading GEDCOM stream");
  std::unordered_set<std::string> seen;
  for (auto& [line, profile] : records) accept(std::move(profile), line, seen, result);
  return result;
}

}  // namespace lifegraph
