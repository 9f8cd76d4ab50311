#include "gedcom.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>

namespace lifegraph::detail {
namespace {

struct GedLine {
  int level = 0;
  std::string xref;  // without the surrounding '@'
  std::string tag;
  std::string value;
};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string_view next_token(std::string_view& s) {
  s = trim(s);
  auto end = s.find_first_of(" \t");
  auto token = s.substr(0, end);
  s = end == std::string_view::npos ? std::string_view{} : s.substr(end + 1);
  return token;
}

std::optional<std::string> pointer_value(std::string_view s) {
  s = trim(s);
  if (s.size() < 3 || s.front() != '@' || s.back() != '@') return std::nullopt;
  return std::string(s.substr(1, s.size() - 2));
}

std::optional<GedLine> split_line(std::string_view raw) {
  std::string_view rest = raw;
  auto level_token = next_token(rest);
  if (level_token.empty() || level_token.size() > 2 ||
      !std::all_of(level_token.begin(), level_token.end(),
                   [](unsigned char c) { return std::isdigit(c); })) {
    return std::nullopt;
  }
  GedLine line;
  line.level = std::stoi(std::string(level_token));
  auto token = next_token(rest);
  if (!token.empty() && token.front() == '@') {
    auto xref = pointer_value(token);
    if (!xref) return std::nullopt;
    line.xref = std::move(*xref);
    token = next_token(rest);
  }
  if (token.empty()) return std::nullopt;
  line.tag.assign(token);
  std::transform(line.tag.begin(), line.tag.end(), line.tag.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  line.value.assign(trim(rest));
  return line;
}

std::string clean_name(std::string_view raw) {
  std::string out;
  bool space = false;
  for (char c : raw) {
    if (c == '/') c = ' ';
    if (std::isspace(static_cast<unsigned char>(c))) {
      space = !out.empty();
      continue;
    }
    if (space) out.push_back(' ');
    space = false;
    out.push_back(c);
  }
  return out;
}

struct Family {
  std::vector<std::string> spouses;
  std::vector<std::string> children;
};

struct Individual {
  std::size_t line = 0;
  ProfileRecord profile;
  bool has_name = false;
};

void push_unique(std::vector<std::string>& list, const std::string& id) {
  if (std::find(list.begin(), list.end(), id) == list.end()) list.push_back(id);
}

}  // namespace

std::vector<std::pair<std::size_t, ProfileRecord>> read_gedcom(std::istream& in,
                                                               ParseReport& report) {
  std::vector<Individual> people;
  std::vector<std::string> family_order;
  std::unordered_map<std::string, Family> families;
  // INDI-side FAMC/FAMS pointers, merged after the whole file is read.
  std::vector<std::pair<std::string, std::string>> child_of;   // (family, person)
  std::vector<std::pair<std::string, std::string>> spouse_in;  // (family, person)

  auto family = [&](const std::string& xref) -> Family& {
    auto [it, inserted] = families.try_emplace(xref);
    if (inserted) family_order.push_back(xref);
    return it->second;
  };

  enum class Record { None, Indi, Fam, Other };
  Record record = Record::None;
  std::string current_fam;
  std::string event;  // level-1 tag the current level-2 lines belong to
  bool skip_record = false;

  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (line_no == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    if (trim(raw).empty()) continue;
    auto parsed = split_line(raw);
    if (!parsed) {
      ++report.malformed;
      report.issues.push_back({IssueKind::Malformed, line_no, "", "unparseable GEDCOM line"});
      continue;
    }
    const GedLine& line = *parsed;

    if (line.level == 0) {
      event.clear();
      skip_record = false;
      if (line.tag == "INDI") {
        if (line.xref.empty()) {
          ++report.malformed;
          report.issues.push_back({IssueKind::Malformed, line_no, "", "INDI without xref"});
          record = Record::Other;
          skip_record = true;
          continue;
        }
        record = Record::Indi;
        Individual person;
        person.line = line_no;
        person.profile.id = line.xref;
        people.push_back(std::move(person));
      } else if (line.tag == "FAM" && !line.xref.empty()) {
        record = Record::Fam;
        current_fam = line.xref;
        family(current_fam);
      } else {
        record = Record::Other;
      }
      continue;
    }
    if (skip_record || record == Record::Other || record == Record::None) continue;

    if (record == Record::Indi) {
      auto& person = people.back();
      auto& p = person.profile;
      if (line.level == 1) {
        event = line.tag;
        if (line.tag == "NAME" && !person.has_name) {
          p.full_name = clean_name(line.value);
          person.has_name = true;
        } else if (line.tag == "SEX") {
          p.gender = line.value == "M"   ? Gender::Male
                     : line.value == "F" ? Gender::Female
                                         : Gender::Unknown;
        } else if (line.tag == "FAMC" || line.tag == "FAMS") {
          auto fam = pointer_value(line.value);
          if (!fam) {
            report.issues.push_back(
                {IssueKind::Malformed, line_no, p.id, line.tag + " without a family pointer"});
            continue;
          }
          family(*fam);
          (line.tag == "FAMC" ? child_of : spouse_in).emplace_back(*fam, p.id);
        } else if (line.tag == "RESN") {
          std::string v = line.value;
          std::transform(v.begin(), v.end(), v.begin(),
                         [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
          if (v == "privacy" || v == "confidential") p.is_private = true;
        }
      } else if (line.level == 2 && (event == "BIRT" || event == "DEAT")) {
        const bool birth = event == "BIRT";
        if (line.tag == "DATE") {
          auto date = parse_date(line.value);
          if (!date && !line.value.empty()) {
            ++report.unparsed_dates;
            report.issues.push_back(
                {IssueKind::UnparsedDate, line_no, p.id, "unparseable or qualified date"});
          }
          (birth ? p.birth : p.death) = date;
        } else if (line.tag == "PLAC" && !line.value.empty()) {
          (birth ? p.birth_location : p.death_location) = line.value;
        }
      }
    } else if (record == Record::Fam && line.level == 1) {
      auto& fam = family(current_fam);
      auto member = pointer_value(line.value);
      if (line.tag == "HUSB" || line.tag == "WIFE" || line.tag == "CHIL") {
        if (!member) {
          report.issues.push_back(
              {IssueKind::Malformed, line_no, current_fam, line.tag + " without a pointer"});
          continue;
        }
        push_unique(line.tag == "CHIL" ? fam.children : fam.spouses, *member);
      }
    }
  }

  for (const auto& [fam, person] : spouse_in) push_unique(families[fam].spouses, person);
  for (const auto& [fam, person] : child_of) push_unique(families[fam].children, person);

  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < people.size(); ++i) index.try_emplace(people[i].profile.id, i);
  auto profile = [&](const std::string& id) -> ProfileRecord* {
    auto it = index.find(id);
    return it == index.end() ? nullptr : &people[it->second].profile;
  };

  for (const auto& fam_id : family_order) {
    const Family& fam = families[fam_id];
    for (const auto& child : fam.children) {
      if (auto* c = profile(child)) {
        for (const auto& parent : fam.spouses) push_unique(c->parent_ids, parent);
        for (const auto& sibling : fam.children) {
          if (sibling != child) push_unique(c->sibling_ids, sibling);
        }
      }
    }
    for (const auto& spouse : fam.spouses) {
      if (auto* s = profile(spouse)) {
        for (const auto& child : fam.children) push_unique(s->child_ids, child);
        for (const auto& other : fam.spouses) {
          if (other != spouse) push_unique(s->spouse_ids, other);
        }
      }
    }
  }

  std::vector<std::pair<std::size_t, ProfileRecord>> out;
  out.reserve(people.size());
  for (auto& person : people) out.emplace_back(person.line, std::move(person.profile));
  return out;
}

}  // namespace lifegraph::detail
