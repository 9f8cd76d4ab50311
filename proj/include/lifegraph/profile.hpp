#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lifegraph/partial_date.hpp"

namespace lifegraph {

/// Integer codes match the exported Gender feature: male 1, female 2, unknown 0.
enum class Gender : unsigned char { Unknown = 0, Male = 1, Female = 2 };

inline int gender_code(Gender g) noexcept { return static_cast<int>(g); }

std::string_view gender_name(Gender g) noexcept;
std::optional<Gender> parse_gender(std::string_view text);

/// One parsed genealogy profile.
struct ProfileRecord {
  std::string id;
  std::string full_name;
  Gender gender = Gender::Unknown;
  std::optional<PartialDate> birth;
  std::optional<PartialDate> death;
  std::optional<std::string> birth_location;
  std::optional<std::string> death_location;
  bool is_private = false;
  std::vector<std::string> parent_ids;
  std::vector<std::string> child_ids;
  std::vector<std::string> spouse_ids;
  std::vector<std::string> sibling_ids;

  friend bool operator==(const ProfileRecord&, const ProfileRecord&) = default;
};

}  // namespace lifegraph
