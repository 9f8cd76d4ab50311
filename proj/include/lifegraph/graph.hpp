#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lifegraph/partial_date.hpp"
#include "lifegraph/profile.hpp"

namespace lifegraph {

/// Role of the link target relative to its source: (u, v, Parent) states that
/// v is a parent of u, and is always paired with (v, u, Child).
enum class LinkType : std::uint8_t { Spouse = 0, Child = 1, Parent = 2, Sibling = 3 };

inline constexpr std::size_t kLinkTypeCount = 4;
inline constexpr std::array kAllLinkTypes = {LinkType::Spouse, LinkType::Child, LinkType::Parent,
                                             LinkType::Sibling};

std::string_view link_type_name(LinkType t) noexcept;
std::optional<LinkType> parse_link_type(std::string_view text);
LinkType reciprocal(LinkType t) noexcept;

using VertexIndex = std::uint32_t;

struct Link {
  VertexIndex u = 0;
  VertexIndex v = 0;
  LinkType type = LinkType::Spouse;
  std::optional<PartialDate> created;

  friend bool operator==(const Link&, const Link&) = default;
};

/// Vertex payload. Placeholders stand in for profiles that are referenced
/// but not present in the source; they carry no attributes.
struct Vertex {
  std::string id;
  bool placeholder = false;
  bool is_private = false;
  std::string full_name;
  Gender gender = Gender::Unknown;
  std::optional<PartialDate> birth;
  std::optional<PartialDate> death;
  std::optional<std::string> birth_location;
  std::optional<std::string> death_location;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

Vertex vertex_from_profile(const ProfileRecord& profile);

/// Directed multigraph of people and typed kin links.
///
/// Built with add_vertex/add_link_pair, then finalize() builds the
/// per-type adjacency index. After finalize() only vertex dates may change
/// (see clean_inconsistent); readers may then query concurrently.
class Multigraph {
 public:
  /// Throws DataError when the id is already present.
  VertexIndex add_vertex(Vertex vertex);

  /// Adds (u, v, type, created) and its reciprocal (v, u, reciprocal(type), created).
  void add_link_pair(VertexIndex u, VertexIndex v, LinkType type,
                     std::optional<PartialDate> created);

  /// Adds a single directed link; used when reloading persisted graphs.
  void add_link(Link link);

  void reserve(std::size_t vertices, std::size_t links);
  void finalize();
  bool finalized() const noexcept { return finalized_; }

  std::size_t vertex_count() const noexcept { return vertices_.size(); }
  std::size_t link_count() const noexcept { return links_.size(); }
  std::span<const Vertex> vertices() const noexcept { return vertices_; }
  std::span<const Link> links() const noexcept { return links_; }
  const Vertex& vertex(VertexIndex v) const { return vertices_.at(v); }
  std::optional<VertexIndex> find(std::string_view id) const;

  /// Distinct targets of v's outgoing links of one type, ascending by index.
  std::span<const VertexIndex> targets(VertexIndex v, LinkType type) const;

  std::span<const VertexIndex> parents_of(VertexIndex v) const { return targets(v, LinkType::Parent); }
  std::span<const VertexIndex> children_of(VertexIndex v) const { return targets(v, LinkType::Child); }
  std::span<const VertexIndex> spouses_of(VertexIndex v) const { return targets(v, LinkType::Spouse); }
  std::span<const VertexIndex> siblings_of(VertexIndex v) const { return targets(v, LinkType::Sibling); }

  /// Number of links (in either direction) touching v.
  std::size_t incident_link_count(VertexIndex v) const;

  void erase_dates(VertexIndex v);

 private:
  std::vector<Vertex> vertices_;
  std::vector<Link> links_;
  std::unordered_map<std::string, VertexIndex> index_;
  // CSR over (vertex, type) buckets: bucket b = v * kLinkTypeCount + type.
  std::vector<std::uint64_t> bucket_offsets_;
  std::vector<VertexIndex> bucket_targets_;
  std::vector<std::uint32_t> degree_;
  bool finalized_ = false;
};

struct BuildReport {
  std::size_t placeholders = 0;
  std::size_t self_references_dropped = 0;
  std::vector<std::string> warnings;
};

/// One vertex per profile; each kin reference becomes a link pair, with
/// references to unknown ids creating a fresh placeholder vertex each.
/// Relationships stated from both sides are materialised once.
/// Parent/child links carry the child's birth date as creation date.
/// Requires unique profile ids (DataError otherwise).
Multigraph build_multigraph(std::span<const ProfileRecord> profiles, BuildReport* report = nullptr);

struct CleanReport {
  std::size_t negative_age_count = 0;
  std::size_t over_max_age_count = 0;
  std::size_t child_under_five_count = 0;
  std::vector<std::string> negative_age_ids;
  std::vector<std::string> over_max_age_ids;
  std::vector<std::string> child_under_five_ids;
};

inline constexpr double kMaxAgeYears = 122.0;
inline constexpr double kMinParentAgeYears = 5.0;

/// Erases birth and death dates of vertices whose age is negative, above
/// 122, or below 5 while having children. Rules are checked in that order and
/// a vertex is attributed to the first rule it breaks.
CleanReport clean_inconsistent(Multigraph& g);

/// Lower bound on the number of distinct people behind placeholder vertices.
/// Placeholders whose single link is of type Child are parents of a public
/// vertex and are assumed to come in pairs; every other placeholder counts
/// as one person.
std::size_t estimate_distinct_private(const Multigraph& g);

}  // namespace lifegraph
