#include "lifegraph/graph.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include "lifegraph/error.hpp"

namespace lifegraph {

std::string_view link_type_name(LinkType t) noexcept {
  switch (t) {
    case LinkType::Spouse:
      return "Spouse";
    case LinkType::Child:
      return "Child";
    case LinkType::Parent:
      return "Parent";
    case LinkType::Sibling:
      return "Sibling";
  }
  return "?";
}

std::optional<LinkType> parse_link_type(std::string_view text) {
  for (auto t : kAllLinkTypes) {
    if (link_type_name(t) == text) return t;
  }
  return std::nullopt;
}

LinkType reciprocal(LinkType t) noexcept {
  switch (t) {
    case LinkType::Child:
      return LinkType::Parent;
    case LinkType::Parent:
      return LinkType::Child;
    default:
      return t;
  }
}

Vertex vertex_from_profile(const ProfileRecord& p) {
  Vertex v;
  v.id = p.id;
  v.is_private = p.is_private;
  v.full_name = p.full_name;
  v.gender = p.gender;
  v.birth = p.birth;
  v.death = p.death;
  v.birth_location = p.birth_location;
  v.death_location = p.death_location;
  return v;
}

VertexIndex Multigraph::add_vertex(Vertex vertex) {
  if (vertices_.size() >= std::numeric_limits<VertexIndex>::max()) {
    throw DataError("too many vertices");
  }
  const auto index = static_cast<VertexIndex>(vertices_.size());
  auto [it, inserted] = index_.try_emplace(vertex.id, index);
  if (!inserted) throw DataError("duplicate vertex id '" + vertex.id + "'");
  vertices_.push_back(std::move(vertex));
  finalized_ = false;
  return index;
}

void Multigraph::add_link(Link link) {
  if (link.u >= vertices_.size() || link.v >= vertices_.size()) {
    throw DataError("link endpoint out of range");
  }
  if (link.u == link.v) throw DataError("self link on '" + vertices_[link.u].id + "'");
  links_.push_back(std::move(link));
  finalized_ = false;
}

void Multigraph::add_link_pair(VertexIndex u, VertexIndex v, LinkType type,
                               std::optional<PartialDate> created) {
  add_link({u, v, type, created});
  add_link({v, u, reciprocal(type), created});
}

void Multigraph::reserve(std::size_t vertices, std::size_t links) {
  vertices_.reserve(vertices);
  index_.reserve(vertices);
  links_.reserve(links);
}

void Multigraph::finalize() {
  const std::size_t buckets = vertices_.size() * kLinkTypeCount;
  std::vector<std::uint64_t> offsets(buckets + 1, 0);
  degree_.assign(vertices_.size(), 0);
  for (const auto& link : links_) {
    ++offsets[std::size_t{link.u} * kLinkTypeCount + static_cast<std::size_t>(link.type) + 1];
    ++degree_[link.u];
    ++degree_[link.v];
  }
  for (std::size_t b = 0; b < buckets; ++b) offsets[b + 1] += offsets[b];
  std::vector<VertexIndex> targets(links_.size());
  {
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& link : links_) {
      targets[cursor[std::size_t{link.u} * kLinkTypeCount + static_cast<std::size_t>(link.type)]++] =
          link.v;
    }
  }
  // Sort and deduplicate each bucket, compacting in place.
  std::uint64_t write = 0;
  for (std::size_t b = 0; b < buckets; ++b) {
    const auto begin = targets.begin() + static_cast<std::ptrdiff_t>(offsets[b]);
    const auto end = targets.begin() + static_cast<std::ptrdiff_t>(offsets[b + 1]);
    std::sort(begin, end);
    const auto last = std::unique(begin, end);
    offsets[b] = write;
    for (auto it = begin; it != last; ++it) targets[write++] = *it;
  }
  offsets[buckets] = write;
  targets.resize(write);
  targets.shrink_to_fit();
  bucket_offsets_ = std::move(offsets);
  bucket_targets_ = std::move(targets);
  finalized_ = true;
}

std::optional<VertexIndex> Multigraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::span<const VertexIndex> Multigraph::targets(VertexIndex v, LinkType type) const {
  if (!finalized_) throw Error("graph adjacency queried before finalize()");
  const std::size_t b = std::size_t{v} * kLinkTypeCount + static_cast<std::size_t>(type);
  const auto begin = bucket_offsets_.at(b);
  const auto end = bucket_offsets_.at(b + 1);
  return {bucket_targets_.data() + begin, static_cast<std::size_t>(end - begin)};
}

std::size_t Multigraph::incident_link_count(VertexIndex v) const {
  if (!finalized_) throw Error("graph adjacency queried before finalize()");
  return degree_.at(v);
}

void Multigraph::erase_dates(VertexIndex v) {
  auto& vertex = vertices_.at(v);
  vertex.birth.reset();
  vertex.death.reset();
}

namespace {

std::uint64_t ordered_key(VertexIndex a, VertexIndex b) {
  return (std::uint64_t{a} << 32) | b;
}

std::uint64_t unordered_key(VertexIndex a, VertexIndex b) {
  return a < b ? ordered_key(a, b) : ordered_key(b, a);
}

std::string placeholder_id(const std::string& owner, LinkType type, const std::string& ref) {
  std::string id = "~private:";
  id += owner;
  id += ':';
  id += link_type_name(type);
  id += ':';
  id += ref;
  return id;
}

}  // namespace

Multigraph build_multigraph(std::span<const ProfileRecord> profiles, BuildReport* report) {
  Multigraph g;
  std::size_t refs = 0;
  for (const auto& p : profiles) {
    refs += p.parent_ids.size() + p.child_ids.size() + p.spouse_ids.size() + p.sibling_ids.size();
  }
  g.reserve(profiles.size() + refs / 8, refs * 2);
  for (const auto& p : profiles) g.add_vertex(vertex_from_profile(p));

  // Relationship facts already materialised; keyed by (child, parent) or by
  // the unordered pair for symmetric types.
  std::unordered_set<std::uint64_t> parent_facts;
  std::unordered_set<std::uint64_t> spouse_facts;
  std::unordered_set<std::uint64_t> sibling_facts;
  parent_facts.reserve(refs / 2);
  spouse_facts.reserve(refs / 4);
  sibling_facts.reserve(refs / 2);
  BuildReport local;
  BuildReport& rep = report ? *report : local;

  auto child_birth = [&](VertexIndex child) { return g.vertex(child).birth; };

  for (VertexIndex u = 0; u < profiles.size(); ++u) {
    const auto& p = profiles[u];
    const std::pair<const std::vector<std::string>*, LinkType> lists[] = {
        {&p.parent_ids, LinkType::Parent},
        {&p.child_ids, LinkType::Child},
        {&p.spouse_ids, LinkType::Spouse},
        {&p.sibling_ids, LinkType::Sibling},
    };
    for (const auto& [ids, type] : lists) {
      for (const auto& ref : *ids) {
        if (ref == p.id) {
          ++rep.self_references_dropped;
          rep.warnings.push_back("dropped self reference on '" + p.id + "'");
          continue;
        }
        auto target = g.find(ref);
        if (!target) {
          std::string pid = placeholder_id(p.id, type, ref);
          if (g.find(pid)) continue;  // same reference repeated in one list
          Vertex placeholder;
          placeholder.id = std::move(pid);
          placeholder.placeholder = true;
          const auto v = g.add_vertex(std::move(placeholder));
          ++rep.placeholders;
          g.add_link_pair(u, v, type, std::nullopt);
          continue;
        }
        const VertexIndex v = *target;
        switch (type) {
          case LinkType::Parent:
            if (parent_facts.insert(ordered_key(u, v)).second) {
              g.add_link_pair(u, v, type, child_birth(u));
            }
            break;
          case LinkType::Child:
            if (parent_facts.insert(ordered_key(v, u)).second) {
              g.add_link_pair(u, v, type, child_birth(v));
            }
            break;
          case LinkType::Spouse:
            if (spouse_facts.insert(unordered_key(u, v)).second) {
              g.add_link_pair(u, v, type, std::nullopt);
            }
            break;
          case LinkType::Sibling:
            if (sibling_facts.insert(unordered_key(u, v)).second) {
              g.add_link_pair(u, v, type, std::nullopt);
            }
            break;
        }
      }
    }
  }
  g.finalize();
  return g;
}

CleanReport clean_inconsistent(Multigraph& g) {
  CleanReport report;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& vertex = g.vertex(v);
    const auto age = lifespan_years(vertex.birth, vertex.death);
    if (!age) continue;
    if (*age < 0.0) {
      report.negative_age_ids.push_back(vertex.id);
    } else if (*age > kMaxAgeYears) {
      report.over_max_age_ids.push_back(vertex.id);
    } else if (*age < kMinParentAgeYears && !g.children_of(v).empty()) {
      report.child_under_five_ids.push_back(vertex.id);
    } else {
      continue;
    }
    g.erase_dates(v);
  }
  report.negative_age_count = report.negative_age_ids.size();
  report.over_max_age_count = report.over_max_age_ids.size();
  report.child_under_five_count = report.child_under_five_ids.size();
  return report;
}

std::size_t estimate_distinct_private(const Multigraph& g) {
  std::array<std::size_t, kLinkTypeCount> per_type{};
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (!g.vertex(v).placeholder) continue;
    for (auto t : kAllLinkTypes) {
      if (!g.targets(v, t).empty()) {
        ++per_type[static_cast<std::size_t>(t)];
        break;
      }
    }
  }
  std::size_t total = 0;
  for (auto t : kAllLinkTypes) {
    const std::size_t n = per_type[static_cast<std::size_t>(t)];
    const std::size_t divisor = t == LinkType::Child ? 2 : 1;
    total += (n + divisor - 1) / divisor;
  }
  return total;
}

}  // namespace lifegraph
