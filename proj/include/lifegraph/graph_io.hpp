#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>

#include <json.hpp>

#include "lifegraph/graph.hpp"

namespace lifegraph {

/// Summary counts written next to a persisted graph.
struct GraphMetadata {
  std::size_t vertices = 0;
  std::size_t links = 0;
  std::size_t public_profiles = 0;
  std::size_t placeholder_vertices = 0;
  std::size_t estimated_distinct_private = 0;
  std::array<std::size_t, kLinkTypeCount> links_by_type{};
  std::size_t us_born_vertices = 0;
  std::size_t us_born_links = 0;  // links with at least one US-born endpoint
  std::optional<CleanReport> clean;
};

GraphMetadata graph_metadata(const Multigraph& g, const CleanReport* clean = nullptr);
nlohmann::ordered_json to_json(const GraphMetadata& meta);

void write_vertices_csv(std::ostream& out, const Multigraph& g);
void write_links_csv(std::ostream& out, const Multigraph& g);

/// Writes vertices.csv, links.csv and graph.json into `dir` (created if needed).
void write_graph_dir(const std::filesystem::path& dir, const Multigraph& g,
                     const GraphMetadata& meta);

/// Single-stream form: a header line, the metadata JSON on a `#meta` line,
/// then the vertices and links CSV sections after `#vertices` / `#links`
/// marker lines. Used for piping between CLI stages.
void write_graph_bundle(std::ostream& out, const Multigraph& g, const GraphMetadata& meta);

/// Reads either form back; the returned graph is finalized.
Multigraph read_graph_bundle(std::istream& in);
Multigraph read_graph_dir(const std::filesystem::path& dir);

}  // namespace lifegraph
