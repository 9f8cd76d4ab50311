#include "lifegraph/graph_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>

#include "lifegraph/country.hpp"
#include "lifegraph/csv.hpp"
#include "lifegraph/error.hpp"

namespace lifegraph {
namespace {

constexpr std::string_view kBundleHeader = "#lifegraph-graph 1";
const std::vector<std::string> kVertexColumns = {
    "id",         "placeholder", "private",        "name",          "gender",
    "birth_date", "death_date",  "birth_location", "death_location"};
const std::vector<std::string> kLinkColumns = {"u", "v", "type", "created"};

void optional_field(CsvWriter& w, const std::optional<std::string>& s) {
  if (s) {
    w.field(*s);
  } else {
    w.empty();
  }
}

void optional_field(CsvWriter& w, const std::optional<PartialDate>& d) {
  if (d) {
    w.field(format_date(*d));
  } else {
    w.empty();
  }
}

bool parse_flag(const std::string& s) {
  if (s == "1" || s == "true") return true;
  if (s == "0" || s == "false" || s.empty()) return false;
  throw DataError("invalid boolean '" + s + "'");
}

std::optional<PartialDate> parse_date_field(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto d = parse_date(s);
  if (!d) throw DataError("invalid date '" + s + "'");
  return d;
}

std::optional<std::string> optional_text(std::string s) {
  if (s.empty()) return std::nullopt;
  return s;
}

Vertex vertex_from_row(std::vector<std::string>& row, std::size_t line) {
  if (row.size() != kVertexColumns.size()) {
    throw DataError("vertices row " + std::to_string(line) + ": expected " +
                    std::to_string(kVertexColumns.size()) + " fields");
  }
  Vertex v;
  v.id = std::move(row[0]);
  v.placeholder = parse_flag(row[1]);
  v.is_private = parse_flag(row[2]);
  v.full_name = std::move(row[3]);
  auto gender = parse_gender(row[4]);
  if (!gender) throw DataError("vertices row " + std::to_string(line) + ": bad gender");
  v.gender = *gender;
  v.birth = parse_date_field(row[5]);
  v.death = parse_date_field(row[6]);
  v.birth_location = optional_text(std::move(row[7]));
  v.death_location = optional_text(std::move(row[8]));
  return v;
}

Link link_from_row(const Multigraph& g, const std::vector<std::string>& row, std::size_t line) {
  if (row.size() != kLinkColumns.size()) {
    throw DataError("links row " + std::to_string(line) + ": expected 4 fields");
  }
  auto u = g.find(row[0]);
  auto v = g.find(row[1]);
  auto type = parse_link_type(row[2]);
  if (!u || !v) throw DataError("links row " + std::to_string(line) + ": unknown endpoint");
  if (!type) throw DataError("links row " + std::to_string(line) + ": bad link type");
  return {*u, *v, *type, parse_date_field(row[3])};
}

void expect_header(CsvReader& reader, const std::vector<std::string>& columns,
                   std::string_view what) {
  std::vector<std::string> row;
  if (!reader.next(row) || row != columns) {
    throw DataError(std::string(what) + ": unexpected CSV header");
  }
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

GraphMetadata graph_metadata(const Multigraph& g, const CleanReport* clean) {
  GraphMetadata meta;
  meta.vertices = g.vertex_count();
  meta.links = g.link_count();
  std::vector<bool> us_born(g.vertex_count(), false);
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& vertex = g.vertex(v);
    if (vertex.placeholder) {
      ++meta.placeholder_vertices;
      continue;
    }
    ++meta.public_profiles;
    if (vertex.birth_location &&
        normalize_country(*vertex.birth_location) == Country::UnitedStates) {
      us_born[v] = true;
      ++meta.us_born_vertices;
    }
  }
  for (const auto& link : g.links()) {
    ++meta.links_by_type[static_cast<std::size_t>(link.type)];
    if (us_born[link.u] || us_born[link.v]) ++meta.us_born_links;
  }
  meta.estimated_distinct_private = estimate_distinct_private(g);
  if (clean) meta.clean = *clean;
  return meta;
}

nlohmann::ordered_json to_json(const GraphMetadata& meta) {
  nlohmann::ordered_json j;
  j["format"] = "lifegraph-graph";
  j["version"] = 1;
  j["vertices"] = meta.vertices;
  j["links"] = meta.links;
  j["public_profiles"] = meta.public_profiles;
  j["placeholder_vertices"] = meta.placeholder_vertices;
  j["estimated_distinct_private"] = meta.estimated_distinct_private;
  auto& by_type = j["links_by_type"];
  for (auto t : kAllLinkTypes) {
    by_type[std::string(link_type_name(t))] = meta.links_by_type[static_cast<std::size_t>(t)];
  }
  j["us_born_vertices"] = meta.us_born_vertices;
  j["us_born_links"] = meta.us_born_links;
  if (meta.clean) {
    j["clean"] = {{"negative_age", meta.clean->negative_age_count},
                  {"over_max_age", meta.clean->over_max_age_count},
                  {"child_under_five", meta.clean->child_under_five_count}};
  }
  return j;
}

void write_vertices_csv(std::ostream& out, const Multigraph& g) {
  CsvWriter w(out);
  w.row(kVertexColumns);
  for (const auto& v : g.vertices()) {
    w.field(v.id)
        .field(v.placeholder ? "1" : "0")
        .field(v.is_private ? "1" : "0")
        .field(v.full_name)
        .field(gender_name(v.gender));
    optional_field(w, v.birth);
    optional_field(w, v.death);
    optional_field(w, v.birth_location);
    optional_field(w, v.death_location);
    w.end_row();
  }
}

void write_links_csv(std::ostream& out, const Multigraph& g) {
  CsvWriter w(out);
  w.row(kLinkColumns);
  for (const auto& link : g.links()) {
    w.field(g.vertex(link.u).id).field(g.vertex(link.v).id).field(link_type_name(link.type));
    optional_field(w, link.created);
    w.end_row();
  }
}

void write_graph_dir(const std::filesystem::path& dir, const Multigraph& g,
                     const GraphMetadata& meta) {
  std::filesystem::create_directories(dir);
  auto open = [](const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write '" + p.string() + "'");
    return out;
  };
  {
    auto out = open(dir / "vertices.csv");
    write_vertices_csv(out, g);
    if (!out) throw IoError("write failed");
  }
  {
    auto out = open(dir / "links.csv");
    write_links_csv(out, g);
    if (!out) throw IoError("write failed");
  }
  auto out = open(dir / "graph.json");
  out << to_json(meta).dump(2) << '\n';
  if (!out) throw IoError("write failed");
}

void write_graph_bundle(std::ostream& out, const Multigraph& g, const GraphMetadata& meta) {
  out << kBundleHeader << '\n';
  out << "#meta " << to_json(meta).dump() << '\n';
  out << "#vertices\n";
  write_vertices_csv(out, g);
  out << "#links\n";
  write_links_csv(out, g);
  if (!out) throw IoError("error while writing graph bundle");
}

Multigraph read_graph_bundle(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kBundleHeader) {
    throw DataError("not a lifegraph graph bundle");
  }
  if (!std::getline(in, line) || !line.starts_with("#meta ")) {
    throw DataError("graph bundle: missing #meta line");
  }
  if (!std::getline(in, line) || line != "#vertices") {
    throw DataError("graph bundle: missing #vertices section");
  }
  Multigraph g;
  CsvReader reader(in);
  expect_header(reader, kVertexColumns, "graph bundle vertices");
  std::vector<std::string> row;
  bool in_links = false;
  while (reader.next(row)) {
    if (row.size() == 1 && row[0] == "#links") {
      in_links = true;
      break;
    }
    g.add_vertex(vertex_from_row(row, reader.line()));
  }
  if (!in_links) throw DataError("graph bundle: missing #links section");
  expect_header(reader, kLinkColumns, "graph bundle links");
  while (reader.next(row)) g.add_link(link_from_row(g, row, reader.line()));
  g.finalize();
  return g;
}

Multigraph read_graph_dir(const std::filesystem::path& dir) {
  Multigraph g;
  std::vector<std::string> row;
  {
    auto in = open_input(dir / "vertices.csv");
    CsvReader reader(in);
    expect_header(reader, kVertexColumns, "vertices.csv");
    while (reader.next(row)) g.add_vertex(vertex_from_row(row, reader.line()));
  }
  auto in = open_input(dir / "links.csv");
  CsvReader reader(in);
  expect_header(reader, kLinkColumns, "links.csv");
  while (reader.next(row)) g.add_link(link_from_row(g, row, reader.line()));
  g.finalize();
  return g;
}

}  // namespace lifegraph
