#include "cli.hpp"

#include <iostream>
#include <sstream>

#include "lifegraph/country.hpp"
#include "lifegraph/error.hpp"

namespace lifegraph::cli {

struct Invocation::InputSlot {
  std::string path;
  std::unique_ptr<std::ifstream> file;
  std::unique_ptr<HashingIstream> stream;
};

struct Invocation::OutputSlot {
  std::string path;
  std::unique_ptr<std::ofstream> file;
  std::unique_ptr<HashingOstream> stream;
};

Invocation::Invocation(std::string subcommand, std::vector<std::string> arguments) {
  manifest_.subcommand = std::move(subcommand);
  manifest_.arguments = std::move(arguments);
}

Invocation::Invocation(Invocation&&) noexcept = default;
Invocation::~Invocation() = default;

std::istream& Invocation::open_input(const std::string& path) {
  auto slot = std::make_unique<InputSlot>();
  slot->path = path;
  if (path == "-") {
    slot->stream = std::make_unique<HashingIstream>(std::cin);
  } else {
    slot->file = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*slot->file) throw IoError("cannot open '" + path + "'");
    slot->stream = std::make_unique<HashingIstream>(*slot->file);
  }
  inputs_.push_back(std::move(slot));
  return *inputs_.back()->stream;
}

std::ostream& Invocation::open_output(const std::string& path) {
  auto slot = std::make_unique<OutputSlot>();
  slot->path = path;
  if (path == "-") {
    slot->stream = std::make_unique<HashingOstream>(std::cout);
  } else {
    slot->file = std::make_unique<std::ofstream>(path, std::ios::binary | std::ios::trunc);
    if (!*slot->file) throw IoError("cannot write '" + path + "'");
    slot->stream = std::make_unique<HashingOstream>(*slot->file);
  }
  outputs_.push_back(std::move(slot));
  return *outputs_.back()->stream;
}

void Invocation::add_output_file(const std::filesystem::path& path) { output_files_.push_back(path); }
void Invocation::add_input_file(const std::filesystem::path& path) { input_files_.push_back(path); }

void Invocation::finish(const std::string& manifest_path) {
  for (auto& in : inputs_) {
    manifest_.inputs.push_back({in->path, in->stream->hex_digest(), in->stream->bytes()});
  }
  for (const auto& p : input_files_) {
    manifest_.inputs.push_back({p.string(), sha256_file(p), std::filesystem::file_size(p)});
  }
  for (auto& out : outputs_) {
    out->stream->flush();
    if (!*out->stream || (out->file && !out->file->flush())) {
      throw IoError("error writing '" + out->path + "'");
    }
    manifest_.outputs.push_back({out->path, out->stream->hex_digest(), out->stream->bytes()});
  }
  if (std::cout.fail()) throw IoError("error writing standard output");
  for (const auto& p : output_files_) {
    manifest_.outputs.push_back({p.string(), sha256_file(p), std::filesystem::file_size(p)});
  }
  if (!manifest_path.empty()) write_manifest(manifest_path, manifest_);
}

void add_common_options(CLI::App* app, Context& ctx) {
  app->add_option("--threads", ctx.common.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  app->add_option("--manifest", ctx.common.manifest,
                  "Write a JSON run manifest with input/output SHA-256 checksums");
}

void set_action(CLI::App* app, Context& ctx, std::string name, Action fn) {
  add_common_options(app, ctx);
  app->callback([&ctx, name = std::move(name), fn = std::move(fn)] {
    ctx.subcommand = name;
    ctx.action = fn;
  });
}

void add_dataset_options(CLI::App* app, DatasetOptions& o, const std::string& default_name) {
  o.name = default_name;
  auto* g = app->add_option_group("dataset", "Dataset selection (see the list below)");
  g->add_option("--dataset", o.name, "Named dataset")->capture_default_str();
  g->add_option("--filter-country", o.country, "Require this birth country (e.g. US)");
  g->add_option("--filter-gender", o.gender, "Require this gender (male|female)");
  g->add_option("--min-age", o.min_age, "Require age_of_death >= this value");
  g->add_flag("--married", o.married, "Require at least one spouse");
  g->add_option("--require", o.require, "Require this feature to be present");
  g->add_flag("--no-missing", o.no_missing, "Require every column and a known gender");
  g->add_option("--max-birth-year", o.max_birth_year, "Require birth_year <= this value");
  app->footer(dataset_help());
}

ResolvedDataset resolve_dataset(const DatasetOptions& o) {
  ResolvedDataset out;
  const auto named = dataset_by_name(o.name);
  if (!named) throw CLI::ValidationError("--dataset", "unknown dataset '" + o.name + "'");
  out.spec = *named;
  out.label = o.name;
  bool refined = false;
  if (!o.country.empty()) {
    auto c = parse_country_tag(o.country);
    if (!c) c = normalize_country(std::string_view(o.country));
    if (!c) throw CLI::ValidationError("--filter-country", "unknown country '" + o.country + "'");
    out.spec.country = *c;
    refined = true;
  }
  if (!o.gender.empty()) {
    const auto g = parse_gender(o.gender);
    if (!g || *g == Gender::Unknown) {
      throw CLI::ValidationError("--filter-gender", "expected male or female");
    }
    out.spec.gender = *g;
    refined = true;
  }
  if (o.min_age) {
    out.spec.min_age_of_death = *o.min_age;
    refined = true;
  }
  if (o.married) {
    out.spec.require_married = true;
    refined = true;
  }
  if (!o.require.empty()) {
    const auto f = parse_feature(o.require);
    if (!f) throw CLI::ValidationError("--require", "unknown feature '" + o.require + "'");
    out.spec.require_feature_present = *f;
    refined = true;
  }
  if (o.no_missing) {
    out.spec.require_no_missing = true;
    refined = true;
  }
  if (o.max_birth_year) {
    out.spec.max_birth_year = *o.max_birth_year;
    refined = true;
  }
  if (refined) out.label += "+filters";
  return out;
}

nlohmann::ordered_json ResolvedDataset::to_json() const {
  return {{"name", label}, {"predicates", describe(spec)}};
}

std::string dataset_help() {
  std::ostringstream s;
  s << "Named datasets:\n";
  for (const auto& d : named_datasets()) {
    s << "  " << d.name;
    for (std::size_t i = d.name.size(); i < 22; ++i) s << ' ';
    s << ' ' << describe(d.spec) << '\n';
  }
  s << "  <feature>-10, <feature>-50\n"
    << "                         the feature present and age_of_death >= 10 / 50\n";
  return s.str();
}

FeatureTable read_table(Invocation& run, const std::string& path) {
  return read_feature_csv(run.open_input(path));
}

void add_format_option(CLI::App* app, Format& format, Format default_format) {
  format = default_format;
  app->add_option("--format", format, "Output format: csv or json")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"csv", Format::Csv},
                                                                       {"json", Format::Json}})
                      .description(""))
      ->option_text("csv|json")
      ->default_str(default_format == Format::Csv ? "csv" : "json");
}

}  // namespace lifegraph::cli
