// ingest, graph, features and synth subcommands.

#include <iostream>

#include "cli.hpp"
#include "lifegraph/csv.hpp"
#include "lifegraph/error.hpp"
#include "lifegraph/graph.hpp"
#include "lifegraph/graph_io.hpp"
#include "lifegraph/ingest.hpp"
#include "lifegraph/synth.hpp"

namespace lifegraph::cli {
namespace {

const std::map<std::string, SourceFormat> kSourceFormats = {
    {"jsonl", SourceFormat::JsonLines}, {"json", SourceFormat::JsonLines},
    {"gedcom", SourceFormat::Gedcom}, {"ged", SourceFormat::Gedcom}};

void report_parse(const ParseReport& r) {
  for (const auto& issue : r.issues) {
    std::cerr << "line " << issue.line << ": " << issue_kind_name(issue.kind);
    if (!issue.id.empty()) std::cerr << " [" << issue.id << ']';
    std::cerr << ": " << issue.message << '\n';
  }
  std::cerr << "parsed " << r.records << " profiles (" << r.malformed << " malformed, "
            << r.duplicates << " duplicates, " << r.self_references << " self-references, "
            << r.unparsed_dates << " unparsed dates)\n";
}

struct IngestOptions {
  std::string input = "-";
  SourceFormat from = SourceFormat::JsonLines;
  std::string out = "-";
};

void add_ingest(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<IngestOptions>();
  auto* cmd = app.add_subcommand("ingest", "Parse JSON-lines or GEDCOM profiles into canonical JSON lines");
  cmd->add_option("input", o->input, "Source file, - for standard input")->capture_default_str();
  cmd->add_option("--from", o->from, "Source format: jsonl or gedcom")
      ->transform(CLI::CheckedTransformer(kSourceFormats).description(""))
      ->option_text("jsonl|gedcom")
      ->default_str("jsonl");
  cmd->add_option("--out", o->out, "Output file, - for standard output")->capture_default_str();
  set_action(cmd, ctx, "ingest", [&ctx, o] {
    auto run = ctx.invocation();
    const auto parsed = parse_profiles(run.open_input(o->input), o->from);
    report_parse(parsed.report);
    write_json_lines(run.open_output(o->out), parsed.profiles);
    run.finish(ctx.common.manifest);
  });
}

struct GraphBuildOptions {
  std::string input = "-";
  SourceFormat from = SourceFormat::JsonLines;
  bool no_clean = false;
  std::string out = "-";
  std::string out_dir;
};

void add_graph(CLI::App& app, Context& ctx) {
  auto* graph = app.add_subcommand("graph", "Build and inspect the kinship multigraph");
  graph->require_subcommand(1);

  auto b = std::make_shared<GraphBuildOptions>();
  auto* build = graph->add_subcommand("build", "Build a graph from profiles and clean inconsistent dates");
  build->add_option("input", b->input, "Profiles file, - for standard input")->capture_default_str();
  build->add_option("--from", b->from, "Source format: jsonl or gedcom")
      ->transform(CLI::CheckedTransformer(kSourceFormats).description(""))
      ->option_text("jsonl|gedcom")
      ->default_str("jsonl");
  build->add_flag("--no-clean", b->no_clean, "Keep dates that fail the consistency rules");
  auto* out_opt = build->add_option("--out", b->out, "Graph bundle file, - for standard output")
                      ->capture_default_str();
  build->add_option("--out-dir", b->out_dir, "Write vertices.csv, links.csv and graph.json here")
      ->excludes(out_opt);
  set_action(build, ctx, "graph build", [&ctx, b] {
    auto run = ctx.invocation();
    auto parsed = parse_profiles(run.open_input(b->input), b->from);
    report_parse(parsed.report);
    BuildReport report;
    auto g = build_multigraph(parsed.profiles, &report);
    parsed.profiles.clear();
    parsed.profiles.shrink_to_fit();
    for (const auto& w : report.warnings) std::cerr << "warning: " << w << '\n';
    std::optional<CleanReport> clean;
    if (!b->no_clean) {
      clean = clean_inconsistent(g);
      std::cerr << "cleaned dates: " << clean->negative_age_count << " negative age, "
                << clean->over_max_age_count << " over maximum age, "
                << clean->child_under_five_count << " parent under five\n";
    }
    const auto meta = graph_metadata(g, clean ? &*clean : nullptr);
    std::cerr << "graph: " << meta.vertices << " vertices, " << meta.links << " links, "
              << meta.placeholder_vertices << " placeholders\n";
    if (!b->out_dir.empty()) {
      write_graph_dir(b->out_dir, g, meta);
      for (const char* name : {"vertices.csv", "links.csv", "graph.json"}) {
        run.add_output_file(std::filesystem::path(b->out_dir) / name);
      }
    } else {
      write_graph_bundle(run.open_output(b->out), g, meta);
    }
    run.finish(ctx.common.manifest);
  });

  struct StatsOptions {
    std::string input = "-";
    std::string graph_dir;
    Format format = Format::Json;
    std::string out = "-";
  };
  auto s = std::make_shared<StatsOptions>();
  auto* stats = graph->add_subcommand("stats", "Summary counts of a graph");
  auto* in_opt = stats->add_option("input", s->input, "Graph bundle, - for standard input")
                     ->capture_default_str();
  stats->add_option("--graph-dir", s->graph_dir, "Read a graph directory instead")->excludes(in_opt);
  add_format_option(stats, s->format, Format::Json);
  stats->add_option("--out", s->out, "Output file, - for standard output")->capture_default_str();
  set_action(stats, ctx, "graph stats", [&ctx, s] {
    auto run = ctx.invocation();
    Multigraph g;
    if (!s->graph_dir.empty()) {
      g = read_graph_dir(s->graph_dir);
      for (const char* name : {"vertices.csv", "links.csv"}) {
        run.add_input_file(std::filesystem::path(s->graph_dir) / name);
      }
    } else {
      g = read_graph_bundle(run.open_input(s->input));
    }
    const auto meta = to_json(graph_metadata(g));
    auto& out = run.open_output(s->out);
    if (s->format == Format::Json) {
      out << meta.dump(2) << '\n';
    } else {
      CsvWriter w(out);
      w.row({"field", "value"});
      for (const auto& [key, value] : meta.items()) {
        if (value.is_object()) {
          for (const auto& [sub, v] : value.items()) w.row({key + "." + sub, v.dump()});
        } else if (!value.is_null()) {
          w.row({key, value.dump()});
        }
      }
    }
    run.finish(ctx.common.manifest);
  });
}

struct FeatureOptions {
  std::string input = "-";
  std::string graph_dir;
  std::string set = "full";
  bool zero_fill = false;
  Format format = Format::Csv;
  std::string out = "-";
};

void add_features(CLI::App& app, Context& ctx) {
  auto* features = app.add_subcommand("features", "Per-vertex feature extraction");
  features->require_subcommand(1);
  auto o = std::make_shared<FeatureOptions>();
  auto* extract = features->add_subcommand("extract", "Extract a feature table from a graph");
  auto* in_opt = extract->add_option("input", o->input, "Graph bundle, - for standard input")
                     ->capture_default_str();
  extract->add_option("--graph-dir", o->graph_dir, "Read a graph directory instead")->excludes(in_opt);
  extract->add_option("--set", o->set, "Feature set: full, all-numeric, heritage or nuclear")
      ->check([](const std::string& v) {
        return parse_feature_set(v) ? std::string() : "unknown feature set '" + v + "'";
      })
      ->capture_default_str();
  extract->add_flag("--zero-fill", o->zero_fill, "Write 0 for aggregates over empty kin sets");
  add_format_option(extract, o->format, Format::Csv);
  extract->add_option("--out", o->out, "Output file, - for standard output")->capture_default_str();
  set_action(extract, ctx, "features extract", [&ctx, o] {
    auto run = ctx.invocation();
    Multigraph g;
    if (!o->graph_dir.empty()) {
      g = read_graph_dir(o->graph_dir);
      for (const char* name : {"vertices.csv", "links.csv"}) {
        run.add_input_file(std::filesystem::path(o->graph_dir) / name);
      }
    } else {
      g = read_graph_bundle(run.open_input(o->input));
    }
    const auto table = feature_matrix(g, *parse_feature_set(o->set), ctx.common.threads);
    for (const auto& d : table.diagnostics()) std::cerr << "warning: " << d << '\n';
    auto& out = run.open_output(o->out);
    const FeatureCsvOptions options{o->zero_fill};
    if (o->format == Format::Csv) {
      write_feature_csv(out, table, options);
    } else {
      write_feature_json(out, table, options);
    }
    run.finish(ctx.common.manifest);
  });
}

struct SynthOptions {
  std::string config;
  std::string out = "-";
  std::optional<int> generations, founders, first_birth_year, founder_birth_span;
  std::optional<double> infant_mortality, adult_mode, adult_spread, adult_skew, adult_minimum,
      parent_child_slope, spouse_corr, mean_children, missing_rate, private_rate, us_fraction;
  std::optional<std::uint64_t> seed;
  bool print_config = false;
};

void add_synth(CLI::App& app, Context& ctx) {
  auto o = std::make_shared<SynthOptions>();
  auto* cmd = app.add_subcommand("synth", "Generate a synthetic population as JSON-lines profiles");
  cmd->add_option("--config", o->config, "JSON configuration; flags override its values");
  cmd->add_option("--generations", o->generations, "Generations including founders (default 3)");
  cmd->add_option("--founders", o->founders, "Founder count (default 1000)");
  cmd->add_option("--first-birth-year", o->first_birth_year, "Earliest founder birth year (default 1650)");
  cmd->add_option("--founder-birth-span", o->founder_birth_span, "Founder birth years span (default 25)");
  cmd->add_option("--infant-mortality", o->infant_mortality, "Probability of death before age 1 (default 0.1)");
  cmd->add_option("--adult-mode", o->adult_mode, "Mode of the adult lifespan (default 75)");
  cmd->add_option("--adult-spread", o->adult_spread, "Scale of the adult lifespan (default 18)");
  cmd->add_option("--adult-skew", o->adult_skew, "Skew-normal delta in (-1, 1) (default -0.7)");
  cmd->add_option("--adult-minimum", o->adult_minimum, "Lower clip of adult lifespans (default 15)");
  cmd->add_option("--parent-child-slope", o->parent_child_slope, "Midparent lifespan slope (default 0.1)");
  cmd->add_option("--spouse-corr", o->spouse_corr, "Spouse base lifespan correlation (default 0.2)");
  cmd->add_option("--mean-children", o->mean_children, "Mean children per couple (default 2.5)");
  cmd->add_option("--missing-rate", o->missing_rate, "Fraction of fields masked (default 0)");
  cmd->add_option("--private-rate", o->private_rate, "Fraction of people left private (default 0)");
  cmd->add_option("--us-fraction", o->us_fraction, "Fraction of US locations (default 0.5)");
  cmd->add_option("--seed", o->seed, "Random seed (default 1)");
  cmd->add_flag("--print-config", o->print_config, "Print the effective configuration and exit");
  cmd->add_option("--out", o->out, "Output file, - for standard output")->capture_default_str();
  set_action(cmd, ctx, "synth", [&ctx, o] {
    auto run = ctx.invocation();
    nlohmann::json j = nlohmann::json::object();
    if (!o->config.empty()) {
      auto& in = run.open_input(o->config);
      try {
        in >> j;
      } catch (const nlohmann::json::exception& e) {
        throw DataError("synth config: " + std::string(e.what()));
      }
    }
    auto put = [&j](const char* key, const auto& value) {
      if (value) j[key] = *value;
    };
    put("generations", o->generations);
    put("founders", o->founders);
    put("first_birth_year", o->first_birth_year);
    put("founder_birth_span", o->founder_birth_span);
    put("infant_mortality", o->infant_mortality);
    put("adult_mode", o->adult_mode);
    put("adult_spread", o->adult_spread);
    put("adult_skew", o->adult_skew);
    put("adult_minimum", o->adult_minimum);
    put("parent_child_slope", o->parent_child_slope);
    put("spouse_corr", o->spouse_corr);
    put("mean_children", o->mean_children);
    put("missing_rate", o->missing_rate);
    put("private_rate", o->private_rate);
    put("us_fraction", o->us_fraction);
    put("seed", o->seed);
    const auto cfg = synth_config_from_json(j);
    cfg.validate();
    run.set_seed(cfg.seed);
    auto& out = run.open_output(o->out);
    if (o->print_config) {
      out << to_json(cfg).dump(2) << '\n';
    } else {
      const auto profiles = generate_population(cfg);
      write_json_lines(out, profiles);
      std::cerr << "generated " << profiles.size() << " profiles\n";
    }
    run.finish(ctx.common.manifest);
  });
}

}  // namespace

void register_pipeline_commands(CLI::App& app, Context& ctx) {
  add_ingest(app, ctx);
  add_graph(app, ctx);
  add_features(app, ctx);
  add_synth(app, ctx);
}

}  // namespace lifegraph::cli
