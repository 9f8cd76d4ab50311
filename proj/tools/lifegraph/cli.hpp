#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lifegraph/datasets.hpp"
#include "lifegraph/features.hpp"
#include "lifegraph/manifest.hpp"

namespace lifegraph::cli {

/// Work of one subcommand, run after parsing succeeds.
using Action = std::function<void()>;

/// Options shared by every subcommand.
struct CommonOptions {
  unsigned threads = 0;
  std::string manifest;
};

/// Input and output streams of one run, hashed as they are used, plus the
/// manifest describing them.
class Invocation {
 public:
  Invocation(std::string subcommand, std::vector<std::string> arguments);
  ~Invocation();
  Invocation(Invocation&&) noexcept;

  /// "-" is standard input.
  std::istream& open_input(const std::string& path);
  /// "-" is standard output.
  std::ostream& open_output(const std::string& path);
  /// Records a file written by other means; hashed at finish().
  void add_output_file(const std::filesystem::path& path);
  void add_input_file(const std::filesystem::path& path);

  void set_dataset(nlohmann::ordered_json dataset) { manifest_.dataset = std::move(dataset); }
  void set_seed(std::uint64_t seed) { manifest_.seed = seed; }

  /// Flushes outputs and writes the manifest when `manifest_path` is set.
  void finish(const std::string& manifest_path);

 private:
  struct InputSlot;
  struct OutputSlot;
  RunManifest manifest_;
  std::vector<std::unique_ptr<InputSlot>> inputs_;
  std::vector<std::unique_ptr<OutputSlot>> outputs_;
  std::vector<std::filesystem::path> input_files_;
  std::vector<std::filesystem::path> output_files_;
};

/// Shared state reachable from every subcommand's action.
struct Context {
  std::vector<std::string> arguments;  // argv[1..]
  CommonOptions common;
  std::string subcommand;
  Action action;

  /// Opens an invocation named after the selected subcommand.
  Invocation invocation() const { return Invocation(subcommand, arguments); }
};

void add_common_options(CLI::App* app, Context& ctx);

/// Registers `fn` as the action of `app`, also recording its path name.
void set_action(CLI::App* app, Context& ctx, std::string name, Action fn);

/// Dataset selection: a named dataset, optionally refined by predicate flags.
struct DatasetOptions {
  std::string name;
  std::string country;
  std::string gender;
  std::optional<double> min_age;
  bool married = false;
  std::string require;
  bool no_missing = false;
  std::optional<int> max_birth_year;
};

void add_dataset_options(CLI::App* app, DatasetOptions& options, const std::string& default_name);

struct ResolvedDataset {
  std::string label;
  DatasetSpec spec;
  nlohmann::ordered_json to_json() const;
};

/// Throws CLI::ValidationError for unknown names and bad predicate values.
ResolvedDataset resolve_dataset(const DatasetOptions& options);

/// Help footer listing the named datasets with their predicates.
std::string dataset_help();

FeatureTable read_table(Invocation& run, const std::string& path);

enum class Format { Csv, Json };
void add_format_option(CLI::App* app, Format& format, Format default_format);

}  // namespace lifegraph::cli
