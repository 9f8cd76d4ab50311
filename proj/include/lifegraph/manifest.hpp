#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <ostream>
#include <streambuf>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace lifegraph {

inline constexpr std::string_view kToolVersion = "1.0.0";

/// Incremental SHA-256.
class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(const void* data, std::size_t size);
  /// Lowercase hex digest; the object cannot be updated afterwards.
  std::string hex_digest();

 private:
  struct State;
  std::unique_ptr<State> state_;
};

std::string sha256_hex(std::string_view data);
std::string sha256_file(const std::filesystem::path& path);

/// Output stream that forwards to another stream and hashes what passes
/// through, so stdout outputs can be checksummed without buffering them.
class HashingOstream : public std::ostream {
 public:
  explicit HashingOstream(std::ostream& target);
  ~HashingOstream() override;

  std::string hex_digest();
  std::uint64_t bytes() const noexcept;

 private:
  class Buffer;
  std::unique_ptr<Buffer> buffer_;
};

/// Input stream that reads from another stream and hashes every byte it
/// pulls through. drain() consumes whatever the reader left unread so the
/// digest covers the whole source.
class HashingIstream : public std::istream {
 public:
  explicit HashingIstream(std::istream& source);
  ~HashingIstream() override;

  void drain();
  std::string hex_digest();
  std::uint64_t bytes() const noexcept;

 private:
  class Buffer;
  std::unique_ptr<Buffer> buffer_;
};

struct ManifestEntry {
  std::string path;  // "-" for standard input/output
  std::string sha256;
  std::uint64_t bytes = 0;
};

/// Record of one CLI run. Contains no timestamps or host details, so equal
/// runs produce byte-identical manifests.
struct RunManifest {
  std::string subcommand;
  std::vector<std::string> arguments;
  std::vector<ManifestEntry> inputs;
  std::vector<ManifestEntry> outputs;
  std::optional<nlohmann::ordered_json> dataset;
  std::optional<std::uint64_t> seed;
  std::string tool_version = std::string(kToolVersion);
};

nlohmann::ordered_json to_json(const RunManifest& manifest);
void write_manifest(const std::filesystem::path& path, const RunManifest& manifest);

}  // namespace lifegraph
