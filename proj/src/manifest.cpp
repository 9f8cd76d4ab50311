#include "lifegraph/manifest.hpp"

#include <array>
#include <fstream>

#include <openssl/evp.h>

#include "lifegraph/error.hpp"

namespace lifegraph {

struct Sha256::State {
  EVP_MD_CTX* ctx = nullptr;
  bool finished = false;
};

Sha256::Sha256() : state_(std::make_unique<State>()) {
  state_->ctx = EVP_MD_CTX_new();
  if (!state_->ctx || EVP_DigestInit_ex(state_->ctx, EVP_sha256(), nullptr) != 1) {
    throw Error("cannot initialise SHA-256");
  }
}

Sha256::~Sha256() { EVP_MD_CTX_free(state_->ctx); }

void Sha256::update(const void* data, std::size_t size) {
  if (state_->finished) throw Error("SHA-256 updated after digest");
  if (size > 0 && EVP_DigestUpdate(state_->ctx, data, size) != 1) throw Error("SHA-256 update failed");
}

std::string Sha256::hex_digest() {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int length = 0;
  if (state_->finished || EVP_DigestFinal_ex(state_->ctx, digest.data(), &length) != 1) {
    throw Error("SHA-256 finalisation failed");
  }
  state_->finished = true;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(length * 2);
  for (unsigned int i = 0; i < length; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex_digest();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  Sha256 h;
  std::array<char, 1 << 16> buf{};
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return h.hex_digest();
}

class HashingOstream::Buffer : public std::streambuf {
 public:
  explicit Buffer(std::streambuf* target) : target_(target) {
    setp(storage_.data(), storage_.data() + storage_.size());
  }

  Sha256 hash;
  std::uint64_t bytes = 0;

 protected:
  int_type overflow(int_type ch) override {
    if (!drain()) return traits_type::eof();
    if (!traits_type::eq_int_type(ch, traits_type::eof())) {
      *pptr() = traits_type::to_char_type(ch);
      pbump(1);
    }
    return traits_type::not_eof(ch);
  }

  int sync() override {
    if (!drain()) return -1;
    return target_->pubsync();
  }

 private:
  bool drain() {
    const auto n = pptr() - pbase();
    if (n > 0) {
      if (target_->sputn(pbase(), n) != n) return false;
      hash.update(pbase(), static_cast<std::size_t>(n));
      bytes += static_cast<std::uint64_t>(n);
    }
    setp(storage_.data(), storage_.data() + storage_.size());
    return true;
  }

  std::streambuf* target_;
  std::array<char, 1 << 16> storage_{};
};

HashingOstream::HashingOstream(std::ostream& target)
    : std::ostream(nullptr), buffer_(std::make_unique<Buffer>(target.rdbuf())) {
  rdbuf(buffer_.get());
}

HashingOstream::~HashingOstream() {
  flush();
  rdbuf(nullptr);
}

std::string HashingOstream::hex_digest() {
  flush();
  return buffer_->hash.hex_digest();
}

std::uint64_t HashingOstream::bytes() const noexcept { return buffer_->bytes; }

class HashingIstream::Buffer : public std::streambuf {
 public:
  explicit Buffer(std::streambuf* source) : source_(source) {}

  Sha256 hash;
  std::uint64_t bytes = 0;

  void drain() {
    while (!traits_type::eq_int_type(underflow(), traits_type::eof())) {
      setg(storage_.data(), egptr(), egptr());
    }
  }

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    const auto n = source_->sgetn(storage_.data(), static_cast<std::streamsize>(storage_.size()));
    if (n <= 0) return traits_type::eof();
    hash.update(storage_.data(), static_cast<std::size_t>(n));
    bytes += static_cast<std::uint64_t>(n);
    setg(storage_.data(), storage_.data(), storage_.data() + n);
    return traits_type::to_int_type(*gptr());
  }

 private:
  std::streambuf* source_;
  std::array<char, 1 << 16> storage_{};
};

HashingIstream::HashingIstream(std::istream& source)
    : std::istream(nullptr), buffer_(std::make_unique<Buffer>(source.rdbuf())) {
  rdbuf(buffer_.get());
}

HashingIstream::~HashingIstream() { rdbuf(nullptr); }

void HashingIstream::drain() { buffer_->drain(); }

std::string HashingIstream::hex_digest() {
  drain();
  return buffer_->hash.hex_digest();
}

std::uint64_t HashingIstream::bytes() const noexcept { return buffer_->bytes; }

nlohmann::ordered_json to_json(const RunManifest& m) {
  auto entries = [](const std::vector<ManifestEntry>& list) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : list) {
      arr.push_back({{"path", e.path}, {"sha256", e.sha256}, {"bytes", e.bytes}});
    }
    return arr;
  };
  nlohmann::ordered_json j;
  j["tool"] = "lifegraph";
  j["tool_version"] = m.tool_version;
  j["subcommand"] = m.subcommand;
  j["arguments"] = m.arguments;
  j["inputs"] = entries(m.inputs);
  j["dataset"] = m.dataset ? *m.dataset : nlohmann::ordered_json(nullptr);
  j["seed"] = m.seed ? nlohmann::ordered_json(*m.seed) : nlohmann::ordered_json(nullptr);
  j["outputs"] = entries(m.outputs);
  return j;
}

void write_manifest(const std::filesystem::path& path, const RunManifest& manifest) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write manifest '" + path.string() + "'");
  out << to_json(manifest).dump(2) << '\n';
  if (!out) throw IoError("error writing manifest '" + path.string() + "'");
}

}  // namespace lifegraph
