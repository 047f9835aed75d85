#pragma once

#include <optional>
#include <string>

namespace umfw {

// SHA-256 of a byte string, as lowercase hex.
std::string sha256_hex(const std::string& bytes);

// Content-addressed certificate cache.  Keys are pure functions of inputs;
// values round-trip byte-identically.  Writers go through a temporary file
// and an atomic rename, so concurrent processes are safe; a corrupted entry
// is evicted on read.
class CertificateCache {
 public:
  explicit CertificateCache(std::string dir) : dir_(std::move(dir)) {}

  // key: hash of canonical inputs + operation tag + params
  static std::string make_key(const std::string& op_tag, const std::string& canonical_inputs);

  std::optional<std::string> get(const std::string& key) const;
  void put(const std::string& key, const std::string& payload,
           const std::string& meta_stats) const;

 private:
  std::string path_for(const std::string& key) const;
  std::string dir_;
};

}  // namespace umfw
