#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "umfw/cache.hpp"

using namespace umfw;

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("cache round trip, miss, and eviction of corrupted entries") {
  std::string dir = (std::filesystem::temp_directory_path() / "umfw_cache_test").string();
  std::filesystem::remove_all(dir);
  CertificateCache cache(dir);

  std::string key = CertificateCache::make_key("op", "inputs");
  CHECK_FALSE(cache.get(key).has_value());

  std::string payload = "{\"verdict\": \"positive\"}\n";
  cache.put(key, payload, "12 nodes");
  auto got = cache.get(key);
  REQUIRE(got.has_value());
  CHECK(*got == payload);

  // corrupt the entry on disk: the cache must evict it, not return it
  {
    std::ofstream out(dir + "/" + key + ".json", std::ios::trunc);
    out << "{\"payload\": \"tampered\", \"digest\": \"0000\"}";
  }
  CHECK_FALSE(cache.get(key).has_value());
  CHECK_FALSE(std::filesystem::exists(dir + "/" + key + ".json"));

  std::filesystem::remove_all(dir);
}

TEST_CASE("keys are pure functions of the inputs") {
  CHECK(CertificateCache::make_key("a", "b") == CertificateCache::make_key("a", "b"));
  CHECK(CertificateCache::make_key("a", "b") != CertificateCache::make_key("a", "c"));
  CHECK(CertificateCache::make_key("x|y", "z") != CertificateCache::make_key("x", "y|z"));
}
