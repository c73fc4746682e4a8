#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gll {

// Content-addressed scalar cache. Keys hash the canonical parameter string
// (operation, every numeric knob, seed, artifact version); entries store the
// key string itself plus hexfloat-encoded doubles, so a hit reproduces a
// fresh computation bitwise and a stale or corrupt entry is detectable.
class ResultCache {
 public:
  ResultCache() = default;
  explicit ResultCache(std::string directory);

  bool enabled() const { return !dir_.empty(); }

  std::optional<std::map<std::string, double>> lookup(const std::string& canonical_key);
  void store(const std::string& canonical_key, const std::map<std::string, double>& values);

  int hits = 0;
  int misses = 0;
  int evictions = 0;

  static std::uint64_t fnv1a(const std::string& s);

 private:
  std::string dir_;
  std::string path_for(const std::string& canonical_key) const;
};

std::string hexfloat(double x);
double from_hexfloat(const std::string& s);

}  // namespace gll
