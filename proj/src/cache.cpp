#include "gll/cache.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "gll/errors.hpp"

namespace gll {

std::string hexfloat(double x) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%a", x);
  return buf;
}

double from_hexfloat(const std::string& s) {
  return std::strtod(s.c_str(), nullptr);
}

std::uint64_t ResultCache::fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

ResultCache::ResultCache(std::string directory) : dir_(std::move(directory)) {
  if (!dir_.empty()) std::filesystem::create_directories(dir_);
}

std::string ResultCache::path_for(const std::string& canonical_key) const {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(canonical_key)));
  return dir_ + "/" + buf + ".json";
}

std::optional<std::map<std::string, double>> ResultCache::lookup(const std::string& key) {
  if (!enabled()) return std::nullopt;
  const std::string path = path_for(key);
  std::ifstream is(path);
  if (!is) {
    ++misses;
    return std::nullopt;
  }
  try {
    nlohmann::json j;
    is >> j;
    if (j.at("key").get<std::string>() != key)
      throw Error("key mismatch");  // hash collision or stale entry
    std::map<std::string, double> values;
    for (const auto& [k, v] : j.at("values").items())
      values[k] = from_hexfloat(v.get<std::string>());
    ++hits;
    return values;
  } catch (const std::exception& e) {
    std::cerr << "warning: evicting corrupt cache entry " << path << " (" << e.what() << ")\n";
    is.close();
    std::error_code ec;
    std::filesystem::remove(path, ec);
    ++evictions;
    ++misses;
    return std::nullopt;
  }
}

void ResultCache::store(const std::string& key, const std::map<std::string, double>& values) {
  if (!enabled()) return;
  nlohmann::ordered_json j;
  j["key"] = key;
  nlohmann::ordered_json v;
  for (const auto& [k, x] : values) v[k] = hexfloat(x);
  j["values"] = v;
  std::ofstream os(path_for(key), std::ios::binary);
  os << j.dump(2);
}

}  // namespace gll
