#pragma once

// Persistent permutation-null cache. One file per key:
//
//   line 1 (ASCII): "spectral-indep-null v<version> n=<N> basis=<name> K=<K>
//                    stat=<name> P=<P> seed=<seed>\n"  (single line)
//   then P little-endian IEEE-754 doubles, ascending.
//
// Files are written to a temporary name and renamed into place, so readers
// never observe a partial entry. Entries that fail validation are rebuilt.

#include <atomic>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <unistd.h>
#include <vector>

#include "spectral_indep/independence.hpp"

namespace spectral_indep {

inline constexpr int kNullFormatVersion = 1;

inline std::string null_header(const NullKey& key, int version = kNullFormatVersion) {
  std::ostringstream os;
  os << "spectral-indep-null v" << version << " n=" << key.n << " basis=" << to_string(key.basis)
     << " K=" << key.order << " stat=" << to_string(key.statistic) << " P=" << key.permutations
     << " seed=" << key.seed << '\n';
  return os.str();
}

inline std::string null_file_name(const NullKey& key, int version = kNullFormatVersion) {
  std::ostringstream os;
  os << "null-v" << version << "-n" << key.n << '-' << to_string(key.basis) << "-K" << key.order << '-'
     << to_string(key.statistic) << "-P" << key.permutations << "-s" << key.seed << ".bin";
  return os.str();
}

inline void write_null_file(const std::filesystem::path& path, const NullModel& model,
                            int version = kNullFormatVersion) {
  static std::atomic<unsigned> counter{0};
  std::filesystem::create_directories(path.parent_path());
  const std::filesystem::path tmp =
      path.string() + ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write null cache file " + tmp.string());
    const std::string header = null_header(model.key, version);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    for (double v : model.samples) {
      const auto bits = std::bit_cast<std::uint64_t>(v);
      char bytes[8];
      for (int b = 0; b < 8; ++b) bytes[b] = static_cast<char>((bits >> (8 * b)) & 0xFFU);
      out.write(bytes, 8);
    }
    if (!out) throw DataError("failed writing null cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

/// Reads and validates a cache file; nullopt if missing, mismatched or corrupt.
inline std::optional<NullModel> read_null_file(const std::filesystem::path& path, const NullKey& key,
                                               int version = kNullFormatVersion) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::string header;
  if (!std::getline(in, header)) return std::nullopt;
  header += '\n';
  if (header != null_header(key, version)) return std::nullopt;
  NullModel model{key, std::vector<double>(key.permutations)};
  for (std::size_t i = 0; i < key.permutations; ++i) {
    unsigned char bytes[8];
    if (!in.read(reinterpret_cast<char*>(bytes), 8)) return std::nullopt;
    std::uint64_t bits = 0;
    for (int b = 0; b < 8; ++b) bits |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    model.samples[i] = std::bit_cast<double>(bits);
    if (!std::isfinite(model.samples[i])) return std::nullopt;
    if (i > 0 && model.samples[i] < model.samples[i - 1]) return std::nullopt;
  }
  if (in.peek() != std::char_traits<char>::eof()) return std::nullopt;
  return model;
}

/// Cache directory: $SPECTRAL_INDEP_CACHE_DIR, else $XDG_CACHE_HOME or
/// ~/.cache, plus "/spectral-indep".
inline std::filesystem::path default_cache_dir() {
  if (const char* dir = std::getenv("SPECTRAL_INDEP_CACHE_DIR"); dir && *dir) return dir;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg)
    return std::filesystem::path(xdg) / "spectral-indep";
  if (const char* home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".cache" / "spectral-indep";
  return std::filesystem::temp_directory_path() / "spectral-indep";
}

/// Memoizing null provider, optionally backed by a directory on disk.
class NullCache {
 public:
  using Warn = std::function<void(const std::string&)>;

  explicit NullCache(std::optional<std::filesystem::path> dir = std::nullopt,
                     int version = kNullFormatVersion, Warn warn = {})
      : dir_(std::move(dir)), version_(version), warn_(std::move(warn)) {
    if (!warn_) warn_ = [](const std::string& msg) { std::cerr << "warning: " << msg << '\n'; };
  }

  std::optional<std::filesystem::path> path_for(const NullKey& key) const {
    if (!dir_) return std::nullopt;
    return *dir_ / null_file_name(key, version_);
  }

  /// Returns the model for `key`, reading or building (and storing) on miss.
  const NullModel& get(const NullKey& key) {
    std::lock_guard lock(mutex_);
    const auto mkey = map_key(key);
    if (auto it = memory_.find(mkey); it != memory_.end()) return it->second;
    if (const auto path = path_for(key)) {
      if (auto model = read_null_file(*path, key, version_)) {
        ++disk_hits_;
        return memory_.emplace(mkey, std::move(*model)).first->second;
      }
      if (std::filesystem::exists(*path)) warn_("null cache entry " + path->string() + " is invalid; rebuilding");
    }
    NullModel model = permutation_null(key);
    ++builds_;
    if (const auto path = path_for(key)) write_null_file(*path, model, version_);
    return memory_.emplace(mkey, std::move(model)).first->second;
  }

  std::size_t builds() const { return builds_; }
  std::size_t disk_hits() const { return disk_hits_; }

 private:
  using MapKey = std::tuple<std::size_t, int, std::size_t, int, std::size_t, std::uint64_t>;
  static MapKey map_key(const NullKey& k) {
    return {k.n, static_cast<int>(k.basis), k.order, static_cast<int>(k.statistic), k.permutations, k.seed};
  }

  std::optional<std::filesystem::path> dir_;
  int version_;
  Warn warn_;
  std::mutex mutex_;
  std::map<MapKey, NullModel> memory_;
  std::size_t builds_ = 0;
  std::size_t disk_hits_ = 0;
};

inline TestReport independence_test(const SampleSet& samples, const TestConfig& config, NullCache& cache) {
  if (samples.size() < kMinStatisticalSamples) throw DataError("independence test needs N >= 8");
  return independence_test(samples, cache.get(resolve_null_key(samples.size(), config)));
}

}  // namespace spectral_indep
