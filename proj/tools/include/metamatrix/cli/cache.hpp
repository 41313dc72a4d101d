#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "metamatrix/coxeter.hpp"
#include "metamatrix/engine.hpp"

namespace metamatrix::cli {

/// On-disk store of computed N-tables, one JSON file per (family, rank, m).
class NTableCache {
public:
  explicit NTableCache(std::filesystem::path dir);

  /// METAMATRIX_CACHE_DIR if set, else ~/.metamatrix-cache.
  static std::filesystem::path default_directory();

  const std::filesystem::path &directory() const { return dir_; }
  std::filesystem::path entry_path(const CoxeterSystem &sys) const;

  enum class Status { Hit, Missing, Corrupt };
  struct Lookup {
    Status status = Status::Missing;
    std::optional<NTable> table;
    std::string detail; ///< why a Corrupt entry was rejected
  };

  Lookup load(const CoxeterSystem &sys) const;
  /// Writes atomically (temporary file then rename).
  void store(const CoxeterSystem &sys, const NTable &table) const;

private:
  std::filesystem::path dir_;
};

/// CRC-32 of the canonical text of the entry (key and counts), as 8 hex digits.
std::string ntable_checksum(const CoxeterSystem &sys, const NTable &table);

} // namespace metamatrix::cli
