#include "metamatrix/cli/cache.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <system_error>

#include <boost/crc.hpp>
#include <unistd.h>

#include "json.hpp"
#include "metamatrix/cli/matrix_io.hpp"

namespace metamatrix::cli {
namespace {

using nlohmann::ordered_json;

std::string entry_stem(const CoxeterSystem &sys) {
  std::string stem = "ntable-" + std::string(family_name(sys.family()));
  if (sys.family() == Family::I2)
    stem += "-m" + std::to_string(sys.dihedral_order());
  else
    stem += std::to_string(sys.rank());
  return stem;
}

std::string canonical_text(const CoxeterSystem &sys, const NTable &table) {
  std::ostringstream os;
  os << "family=" << family_name(sys.family()) << ";rank=" << sys.rank()
     << ";m=" << sys.dihedral_order() << ";order=" << sys.order().get_str() << ";counts=";
  bool first = true;
  for (const auto &c : table.counts()) {
    os << (first ? "" : ",") << c.get_str();
    first = false;
  }
  return os.str();
}

} // namespace

std::string ntable_checksum(const CoxeterSystem &sys, const NTable &table) {
  const std::string text = canonical_text(sys, table);
  boost::crc_32_type crc;
  crc.process_bytes(text.data(), text.size());
  char buf[9];
  std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(crc.checksum()));
  return buf;
}

NTableCache::NTableCache(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path NTableCache::default_directory() {
  if (const char *env = std::getenv("METAMATRIX_CACHE_DIR"); env && *env)
    return env;
  if (const char *home = std::getenv("HOME"); home && *home)
    return std::filesystem::path(home) / ".metamatrix-cache";
  return ".metamatrix-cache";
}

std::filesystem::path NTableCache::entry_path(const CoxeterSystem &sys) const {
  return dir_ / (entry_stem(sys) + ".json");
}

NTableCache::Lookup NTableCache::load(const CoxeterSystem &sys) const {
  Lookup out;
  const auto path = entry_path(sys);
  std::ifstream in(path);
  if (!in)
    return out;

  auto corrupt = [&](std::string why) {
    out.status = Status::Corrupt;
    out.detail = std::move(why);
    return out;
  };

  ordered_json doc;
  try {
    doc = ordered_json::parse(in);
  } catch (const nlohmann::json::exception &e) {
    return corrupt(e.what());
  }

  try {
    if (doc.at("family").get<std::string>() != family_name(sys.family()) ||
        doc.at("rank").get<int>() != sys.rank() ||
        (sys.family() == Family::I2 && doc.at("m").get<int>() != sys.dihedral_order()))
      return corrupt("key does not match");
    if (doc.at("order").get<std::string>() != sys.order().get_str())
      return corrupt("order does not match");

    const auto &rows = doc.at("matrix");
    const std::size_t size = static_cast<std::size_t>(sys.rank()) + 1;
    if (!rows.is_array() || rows.size() != size)
      return corrupt("wrong table shape");
    std::vector<ExactInt> counts;
    counts.reserve(size * size);
    for (const auto &row : rows) {
      if (!row.is_array() || row.size() != size)
        return corrupt("wrong table shape");
      for (const auto &v : row) {
        ExactInt x;
        if (!v.is_string() || x.set_str(v.get<std::string>(), 10) != 0 || x < 0)
          return corrupt("entry is not a nonnegative decimal");
        counts.push_back(std::move(x));
      }
    }
    NTable table(sys.rank(), std::move(counts));
    if (doc.at("checksum").get<std::string>() != ntable_checksum(sys, table))
      return corrupt("checksum mismatch");
    if (table.total() != sys.order())
      return corrupt("counts do not sum to the group order");
    out.status = Status::Hit;
    out.table = std::move(table);
  } catch (const nlohmann::json::exception &e) {
    return corrupt(e.what());
  }
  return out;
}

void NTableCache::store(const CoxeterSystem &sys, const NTable &table) const {
  std::filesystem::create_directories(dir_);
  ordered_json doc;
  doc["family"] = std::string(family_name(sys.family()));
  doc["rank"] = sys.rank();
  if (sys.family() == Family::I2)
    doc["m"] = sys.dihedral_order();
  doc["pipeline"] = "enumerate";
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < table.size(); ++i) {
    ordered_json row = ordered_json::array();
    for (std::size_t j = 0; j < table.size(); ++j)
      row.push_back(table(i, j).get_str());
    rows.push_back(std::move(row));
  }
  doc["matrix"] = std::move(rows);
  doc["order"] = sys.order().get_str();
  doc["checksum"] = ntable_checksum(sys, table);

  const auto path = entry_path(sys);
  auto tmp = path;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out)
      throw std::runtime_error("cannot write cache entry " + tmp.string());
    out << dump_document(doc);
    if (!out)
      throw std::runtime_error("cannot write cache entry " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

} // namespace metamatrix::cli
