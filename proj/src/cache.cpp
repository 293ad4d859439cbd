#include "sehgalkit/cache.hpp"

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "sehgalkit/jsonio.hpp"

namespace sehgalkit {

namespace {

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream os;
  os << std::hex;
  for (int shift = 60; shift >= 0; shift -= 4) os << ((h >> shift) & 0xF);
  return os.str();
}

std::string sanitize(const std::string& s) {
  std::string out;
  for (char c : s)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-') ? c : '_';
  return out;
}

std::string mode_name(WeightMode m) { return m == WeightMode::inner ? "inner" : "count"; }

}  // namespace

std::string resolve_cache_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  const char* env = std::getenv("SEHGALKIT_CACHE");
  return env != nullptr ? std::string(env) : std::string();
}

std::string eset_cache_key(const EConstraintSystem& sys, const Gl2Subgroup& K) {
  std::ostringstream os;
  os << "eset/v" << kCacheSchema << '|' << group_spec(sys.A) << '|' << mode_name(sys.mode) << '|'
     << sys.acting_label << '|' << K.q << '|';
  for (const AutElem& s : K.group.elements) {
    for (i64 v : s.key()) os << v << ',';
    os << ';';
  }
  return fnv_hex(os.str());
}

std::string eset_cache_path(const std::string& dir, const EConstraintSystem& sys,
                            const Gl2Subgroup& K) {
  std::ostringstream os;
  os << "eset_q" << K.q << '_' << sanitize(K.label) << '_' << eset_cache_key(sys, K) << ".json";
  return (std::filesystem::path(dir) / os.str()).string();
}

std::optional<std::vector<ESolution>> eset_cache_load(const std::string& dir,
                                                      const EConstraintSystem& sys,
                                                      const Gl2Subgroup& K) {
  if (dir.empty()) return std::nullopt;
  std::ifstream in(eset_cache_path(dir, sys, K));
  if (!in) return std::nullopt;
  const Json rec = Json::parse(in, nullptr, false);
  if (rec.is_discarded() || !rec.is_object()) return std::nullopt;
  if (rec.value("schema", 0) != kCacheSchema) return std::nullopt;
  if (rec.value("key", std::string()) != eset_cache_key(sys, K)) return std::nullopt;
  if (!rec.contains("tuples") || !rec["tuples"].is_array()) return std::nullopt;
  std::vector<std::vector<i64>> tuples;
  for (const auto& t : rec["tuples"]) {
    if (!t.is_array() || static_cast<int>(t.size()) != sys.nvars()) return std::nullopt;
    tuples.push_back(t.get<std::vector<i64>>());
  }
  return package_solutions(sys, std::move(tuples));
}

void eset_cache_store(const std::string& dir, const EConstraintSystem& sys, const Gl2Subgroup& K,
                      const std::vector<ESolution>& sols) {
  if (dir.empty()) return;
  std::filesystem::create_directories(dir);
  Json tuples = Json::array();
  for (const ESolution& s : sols) tuples.push_back(s.tuple);
  const Json rec{{"schema", kCacheSchema},
                 {"key", eset_cache_key(sys, K)},
                 {"group", group_spec(sys.A)},
                 {"mode", mode_name(sys.mode)},
                 {"kernel_label", K.label},
                 {"kernel_order", K.order()},
                 {"tuples", tuples}};
  std::ofstream out(eset_cache_path(dir, sys, K));
  out << dump_json(rec);
}

Alg3Outcome cached_algorithm3(const AbelianGroup& A, WeightMode mode, int threads,
                              const std::string& dir) {
  if (dir.empty()) return algorithm3(A, mode, threads);
  ESetHooks hooks;
  hooks.load = [&dir](const Gl2Subgroup& K, const EConstraintSystem& sys) {
    return eset_cache_load(dir, sys, K);
  };
  hooks.store = [&dir](const Gl2Subgroup& K, const EConstraintSystem& sys,
                       const std::vector<ESolution>& sols) { eset_cache_store(dir, sys, K, sols); };
  return algorithm3(A, mode, threads, &hooks);
}

}  // namespace sehgalkit
