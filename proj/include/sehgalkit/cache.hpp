#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sehgalkit/algorithms.hpp"
#include "sehgalkit/esystem.hpp"
#include "sehgalkit/gl2.hpp"

namespace sehgalkit {

// Bumping this invalidates every stored record (the version participates in
// the content key, so stale files are simply never matched again).
inline constexpr int kCacheSchema = 1;

// The directory to use: the explicit flag value if nonempty, else the
// SEHGALKIT_CACHE environment variable, else empty (caching disabled).
std::string resolve_cache_dir(const std::string& flag_value);

// Content-hash key of one per-kernel enumeration input: schema version, group,
// weighting, ambient action label, and the kernel's full element list (so the
// key is independent of the generating set).
std::string eset_cache_key(const EConstraintSystem& sys, const Gl2Subgroup& K);

// One JSON file per (q, kernel label): eset_q<q>_<label>_<key>.json inside dir.
std::string eset_cache_path(const std::string& dir, const EConstraintSystem& sys,
                            const Gl2Subgroup& K);

// Returns the stored solution set when a record with a matching key exists and
// its tuples fit the system; anything else (missing, unparsable, stale schema,
// wrong shape) is a miss.
std::optional<std::vector<ESolution>> eset_cache_load(const std::string& dir,
                                                      const EConstraintSystem& sys,
                                                      const Gl2Subgroup& K);

// Writes or overwrites the record, creating the directory if needed.
void eset_cache_store(const std::string& dir, const EConstraintSystem& sys, const Gl2Subgroup& K,
                      const std::vector<ESolution>& sols);

// algorithm3 with a read-through/write-through solution cache in dir; an empty
// dir runs the plain scan. Records are per kernel, so partial sweeps warm the
// cache for later runs.
Alg3Outcome cached_algorithm3(const AbelianGroup& A, WeightMode mode, int threads,
                              const std::string& dir);

}  // namespace sehgalkit
