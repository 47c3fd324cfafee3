#pragma once

#include <map>
#include <string>

#include "qk1/engine.hpp"

namespace qk1 {

// Versioned text cache of partial generating functions.  One record per
// InvariantKey: the key, the canonical serializations of P_{n,m} and of its
// q=0 slice, and a checksum of the record body.  Corrupt or
// version-mismatched records are discarded, never trusted.
namespace disk_cache {

struct LoadResult {
    std::map<InvariantKey, PartialEntry> entries;
    size_t dropped = 0;
};

// Missing file yields an empty result.  A header mismatch discards the
// whole file (counted as one drop).
LoadResult load(const std::string& path);

// Atomically replaces the file (write temp + rename), records sorted by key.
void save(const std::string& path, const std::map<InvariantKey, PartialEntry>& entries);

}  // namespace disk_cache

}  // namespace qk1
