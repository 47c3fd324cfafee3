#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <utility>
#include <vector>

#include "qk1/rational_function.hpp"
#include "qk1/series.hpp"

namespace qk1 {

// Canonical descriptor of the partial generating function
//   P_{n,m} = chi(Mbar_{1,n}, 1/(1-q H^{-1}) prod_{i<=m} 1/(1-q_i L_i)).
// By S_n-symmetry the value depends only on (n, m); insertion variables are
// canonicalized to q_1..q_m, so P_{n,m} has arity m+1.
struct InvariantKey {
    int n = 1;
    int m = 0;
    auto operator<=>(const InvariantKey&) const = default;
};

struct PartialEntry {
    RationalFunction p;
    RationalFunction p_at_q0;
    bool from_disk = false;
};

enum class Mode { Exact, Series, Auto };

struct ChiRequest {
    int n = 1;
    // Exponent d of the Hodge bundle H, any sign.  The series variable q
    // tracks H^{-1}: hodge_exp = -d reads [q^d] directly, hodge_exp > 0
    // triggers inversion on q.
    int64_t hodge_exp = 0;
    std::vector<int64_t> exps;  // exponents d_i of L_i, any sign
    Mode mode = Mode::Auto;
};

struct TableRow {
    int64_t hodge = 0;
    std::vector<int64_t> exps;
    Integer value;
};

struct CacheStats {
    size_t loaded_records = 0;    // valid records read from disk
    size_t dropped_records = 0;   // corrupt or version-mismatched, discarded
    size_t disk_hits = 0;         // lookups answered by a disk-loaded record
    size_t computed = 0;          // entries computed this run
};

class Engine {
public:
    struct Options {
        int exact_ceiling = 4;
        std::string cache_path;  // empty = no on-disk cache
    };

    Engine() : Engine(Options{}) {}
    explicit Engine(Options opt);

    int exact_ceiling() const { return opt_.exact_ceiling; }

    // P_{n,m} with its q=0 slice, exact, memoized.
    PartialEntry partial_genfun(InvariantKey key);

    // P_{n,n}; requires n within the exact-mode ceiling.
    RationalFunction full_genfun(int n);

    // Same recursion on TruncatedSeries: exact coefficients inside the
    // window.  orders has length n+1 (q first).
    TruncatedSeries full_genfun_series(int n, std::vector<uint32_t> orders,
                                       int64_t total_cap = TruncatedSeries::kNoCap);

    // chi(Mbar_{1,n}, H^{hodge} (x) L_i^{d_i}); asserts integrality.
    Integer chi(const ChiRequest& req);

    // The mode Auto resolves to for this request (validates feasibility).
    Mode resolved_mode(const ChiRequest& req) const { return resolve_mode(req); }

    // All chi values over inclusive ranges, rows in lexicographic request
    // order (hodge outer, then d_1..d_n).  jobs > 1 computes cells in
    // parallel; output order is unaffected.
    std::vector<TableRow> chi_table(int n, std::pair<int64_t, int64_t> hodge_range,
                                    const std::vector<std::pair<int64_t, int64_t>>& exp_ranges,
                                    Mode mode, int jobs = 1);

    // On-disk cache round trip.  load returns the number of usable records.
    size_t load_cache();
    void save_cache() const;
    const CacheStats& cache_stats() const { return stats_; }
    const std::string& cache_path() const { return opt_.cache_path; }

private:
    RationalFunction assemble_full(int n);
    Mode resolve_mode(const ChiRequest& req) const;

    Options opt_;
    mutable std::mutex mu_;
    std::map<InvariantKey, PartialEntry> memo_;
    CacheStats stats_;
};

}  // namespace qk1
