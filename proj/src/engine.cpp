#include "qk1/engine.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <thread>

#include "qk1/cache.hpp"
#include "qk1/formulas.hpp"

namespace qk1 {

size_t Engine::load_cache() {
    if (opt_.cache_path.empty()) return 0;
    disk_cache::LoadResult r = disk_cache::load(opt_.cache_path);
    std::lock_guard<std::mutex> lock(mu_);
    for (auto& [key, entry] : r.entries) memo_.emplace(key, std::move(entry));
    stats_.loaded_records += r.entries.size();
    stats_.dropped_records += r.dropped;
    return r.entries.size();
}

void Engine::save_cache() const {
    if (opt_.cache_path.empty()) return;
    std::lock_guard<std::mutex> lock(mu_);
    disk_cache::save(opt_.cache_path, memo_);
}

namespace {

// Permutation of {0..n} sending the canonical subset {1..u} to `subset`
// order-preservingly (0 fixed, complement slots to complement ascending).
std::vector<int> subset_permutation(int n, const std::vector<int>& subset) {
    std::vector<int> mapping(n + 1);
    mapping[0] = 0;
    const int u = static_cast<int>(subset.size());
    for (int i = 0; i < u; ++i) mapping[i + 1] = subset[i];
    int slot = u + 1;
    for (int v = 1; v <= n; ++v)
        if (std::find(subset.begin(), subset.end(), v) == subset.end()) mapping[slot++] = v;
    return mapping;
}

// Enumerates size-u subsets of {1..n} in lexicographic order.
void for_each_subset(int n, int u, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> sel(u);
    std::function<void(int, int)> rec = [&](int start, int k) {
        if (k == u) {
            fn(sel);
            return;
        }
        for (int v = start; v <= n; ++v) {
            sel[k] = v;
            rec(v + 1, k + 1);
        }
    };
    rec(1, 0);
}

}  // namespace

Engine::Engine(Options opt) : opt_(std::move(opt)) {
    if (!opt_.cache_path.empty()) load_cache();
}

PartialEntry Engine::partial_genfun(InvariantKey key) {
    if (key.n < 1 || key.m < 0 || key.m > key.n)
        throw input_error("partial_genfun: invalid key (need n >= 1, 0 <= m <= n)");
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = memo_.find(key);
        if (it != memo_.end()) {
            if (it->second.from_disk) ++stats_.disk_hits;
            return it->second;
        }
    }
    RationalFunction p(key.m + 1);
    if (key.n == 1) {
        p = key.m == 0 ? formulas::one_point_Linv() : formulas::one_point_mixed();
    } else if (key.m < key.n) {
        PartialEntry prev = partial_genfun({key.n - 1, key.m});
        std::vector<int> active(key.m);
        for (int i = 0; i < key.m; ++i) active[i] = i + 1;
        p = formulas::pushdown(prev.p, prev.p_at_q0, active);
    } else {
        p = assemble_full(key.n);
    }
    PartialEntry entry{p, p.substituted_zero(0), false};
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = memo_.emplace(key, std::move(entry));
    if (inserted) ++stats_.computed;
    return it->second;
}

// The subtracted product expands as
//   P_{n,n} = ks(n) - sum_{U subsetneq [n]} (-1)^{n-|U|}
//             (prod_{i not in U} 1/(1-q_i)) P_{n,|U|}(vars U),
// with one memoized P_{n,u} per size class and binom(n,u) renamed copies.
RationalFunction Engine::assemble_full(int n) {
    const int a = n + 1;
    RationalFunction ks = formulas::kawasaki_subtracted(n);
    // Class representatives: the subset {1..u} term, i.e.
    // P_{n,u}(q_1..q_u) * prod_{v>u} 1/(1-q_v).  All other subset terms are
    // variable permutations of these, so one representative product per size
    // class is computed and its permuted copies accumulated.
    std::vector<RationalFunction> rep;
    rep.reserve(n);
    for (int u = 0; u < n; ++u) {
        std::vector<int> mapping(u + 1);
        for (int i = 0; i <= u; ++i) mapping[i] = i;
        RationalFunction r = partial_genfun({n, u}).p.embedded(a, mapping);
        std::vector<DenominatorFactor> comp;
        for (int v = u + 1; v <= n; ++v)
            comp.push_back({Polynomial::one_plus(a, v, 1, Rational(-1)), 1});
        rep.push_back(r * RationalFunction(Polynomial::constant(a, 1), std::move(comp)));
    }
    // Union denominator across ks and every permuted image of every class.
    std::vector<DenominatorFactor> uni = ks.denominator();
    for (int u = 0; u < n; ++u) {
        for_each_subset(n, u, [&](const std::vector<int>& subset) {
            std::vector<int> mapping = subset_permutation(n, subset);
            std::vector<DenominatorFactor> den;
            den.reserve(rep[u].denominator().size());
            for (const auto& f : rep[u].denominator())
                den.push_back({f.poly.embedded(a, mapping), f.exp});
            uni = RationalFunction::union_factors(std::move(uni), den);
        });
    }
    Polynomial::Accumulator acc(a);
    acc.add(Polynomial::multiply_many(ks.numerator(),
                                      RationalFunction::complement_list(uni, ks.denominator())));
    for (int u = 0; u < n; ++u) {
        Polynomial prod = Polynomial::multiply_many(
            rep[u].numerator(), RationalFunction::complement_list(uni, rep[u].denominator()));
        Rational sign(((n - u) % 2 == 0) ? -1 : 1);  // -(-1)^{n-u}
        for_each_subset(n, u, [&](const std::vector<int>& subset) {
            acc.add_scaled_permuted(prod, subset_permutation(n, subset), sign);
        });
    }
    return RationalFunction(acc.take(), std::move(uni));
}

RationalFunction Engine::full_genfun(int n) {
    if (n < 1) throw input_error("full_genfun: requires n >= 1");
    if (n > opt_.exact_ceiling)
        throw input_error("full_genfun: n exceeds the exact-mode ceiling (" +
                          std::to_string(opt_.exact_ceiling) + "); use series mode");
    return partial_genfun({n, n}).p;
}

TruncatedSeries Engine::full_genfun_series(int n, std::vector<uint32_t> orders,
                                           int64_t total_cap) {
    if (n < 1) throw input_error("full_genfun_series: requires n >= 1");
    if (static_cast<int>(orders.size()) != n + 1)
        throw input_error("full_genfun_series: orders must have length n+1");
    const int a = n + 1;
    // The q^{-1}(F - F|_0) pushdown step consumes one q order per level, so
    // internal windows are padded by (n - level) and truncated at the end.
    // Insertion variables share one uniform order so renamed copies of a
    // memoized class representative stay exact.
    uint32_t max_ins = 0;
    for (int i = 1; i <= n; ++i) max_ins = std::max(max_ins, orders[i]);
    auto level_orders = [&](int level) {
        std::vector<uint32_t> o(a, max_ins);
        o[0] = orders[0] + static_cast<uint32_t>(n - level);
        return o;
    };
    auto level_cap = [&](int level) {
        return total_cap == TruncatedSeries::kNoCap ? total_cap : total_cap + (n - level);
    };

    std::map<InvariantKey, TruncatedSeries> memo;
    std::function<const TruncatedSeries&(int, int)> get = [&](int level,
                                                              int m) -> const TruncatedSeries& {
        InvariantKey key{level, m};
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<uint32_t> lo = level_orders(level);
        int64_t lc = level_cap(level);
        TruncatedSeries r(lo, lc);
        if (level == 1) {
            const RationalFunction base =
                m == 0 ? formulas::one_point_Linv() : formulas::one_point_mixed();
            std::vector<int> mapping(m + 1);
            for (int i = 0; i <= m; ++i) mapping[i] = i;
            r = taylor_expand(base.embedded(a, mapping), lo, lc);
        } else if (m < level) {
            const TruncatedSeries& prev = get(level - 1, m);
            TruncatedSeries prev_t = prev.truncated(lo, lc);
            TruncatedSeries reg = prev.shifted_down(0).truncated(lo, lc);
            TruncatedSeries fac = TruncatedSeries::constant(1, lo, lc);
            for (int v = 1; v <= m; ++v) fac += taylor_expand(formulas::geometric(a, v), lo, lc);
            r = fac * prev_t - reg;
        } else {
            r = taylor_expand(formulas::kawasaki_subtracted(level).embedded(
                                  a, [&] {
                                      std::vector<int> id(level + 1);
                                      for (int i = 0; i <= level; ++i) id[i] = i;
                                      return id;
                                  }()),
                              lo, lc);
            for (int u = 0; u < level; ++u) {
                TruncatedSeries pu = get(level, u);  // copy: recursion may rehash memo
                int sign = ((level - u) % 2 == 0) ? -1 : 1;
                for_each_subset(level, u, [&](const std::vector<int>& subset) {
                    std::vector<int> mapping(u + 1);
                    mapping[0] = 0;
                    for (int i = 0; i < u; ++i) mapping[i + 1] = subset[i];
                    TruncatedSeries term = pu.embedded(lo, lc, mapping);
                    for (int v = 1; v <= level; ++v) {
                        if (std::find(subset.begin(), subset.end(), v) == subset.end())
                            term *= taylor_expand(
                                RationalFunction::inv_one_plus(a, v, 1, Rational(-1)), lo, lc);
                    }
                    r += term.scaled(sign);
                });
            }
        }
        return memo.emplace(key, std::move(r)).first->second;
    };
    return get(n, n).truncated(std::move(orders), total_cap);
}

Mode Engine::resolve_mode(const ChiRequest& req) const {
    bool needs_exact = req.hodge_exp > 0 ||
                       std::any_of(req.exps.begin(), req.exps.end(),
                                   [](int64_t d) { return d < 0; });
    Mode mode = req.mode;
    if (mode == Mode::Auto) mode = req.n <= opt_.exact_ceiling ? Mode::Exact : Mode::Series;
    if (mode == Mode::Series && needs_exact)
        throw input_error(
            "chi: negative exponents or positive Hodge powers require exact mode");
    if (mode == Mode::Exact && req.n > opt_.exact_ceiling)
        throw input_error("chi: n exceeds the exact-mode ceiling (" +
                          std::to_string(opt_.exact_ceiling) + "); use series mode");
    return mode;
}

Integer Engine::chi(const ChiRequest& req) {
    if (req.n < 1) throw input_error("chi: requires n >= 1");
    if (static_cast<int>(req.exps.size()) != req.n)
        throw input_error("chi: exps must have length n");
    Mode mode = resolve_mode(req);
    Rational coeff;
    int sign = 1;
    if (mode == Mode::Exact) {
        RationalFunction f = full_genfun(req.n);
        // Specialize zero-exponent variables first: this removes the mixed
        // (1 - q q_i) factors before any inversion.
        for (int i = 1; i <= req.n; ++i)
            if (req.exps[i - 1] == 0) f = f.substituted_zero(i);
        if (req.hodge_exp == 0) f = f.substituted_zero(0);
        for (int i = 1; i <= req.n; ++i) {
            if (req.exps[i - 1] < 0) {
                f = f.inverted_variable(i);
                sign = -sign;
            }
        }
        if (req.hodge_exp > 0) {
            f = f.inverted_variable(0);
            sign = -sign;
        }
        std::vector<uint32_t> orders(req.n + 1);
        orders[0] = static_cast<uint32_t>(req.hodge_exp > 0 ? req.hodge_exp : -req.hodge_exp);
        for (int i = 1; i <= req.n; ++i) {
            int64_t d = req.exps[i - 1];
            orders[i] = static_cast<uint32_t>(d < 0 ? -d : d);
        }
        ExpVec want(orders.begin(), orders.end());
        coeff = taylor_expand(f, orders).coefficient(want);
    } else {
        std::vector<uint32_t> orders(req.n + 1);
        orders[0] = static_cast<uint32_t>(-req.hodge_exp);
        for (int i = 1; i <= req.n; ++i) orders[i] = static_cast<uint32_t>(req.exps[i - 1]);
        ExpVec want(orders.begin(), orders.end());
        coeff = full_genfun_series(req.n, orders).coefficient(want);
    }
    if (sign < 0) coeff = -coeff;
    if (!coeff.is_integer())
        throw internal_error("chi: non-integer Euler characteristic " + coeff.str() +
                             " (integrality contract violated)");
    return coeff.to_integer();
}

std::vector<TableRow> Engine::chi_table(int n, std::pair<int64_t, int64_t> hodge_range,
                                        const std::vector<std::pair<int64_t, int64_t>>& exp_ranges,
                                        Mode mode, int jobs) {
    if (n < 1) throw input_error("chi_table: requires n >= 1");
    if (static_cast<int>(exp_ranges.size()) != n)
        throw input_error("chi_table: exp_ranges must have length n");
    if (hodge_range.first > hodge_range.second) return {};
    for (const auto& r : exp_ranges)
        if (r.first > r.second) return {};
    std::vector<ChiRequest> reqs;
    ChiRequest req;
    req.n = n;
    req.mode = mode;
    req.exps.assign(n, 0);
    for (int64_t h = hodge_range.first; h <= hodge_range.second; ++h) {
        std::function<void(int)> rec = [&](int i) {
            if (i == n) {
                req.hodge_exp = h;
                reqs.push_back(req);
                return;
            }
            for (int64_t d = exp_ranges[i].first; d <= exp_ranges[i].second; ++d) {
                req.exps[i] = d;
                rec(i + 1);
            }
        };
        rec(0);
    }
    std::vector<TableRow> rows(reqs.size());
    auto work = [&](size_t idx) {
        rows[idx] = TableRow{reqs[idx].hodge_exp, reqs[idx].exps, chi(reqs[idx])};
    };
    jobs = std::max(1, jobs);
    if (jobs == 1 || reqs.size() <= 1) {
        for (size_t i = 0; i < reqs.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::exception_ptr error;
        std::mutex error_mu;
        auto worker = [&] {
            while (true) {
                size_t i = next.fetch_add(1);
                if (i >= reqs.size()) return;
                try {
                    work(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mu);
                    if (!error) error = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        size_t k = std::min(static_cast<size_t>(jobs), reqs.size());
        pool.reserve(k);
        for (size_t t = 0; t < k; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }
    return rows;
}

}  // namespace qk1
