#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <unordered_map>
#include <vector>

#include "qk1/errors.hpp"
#include "qk1/rational.hpp"

namespace qk1 {

// Exponent vector, one entry per variable.  Index 0 is the Hodge variable q,
// index i >= 1 is q_i.
using ExpVec = std::vector<uint32_t>;

inline uint32_t total_degree(const ExpVec& e) {
    return std::accumulate(e.begin(), e.end(), uint32_t{0});
}

// Graded lexicographic order with the Hodge variable most significant.
// Canonical term order for serialization and the memo cache.
struct GradedLexLess {
    bool operator()(const ExpVec& a, const ExpVec& b) const {
        uint32_t da = total_degree(a), db = total_degree(b);
        if (da != db) return da < db;
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    }
};

// Sparse multivariate polynomial over a coefficient field.  Zero coefficients
// are never stored; the zero polynomial is an empty term map with an explicit
// arity.
template <class Coef>
class PolynomialT {
public:
    using TermMap = std::map<ExpVec, Coef, GradedLexLess>;

    explicit PolynomialT(int arity = 0) : arity_(arity) {}

    static PolynomialT zero(int arity) { return PolynomialT(arity); }

    static PolynomialT constant(int arity, const Coef& c) {
        PolynomialT p(arity);
        if (!c.is_zero()) p.terms_.emplace(ExpVec(arity, 0), c);
        return p;
    }

    static PolynomialT monomial(int arity, const ExpVec& exps, const Coef& c) {
        if (static_cast<int>(exps.size()) != arity)
            throw input_error("Polynomial::monomial: exponent vector length != arity");
        PolynomialT p(arity);
        if (!c.is_zero()) p.terms_.emplace(exps, c);
        return p;
    }

    // Convenience: 1 + c * x_v^k.
    static PolynomialT one_plus(int arity, int v, uint32_t k, const Coef& c) {
        PolynomialT p = constant(arity, Coef(1));
        ExpVec e(arity, 0);
        e.at(v) = k;
        p.add_term(e, c);
        return p;
    }

    int arity() const { return arity_; }
    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    Coef constant_term() const {
        auto it = terms_.find(ExpVec(arity_, 0));
        return it == terms_.end() ? Coef(0) : it->second;
    }

    Coef coefficient(const ExpVec& e) const {
        auto it = terms_.find(e);
        return it == terms_.end() ? Coef(0) : it->second;
    }

    void add_term(const ExpVec& e, const Coef& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    PolynomialT operator-() const {
        PolynomialT r(arity_);
        for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
        return r;
    }

    PolynomialT& operator+=(const PolynomialT& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    PolynomialT& operator-=(const PolynomialT& o) {
        check_arity(o);
        for (const auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend PolynomialT operator+(PolynomialT a, const PolynomialT& b) { a += b; return a; }
    friend PolynomialT operator-(PolynomialT a, const PolynomialT& b) { a -= b; return a; }

    friend PolynomialT operator*(const PolynomialT& a, const PolynomialT& b) {
        a.check_arity(b);
        PolynomialT r(a.arity_);
        if (a.is_zero() || b.is_zero()) return r;
        // Iterate the smaller operand on the outside.
        const PolynomialT& s = a.terms_.size() <= b.terms_.size() ? a : b;
        const PolynomialT& l = a.terms_.size() <= b.terms_.size() ? b : a;
        // Fast path: pack exponent vectors into one machine word (10 bits per
        // variable) and accumulate in a hash map, decoding once at the end.
        if (a.arity_ <= 6 && s.max_var_degree() + l.max_var_degree() < 1024) {
            std::unordered_map<uint64_t, Coef> acc;
            acc.reserve(2 * l.terms_.size());
            for (const auto& [es, cs] : s.terms_) {
                uint64_t ks = pack_exps(es);
                for (const auto& [el, cl] : l.terms_) {
                    Coef& slot = acc.try_emplace(ks + pack_exps(el), Coef(0)).first->second;
                    slot += cs * cl;
                }
            }
            ExpVec e(a.arity_);
            for (const auto& [key, c] : acc) {
                if (c.is_zero()) continue;
                for (int i = 0; i < a.arity_; ++i)
                    e[i] = static_cast<uint32_t>((key >> (10 * i)) & 0x3FF);
                r.terms_.emplace(e, c);
            }
            return r;
        }
        ExpVec e(a.arity_);
        for (const auto& [es, cs] : s.terms_) {
            for (const auto& [el, cl] : l.terms_) {
                for (int i = 0; i < a.arity_; ++i) e[i] = es[i] + el[i];
                r.add_term(e, cs * cl);
            }
        }
        return r;
    }
    PolynomialT& operator*=(const PolynomialT& o) { *this = *this * o; return *this; }

    PolynomialT scaled(const Coef& c) const {
        PolynomialT r(arity_);
        if (c.is_zero()) return r;
        for (const auto& [e, v] : terms_) r.terms_.emplace(e, v * c);
        return r;
    }

    friend bool operator==(const PolynomialT& a, const PolynomialT& b) {
        return a.arity_ == b.arity_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const PolynomialT& a, const PolynomialT& b) { return !(a == b); }

    // Exact division: returns q with (*this) == q * d, or nullopt.
    std::optional<PolynomialT> divided_by(const PolynomialT& d) const {
        check_arity(d);
        if (d.is_zero()) throw input_error("Polynomial: division by zero polynomial");
        if (is_zero()) return zero(arity_);
        int v = d.single_variable();
        if (v >= 0 && d.constant_term().is_one()) return divided_by_univariate(d, v);
        PolynomialT q(arity_), r(*this);
        const auto& [ed, cd] = *d.terms_.rbegin();
        ExpVec e(arity_);
        while (!r.is_zero()) {
            const auto& [er, cr] = *r.terms_.rbegin();
            for (int i = 0; i < arity_; ++i) {
                if (er[i] < ed[i]) return std::nullopt;
                e[i] = er[i] - ed[i];
            }
            Coef c = cr / cd;
            q.add_term(e, c);
            r -= d * monomial(arity_, e, c);
        }
        return q;
    }

    // The only variable appearing, or -1 if none or several.
    int single_variable() const {
        int v = -1;
        for (const auto& [e, c] : terms_) {
            for (int i = 0; i < arity_; ++i) {
                if (e[i] == 0) continue;
                if (v == -1) v = i;
                else if (v != i) return -1;
            }
        }
        return v;
    }

    uint32_t degree_in(int v) const {
        uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.at(v));
        return d;
    }

    uint32_t min_degree_in(int v) const {
        if (terms_.empty()) return 0;
        uint32_t d = UINT32_MAX;
        for (const auto& [e, c] : terms_) d = std::min(d, e.at(v));
        return d;
    }

    uint32_t max_total_degree() const {
        uint32_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
        return d;
    }

    // Largest single-variable exponent over all terms.
    uint32_t max_var_degree() const {
        uint32_t d = 0;
        for (const auto& [e, c] : terms_)
            for (uint32_t x : e) d = std::max(d, x);
        return d;
    }

    // Substitutes x_v = 0 (arity unchanged, variable becomes unused).
    PolynomialT substituted_zero(int v) const {
        PolynomialT r(arity_);
        for (const auto& [e, c] : terms_)
            if (e.at(v) == 0) r.terms_.emplace(e, c);
        return r;
    }

    // x_v -> x_v^{-1} cleared by x_v^{degree_in(v)} (exponent reversal).
    PolynomialT reversed_in(int v) const {
        uint32_t d = degree_in(v);
        PolynomialT r(arity_);
        for (const auto& [e, c] : terms_) {
            ExpVec e2 = e;
            e2[v] = d - e[v];
            r.terms_.emplace(std::move(e2), c);
        }
        return r;
    }

    // Divides by x_v^k; every term must have exponent >= k in x_v.
    PolynomialT shifted_down(int v, uint32_t k) const {
        PolynomialT r(arity_);
        for (const auto& [e, c] : terms_) {
            if (e.at(v) < k)
                throw internal_error("Polynomial::shifted_down: term not divisible by variable");
            ExpVec e2 = e;
            e2[v] -= k;
            r.terms_.emplace(std::move(e2), c);
        }
        return r;
    }

    PolynomialT shifted_up(int v, uint32_t k) const {
        PolynomialT r(arity_);
        for (const auto& [e, c] : terms_) {
            ExpVec e2 = e;
            e2[v] += k;
            r.terms_.emplace(std::move(e2), c);
        }
        return r;
    }

    // Reinterprets in a larger/renamed variable set; mapping[old] = new index.
    PolynomialT embedded(int new_arity, const std::vector<int>& mapping) const {
        if (static_cast<int>(mapping.size()) != arity_)
            throw input_error("Polynomial::embedded: mapping length != arity");
        PolynomialT r(new_arity);
        for (const auto& [e, c] : terms_) {
            ExpVec e2(new_arity, 0);
            for (int i = 0; i < arity_; ++i) {
                if (e[i] == 0) continue;
                if (mapping[i] < 0 || mapping[i] >= new_arity)
                    throw input_error("Polynomial::embedded: mapping out of range");
                e2[mapping[i]] += e[i];
            }
            r.add_term(e2, c);
        }
        return r;
    }

    Coef eval(const std::vector<Coef>& point) const {
        if (static_cast<int>(point.size()) != arity_)
            throw input_error("Polynomial::eval: point length != arity");
        // Per-variable power cache keyed by exponent.
        std::vector<std::vector<Coef>> pows(arity_);
        for (int i = 0; i < arity_; ++i) pows[i].push_back(Coef(1));
        Coef total(0);
        for (const auto& [e, c] : terms_) {
            Coef t = c;
            for (int i = 0; i < arity_; ++i) {
                while (pows[i].size() <= e[i]) pows[i].push_back(pows[i].back() * point[i]);
                if (e[i] > 0) t *= pows[i][e[i]];
            }
            total += t;
        }
        return total;
    }

    // base * f1 * f2 * ... with every intermediate kept in the packed-key
    // hash domain; one sorted rebuild at the end.  Falls back to pairwise
    // multiplication when exponents do not fit the packing.
    static PolynomialT multiply_many(const PolynomialT& base,
                                     const std::vector<const PolynomialT*>& factors) {
        uint32_t degree_budget = base.max_var_degree();
        bool fits = base.arity() <= 6;
        for (const auto* f : factors) {
            if (f->arity() != base.arity())
                throw input_error("multiply_many: arity mismatch");
            degree_budget += f->max_var_degree();
        }
        fits = fits && degree_budget < 1024;
        if (!fits) {
            PolynomialT r = base;
            for (const auto* f : factors) r = r * (*f);
            return r;
        }
        std::unordered_map<uint64_t, Coef> cur;
        cur.reserve(base.terms_.size() * 2);
        for (const auto& [e, c] : base.terms_) cur.emplace(pack_exps(e), c);
        std::unordered_map<uint64_t, Coef> next;
        for (const auto* f : factors) {
            if (f->is_zero()) return zero(base.arity());
            next.clear();
            next.reserve(cur.size() * 2);
            for (const auto& [ef, cf] : f->terms_) {
                uint64_t kf = pack_exps(ef);
                for (const auto& [k, c] : cur) {
                    Coef& slot = next.try_emplace(k + kf, Coef(0)).first->second;
                    slot += c * cf;
                }
            }
            cur.swap(next);
        }
        PolynomialT r(base.arity());
        ExpVec e(base.arity());
        for (const auto& [key, c] : cur) {
            if (c.is_zero()) continue;
            for (int i = 0; i < base.arity(); ++i)
                e[i] = static_cast<uint32_t>((key >> (10 * i)) & 0x3FF);
            r.terms_.emplace(e, c);
        }
        return r;
    }

    // Bulk accumulation of sums of products with a single sorted rebuild at
    // the end.  Uses the packed-key hash path when exponents fit.
    class Accumulator {
    public:
        explicit Accumulator(int arity) : arity_(arity), slow_(arity) {}

        void add(const PolynomialT& p) { add_product(p, constant(p.arity(), Coef(1))); }

        // += scale * (p with variables renamed by the permutation mapping).
        void add_scaled_permuted(const PolynomialT& p, const std::vector<int>& mapping,
                                 const Coef& scale) {
            if (p.arity() != arity_ || static_cast<int>(mapping.size()) != arity_)
                throw input_error("Polynomial accumulator: mapping/arity mismatch");
            if (arity_ <= 6 && p.max_var_degree() < 1024) {
                for (const auto& [e, c] : p.terms_) {
                    uint64_t k = 0;
                    for (int i = 0; i < arity_; ++i)
                        k |= static_cast<uint64_t>(e[i]) << (10 * mapping[i]);
                    Coef& slot = acc_.try_emplace(k, Coef(0)).first->second;
                    slot += c * scale;
                }
            } else {
                slow_ += p.embedded(arity_, mapping).scaled(scale);
            }
        }

        void add_product(const PolynomialT& a, const PolynomialT& b) {
            if (a.arity() != arity_ || b.arity() != arity_)
                throw input_error("Polynomial accumulator: arity mismatch");
            if (a.is_zero() || b.is_zero()) return;
            const PolynomialT& s = a.terms_.size() <= b.terms_.size() ? a : b;
            const PolynomialT& l = a.terms_.size() <= b.terms_.size() ? b : a;
            if (arity_ <= 6 && s.max_var_degree() + l.max_var_degree() < 1024) {
                for (const auto& [es, cs] : s.terms_) {
                    uint64_t ks = pack_exps(es);
                    for (const auto& [el, cl] : l.terms_) {
                        Coef& slot = acc_.try_emplace(ks + pack_exps(el), Coef(0)).first->second;
                        slot += cs * cl;
                    }
                }
            } else {
                slow_ += s * l;
            }
        }

        PolynomialT take() {
            PolynomialT r = std::move(slow_);
            ExpVec e(arity_);
            for (const auto& [key, c] : acc_) {
                if (c.is_zero()) continue;
                for (int i = 0; i < arity_; ++i)
                    e[i] = static_cast<uint32_t>((key >> (10 * i)) & 0x3FF);
                r.add_term(e, c);
            }
            acc_.clear();
            return r;
        }

    private:
        int arity_;
        std::unordered_map<uint64_t, Coef> acc_;
        PolynomialT slow_;
    };

private:
    void check_arity(const PolynomialT& o) const {
        if (arity_ != o.arity_) throw input_error("Polynomial: arity mismatch");
    }

    // Exact division by a divisor univariate in x_v with constant term 1,
    // as a single linear-pass recurrence on the x_v-degree slices:
    //   Q_j = N_j - sum_{i>=1} d_i Q_{j-i},
    // divisible iff the top deg(d) slices come out empty.
    std::optional<PolynomialT> divided_by_univariate(const PolynomialT& d, int v) const {
        const uint32_t k = d.degree_in(v);
        const uint32_t dn = degree_in(v);
        if (k == 0) return *this;  // constant 1
        if (dn < k) return std::nullopt;
        std::vector<Coef> dc(k + 1, Coef(0));
        for (const auto& [e, c] : d.terms_) dc[e[v]] = c;
        // Slices of the dividend by x_v-degree, with x_v cleared.
        std::vector<TermMap> slice(dn + 1);
        for (const auto& [e, c] : terms_) {
            ExpVec e2 = e;
            uint32_t j = e2[v];
            e2[v] = 0;
            slice[j].emplace(std::move(e2), c);
        }
        auto sub_scaled = [this](TermMap& into, const TermMap& from, const Coef& s) {
            for (const auto& [e, c] : from) {
                Coef delta = c * s;
                auto [it, inserted] = into.emplace(e, delta);
                if (!inserted) {
                    it->second += delta;
                    if (it->second.is_zero()) into.erase(it);
                }
            }
        };
        for (uint32_t j = 1; j <= dn; ++j) {
            for (uint32_t i = 1; i <= k && i <= j; ++i) {
                if (dc[i].is_zero() || slice[j - i].empty()) continue;
                sub_scaled(slice[j], slice[j - i], -dc[i]);
            }
        }
        for (uint32_t j = dn - k + 1; j <= dn; ++j)
            if (!slice[j].empty()) return std::nullopt;
        PolynomialT q(arity_);
        for (uint32_t j = 0; j + k <= dn; ++j) {
            for (const auto& [e, c] : slice[j]) {
                ExpVec e2 = e;
                e2[v] = j;
                q.terms_.emplace(std::move(e2), c);
            }
        }
        return q;
    }

    static uint64_t pack_exps(const ExpVec& e) {
        uint64_t k = 0;
        for (size_t i = 0; i < e.size(); ++i) k |= static_cast<uint64_t>(e[i]) << (10 * i);
        return k;
    }

    int arity_;
    TermMap terms_;
};

using Polynomial = PolynomialT<Rational>;

// Total order on polynomials (for canonical denominator-factor ordering):
// term-by-term graded-lex on (monomial, coefficient) sequences.
inline int compare(const Rational& a, const Rational& b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

inline int compare(const Polynomial& a, const Polynomial& b) {
    auto ia = a.terms().begin(), ib = b.terms().begin();
    GradedLexLess less;
    for (; ia != a.terms().end() && ib != b.terms().end(); ++ia, ++ib) {
        if (less(ia->first, ib->first)) return -1;
        if (less(ib->first, ia->first)) return 1;
        if (int c = compare(ia->second, ib->second)) return c;
    }
    if (ia != a.terms().end()) return 1;
    if (ib != b.terms().end()) return -1;
    return 0;
}

}  // namespace qk1
