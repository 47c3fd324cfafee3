#include "qk1/series.hpp"

#include <numeric>

namespace qk1 {

TruncatedSeries TruncatedSeries::from_polynomial(const Polynomial& p, std::vector<uint32_t> orders,
                                                 int64_t total_cap) {
    if (p.arity() != static_cast<int>(orders.size()))
        throw input_error("TruncatedSeries: arity mismatch with orders");
    TruncatedSeries s(std::move(orders), total_cap);
    for (const auto& [e, c] : p.terms())
        if (s.in_window(e)) s.coeffs_.emplace(e, c);
    return s;
}

Rational TruncatedSeries::coefficient(const ExpVec& e) const {
    if (!in_window(e))
        throw input_error("TruncatedSeries: coefficient outside truncation window");
    auto it = coeffs_.find(e);
    return it == coeffs_.end() ? Rational(0) : it->second;
}

void TruncatedSeries::add_term(const ExpVec& e, const Rational& c) {
    if (c.is_zero() || !in_window(e)) return;
    auto [it, inserted] = coeffs_.emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) coeffs_.erase(it);
    }
}

TruncatedSeries TruncatedSeries::operator-() const {
    TruncatedSeries r(orders_, cap_);
    for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
    return r;
}

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries r = a;
    for (const auto& [e, c] : b.coeffs_) r.add_term(e, c);
    return r;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries r = a;
    for (const auto& [e, c] : b.coeffs_) r.add_term(e, -c);
    return r;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
    a.check_compatible(b);
    TruncatedSeries r(a.orders_, a.cap_);
    const TruncatedSeries& s = a.coeffs_.size() <= b.coeffs_.size() ? a : b;
    const TruncatedSeries& l = a.coeffs_.size() <= b.coeffs_.size() ? b : a;
    const size_t n = a.orders_.size();
    ExpVec e(n);
    for (const auto& [es, cs] : s.coeffs_) {
        for (const auto& [el, cl] : l.coeffs_) {
            bool ok = true;
            for (size_t i = 0; i < n; ++i) {
                e[i] = es[i] + el[i];
                if (e[i] > a.orders_[i]) { ok = false; break; }
            }
            if (!ok || (a.cap_ != TruncatedSeries::kNoCap && total_degree(e) > a.cap_)) continue;
            r.add_term(e, cs * cl);
        }
    }
    return r;
}

TruncatedSeries TruncatedSeries::scaled(const Rational& c) const {
    TruncatedSeries r(orders_, cap_);
    if (c.is_zero()) return r;
    for (const auto& [e, v] : coeffs_) r.coeffs_.emplace(e, v * c);
    return r;
}

TruncatedSeries TruncatedSeries::shifted_down(int v) const {
    TruncatedSeries r(orders_, cap_);
    for (const auto& [e, c] : coeffs_) {
        if (e.at(v) == 0) continue;
        ExpVec e2 = e;
        --e2[v];
        r.coeffs_.emplace(std::move(e2), c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::substituted_zero(int v) const {
    TruncatedSeries r(orders_, cap_);
    for (const auto& [e, c] : coeffs_)
        if (e.at(v) == 0) r.coeffs_.emplace(e, c);
    return r;
}

TruncatedSeries TruncatedSeries::embedded(std::vector<uint32_t> new_orders, int64_t new_cap,
                                          const std::vector<int>& mapping) const {
    if (mapping.size() != orders_.size())
        throw input_error("TruncatedSeries::embedded: mapping length != arity");
    TruncatedSeries r(std::move(new_orders), new_cap);
    const size_t n = r.orders_.size();
    for (const auto& [e, c] : coeffs_) {
        ExpVec e2(n, 0);
        for (size_t i = 0; i < mapping.size(); ++i) {
            if (e[i] == 0) continue;
            e2.at(mapping[i]) += e[i];
        }
        r.add_term(e2, c);
    }
    return r;
}

TruncatedSeries TruncatedSeries::truncated(std::vector<uint32_t> new_orders,
                                           int64_t new_cap) const {
    TruncatedSeries r(std::move(new_orders), new_cap);
    if (r.orders_.size() != orders_.size())
        throw input_error("TruncatedSeries::truncated: arity change");
    for (const auto& [e, c] : coeffs_)
        if (r.in_window(e)) r.coeffs_.emplace(e, c);
    return r;
}

namespace {

// 1 / (1 + p) with p constant-term-free, truncated.
TruncatedSeries invert_one_plus(const TruncatedSeries& p) {
    TruncatedSeries out =
        TruncatedSeries::constant(1, p.orders(), p.total_cap());
    TruncatedSeries term = out;
    int64_t bound = std::accumulate(p.orders().begin(), p.orders().end(), int64_t{0});
    if (p.total_cap() != TruncatedSeries::kNoCap) bound = std::min(bound, p.total_cap());
    for (int64_t k = 0; k < bound; ++k) {
        term = -(term * p);
        if (term.is_zero()) break;
        out += term;
    }
    return out;
}

}  // namespace

TruncatedSeries taylor_expand(const RationalFunction& f, std::vector<uint32_t> orders,
                              int64_t total_cap) {
    if (static_cast<int>(orders.size()) != f.arity())
        throw input_error("taylor_expand: orders length != arity");
    TruncatedSeries s = TruncatedSeries::from_polynomial(f.numerator(), orders, total_cap);
    for (const auto& fac : f.denominator()) {
        Polynomial tail = fac.poly;
        tail.add_term(ExpVec(f.arity(), 0), Rational(-1));  // p = factor - 1
        TruncatedSeries inv =
            invert_one_plus(TruncatedSeries::from_polynomial(tail, orders, total_cap));
        for (uint32_t k = 0; k < fac.exp; ++k) s *= inv;
    }
    return s;
}

}  // namespace qk1
