#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "qk1/rational_function.hpp"

namespace qk1 {

// Multivariate Taylor expansion at the origin, truncated to a per-variable
// order vector and an optional total-degree cap.  Arithmetic is exact up to
// the truncation.
class TruncatedSeries {
public:
    using CoeffMap = std::map<ExpVec, Rational, GradedLexLess>;

    static constexpr int64_t kNoCap = -1;

    explicit TruncatedSeries(std::vector<uint32_t> orders, int64_t total_cap = kNoCap)
        : orders_(std::move(orders)), cap_(total_cap) {}

    static TruncatedSeries constant(const Rational& c, std::vector<uint32_t> orders,
                                    int64_t total_cap = kNoCap) {
        TruncatedSeries s(std::move(orders), total_cap);
        if (!c.is_zero()) s.coeffs_.emplace(ExpVec(s.arity(), 0), c);
        return s;
    }

    static TruncatedSeries from_polynomial(const Polynomial& p, std::vector<uint32_t> orders,
                                           int64_t total_cap = kNoCap);

    int arity() const { return static_cast<int>(orders_.size()); }
    const std::vector<uint32_t>& orders() const { return orders_; }
    int64_t total_cap() const { return cap_; }
    const CoeffMap& coefficients() const { return coeffs_; }
    bool is_zero() const { return coeffs_.empty(); }

    bool in_window(const ExpVec& e) const {
        for (size_t i = 0; i < orders_.size(); ++i)
            if (e[i] > orders_[i]) return false;
        return cap_ == kNoCap || total_degree(e) <= cap_;
    }

    // Coefficient lookup; requesting an exponent outside the truncation
    // window is an input error (the value is unknown, not zero).
    Rational coefficient(const ExpVec& e) const;

    void add_term(const ExpVec& e, const Rational& c);

    TruncatedSeries operator-() const;
    friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
    friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
    TruncatedSeries& operator+=(const TruncatedSeries& o) { *this = *this + o; return *this; }
    TruncatedSeries& operator-=(const TruncatedSeries& o) { *this = *this - o; return *this; }
    TruncatedSeries& operator*=(const TruncatedSeries& o) { *this = *this * o; return *this; }
    TruncatedSeries scaled(const Rational& c) const;

    friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) {
        return a.orders_ == b.orders_ && a.cap_ == b.cap_ && a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TruncatedSeries& a, const TruncatedSeries& b) { return !(a == b); }

    // x_v^{-1} (s - s|_{x_v=0}): constant-slice drop and exponent shift.
    // Valid one order lower in x_v than the input.
    TruncatedSeries shifted_down(int v) const;
    TruncatedSeries substituted_zero(int v) const;
    TruncatedSeries embedded(std::vector<uint32_t> new_orders, int64_t new_cap,
                             const std::vector<int>& mapping) const;
    // Reduces to a tighter truncation window.
    TruncatedSeries truncated(std::vector<uint32_t> new_orders, int64_t new_cap) const;

    bool all_integral() const {
        for (const auto& [e, c] : coeffs_)
            if (!c.is_integer()) return false;
        return true;
    }

private:
    void check_compatible(const TruncatedSeries& o) const {
        if (orders_ != o.orders_ || cap_ != o.cap_)
            throw input_error("TruncatedSeries: incompatible truncation windows");
    }

    std::vector<uint32_t> orders_;
    int64_t cap_;
    CoeffMap coeffs_;
};

// Exact Taylor coefficients of f at the origin up to the given truncation.
// Each factor 1/(1+p)^e with p constant-term-free is expanded as the
// alternating geometric series, e-fold multiplied.
TruncatedSeries taylor_expand(const RationalFunction& f, std::vector<uint32_t> orders,
                              int64_t total_cap = TruncatedSeries::kNoCap);

}  // namespace qk1
