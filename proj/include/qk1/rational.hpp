#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "qk1/errors.hpp"

namespace qk1 {

using Integer = mpz_class;

// Exact rational number, always in lowest terms with positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT(google-explicit-constructor)
    Rational(long n, long d) : v_(n, d) {
        if (d == 0) throw input_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const Integer& n) : v_(n) {}
    Rational(const Integer& n, const Integer& d) : v_(n, d) {
        if (d == 0) throw input_error("Rational: zero denominator");
        v_.canonicalize();
    }
    explicit Rational(const mpq_class& v) : v_(v) { v_.canonicalize(); }

    // Parses "a" or "a/b" in decimal.
    static Rational from_string(const std::string& s);

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Integer numerator() const { return v_.get_num(); }
    Integer denominator() const { return v_.get_den(); }
    // Requires is_integer().
    Integer to_integer() const {
        if (!is_integer()) throw internal_error("Rational::to_integer on non-integer " + str());
        return v_.get_num();
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.is_zero()) throw input_error("Rational: division by zero");
        v_ /= o.v_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
    friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
    friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
    friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }

    Rational inverse() const {
        if (is_zero()) throw input_error("Rational: inverse of zero");
        return Rational(mpq_class(1 / v_));
    }
    Rational pow(unsigned e) const {
        Rational r(1), b(*this);
        for (; e; e >>= 1) {
            if (e & 1) r *= b;
            if (e > 1) b *= b;
        }
        return r;
    }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
    friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
    friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
    friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

    // "a/b" in lowest terms, "a" when b == 1.
    std::string str() const { return v_.get_str(); }

private:
    mpq_class v_;
};

inline Rational Rational::from_string(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw input_error("Rational: cannot parse '" + s + "'");
    if (v.get_den() == 0) throw input_error("Rational: zero denominator in '" + s + "'");
    v.canonicalize();
    return Rational(v);
}

}  // namespace qk1
