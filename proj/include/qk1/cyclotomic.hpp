#pragma once

#include <string>

#include "qk1/polynomial.hpp"

namespace qk1 {

// Exact element a + b*zeta of the degree-2 cyclotomic extension, zeta a
// fixed primitive root of unity of order 3 (zeta^2 = -1 - zeta) or order 4
// (zeta^2 = -1).  Plain rationals carry order 0 and combine with either
// extension; mixing two distinct nonzero orders is an error.
class Cyclotomic {
public:
    Cyclotomic() : order_(0), a_(0), b_(0) {}
    Cyclotomic(long n) : order_(0), a_(n), b_(0) {}  // NOLINT(google-explicit-constructor)
    Cyclotomic(Rational r) : order_(0), a_(std::move(r)), b_(0) {}  // NOLINT
    Cyclotomic(int order, Rational a, Rational b);

    static Cyclotomic zeta(int order) { return Cyclotomic(order, 0, 1); }

    int order() const { return order_; }
    const Rational& re() const { return a_; }       // coordinate along 1
    const Rational& zeta_coord() const { return b_; }  // coordinate along zeta

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool is_one() const { return b_.is_zero() && a_.is_one(); }
    bool is_rational() const { return b_.is_zero(); }
    Rational rational_part() const;

    Cyclotomic conj() const;
    Cyclotomic inverse() const;
    Cyclotomic pow(unsigned e) const;

    Cyclotomic operator-() const { return Cyclotomic(order_, -a_, -b_); }
    Cyclotomic& operator+=(const Cyclotomic& o);
    Cyclotomic& operator-=(const Cyclotomic& o) { return *this += -o; }
    Cyclotomic& operator*=(const Cyclotomic& o);
    Cyclotomic& operator/=(const Cyclotomic& o) { return *this *= o.inverse(); }
    friend Cyclotomic operator+(Cyclotomic x, const Cyclotomic& y) { x += y; return x; }
    friend Cyclotomic operator-(Cyclotomic x, const Cyclotomic& y) { x -= y; return x; }
    friend Cyclotomic operator*(Cyclotomic x, const Cyclotomic& y) { x *= y; return x; }
    friend Cyclotomic operator/(Cyclotomic x, const Cyclotomic& y) { x /= y; return x; }

    friend bool operator==(const Cyclotomic& x, const Cyclotomic& y) {
        return x.a_ == y.a_ && x.b_ == y.b_ && (x.b_.is_zero() || x.order_ == y.order_);
    }
    friend bool operator!=(const Cyclotomic& x, const Cyclotomic& y) { return !(x == y); }

    std::string str() const;

private:
    static int merge_order(int x, int y);

    int order_;
    Rational a_, b_;
};

using CycPolynomial = PolynomialT<Cyclotomic>;

// Fails with internal_error if any coefficient has a nonzero zeta coordinate.
Polynomial to_rational_polynomial(const CycPolynomial& p);

}  // namespace qk1
