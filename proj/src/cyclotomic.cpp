#include "qk1/cyclotomic.hpp"

namespace qk1 {

Cyclotomic::Cyclotomic(int order, Rational a, Rational b)
    : order_(order), a_(std::move(a)), b_(std::move(b)) {
    if (order_ != 3 && order_ != 4) throw input_error("Cyclotomic: order must be 3 or 4");
    if (b_.is_zero()) order_ = 0;
}

int Cyclotomic::merge_order(int x, int y) {
    if (x == 0) return y;
    if (y == 0 || x == y) return x;
    throw input_error("Cyclotomic: mixing distinct extension orders");
}

Rational Cyclotomic::rational_part() const {
    if (!is_rational())
        throw internal_error("Cyclotomic: non-rational value " + str() +
                             " where a rational was asserted");
    return a_;
}

Cyclotomic Cyclotomic::conj() const {
    if (b_.is_zero()) return *this;
    // order 3: conj(zeta) = zeta^2 = -1 - zeta; order 4: conj(zeta) = -zeta.
    if (order_ == 3) return Cyclotomic(order_, a_ - b_, -b_);
    return Cyclotomic(order_, a_, -b_);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
    order_ = merge_order(order_, o.order_);
    a_ += o.a_;
    b_ += o.b_;
    if (b_.is_zero()) order_ = 0;
    return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
    int k = merge_order(order_, o.order_);
    Rational ac = a_ * o.a_, bd = b_ * o.b_, cross = a_ * o.b_ + b_ * o.a_;
    if (k == 3) {
        a_ = ac - bd;
        b_ = cross - bd;
    } else if (k == 4) {
        a_ = ac - bd;
        b_ = cross;
    } else {
        a_ = ac;
        b_ = Rational(0);
    }
    order_ = b_.is_zero() ? 0 : k;
    return *this;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw input_error("Cyclotomic: inverse of zero");
    if (is_rational()) return Cyclotomic(a_.inverse());
    Cyclotomic c = conj();
    Cyclotomic norm = *this * c;
    return c * Cyclotomic(norm.rational_part().inverse());
}

Cyclotomic Cyclotomic::pow(unsigned e) const {
    Cyclotomic r(1), b(*this);
    for (; e; e >>= 1) {
        if (e & 1) r *= b;
        if (e > 1) b *= b;
    }
    return r;
}

std::string Cyclotomic::str() const {
    if (b_.is_zero()) return a_.str();
    std::string s = a_.is_zero() ? "" : a_.str();
    if (!s.empty()) s += b_.sign() > 0 ? " + " : " - ";
    else if (b_.sign() < 0) s += "-";
    Rational ab = b_.sign() < 0 ? -b_ : b_;
    if (!ab.is_one()) s += ab.str() + "*";
    s += "zeta" + std::to_string(order_);
    return s;
}

Polynomial to_rational_polynomial(const CycPolynomial& p) {
    Polynomial out(p.arity());
    for (const auto& [e, c] : p.terms()) out.add_term(e, c.rational_part());
    return out;
}

}  // namespace qk1
