#include "qk1/rational_function.hpp"

#include <algorithm>

namespace qk1 {

namespace {

bool factor_less(const DenominatorFactor& a, const DenominatorFactor& b) {
    return compare(a.poly, b.poly) < 0;
}

}  // namespace

RationalFunction::RationalFunction(Polynomial num, std::vector<DenominatorFactor> den)
    : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

void RationalFunction::normalize() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    // Unit-normalize factors: constant term 1, pushing scalars into the numerator.
    std::vector<DenominatorFactor> factors;
    factors.reserve(den_.size());
    for (auto& f : den_) {
        if (f.exp == 0) continue;
        if (f.poly.arity() != num_.arity())
            throw input_error("RationalFunction: factor arity mismatch");
        Rational c = f.poly.constant_term();
        if (c.is_zero())
            throw internal_error("RationalFunction: denominator factor with zero constant term");
        if (!c.is_one()) {
            f.poly = f.poly.scaled(c.inverse());
            num_ = num_.scaled(c.pow(f.exp).inverse());
        }
        if (f.poly.is_constant()) continue;  // factor is exactly 1
        factors.push_back(std::move(f));
    }
    // Cancel factors that exactly divide the numerator.  Two fixed-point
    // evaluations filter out most non-divisors before the division attempt:
    // if f(pt) = 0 but num(pt) != 0, f cannot divide num.
    if (!factors.empty()) {
        const std::vector<Rational> ones(num_.arity(), Rational(1));
        const std::vector<Rational> alt(num_.arity(), Rational(-1));
        Rational n_ones = num_.eval(ones), n_alt = num_.eval(alt);
        for (auto& f : factors) {
            while (f.exp > 0) {
                if ((f.poly.eval(ones).is_zero() && !n_ones.is_zero()) ||
                    (f.poly.eval(alt).is_zero() && !n_alt.is_zero()))
                    break;
                auto q = num_.divided_by(f.poly);
                if (!q) break;
                num_ = std::move(*q);
                --f.exp;
                n_ones = num_.eval(ones);
                n_alt = num_.eval(alt);
            }
        }
    }
    std::erase_if(factors, [](const DenominatorFactor& f) { return f.exp == 0; });
    // Merge equal factors, sort canonically.
    std::sort(factors.begin(), factors.end(), factor_less);
    den_.clear();
    for (auto& f : factors) {
        if (!den_.empty() && den_.back().poly == f.poly)
            den_.back().exp += f.exp;
        else
            den_.push_back(std::move(f));
    }
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction::sum({a, b});
}

std::vector<DenominatorFactor> RationalFunction::union_factors(
    std::vector<DenominatorFactor> a, const std::vector<DenominatorFactor>& b) {
    for (const auto& f : b) {
        auto it = std::lower_bound(a.begin(), a.end(), f, factor_less);
        if (it != a.end() && it->poly == f.poly)
            it->exp = std::max(it->exp, f.exp);
        else
            a.insert(it, f);
    }
    return a;
}

std::vector<const Polynomial*> RationalFunction::complement_list(
    const std::vector<DenominatorFactor>& all, const std::vector<DenominatorFactor>& have) {
    std::vector<const Polynomial*> out;
    for (const auto& f : all) {
        uint32_t h = 0;
        for (const auto& tf : have)
            if (tf.poly == f.poly) { h = tf.exp; break; }
        for (uint32_t k = h; k < f.exp; ++k) out.push_back(&f.poly);
    }
    return out;
}

RationalFunction RationalFunction::sum(const std::vector<RationalFunction>& terms) {
    if (terms.empty()) throw input_error("RationalFunction::sum: no terms");
    const int a = terms[0].arity();
    for (const auto& t : terms)
        if (t.arity() != a) throw input_error("RationalFunction: arity mismatch");
    std::vector<DenominatorFactor> uni;
    for (const auto& t : terms) uni = union_factors(std::move(uni), t.den_);
    Polynomial::Accumulator acc(a);
    for (const auto& t : terms) {
        if (t.is_zero()) continue;
        acc.add(Polynomial::multiply_many(t.num_, complement_list(uni, t.den_)));
    }
    return RationalFunction(acc.take(), std::move(uni));
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction::sum({a, -b});
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    if (a.arity() != b.arity()) throw input_error("RationalFunction: arity mismatch");
    std::vector<DenominatorFactor> den = a.den_;
    den.insert(den.end(), b.den_.begin(), b.den_.end());
    return RationalFunction(a.num_ * b.num_, std::move(den));
}

RationalFunction RationalFunction::scaled(const Rational& c) const {
    if (c.is_zero()) return zero(arity());
    return RationalFunction(num_.scaled(c), den_);
}

RationalFunction RationalFunction::substituted_zero(int v) const {
    Polynomial n = num_.substituted_zero(v);
    std::vector<DenominatorFactor> den;
    den.reserve(den_.size());
    for (const auto& f : den_) den.push_back({f.poly.substituted_zero(v), f.exp});
    return RationalFunction(std::move(n), std::move(den));
}

RationalFunction RationalFunction::embedded(int new_arity, const std::vector<int>& mapping) const {
    Polynomial n = num_.embedded(new_arity, mapping);
    std::vector<DenominatorFactor> den;
    den.reserve(den_.size());
    for (const auto& f : den_) den.push_back({f.poly.embedded(new_arity, mapping), f.exp});
    return RationalFunction(std::move(n), std::move(den));
}

RationalFunction RationalFunction::regular_part(int v) const {
    return regular_part(v, substituted_zero(v));
}

RationalFunction RationalFunction::regular_part(int v, const RationalFunction& slice_at_zero) const {
    RationalFunction d = *this - slice_at_zero;
    if (d.is_zero()) return zero(arity());
    if (d.num_.min_degree_in(v) < 1)
        throw internal_error("regular_part: combined numerator not divisible by variable");
    return RationalFunction(d.num_.shifted_down(v, 1), std::move(d.den_));
}

RationalFunction RationalFunction::inverted_variable(int v) const {
    if (num_.is_zero()) return zero(arity());
    int64_t net = -static_cast<int64_t>(num_.degree_in(v));
    Polynomial n = num_.reversed_in(v);
    std::vector<DenominatorFactor> den;
    den.reserve(den_.size());
    Rational scale(1);
    for (const auto& f : den_) {
        net += static_cast<int64_t>(f.poly.degree_in(v)) * f.exp;
        Polynomial rev = f.poly.reversed_in(v);
        Rational c = rev.constant_term();
        if (c.is_zero())
            throw unsupported_error(
                "inversion unsupported: denominator factor not regular at origin after "
                "substitution");
        scale *= c.pow(f.exp);
        den.push_back({rev.scaled(c.inverse()), f.exp});
    }
    if (net > 0) {
        n = n.shifted_up(v, static_cast<uint32_t>(net));
    } else if (net < 0) {
        if (n.min_degree_in(v) < static_cast<uint32_t>(-net))
            throw unsupported_error("inversion unsupported: pole at origin after substitution");
        n = n.shifted_down(v, static_cast<uint32_t>(-net));
    }
    RationalFunction r(n.scaled(scale.inverse()), std::move(den));
    if (!r.is_zero() && r.num_.min_degree_in(v) < 1)
        throw unsupported_error("inversion unsupported: result does not vanish at origin");
    return r;
}

bool RationalFunction::has_pole_at(const std::vector<Rational>& point) const {
    for (const auto& f : den_)
        if (f.poly.eval(point).is_zero()) return true;
    return false;
}

Rational RationalFunction::eval_at(const std::vector<Rational>& point) const {
    Rational d(1);
    for (const auto& f : den_) {
        Rational fv = f.poly.eval(point);
        if (fv.is_zero()) throw input_error("eval_at: pole at evaluation point");
        d *= fv.pow(f.exp);
    }
    return num_.eval(point) / d;
}

}  // namespace qk1
