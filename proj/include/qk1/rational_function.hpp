#pragma once

#include <cstdint>
#include <vector>

#include "qk1/polynomial.hpp"

namespace qk1 {

// One denominator factor: a polynomial with constant term exactly 1, raised
// to a positive power.
struct DenominatorFactor {
    Polynomial poly;
    uint32_t exp = 1;
};

// Numerator polynomial over a multiset of denominator factors.  Regular at
// the origin by construction (every factor has constant term 1), so a Taylor
// expansion there always exists.  Canonical after normalize(): no factor
// exactly divides the numerator, factors sorted and merged, zero numerator
// has an empty denominator.
class RationalFunction {
public:
    explicit RationalFunction(int arity = 0) : num_(arity) {}

    explicit RationalFunction(Polynomial num) : num_(std::move(num)) {}

    RationalFunction(Polynomial num, std::vector<DenominatorFactor> den);

    static RationalFunction zero(int arity) { return RationalFunction(arity); }
    static RationalFunction constant(int arity, const Rational& c) {
        return RationalFunction(Polynomial::constant(arity, c));
    }
    // 1 / (1 + c * x_v^k)
    static RationalFunction inv_one_plus(int arity, int v, uint32_t k, const Rational& c) {
        return RationalFunction(Polynomial::constant(arity, 1),
                                {{Polynomial::one_plus(arity, v, k, c), 1}});
    }

    int arity() const { return num_.arity(); }
    bool is_zero() const { return num_.is_zero(); }
    const Polynomial& numerator() const { return num_; }
    const std::vector<DenominatorFactor>& denominator() const { return den_; }

    RationalFunction operator-() const { return RationalFunction(-num_, den_); }

    // Sum over one shared union denominator; one normalization pass at the
    // end instead of one per pairwise addition.
    static RationalFunction sum(const std::vector<RationalFunction>& terms);

    // Multiset union (max multiplicities), canonically sorted.
    static std::vector<DenominatorFactor> union_factors(std::vector<DenominatorFactor> a,
                                                        const std::vector<DenominatorFactor>& b);

    // Factors of `all` missing from `have`, with multiplicity; pointers into
    // `all` (which must outlive the result).
    static std::vector<const Polynomial*> complement_list(
        const std::vector<DenominatorFactor>& all, const std::vector<DenominatorFactor>& have);

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    RationalFunction& operator+=(const RationalFunction& o) { *this = *this + o; return *this; }
    RationalFunction& operator-=(const RationalFunction& o) { *this = *this - o; return *this; }
    RationalFunction& operator*=(const RationalFunction& o) { *this = *this * o; return *this; }

    RationalFunction scaled(const Rational& c) const;

    // Exact equality as rational functions (cross-multiplied identity),
    // independent of representation.
    bool equals(const RationalFunction& o) const { return (*this - o).is_zero(); }

    // Canonical-form equality: identical numerators and factor multisets.
    friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
        return a.num_ == b.num_ && a.den_.size() == b.den_.size() &&
               std::equal(a.den_.begin(), a.den_.end(), b.den_.begin(),
                          [](const DenominatorFactor& x, const DenominatorFactor& y) {
                              return x.exp == y.exp && x.poly == y.poly;
                          });
    }
    friend bool operator!=(const RationalFunction& a, const RationalFunction& b) {
        return !(a == b);
    }

    // Re-establishes canonical form; idempotent.
    void normalize();

    RationalFunction substituted_zero(int v) const;
    RationalFunction embedded(int new_arity, const std::vector<int>& mapping) const;

    // g with x_v * g == f - f|_{x_v=0}, exactly.  The combined numerator is
    // provably divisible by x_v; failure signals an implementation bug.
    RationalFunction regular_part(int v) const;
    // Same, with the caller-supplied slice f|_{x_v=0} (memoized by the engine).
    RationalFunction regular_part(int v, const RationalFunction& slice_at_zero) const;

    // f(..., 1/x_v, ...) as a canonical RationalFunction.  Requires the
    // result to be regular and vanishing at x_v = 0; otherwise throws
    // unsupported_error ("inversion unsupported").
    RationalFunction inverted_variable(int v) const;

    // Exact evaluation; throws input_error on a pole.
    Rational eval_at(const std::vector<Rational>& point) const;
    // True when some denominator factor vanishes at the point.
    bool has_pole_at(const std::vector<Rational>& point) const;

private:
    Polynomial num_;
    std::vector<DenominatorFactor> den_;
};

}  // namespace qk1
