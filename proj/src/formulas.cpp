#include "qk1/formulas.hpp"

namespace qk1::formulas {

namespace {

Polynomial one_minus(int arity, int v, uint32_t k) {
    return Polynomial::one_plus(arity, v, k, Rational(-1));
}

Polynomial one_plus(int arity, int v, uint32_t k = 1) {
    return Polynomial::one_plus(arity, v, k, Rational(1));
}

// 1 + x_v + x_v^2
Polynomial cyclotomic3(int arity, int v) {
    Polynomial p = Polynomial::constant(arity, 1);
    ExpVec e(arity, 0);
    e[v] = 1;
    p.add_term(e, 1);
    e[v] = 2;
    p.add_term(e, 1);
    return p;
}

Rational factorial_over(int n, long den) {
    Integer f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return Rational(f, Integer(den));
}

// c0 + ch*(q/(1+q) - sum_i q_i/(1+q_i)), all over (1+q) prod_i (1+q_i).
// Common shape of the Z/2-stratum brackets.
RationalFunction z2_bracket(int n, const Rational& c0, const Rational& ch) {
    int a = n + 1;
    std::vector<DenominatorFactor> base;
    for (int v = 0; v < a; ++v) base.push_back({one_plus(a, v), 1});
    RationalFunction body(Polynomial::constant(a, 1), base);
    RationalFunction inner = RationalFunction::constant(a, c0);
    for (int v = 0; v < a; ++v) {
        ExpVec e(a, 0);
        e[v] = 1;
        RationalFunction t(Polynomial::monomial(a, e, v == 0 ? ch : -ch), {{one_plus(a, v), 1}});
        inner += t;
    }
    return body * inner;
}

// Multilinear numerator from (subset -> coefficient) over the given factors.
// Subsets are bitmasks over variables 0..n (bit v set = x_v present).
RationalFunction multilinear_over(int n, std::initializer_list<std::pair<unsigned, long>> coeffs,
                                  long scale_den, std::vector<DenominatorFactor> den) {
    int a = n + 1;
    Polynomial num(a);
    for (auto [mask, c] : coeffs) {
        ExpVec e(a, 0);
        for (int v = 0; v < a; ++v)
            if (mask & (1u << v)) e[v] = 1;
        num.add_term(e, Rational(c, scale_den));
    }
    return RationalFunction(std::move(num), std::move(den));
}

}  // namespace

RationalFunction one_point_L() {
    return RationalFunction(Polynomial::constant(1, 1),
                            {{one_minus(1, 0, 4), 1}, {one_minus(1, 0, 6), 1}});
}

RationalFunction one_point_Linv() {
    Polynomial num = Polynomial::constant(1, 1);
    num.add_term({4}, -1);
    num.add_term({6}, -1);
    return RationalFunction(std::move(num), {{one_minus(1, 0, 4), 1}, {one_minus(1, 0, 6), 1}});
}

RationalFunction one_point_mixed() {
    RationalFunction a(Polynomial::constant(2, 1),
                       {{one_minus(2, 1, 4), 1}, {one_minus(2, 1, 6), 1}});
    RationalFunction b(Polynomial::monomial(2, {10, 0}, 1),
                       {{one_minus(2, 0, 4), 1}, {one_minus(2, 0, 6), 1}});
    Polynomial hodge = Polynomial::constant(2, 1);
    hodge.add_term({1, 1}, -1);
    RationalFunction h(Polynomial::constant(2, 1), {{std::move(hodge), 1}});
    return h * (a - b);
}

RationalFunction main_term(int n) {
    if (n < 2) throw input_error("main_term: requires n >= 2");
    int a = n + 1;
    ExpVec e(a, 1);
    e[0] = 0;
    Polynomial num = Polynomial::monomial(a, e, factorial_over(n - 1, 24));
    std::vector<DenominatorFactor> den;
    den.push_back({one_minus(a, 0, 1), 1});
    for (int v = 1; v < a; ++v) den.push_back({one_minus(a, v, 1), 2});
    return RationalFunction(std::move(num), std::move(den));
}

RationalFunction sigma4_z2_part() { return z2_bracket(4, Rational(3, 4), Rational(1, 2)); }

RationalFunction sigma3_z2_part() { return z2_bracket(3, Rational(-3, 4), Rational(1, 2)); }

RationalFunction sigma3_z3_part() {
    // (-1 + q - (2+q)e1 - (1+2q)e2 + (1-q)e3) / (3 (1+q+q^2) prod (1+q_i+q_i^2))
    constexpr unsigned Q = 1u;  // bit 0 = hodge variable
    std::vector<DenominatorFactor> den;
    for (int v = 0; v < 4; ++v) den.push_back({cyclotomic3(4, v), 1});
    return multilinear_over(
        3,
        {{0u, -1},       {Q, 1},
         {0b0010u, -2},  {0b0100u, -2},  {0b1000u, -2},
         {Q | 0b0010u, -1}, {Q | 0b0100u, -1}, {Q | 0b1000u, -1},
         {0b0110u, -1},  {0b1100u, -1},  {0b1010u, -1},
         {Q | 0b0110u, -2}, {Q | 0b1100u, -2}, {Q | 0b1010u, -2},
         {0b1110u, 1},   {Q | 0b1110u, -1}},
        3, std::move(den));
}

RationalFunction sigma2_z2_part() { return z2_bracket(2, Rational(3, 8), Rational(1, 4)); }

RationalFunction sigma2_z4_part() {
    // (1 - q + q1 + q2 + q q1 + q q2 - q1 q2 + q q1 q2) / (4 (1+q^2)(1+q1^2)(1+q2^2))
    constexpr unsigned Q = 1u, A = 2u, B = 4u;
    std::vector<DenominatorFactor> den;
    for (int v = 0; v < 3; ++v) den.push_back({one_plus(3, v, 2), 1});
    return multilinear_over(2,
                            {{0u, 1}, {Q, -1}, {A, 1}, {B, 1},
                             {Q | A, 1}, {Q | B, 1}, {A | B, -1}, {Q | A | B, 1}},
                            4, std::move(den));
}

RationalFunction sigma2_z3_part() {
    // (1 - q + 2 q1 + 2 q2 + q q1 + q q2 + q1 q2 + 2 q q1 q2)
    //   / (3 (1+q+q^2)(1+q1+q1^2)(1+q2+q2^2)).
    // The top coefficient is +2: recomputing the Z/3 fixed-point sum (the
    // same computation that yields the three-point analogue exactly) gives
    // +2, and the cyclotomic oracle asserts this transcription.
    constexpr unsigned Q = 1u, A = 2u, B = 4u;
    std::vector<DenominatorFactor> den;
    for (int v = 0; v < 3; ++v) den.push_back({cyclotomic3(3, v), 1});
    return multilinear_over(2,
                            {{0u, 1}, {Q, -1}, {A, 2}, {B, 2},
                             {Q | A, 1}, {Q | B, 1}, {A | B, 1}, {Q | A | B, 2}},
                            3, std::move(den));
}

RationalFunction sigma(int n) {
    if (n < 2) throw input_error("sigma: requires n >= 2");
    if (n >= 5) return RationalFunction::zero(n + 1);
    RationalFunction bracket =
        n == 4 ? sigma4_z2_part()
        : n == 3 ? sigma3_z2_part() + sigma3_z3_part()
                 : sigma2_z2_part() + sigma2_z4_part() + sigma2_z3_part();
    return insertion_prefactor(n) * bracket;
}

RationalFunction kawasaki_subtracted(int n) {
    if (n < 2) throw input_error("kawasaki_subtracted: requires n >= 2");
    return main_term(n) + sigma(n);
}

RationalFunction geometric(int arity, int v) {
    ExpVec e(arity, 0);
    e.at(v) = 1;
    return RationalFunction(Polynomial::monomial(arity, e, 1), {{one_minus(arity, v, 1), 1}});
}

RationalFunction insertion_prefactor(int n) {
    int a = n + 1;
    ExpVec e(a, 1);
    e[0] = 0;
    std::vector<DenominatorFactor> den;
    for (int v = 1; v < a; ++v) den.push_back({one_minus(a, v, 1), 1});
    return RationalFunction(Polynomial::monomial(a, e, 1), std::move(den));
}

RationalFunction strip_insertion_prefactor(const RationalFunction& f, int n) {
    int a = f.arity();
    Polynomial mult = Polynomial::constant(a, 1);
    for (int v = 1; v <= n; ++v) mult *= one_minus(a, v, 1);
    RationalFunction g = f * RationalFunction(std::move(mult));
    Polynomial num = g.numerator();
    for (int v = 1; v <= n; ++v) {
        if (num.min_degree_in(v) < 1)
            throw internal_error("strip_insertion_prefactor: numerator lacks q_i factor");
        num = num.shifted_down(v, 1);
    }
    return RationalFunction(std::move(num), g.denominator());
}

RationalFunction pushdown(const RationalFunction& prev, const RationalFunction& prev_at_q0,
                          const std::vector<int>& active_vars) {
    int a = prev.arity();
    RationalFunction factor = RationalFunction::constant(a, 1);
    for (int v : active_vars) factor += geometric(a, v);
    return factor * prev - prev.regular_part(0, prev_at_q0);
}

}  // namespace qk1::formulas
