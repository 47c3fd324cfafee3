#pragma once

#include <vector>

#include "qk1/rational_function.hpp"

namespace qk1::formulas {

// Variable convention: index 0 is the Hodge series variable q (tracking
// powers of H^{-1}); index i >= 1 is q_i (tracking powers of L_i).
//
// The generating functions below are the closed forms the reduction scheme
// bottoms out in.  P_{n,m} denotes
//   chi(Mbar_{1,n}, 1/(1-q H^{-1}) prod_{i<=m} 1/(1-q_i L_i)).

// chi(Mbar_{1,1}, 1/(1-v L)) = 1/((1-v^4)(1-v^6)), arity 1.  The coefficient
// of v^d is the dimension of the weight-2d modular forms.
RationalFunction one_point_L();

// chi(Mbar_{1,1}, 1/(1-v L^{-1})) = (1-v^4-v^6)/((1-v^4)(1-v^6)), arity 1.
// Since H = L_1 on Mbar_{1,1}, this is the base value P_{1,0}.
RationalFunction one_point_Linv();

// chi(Mbar_{1,1}, 1/((1-q L^{-1})(1-q1 L))) — arity 2, the base value P_{1,1}:
//   1/(1-q q1) [ 1/((1-q1^4)(1-q1^6)) - q^10/((1-q^4)(1-q^6)) ].
RationalFunction one_point_mixed();

// Fundamental-class term of the subtracted n-point product, arity n+1:
//   (prod q_i/(1-q_i)) (n-1)!/(24 (1-q) prod (1-q_i)),  n >= 2.
RationalFunction main_term(int n);

// Twisted-sector corrections Sigma_n, arity n+1; zero for n >= 5, closed
// forms for n = 2, 3, 4.  n < 2 is an input error.
RationalFunction sigma(int n);

// main_term(n) + sigma(n): the generating function of
//   chi(Mbar_{1,n}, 1/(1-q H^{-1}) prod_i (1/(1-q_i L_i) - 1/(1-q_i))).
RationalFunction kawasaki_subtracted(int n);

// Individual bracket members of the Sigma corrections (without the
// prod q_i/(1-q_i) prefactor), named by the symmetry type of the stratum
// that produces them.  sigma() assembles these.
RationalFunction sigma4_z2_part();                 // n=4, (1+q)-structured
RationalFunction sigma3_z2_part();                 // n=3, (1+q)-structured
RationalFunction sigma3_z3_part();                 // n=3, (1+q+q^2)-structured
RationalFunction sigma2_z2_part();                 // n=2, (1+q)-structured
RationalFunction sigma2_z4_part();                 // n=2, (1+q^2)-structured
RationalFunction sigma2_z3_part();                 // n=2, (1+q+q^2)-structured

// String-equation pushdown: given prev = P_{n-1,m} and its q=0 slice,
// returns P_{n,m} = (1 - q^{-1} + sum_{v in active} x_v/(1-x_v)) prev
//                   + q^{-1} prev|_{q=0},
// with the q^{-1} combination evaluated exactly via the regular part.
RationalFunction pushdown(const RationalFunction& prev, const RationalFunction& prev_at_q0,
                          const std::vector<int>& active_vars);

// x_v / (1 - x_v).
RationalFunction geometric(int arity, int v);

// prod_{i=1..n} q_i/(1-q_i) at arity n+1.
RationalFunction insertion_prefactor(int n);

// Divides out the insertion prefactor prod_{i=1..n} q_i/(1-q_i); the
// numerator must be exactly divisible by prod q_i.
RationalFunction strip_insertion_prefactor(const RationalFunction& f, int n);

}  // namespace qk1::formulas
