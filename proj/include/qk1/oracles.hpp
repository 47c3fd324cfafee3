#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qk1/cyclotomic.hpp"
#include "qk1/engine.hpp"
#include "qk1/rational_function.hpp"

namespace qk1::oracles {

// ---------------------------------------------------------------------------
// Independent verification machinery.  Everything here recomputes paper
// quantities by a route disjoint from the production formulas it checks.
// ---------------------------------------------------------------------------

// #{(a,b) in Z_{>=0}^2 : 4a + 6b = d} — the dimension of the weight-2d
// graded piece of the ring generated by the weight-4 and weight-6 forms.
uint64_t modular_dim(uint32_t d);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // witness point or mismatch location on failure
};

struct Report {
    std::vector<CheckResult> checks;
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// Lattice-count agreement for d <= 200 plus the Eq.-(6) duality identity.
Report verify_one_point();

// --------------------------- P^1-stratum oracle ---------------------------

// First-order classes surviving on a one-dimensional stratum.
enum class ClassSymbol { CotangentLine, Hodge, ModuliCotangent };

// A rational-function body plus first-order jet coefficients; products of
// two or more class symbols vanish identically (the stratum is a curve).
class JetValue {
public:
    explicit JetValue(RationalFunction body) : body_(std::move(body)) {}

    static JetValue scalar(const RationalFunction& f) { return JetValue(f); }

    const RationalFunction& body() const { return body_; }
    void set_jet(ClassSymbol s, RationalFunction f) { jet_[s] = std::move(f); }
    RationalFunction jet(ClassSymbol s) const;

    JetValue operator*(const JetValue& o) const;

    // sum_s jet_s * integrals(s); the degree-0 body integrates to zero.
    RationalFunction integrate(const std::map<ClassSymbol, Rational>& integrals) const;

private:
    RationalFunction body_;
    std::map<ClassSymbol, RationalFunction> jet_;
};

struct StratumIntegrals {
    Rational c1_cotangent_line{1, 2};
    Rational c1_hodge{1, 2};
    Rational c1_moduli_cotangent{1, 2};
    std::map<ClassSymbol, Rational> as_map() const {
        return {{ClassSymbol::CotangentLine, c1_cotangent_line},
                {ClassSymbol::Hodge, c1_hodge},
                {ClassSymbol::ModuliCotangent, c1_moduli_cotangent}};
    }
};

// Builds the four-point Z/2-stratum integrand as a JetValue and integrates
// it against the stratum intersection numbers (all 1/2).
RationalFunction p1_stratum_integral(const StratumIntegrals& integrals);

// Asserts exact equality of the integral with the production four-point
// correction term; `expected` overrides the comparison target (used by
// mutation tests).
Report p1_stratum_check(std::optional<RationalFunction> expected = std::nullopt);

// ------------------------- cyclotomic fixed points -------------------------

// One group-element summand of a fixed-point sum over a point stratum:
//   numerator / [ prod_dirs (1 - nu) * (1 - q*mu) * prod_j (1 - q_j*lambda_j) ].
struct FixedPointSummand {
    Cyclotomic numerator;                     // e.g. (zeta-1)^n
    std::vector<Cyclotomic> conormal;         // weights nu on conormal directions
    Cyclotomic hodge_mult;                    // mu, the multiplier of q
    std::vector<Cyclotomic> insertion_mults;  // lambda_j, multipliers of q_j
};

// (1/order) * sum of summands, evaluated exactly in the cyclotomic
// extension.  The summand multiset must be conjugation-closed and the total
// rational; violations throw verification_error.
RationalFunction cyclotomic_fixed_point_sum(int order, const std::vector<FixedPointSummand>& summands);

// The paper's printed Z/3 data for n insertions (n = 2 or 3), with the Hodge
// multiplier of the lambda = zeta summand left as a parameter, plus the
// conjugate summand.
std::vector<FixedPointSummand> z3_summands(int n, const Cyclotomic& hodge_mult);
// The printed Z/4 data (n = 2), Hodge multiplier parametrized (the display
// leaves it ambiguous).
std::vector<FixedPointSummand> z4_summands(const Cyclotomic& hodge_mult);

struct CharacterMatch {
    Cyclotomic hodge_mult;
    std::string name;
};

// Exhaustively tries Hodge multipliers (+-1, +-zeta, and for order 3 the
// conjugates +-zeta^2) and reports every assignment whose fixed-point sum
// equals the target exactly.
std::vector<CharacterMatch> character_search(int order, int n, const RationalFunction& target);

// --------------------------- identity testing -----------------------------

enum class IdentityVerdict { Identical, Different };

struct IdentityResult {
    IdentityVerdict verdict = IdentityVerdict::Identical;
    std::vector<Rational> witness;  // a point where f != g, when Different
};

// Evaluates f - g at `trials` random rational points avoiding poles; an
// all-equal outcome is confirmed by the exact cross-multiplied identity when
// the operands are small enough for that to be cheap.
IdentityResult random_point_identity(const RationalFunction& f, const RationalFunction& g,
                                     int trials, uint64_t seed = 0x51d1C0FFEEULL);

// ------------------------------ full suites -------------------------------

// fast: one-point + duality + slice identities.
// all:  fast + stratum/cyclotomic oracles + integrality, symmetry,
//       mode-agreement, specialization and known-value sweeps.
Report run_verify(Engine& engine, bool all);

}  // namespace qk1::oracles
