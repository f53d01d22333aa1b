#ifndef ZPE_INJECTIVITY_HPP
#define ZPE_INJECTIVITY_HPP

#include "zpe/compress.hpp"
#include "zpe/galois_ring.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace zpe {

// The value-pair relation R^i_{alpha,beta} of two trace sequences read
// modulo p^i. With delta_nonvanishing set, time steps with
// tr(delta * alpha * eta^t) = 0 mod p are excluded (the R-tilde variant).
struct PairRelation {
    std::uint32_t level = 0;
    std::uint64_t modulus = 0; // p^level
    OElem alpha, beta;
    std::vector<std::pair<std::uint64_t, std::uint64_t>> pairs; // sorted, unique
};

PairRelation relation(const GaloisCtx& ctx, const OElem& alpha, const OElem& beta,
                      std::uint32_t level, bool delta_nonvanishing = false);

// Disjoint partition of Z/p^i Z; classes are sorted and ordered by their
// smallest element.
struct Partition {
    std::uint64_t universe = 0;
    std::vector<std::vector<std::uint64_t>> classes;
    bool operator==(const Partition&) const = default;
};

// Equivalence closure of the relation (union-find over its pairs); untouched
// elements become singletons.
Partition closure_partition(const PairRelation& rel);

// Precomputed dense tables over O for fast sequence comparison: traces,
// the multiplication-by-eta permutation, the units and orbit representatives
// of O^x / <eta>.
struct OrbitIndex {
    const GaloisCtx& ctx;
    std::uint64_t period;               // order of eta
    std::vector<std::uint64_t> trace_of; // by O-index
    std::vector<std::uint32_t> next;     // O-index of z*eta
    std::vector<std::uint32_t> units;    // O-indices of units, ascending
    std::vector<std::uint32_t> reps;     // orbit representatives, ascending

    explicit OrbitIndex(const GaloisCtx& ctx);
};

// Whether Phi_psi(s_alpha) = Phi_psi(s_beta), decided BOTH as constancy of
// psi on the closure classes AND by direct pointwise comparison; the two
// routes must agree. alpha = beta is rejected as degenerate.
bool compressed_equal(const CompressingMap& map, const GaloisCtx& ctx, const OElem& alpha,
                      const OElem& beta);

struct OracleResult {
    bool injective = false;
    // First failing pair in scan order (orbit representative, unit).
    std::optional<std::pair<OElem, OElem>> witness;
};

// Brute-force entropy-preservation oracle. Exploits shift covariance: alpha
// ranges over representatives of O^x / <eta> while beta ranges over all units.
OracleResult oracle_injective(const CompressingMap& map, const GaloisCtx& ctx,
                              std::uint64_t budget = 1'000'000'000);
OracleResult oracle_injective(const CompressingMap& map, const OrbitIndex& index,
                              std::uint64_t budget = 1'000'000'000);

// One orbit table per nontrivial root of unity of prime order dividing p-1.
struct CriterionTables {
    std::vector<std::uint64_t> omegas;
    std::vector<std::vector<std::vector<std::uint64_t>>> orbits; // per omega
    std::vector<std::vector<std::uint64_t>> unit_cosets;         // a + p^{e-1}R
    std::vector<std::vector<std::uint64_t>> p_cosets;            // over a in pR
};
CriterionTables build_criterion_tables(const RingCtx& ring);

// Exact criterion: injective iff (i) for every prime m | p-1 and every m-th
// root of unity w != 1 some multiplicative orbit {a w^i} is non-constant
// under psi, and (ii) some unit coset a + p^{e-1}R is non-constant.
// Requires f primitive with delta_bar^2 outside F_p (enforced).
bool criterion_injective(const CompressingMap& map, const GaloisCtx& ctx);
bool criterion_injective(const CompressingMap& map, const CriterionTables& tables);

// Which of the three collapse statements hold for a non-entropy-preserving
// map: (I) psi constant on {a w^i} for all a in R^x (all of R when f is
// strongly primitive) for some root of unity w, (II) psi constant on every
// unit coset a + p^{e-1}R, (III) psi constant on a + p^{e-1}R for all a in pR.
struct FailureStatements {
    bool orbit_collapse = false;      // (I)
    bool unit_coset_collapse = false; // (II)
    bool p_coset_collapse = false;    // (III)
    std::optional<std::uint64_t> omega; // a witness for (I)
    bool any() const { return orbit_collapse || unit_coset_collapse || p_coset_collapse; }
};
FailureStatements classify_failure(const CompressingMap& map, const GaloisCtx& ctx);
FailureStatements classify_failure(const CompressingMap& map, const OrbitIndex& index);

// gamma = beta/alpha = gamma_0(1 + gamma_ell p^ell) when gamma reduces into
// F_p; ell = max{i : gamma = z mod p^i O for some z in R}.
struct GammaDecomposition {
    OElem gamma;
    bool rational = false;   // gamma bar in F_p
    std::uint32_t ell = 0;   // defined when rational
    RElem gamma0 = 0;        // smallest nonnegative representative mod p^ell
    std::optional<FqElem> gamma_ell_bar; // present when rational and ell < e
};
GammaDecomposition gamma_decompose(const GaloisCtx& ctx, const OElem& alpha, const OElem& beta);

// The four clauses of the exceptional configuration: delta_bar outside F_p,
// delta_bar^2 in F_p^x, gamma bar outside F_p, delta_bar/gamma bar in F_p^x.
struct Condition1Report {
    bool delta_outside_prime_field = false;
    bool delta_sq_unit_in_prime_field = false;
    bool gamma_outside_prime_field = false;
    bool delta_over_gamma_unit_in_prime_field = false;
    bool holds() const {
        return delta_outside_prime_field && delta_sq_unit_in_prime_field &&
               gamma_outside_prime_field && delta_over_gamma_unit_in_prime_field;
    }
};
Condition1Report condition1_check(const GaloisCtx& ctx, const OElem& alpha, const OElem& beta);

// Predicted closure partition at level e. Rational gamma: classes
// {a gamma_0^i} + p^ell R. Irrational gamma with Condition 1 false: the
// single class R. Otherwise no prediction is made.
struct PartitionPrediction {
    std::optional<Partition> partition;
    std::string reason; // "rational-orbit", "irrational-single-class",
                        // "condition1-holds", "not-strongly-primitive"
};
PartitionPrediction predict_partition(const GaloisCtx& ctx, const OElem& alpha,
                                      const OElem& beta);

// Exhaustive census of maps R -> {0..k-1}: entropy-preserving count by the
// exact criterion, the observed proportion and the closed-form lower bound
// 1 - k^{-(p-1)^2 p^{e-2}} - k^{(1-p^e)/2} log2(p).
struct CensusResult {
    std::uint64_t total = 0;
    std::uint64_t entropy_preserving = 0;
    double proportion = 0.0;
    double bound = 0.0;
};
CensusResult census(const GaloisCtx& ctx, std::uint64_t alphabet,
                    std::uint64_t budget = 10'000'000, unsigned workers = 1);

} // namespace zpe

#endif
