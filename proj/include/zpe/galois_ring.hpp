#ifndef ZPE_GALOIS_RING_HPP
#define ZPE_GALOIS_RING_HPP

#include "zpe/residue_ring.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace zpe {

// Element of O = R[x]/(f) as coordinates in the basis 1, eta, ..., eta^{n-1}.
struct OElem {
    std::vector<std::uint64_t> c;
    bool operator==(const OElem&) const = default;
};

// Element of the residue field F_q = F_p[x]/(fbar), same basis mod p.
struct FqElem {
    std::vector<std::uint64_t> c;
    bool operator==(const FqElem&) const = default;
};

// True iff the monic polynomial (ascending coefficients) is irreducible over
// F_p; decided by trial division by all monic polynomials of degree <= n/2.
bool irreducible_mod_p(std::uint64_t p, std::span<const std::uint64_t> coeffs);

// The unramified extension O = R[x]/(f) together with its cached
// decomposition invariants: eta = zeta*u with zeta^{q-1} = 1, u in 1+pO,
// and delta_bar = ((u-1)/p) mod p. Immutable after construction.
struct GaloisCtx {
    RingCtx ring;
    std::uint32_t n;        // degree of f, >= 2
    std::uint64_t q;        // p^n
    std::vector<std::uint64_t> f;    // ascending, length n+1, monic
    std::vector<std::uint64_t> fbar; // f mod p

    OElem eta;              // class of x
    OElem zeta;             // Teichmuller part, eta^{q^{e-1}}
    OElem u;                // eta * zeta^{-1}, in 1+pO
    FqElem delta_bar;       // ((u-1)/p) mod p

    std::uint64_t zeta_order; // order of zeta (= order of eta bar in F_q^x)
    std::uint64_t u_order;    // order of u, a power of p
    std::uint64_t eta_order;  // zeta_order * u_order

    // f given as ascending coefficients; entries are canonicalized mod p^e.
    GaloisCtx(RingCtx ring, std::span<const std::uint64_t> coeffs);

    // --- arithmetic in O ---
    OElem o_zero() const { return OElem{std::vector<std::uint64_t>(n, 0)}; }
    OElem o_one() const;
    OElem o_scalar(RElem a) const;
    OElem o_add(const OElem& a, const OElem& b) const;
    OElem o_sub(const OElem& a, const OElem& b) const;
    OElem o_neg(const OElem& a) const;
    OElem o_mul(const OElem& a, const OElem& b) const;
    OElem o_pow(const OElem& a, std::uint64_t k) const;
    OElem o_inv(const OElem& a) const; // throws input_error for non-units
    bool is_unit(const OElem& a) const;

    // z -> z mod p (the natural map O -> F_q)
    FqElem reduce_mod_p(const OElem& z) const;
    // Exact division by p; throws input_error if some coefficient is not
    // divisible by p. The result is one representative of z/p.
    OElem div_exact_p(const OElem& z) const;

    // Trace O -> R, computed as the matrix trace of multiplication by z.
    RElem trace(const OElem& z) const;

    // --- arithmetic in F_q ---
    FqElem fq_zero() const { return FqElem{std::vector<std::uint64_t>(n, 0)}; }
    FqElem fq_one() const;
    FqElem fq_scalar(std::uint64_t a) const;
    FqElem fq_add(const FqElem& a, const FqElem& b) const;
    FqElem fq_sub(const FqElem& a, const FqElem& b) const;
    FqElem fq_mul(const FqElem& a, const FqElem& b) const;
    FqElem fq_pow(const FqElem& a, std::uint64_t k) const;
    FqElem fq_inv(const FqElem& a) const;
    bool fq_is_zero(const FqElem& a) const;
    bool fq_in_prime_field(const FqElem& a) const;
    std::uint64_t fq_trace(const FqElem& a) const; // field trace F_q -> F_p

    // Dense indexing of F_q (radix p) and O (radix p^e), index 0 = zero.
    FqElem fq_from_index(std::uint64_t idx) const;
    std::uint64_t fq_to_index(const FqElem& a) const;
    OElem o_from_index(std::uint64_t idx) const;
    std::uint64_t o_to_index(const OElem& a) const;
    std::uint64_t o_count() const; // (p^e)^n

    bool is_primitive() const;          // zeta_order = q-1 and delta_bar != 0
    bool is_strongly_primitive() const; // zeta_order = q-1 and delta_bar not in F_p

private:
    std::vector<std::uint64_t> trace_basis_; // trace of mult-by-eta^i, i < n
};

// The set {tr(gamma z) : tr(z) = a, z in F_q^x}, computed by exhaustive
// iteration and cross-checked against the four-case closed form.
std::set<std::uint64_t> trace_shift_set(const GaloisCtx& ctx, const FqElem& gamma_bar,
                                        std::uint64_t a_bar);

// Finds z in the orbit {alpha * eta^t} with trace(z) = a and z mod p = nu,
// by the iterative u-power correction. Requires f primitive, tr(nu) = a mod p
// and tr(delta_bar * nu) != 0; violations are reported by name.
OElem lift_in_orbit(const GaloisCtx& ctx, const OElem& alpha, RElem a, const FqElem& nu);

} // namespace zpe

#endif
