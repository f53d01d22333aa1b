#ifndef ZPE_PRIMITIVITY_HPP
#define ZPE_PRIMITIVITY_HPP

#include "zpe/galois_ring.hpp"

#include <cstdint>
#include <span>

namespace zpe {

struct PrimitivityReport {
    bool reducible_mod_p = false;
    std::uint64_t zeta_order = 0;
    FqElem delta_bar;
    bool is_primitive = false;
    bool is_strongly_primitive = false;
    bool delta_sq_in_prime_field = false;
};

PrimitivityReport analyze(const GaloisCtx& ctx);
// Accepts any monic polynomial (ascending coefficients); a reducible
// reduction is reported, not thrown.
PrimitivityReport analyze(const RingCtx& ring, std::span<const std::uint64_t> coeffs);

struct CountReport {
    std::uint64_t primitive = 0;
    std::uint64_t strongly_primitive = 0;
    std::uint64_t delta_sq_outside = 0;
};

// Enumerates all monic degree-n polynomials over Z/p^e, tallies the three
// classes, and asserts the tallies against the closed-form counts
// q^{e-2}(q-1)phi(q-1)/n, q^{e-2}(q-p)phi(q-1)/n and
// q^{e-2}(q-p-(p-1)(1+(-1)^n)/2)phi(q-1)/n.
CountReport enumerate_counts(std::uint64_t p, std::uint32_t e, std::uint32_t n,
                             std::uint64_t budget = 10'000'000, unsigned workers = 1);

enum class SearchConstraint { primitive, strongly_primitive, delta_sq_outside };

// First qualifying polynomial in coefficient-vector order (c_0 fastest).
GaloisCtx search(std::uint64_t p, std::uint32_t e, std::uint32_t n,
                 SearchConstraint constraint, std::uint64_t budget = 10'000'000);

} // namespace zpe

#endif
