#ifndef ZPE_RESIDUE_RING_HPP
#define ZPE_RESIDUE_RING_HPP

#include <cstdint>
#include <span>
#include <vector>

namespace zpe {

// Canonical residue in [0, p^e). Signed presentation is a display concern.
using RElem = std::uint64_t;

// The ambient ring R = Z/p^e Z, p an odd prime, e >= 2. Immutable after
// construction; all operations are pure.
struct RingCtx {
    std::uint64_t p;
    std::uint32_t e;
    std::uint64_t modulus; // p^e, guaranteed < 2^32 so products fit in u64

    RingCtx(std::uint64_t p, std::uint32_t e);

    RElem reduce(std::int64_t v) const;

    RElem add(RElem a, RElem b) const { return (a + b) % modulus; }
    RElem sub(RElem a, RElem b) const { return (a + modulus - b) % modulus; }
    RElem neg(RElem a) const { return a ? modulus - a : 0; }
    RElem mul(RElem a, RElem b) const { return a * b % modulus; }
    RElem pow(RElem a, std::uint64_t k) const;
    RElem inv(RElem a) const; // throws input_error for non-units

    bool is_unit(RElem a) const { return a % p != 0; }
    std::vector<RElem> units() const;

    // Base-p digit vector of length e: a = sum d_i p^i, d_i in [0, p).
    std::vector<std::uint64_t> digits(RElem a) const;
    RElem from_digits(std::span<const std::uint64_t> d) const;

    // The m-th roots of unity in R^x for m | p-1 (exactly m of them).
    std::vector<RElem> roots_of_unity(std::uint64_t m) const;

    // The coset a + p^{e-1}R, listed in ascending canonical order (p elements).
    std::vector<RElem> top_coset(RElem a) const;
};

} // namespace zpe

#endif
