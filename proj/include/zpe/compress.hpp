#ifndef ZPE_COMPRESS_HPP
#define ZPE_COMPRESS_HPP

#include "zpe/residue_ring.hpp"
#include "zpe/sequences.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zpe {

// Reduced e-variate polynomial over F_p (degree < p in every variable),
// stored densely over exponent vectors in radix p. Multiplication reduces
// exponents through x^p = x, so products agree with pointwise products.
struct CoordPoly {
    std::uint64_t p = 0;
    std::uint32_t nvars = 0;
    std::vector<std::uint64_t> coeff; // size p^nvars

    static CoordPoly zero(std::uint64_t p, std::uint32_t nvars);
    static CoordPoly constant(std::uint64_t p, std::uint32_t nvars, std::uint64_t c);
    static CoordPoly variable(std::uint64_t p, std::uint32_t nvars, std::uint32_t var);

    bool is_zero() const;
    // Largest exponent of `var` appearing in a monomial with nonzero coefficient.
    std::uint32_t degree_in(std::uint32_t var) const;
    // True iff every used variable index is < bound.
    bool uses_only_below(std::uint32_t bound) const;
    // True iff `var` is the only variable that appears.
    bool univariate_in(std::uint32_t var) const;

    std::uint64_t eval(std::span<const std::uint64_t> point) const;

    CoordPoly operator+(const CoordPoly& o) const;
    CoordPoly operator-(const CoordPoly& o) const;
    CoordPoly operator*(const CoordPoly& o) const;
    CoordPoly pow(std::uint64_t k) const;
    bool operator==(const CoordPoly&) const = default;
};

// Parses an expression over x0..x{nvars-1} with +, -, *, ^, integer
// coefficients and parentheses; coefficients are reduced mod p.
CoordPoly parse_coord_poly(std::uint64_t p, std::uint32_t nvars, std::string_view expr);

// A map on R: a dense table of p^e labels over the alphabet {0,...,alphabet-1}.
struct CompressingMap {
    std::uint64_t modulus = 0;  // p^e
    std::uint64_t alphabet = 0; // |Sigma|
    std::vector<std::uint64_t> table;
    std::string provenance;

    std::uint64_t operator()(std::uint64_t a) const { return table[a % modulus]; }
};

// table[a] = poly(digits(a)); alphabet F_p.
CompressingMap from_poly(const RingCtx& ring, const CoordPoly& poly);
// Interpolates a p-valued table back to its unique reduced polynomial.
CoordPoly to_poly(const RingCtx& ring, const CompressingMap& map);

// psi(a) = a mod M; M >= 2 and not a power of p.
CompressingMap modular_map(const RingCtx& ring, std::uint64_t M);

// psi = f0(x_{e-1}) f1(x_0..x_{e-2}) + f2(x_0..x_{e-2});
// requires 1 <= deg f0 < p, (x_0^{p-1}-1) not dividing f1 and f1(0,..,0) != 0.
// Entropy-preserving for strongly primitive f (recorded, not enforced here).
CompressingMap family_str(const RingCtx& ring, const CoordPoly& f0, const CoordPoly& f1,
                          const CoordPoly& f2);

struct WeakPow { std::uint32_t ell; CoordPoly f1, f2; };
struct WeakLin { std::uint32_t k; CoordPoly g0, g1, f2; };

// psi = x_{e-1}^l f1 + f2 with 2 <= l < p, (x_0^{p-1}-1) and x_0 not dividing f1.
CompressingMap family_weak(const RingCtx& ring, const WeakPow& params);
// psi = x_{e-1}(g0(x_k) + g1(x_0..x_{k-1})) + f2 with gcd(p-1, deg g0 + 1) = 1.
CompressingMap family_weak(const RingCtx& ring, const WeakLin& params);

// Pointwise compression of a sequence; minimality of the period is recomputed.
PeriodicSequence apply(const CompressingMap& map, const PeriodicSequence& seq);

} // namespace zpe

#endif
