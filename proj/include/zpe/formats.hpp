#ifndef ZPE_FORMATS_HPP
#define ZPE_FORMATS_HPP

#include "zpe/compress.hpp"
#include "zpe/galois_ring.hpp"
#include "zpe/residue_ring.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace zpe {

// Polynomial text format: comma-separated integer coefficients, highest
// degree first, monic required; negative entries are normalized mod p^e.
// "1,1,-1" parses to x^2 + x - 1.
std::vector<std::uint64_t> parse_poly(const RingCtx& ring, std::string_view text);
std::string format_poly(std::span<const std::uint64_t> ascending_coeffs);

// O-element format: n comma-separated integers, highest basis power first;
// "3,13" parses to 3*eta + 13.
OElem parse_oelem(const GaloisCtx& ctx, std::string_view text);
std::string format_oelem(const OElem& z);
std::string format_fqelem(const FqElem& z);

// Map specs: "t:v0,v1,..." (raw table), "mod:M", "str:f0;f1;f2",
// "pow:l;f1;f2", "lin:k;g0;g1;f2", or a bare coordinate-polynomial
// expression over x0..x{e-1}.
CompressingMap parse_map_spec(const RingCtx& ring, std::string_view spec);

} // namespace zpe

#endif
