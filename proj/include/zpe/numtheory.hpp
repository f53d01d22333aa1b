#ifndef ZPE_NUMTHEORY_HPP
#define ZPE_NUMTHEORY_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace zpe {

// Small exact-integer helpers. Everything here assumes desk-scale operands
// (moduli below 2^32 so that products fit in 64 bits).

bool is_prime(std::uint64_t n);

// Trial-division factorization, (prime, exponent) pairs in ascending order.
std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n);

std::uint64_t euler_phi(std::uint64_t n);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

// Inverse of a modulo m (extended Euclid); throws input_error if gcd != 1.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

// a^e with overflow detection; throws input_error on overflow.
std::uint64_t checked_pow(std::uint64_t a, unsigned e);

// Multiplicative order of a modulo m, given the factorization of a multiple
// of the order (group_order). Assumes a^group_order == 1 mod m.
std::uint64_t element_order(std::uint64_t a, std::uint64_t m, std::uint64_t group_order);

} // namespace zpe

#endif
