#include "zpe/residue_ring.hpp"

#include "zpe/errors.hpp"
#include "zpe/numtheory.hpp"

#include <algorithm>
#include <string>

namespace zpe {

RingCtx::RingCtx(std::uint64_t p_, std::uint32_t e_) : p(p_), e(e_) {
    if (p < 3 || !is_prime(p)) throw input_error("RingCtx: p must be an odd prime >= 3");
    if (e < 2) throw input_error("RingCtx: e must be >= 2");
    modulus = checked_pow(p, e);
    // Keep products representable in 64 bits.
    if (modulus >= (std::uint64_t{1} << 32))
        throw input_error("RingCtx: p^e exceeds the supported exact width (2^32)");
}

RElem RingCtx::reduce(std::int64_t v) const {
    std::int64_t m = static_cast<std::int64_t>(modulus);
    std::int64_t r = v % m;
    if (r < 0) r += m;
    return static_cast<RElem>(r);
}

RElem RingCtx::pow(RElem a, std::uint64_t k) const { return pow_mod(a, k, modulus); }

RElem RingCtx::inv(RElem a) const { return inv_mod(a, modulus); }

std::vector<RElem> RingCtx::units() const {
    std::vector<RElem> out;
    out.reserve(static_cast<std::size_t>(modulus - modulus / p));
    for (RElem a = 1; a < modulus; ++a)
        if (a % p != 0) out.push_back(a);
    return out;
}

std::vector<std::uint64_t> RingCtx::digits(RElem a) const {
    std::vector<std::uint64_t> d(e);
    for (std::uint32_t i = 0; i < e; ++i) {
        d[i] = a % p;
        a /= p;
    }
    return d;
}

RElem RingCtx::from_digits(std::span<const std::uint64_t> d) const {
    if (d.size() != e) throw input_error("from_digits: expected " + std::to_string(e) + " digits");
    RElem a = 0;
    for (std::uint32_t i = e; i-- > 0;) {
        if (d[i] >= p) throw input_error("from_digits: digit out of range [0, p)");
        a = a * p + d[i];
    }
    return a;
}

std::vector<RElem> RingCtx::roots_of_unity(std::uint64_t m) const {
    if (m == 0 || (p - 1) % m != 0) throw input_error("roots_of_unity: m must divide p-1");
    std::vector<RElem> out;
    for (RElem a = 1; a < modulus; ++a)
        if (a % p != 0 && pow(a, m) == 1) out.push_back(a);
    if (out.size() != m) throw input_error("roots_of_unity: internal cardinality mismatch");
    return out;
}

std::vector<RElem> RingCtx::top_coset(RElem a) const {
    std::uint64_t step = modulus / p; // p^{e-1}
    std::vector<RElem> out(static_cast<std::size_t>(p));
    for (std::uint64_t j = 0; j < p; ++j) out[j] = (a + j * step) % modulus;
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace zpe
