#include "zpe/numtheory.hpp"

#include "zpe/errors.hpp"

#include <numeric>

namespace zpe {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::uint64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

std::vector<std::pair<std::uint64_t, unsigned>> factor(std::uint64_t n) {
    std::vector<std::pair<std::uint64_t, unsigned>> out;
    for (std::uint64_t d = 2; d * d <= n; d += (d == 2 ? 1 : 2)) {
        if (n % d) continue;
        unsigned k = 0;
        while (n % d == 0) { n /= d; ++k; }
        out.emplace_back(d, k);
    }
    if (n > 1) out.emplace_back(n, 1u);
    return out;
}

std::uint64_t euler_phi(std::uint64_t n) {
    std::uint64_t r = n;
    for (auto [p, k] : factor(n)) r -= r / p;
    return r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return (a % m) * (b % m) % m; // callers keep m < 2^32
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t acc = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) acc = mul_mod(acc, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return acc;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) throw input_error("inv_mod: operand is not a unit");
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(m) : t);
}

std::uint64_t checked_pow(std::uint64_t a, unsigned e) {
    std::uint64_t r = 1;
    for (unsigned i = 0; i < e; ++i) {
        if (a != 0 && r > UINT64_MAX / a)
            throw input_error("checked_pow: overflow");
        r *= a;
    }
    return r;
}

std::uint64_t element_order(std::uint64_t a, std::uint64_t m, std::uint64_t group_order) {
    std::uint64_t ord = group_order;
    for (auto [p, k] : factor(group_order)) {
        while (ord % p == 0 && pow_mod(a, ord / p, m) == 1)
            ord /= p;
    }
    return ord;
}

} // namespace zpe
