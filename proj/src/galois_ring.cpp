#include "zpe/galois_ring.hpp"

#include "zpe/errors.hpp"
#include "zpe/numtheory.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace zpe {

namespace {

// Remainder of a (ascending coeffs) modulo monic g, all over F_p.
std::vector<std::uint64_t> poly_rem_mod_p(std::vector<std::uint64_t> a,
                                          const std::vector<std::uint64_t>& g,
                                          std::uint64_t p) {
    const std::size_t dg = g.size() - 1;
    while (a.size() > dg) {
        std::uint64_t lead = a.back();
        std::size_t shift = a.size() - 1 - dg;
        if (lead != 0) {
            for (std::size_t i = 0; i < dg; ++i)
                a[shift + i] = (a[shift + i] + (p - g[i]) * lead) % p;
        }
        a.pop_back();
    }
    return a;
}

bool poly_is_zero(const std::vector<std::uint64_t>& a) {
    return std::all_of(a.begin(), a.end(), [](std::uint64_t v) { return v == 0; });
}

// Polynomial product of two coordinate vectors, then in-place reduction of
// degrees >= n via x^n = -(c_{n-1}x^{n-1} + ... + c_0), all modulo `mod`.
std::vector<std::uint64_t> mul_reduce(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b,
                                      const std::vector<std::uint64_t>& fc,
                                      std::uint64_t mod) {
    const std::size_t n = a.size();
    std::vector<std::uint64_t> d(2 * n - 1, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j)
            d[i + j] = (d[i + j] + a[i] * b[j]) % mod;
    }
    for (std::size_t k = 2 * n - 2; k >= n; --k) {
        std::uint64_t lead = d[k];
        if (lead != 0) {
            d[k] = 0;
            for (std::size_t i = 0; i < n; ++i)
                d[k - n + i] = (d[k - n + i] + (mod - fc[i]) * lead) % mod;
        }
        if (k == n) break;
    }
    d.resize(n);
    return d;
}

} // namespace

bool irreducible_mod_p(std::uint64_t p, std::span<const std::uint64_t> coeffs) {
    std::vector<std::uint64_t> fbar(coeffs.begin(), coeffs.end());
    for (auto& c : fbar) c %= p;
    if (fbar.back() % p != 1) throw input_error("irreducible_mod_p: polynomial must be monic");
    const std::size_t n = fbar.size() - 1;
    if (n < 1) return false;
    // Trial division by every monic divisor candidate of degree <= n/2.
    for (std::size_t dg = 1; dg <= n / 2; ++dg) {
        std::uint64_t count = checked_pow(p, static_cast<unsigned>(dg));
        for (std::uint64_t code = 0; code < count; ++code) {
            std::vector<std::uint64_t> g(dg + 1, 0);
            std::uint64_t w = code;
            for (std::size_t i = 0; i < dg; ++i) { g[i] = w % p; w /= p; }
            g[dg] = 1;
            if (poly_is_zero(poly_rem_mod_p(fbar, g, p))) return false;
        }
    }
    return true;
}

GaloisCtx::GaloisCtx(RingCtx ring_, std::span<const std::uint64_t> coeffs) : ring(ring_) {
    if (coeffs.size() < 3) throw input_error("GaloisCtx: degree must be >= 2");
    n = static_cast<std::uint32_t>(coeffs.size() - 1);
    f.assign(coeffs.begin(), coeffs.end());
    for (auto& c : f) c %= ring.modulus;
    if (f.back() != 1) throw input_error("GaloisCtx: f must be monic");
    fbar.resize(f.size());
    for (std::size_t i = 0; i < f.size(); ++i) fbar[i] = f[i] % ring.p;
    if (!irreducible_mod_p(ring.p, fbar))
        throw input_error("GaloisCtx: f mod p is reducible over F_p");
    q = checked_pow(ring.p, n);

    eta = o_zero();
    eta.c[1] = 1;

    // Trace basis: t_i = trace of the multiplication-by-eta^i matrix.
    std::vector<OElem> pw(2 * n - 1);
    pw[0] = o_one();
    for (std::size_t k = 1; k < pw.size(); ++k) pw[k] = o_mul(pw[k - 1], eta);
    trace_basis_.resize(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        std::uint64_t t = 0;
        for (std::uint32_t i = 0; i < n; ++i) t = (t + pw[i + j].c[i]) % ring.modulus;
        trace_basis_[j] = t;
    }

    // eta = zeta * u: the exponent q^{e-1} kills the 1+pO part and fixes the
    // Teichmuller part.
    std::uint64_t exp = 1;
    for (std::uint32_t i = 0; i + 1 < ring.e; ++i) {
        if (exp > UINT64_MAX / q) throw input_error("GaloisCtx: q^(e-1) overflows");
        exp *= q;
    }
    zeta = o_pow(eta, exp);
    u = o_mul(eta, o_inv(zeta));
    FqElem ubar = reduce_mod_p(u);
    if (!(fq_in_prime_field(ubar) && ubar.c[0] == 1))
        throw std::logic_error("GaloisCtx: u is not in 1+pO");
    delta_bar = reduce_mod_p(div_exact_p(o_sub(u, o_one())));

    // Order of zeta equals the order of eta bar in F_q^x.
    FqElem ebar = reduce_mod_p(eta);
    zeta_order = q - 1;
    for (auto [r, k] : factor(q - 1)) {
        while (zeta_order % r == 0 && fq_pow(ebar, zeta_order / r) == fq_one())
            zeta_order /= r;
    }
    if (!(o_pow(zeta, zeta_order) == o_one()))
        throw std::logic_error("GaloisCtx: zeta order mismatch");

    u_order = 1;
    OElem upw = u;
    while (!(upw == o_one())) {
        u_order *= ring.p;
        if (u_order > ring.modulus) throw std::logic_error("GaloisCtx: u order out of range");
        upw = o_pow(u, u_order);
    }
    eta_order = zeta_order * u_order;
    if (!(o_pow(eta, eta_order) == o_one()))
        throw std::logic_error("GaloisCtx: eta order mismatch");
}

OElem GaloisCtx::o_one() const {
    OElem r = o_zero();
    r.c[0] = 1;
    return r;
}

OElem GaloisCtx::o_scalar(RElem a) const {
    OElem r = o_zero();
    r.c[0] = a % ring.modulus;
    return r;
}

OElem GaloisCtx::o_add(const OElem& a, const OElem& b) const {
    OElem r = o_zero();
    for (std::uint32_t i = 0; i < n; ++i) r.c[i] = (a.c[i] + b.c[i]) % ring.modulus;
    return r;
}

OElem GaloisCtx::o_sub(const OElem& a, const OElem& b) const {
    OElem r = o_zero();
    for (std::uint32_t i = 0; i < n; ++i)
        r.c[i] = (a.c[i] + ring.modulus - b.c[i]) % ring.modulus;
    return r;
}

OElem GaloisCtx::o_neg(const OElem& a) const { return o_sub(o_zero(), a); }

OElem GaloisCtx::o_mul(const OElem& a, const OElem& b) const {
    return OElem{mul_reduce(a.c, b.c, f, ring.modulus)};
}

OElem GaloisCtx::o_pow(const OElem& a, std::uint64_t k) const {
    OElem acc = o_one(), base = a;
    while (k) {
        if (k & 1) acc = o_mul(acc, base);
        base = o_mul(base, base);
        k >>= 1;
    }
    return acc;
}

OElem GaloisCtx::o_inv(const OElem& a) const {
    FqElem abar = reduce_mod_p(a);
    if (fq_is_zero(abar)) throw input_error("o_inv: element is not a unit");
    // Lift the residue-field inverse by Newton iteration, doubling precision.
    OElem x = o_zero();
    FqElem x0 = fq_inv(abar);
    for (std::uint32_t i = 0; i < n; ++i) x.c[i] = x0.c[i];
    OElem two = o_scalar(2);
    std::uint64_t prec = 1;
    while (prec < ring.e) {
        x = o_mul(x, o_sub(two, o_mul(a, x)));
        prec *= 2;
    }
    if (!(o_mul(a, x) == o_one())) throw std::logic_error("o_inv: lift failed");
    return x;
}

bool GaloisCtx::is_unit(const OElem& a) const { return !fq_is_zero(reduce_mod_p(a)); }

FqElem GaloisCtx::reduce_mod_p(const OElem& z) const {
    FqElem r = fq_zero();
    for (std::uint32_t i = 0; i < n; ++i) r.c[i] = z.c[i] % ring.p;
    return r;
}

OElem GaloisCtx::div_exact_p(const OElem& z) const {
    OElem r = o_zero();
    for (std::uint32_t i = 0; i < n; ++i) {
        if (z.c[i] % ring.p != 0)
            throw input_error("div_exact_p: coefficient " + std::to_string(i) +
                              " is not divisible by p");
        r.c[i] = z.c[i] / ring.p;
    }
    return r;
}

RElem GaloisCtx::trace(const OElem& z) const {
    std::uint64_t t = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        t = (t + z.c[i] * trace_basis_[i]) % ring.modulus;
    return t;
}

FqElem GaloisCtx::fq_one() const {
    FqElem r = fq_zero();
    r.c[0] = 1;
    return r;
}

FqElem GaloisCtx::fq_scalar(std::uint64_t a) const {
    FqElem r = fq_zero();
    r.c[0] = a % ring.p;
    return r;
}

FqElem GaloisCtx::fq_add(const FqElem& a, const FqElem& b) const {
    FqElem r = fq_zero();
    for (std::uint32_t i = 0; i < n; ++i) r.c[i] = (a.c[i] + b.c[i]) % ring.p;
    return r;
}

FqElem GaloisCtx::fq_sub(const FqElem& a, const FqElem& b) const {
    FqElem r = fq_zero();
    for (std::uint32_t i = 0; i < n; ++i) r.c[i] = (a.c[i] + ring.p - b.c[i]) % ring.p;
    return r;
}

FqElem GaloisCtx::fq_mul(const FqElem& a, const FqElem& b) const {
    return FqElem{mul_reduce(a.c, b.c, fbar, ring.p)};
}

FqElem GaloisCtx::fq_pow(const FqElem& a, std::uint64_t k) const {
    FqElem acc = fq_one(), base = a;
    while (k) {
        if (k & 1) acc = fq_mul(acc, base);
        base = fq_mul(base, base);
        k >>= 1;
    }
    return acc;
}

FqElem GaloisCtx::fq_inv(const FqElem& a) const {
    if (fq_is_zero(a)) throw input_error("fq_inv: zero element");
    return fq_pow(a, q - 2);
}

bool GaloisCtx::fq_is_zero(const FqElem& a) const {
    return std::all_of(a.c.begin(), a.c.end(), [](std::uint64_t v) { return v == 0; });
}

bool GaloisCtx::fq_in_prime_field(const FqElem& a) const {
    return std::all_of(a.c.begin() + 1, a.c.end(), [](std::uint64_t v) { return v == 0; });
}

std::uint64_t GaloisCtx::fq_trace(const FqElem& a) const {
    std::uint64_t t = 0;
    for (std::uint32_t i = 0; i < n; ++i)
        t = (t + a.c[i] * (trace_basis_[i] % ring.p)) % ring.p;
    return t;
}

FqElem GaloisCtx::fq_from_index(std::uint64_t idx) const {
    FqElem r = fq_zero();
    for (std::uint32_t i = 0; i < n; ++i) { r.c[i] = idx % ring.p; idx /= ring.p; }
    return r;
}

std::uint64_t GaloisCtx::fq_to_index(const FqElem& a) const {
    std::uint64_t idx = 0;
    for (std::uint32_t i = n; i-- > 0;) idx = idx * ring.p + a.c[i];
    return idx;
}

OElem GaloisCtx::o_from_index(std::uint64_t idx) const {
    OElem r = o_zero();
    for (std::uint32_t i = 0; i < n; ++i) { r.c[i] = idx % ring.modulus; idx /= ring.modulus; }
    return r;
}

std::uint64_t GaloisCtx::o_to_index(const OElem& a) const {
    std::uint64_t idx = 0;
    for (std::uint32_t i = n; i-- > 0;) idx = idx * ring.modulus + a.c[i];
    return idx;
}

std::uint64_t GaloisCtx::o_count() const { return checked_pow(ring.modulus, n); }

bool GaloisCtx::is_primitive() const {
    return zeta_order == q - 1 && !fq_is_zero(delta_bar);
}

bool GaloisCtx::is_strongly_primitive() const {
    return zeta_order == q - 1 && !fq_in_prime_field(delta_bar);
}

std::set<std::uint64_t> trace_shift_set(const GaloisCtx& ctx, const FqElem& gamma_bar,
                                        std::uint64_t a_bar) {
    a_bar %= ctx.ring.p;
    std::set<std::uint64_t> got;
    for (std::uint64_t idx = 1; idx < ctx.q; ++idx) {
        FqElem z = ctx.fq_from_index(idx);
        if (ctx.fq_trace(z) != a_bar) continue;
        got.insert(ctx.fq_trace(ctx.fq_mul(gamma_bar, z)));
    }
    // Cross-check against the closed-form table.
    std::set<std::uint64_t> expect;
    if (ctx.fq_in_prime_field(gamma_bar)) {
        expect.insert(gamma_bar.c[0] * a_bar % ctx.ring.p);
    } else if (a_bar != 0 || ctx.n >= 3) {
        for (std::uint64_t v = 0; v < ctx.ring.p; ++v) expect.insert(v);
    } else {
        for (std::uint64_t v = 1; v < ctx.ring.p; ++v) expect.insert(v);
    }
    if (got != expect)
        throw std::logic_error("trace_shift_set: brute force disagrees with the table");
    return got;
}

OElem lift_in_orbit(const GaloisCtx& ctx, const OElem& alpha, RElem a, const FqElem& nu) {
    if (!ctx.is_primitive()) throw input_error("lift_in_orbit: f is not primitive");
    if (!ctx.is_unit(alpha)) throw input_error("lift_in_orbit: alpha is not a unit");
    if (ctx.fq_is_zero(nu)) throw input_error("lift_in_orbit: nu must be nonzero");
    if (ctx.fq_trace(nu) != a % ctx.ring.p)
        throw input_error("lift_in_orbit: tr(nu) != a mod p");
    std::uint64_t tnd = ctx.fq_trace(ctx.fq_mul(ctx.delta_bar, nu));
    if (tnd == 0) throw input_error("lift_in_orbit: tr(delta_bar * nu) == 0");

    // Reductions of the orbit cover F_q^x; locate nu by discrete walk.
    FqElem ebar = ctx.reduce_mod_p(ctx.eta);
    FqElem w = ctx.reduce_mod_p(alpha);
    std::uint64_t t0 = 0;
    while (!(w == nu)) {
        w = ctx.fq_mul(w, ebar);
        if (++t0 >= ctx.q) throw std::logic_error("lift_in_orbit: nu not reached");
    }
    OElem z = ctx.o_mul(alpha, ctx.o_pow(ctx.eta, t0));

    std::uint64_t inv_tnd = inv_mod(tnd, ctx.ring.p);
    std::uint64_t pi = 1; // p^i
    for (std::uint32_t i = 1; i < ctx.ring.e; ++i) {
        pi *= ctx.ring.p;
        std::uint64_t diff = ctx.ring.sub(a, ctx.trace(z));
        if (diff % pi != 0) throw std::logic_error("lift_in_orbit: correction out of step");
        std::uint64_t k = (diff / pi) % ctx.ring.p * inv_tnd % ctx.ring.p;
        z = ctx.o_mul(z, ctx.o_pow(ctx.u, (pi / ctx.ring.p) * k));
    }
    if (ctx.trace(z) != a % ctx.ring.modulus || !(ctx.reduce_mod_p(z) == nu))
        throw std::logic_error("lift_in_orbit: postcondition failed");
    return z;
}

} // namespace zpe
