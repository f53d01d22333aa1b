#include "zpe/primitivity.hpp"

#include "zpe/errors.hpp"
#include "zpe/numtheory.hpp"

#include <stdexcept>
#include <thread>

namespace zpe {

namespace {

// Decode enumeration index into ascending coefficients of a monic degree-n
// polynomial; c_0 is the fastest-moving coordinate.
std::vector<std::uint64_t> nth_poly(std::uint64_t idx, std::uint64_t modulus, std::uint32_t n) {
    std::vector<std::uint64_t> c(n + 1, 0);
    for (std::uint32_t i = 0; i < n; ++i) { c[i] = idx % modulus; idx /= modulus; }
    c[n] = 1;
    return c;
}

// Verify that the multiplicative order of eta is exactly `expected`.
void check_eta_order(const GaloisCtx& ctx, std::uint64_t expected) {
    if (!(ctx.o_pow(ctx.eta, expected) == ctx.o_one()))
        throw std::logic_error("analyze: eta^N != 1");
    for (auto [r, k] : factor(expected)) {
        if (ctx.o_pow(ctx.eta, expected / r) == ctx.o_one())
            throw std::logic_error("analyze: order of eta is a proper divisor of N");
    }
}

} // namespace

PrimitivityReport analyze(const GaloisCtx& ctx) {
    PrimitivityReport r;
    r.zeta_order = ctx.zeta_order;
    r.delta_bar = ctx.delta_bar;
    r.is_primitive = ctx.is_primitive();
    r.is_strongly_primitive = ctx.is_strongly_primitive();
    r.delta_sq_in_prime_field =
        ctx.fq_in_prime_field(ctx.fq_mul(ctx.delta_bar, ctx.delta_bar));
    // Cross-check the x^m-1 definition: for primitive f the order of eta is
    // p^{e-1}(q-1).
    if (r.is_primitive)
        check_eta_order(ctx, (ctx.q - 1) * (ctx.ring.modulus / ctx.ring.p));
    return r;
}

PrimitivityReport analyze(const RingCtx& ring, std::span<const std::uint64_t> coeffs) {
    if (coeffs.size() < 3) throw input_error("analyze: degree must be >= 2");
    std::vector<std::uint64_t> fb(coeffs.begin(), coeffs.end());
    for (auto& c : fb) c = c % ring.modulus % ring.p;
    if (fb.back() != 1) throw input_error("analyze: f must be monic");
    if (!irreducible_mod_p(ring.p, fb)) {
        PrimitivityReport r;
        r.reducible_mod_p = true;
        return r;
    }
    return analyze(GaloisCtx(ring, coeffs));
}

CountReport enumerate_counts(std::uint64_t p, std::uint32_t e, std::uint32_t n,
                             std::uint64_t budget, unsigned workers) {
    RingCtx ring(p, e);
    std::uint64_t total = checked_pow(ring.modulus, n);
    if (total > budget) throw budget_error("enumerate_counts: p^{en} exceeds budget");

    auto tally_range = [&](std::uint64_t lo, std::uint64_t hi, CountReport& out) {
        RingCtx local(p, e);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            PrimitivityReport r = analyze(local, nth_poly(idx, local.modulus, n));
            if (r.is_primitive) ++out.primitive;
            if (r.is_strongly_primitive) ++out.strongly_primitive;
            if (r.is_primitive && !r.delta_sq_in_prime_field) ++out.delta_sq_outside;
        }
    };

    CountReport totals;
    if (workers <= 1) {
        tally_range(0, total, totals);
    } else {
        std::vector<CountReport> parts(workers);
        std::vector<std::thread> ts;
        std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t lo = std::min<std::uint64_t>(total, w * chunk);
            std::uint64_t hi = std::min<std::uint64_t>(total, lo + chunk);
            ts.emplace_back(tally_range, lo, hi, std::ref(parts[w]));
        }
        for (auto& t : ts) t.join();
        for (const auto& c : parts) {
            totals.primitive += c.primitive;
            totals.strongly_primitive += c.strongly_primitive;
            totals.delta_sq_outside += c.delta_sq_outside;
        }
    }

    // Closed-form counts.
    std::uint64_t q = checked_pow(p, n);
    std::uint64_t qe2 = checked_pow(q, e - 2);
    std::uint64_t phi = euler_phi(q - 1);
    std::uint64_t expect_prim = qe2 * (q - 1) * phi / n;
    std::uint64_t expect_strong = qe2 * (q - p) * phi / n;
    std::uint64_t parity = (n % 2 == 0) ? (p - 1) : 0; // (p-1)(1+(-1)^n)/2
    std::uint64_t expect_outside = qe2 * (q - p - parity) * phi / n;
    if (totals.primitive != expect_prim || totals.strongly_primitive != expect_strong ||
        totals.delta_sq_outside != expect_outside)
        throw std::logic_error("enumerate_counts: tallies disagree with the closed forms");
    return totals;
}

GaloisCtx search(std::uint64_t p, std::uint32_t e, std::uint32_t n,
                 SearchConstraint constraint, std::uint64_t budget) {
    RingCtx ring(p, e);
    std::uint64_t total = checked_pow(ring.modulus, n);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        if (idx >= budget) throw budget_error("search: enumeration budget exceeded");
        auto coeffs = nth_poly(idx, ring.modulus, n);
        std::vector<std::uint64_t> fb = coeffs;
        for (auto& c : fb) c %= p;
        if (!irreducible_mod_p(p, fb)) continue;
        GaloisCtx ctx(ring, coeffs);
        PrimitivityReport r = analyze(ctx);
        bool ok = false;
        switch (constraint) {
            case SearchConstraint::primitive: ok = r.is_primitive; break;
            case SearchConstraint::strongly_primitive: ok = r.is_strongly_primitive; break;
            case SearchConstraint::delta_sq_outside:
                ok = r.is_primitive && !r.delta_sq_in_prime_field;
                break;
        }
        if (ok) return ctx;
    }
    throw input_error("search: no qualifying polynomial exists at these parameters");
}

} // namespace zpe
