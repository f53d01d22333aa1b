#include "zpe/sequences.hpp"

#include "zpe/errors.hpp"

#include <algorithm>

namespace zpe {

PeriodicSequence make_periodic(std::uint64_t domain, std::vector<std::uint64_t> samples) {
    if (samples.empty()) throw input_error("make_periodic: samples must be nonempty");
    std::uint64_t len = samples.size();
    std::uint64_t minimal = len;
    for (std::uint64_t d = 1; d < len; ++d) {
        if (len % d != 0) continue;
        bool ok = true;
        for (std::uint64_t t = d; t < len && ok; ++t) ok = samples[t] == samples[t % d];
        if (ok) { minimal = d; break; }
    }
    samples.resize(minimal);
    return PeriodicSequence{domain, std::move(samples)};
}

PeriodicSequence trace_sequence(const GaloisCtx& ctx, const OElem& alpha) {
    if (!ctx.is_unit(alpha)) throw input_error("trace_sequence: alpha is not a unit");
    std::vector<std::uint64_t> s;
    s.reserve(ctx.eta_order);
    OElem z = alpha;
    for (std::uint64_t t = 0; t < ctx.eta_order; ++t) {
        s.push_back(ctx.trace(z));
        z = ctx.o_mul(z, ctx.eta);
    }
    return make_periodic(ctx.ring.modulus, std::move(s));
}

PeriodicSequence lfsr_sequence(const GaloisCtx& ctx, std::span<const std::uint64_t> init) {
    if (init.size() != ctx.n) throw input_error("lfsr_sequence: initial state must have n entries");
    std::vector<std::uint64_t> state(init.begin(), init.end());
    bool zero_mod_p = true;
    for (auto& v : state) {
        v %= ctx.ring.modulus;
        if (v % ctx.ring.p != 0) zero_mod_p = false;
    }
    if (zero_mod_p) throw input_error("lfsr_sequence: initial state vanishes mod p");

    const std::vector<std::uint64_t> start = state;
    std::vector<std::uint64_t> s;
    do {
        s.push_back(state[0]);
        std::uint64_t next = 0;
        for (std::uint32_t j = 0; j < ctx.n; ++j)
            next = (next + (ctx.ring.modulus - ctx.f[j]) * state[j]) % ctx.ring.modulus;
        for (std::uint32_t j = 0; j + 1 < ctx.n; ++j) state[j] = state[j + 1];
        state[ctx.n - 1] = next;
    } while (state != start);
    return make_periodic(ctx.ring.modulus, std::move(s));
}

std::uint64_t period(const GaloisCtx& ctx) { return ctx.eta_order; }

std::set<std::uint64_t> value_set(const PeriodicSequence& seq) {
    return {seq.samples.begin(), seq.samples.end()};
}

PeriodicSequence shift(const PeriodicSequence& seq, std::int64_t k) {
    std::vector<std::uint64_t> s(seq.samples.size());
    for (std::uint64_t t = 0; t < s.size(); ++t)
        s[t] = seq.at(static_cast<std::int64_t>(t) + k);
    return PeriodicSequence{seq.domain, std::move(s)};
}

} // namespace zpe
