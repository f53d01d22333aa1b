#ifndef ZPE_SEQUENCES_HPP
#define ZPE_SEQUENCES_HPP

#include "zpe/galois_ring.hpp"

#include <cstdint>
#include <set>
#include <span>
#include <vector>

namespace zpe {

// A purely periodic map Z -> [0, domain). Exactly one minimal period is
// stored; samples[t] is the value at time t >= 0, extended by periodicity.
struct PeriodicSequence {
    std::uint64_t domain = 0;
    std::vector<std::uint64_t> samples;

    std::uint64_t period() const { return samples.size(); }
    std::uint64_t at(std::int64_t t) const {
        std::int64_t m = static_cast<std::int64_t>(samples.size());
        return samples[static_cast<std::size_t>(((t % m) + m) % m)];
    }
    bool operator==(const PeriodicSequence&) const = default;
};

// Builds a sequence from raw samples, trimming to the minimal period.
PeriodicSequence make_periodic(std::uint64_t domain, std::vector<std::uint64_t> samples);

// s_alpha(t) = tr(alpha * eta^t); alpha must be a unit of O.
PeriodicSequence trace_sequence(const GaloisCtx& ctx, const OElem& alpha);

// Runs the recurrence s(t) = -c_{n-1}s(t-1) - ... - c_0 s(t-n) from the given
// initial state (which must not vanish mod p).
PeriodicSequence lfsr_sequence(const GaloisCtx& ctx, std::span<const std::uint64_t> init);

// Multiplicative order of eta; equals p^{e-1}(q-1) iff f is primitive.
std::uint64_t period(const GaloisCtx& ctx);

std::set<std::uint64_t> value_set(const PeriodicSequence& seq);

// Left shift by k: result(t) = seq(t + k).
PeriodicSequence shift(const PeriodicSequence& seq, std::int64_t k);

} // namespace zpe

#endif
