#include "zpe/injectivity.hpp"

#include "zpe/errors.hpp"
#include "zpe/numtheory.hpp"
#include "zpe/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <thread>

namespace zpe {

namespace {

struct DisjointSet {
    std::vector<std::uint32_t> parent;
    explicit DisjointSet(std::uint64_t n) : parent(n) {
        for (std::uint32_t i = 0; i < n; ++i) parent[i] = i;
    }
    std::uint32_t find(std::uint32_t v) {
        while (parent[v] != v) {
            parent[v] = parent[parent[v]]; // path halving
            v = parent[v];
        }
        return v;
    }
    void unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

void require_primitive(const GaloisCtx& ctx, const char* who) {
    if (!ctx.is_primitive()) throw input_error(std::string(who) + ": f is not primitive");
}

void require_unit(const GaloisCtx& ctx, const OElem& z, const char* who) {
    if (!ctx.is_unit(z)) throw input_error(std::string(who) + ": operand is not a unit of O");
}

bool constant_on(const CompressingMap& map, const std::vector<std::uint64_t>& set) {
    for (std::size_t i = 1; i < set.size(); ++i)
        if (map.table[set[i]] != map.table[set[0]]) return false;
    return true;
}

} // namespace

PairRelation relation(const GaloisCtx& ctx, const OElem& alpha, const OElem& beta,
                      std::uint32_t level, bool delta_nonvanishing) {
    require_primitive(ctx, "relation");
    require_unit(ctx, alpha, "relation");
    require_unit(ctx, beta, "relation");
    if (level < 1 || level > ctx.ring.e)
        throw input_error("relation: level must be in [1, e]");

    std::uint64_t mod = checked_pow(ctx.ring.p, level);
    std::set<std::pair<std::uint64_t, std::uint64_t>> pairs;
    OElem za = alpha, zb = beta;
    for (std::uint64_t t = 0; t < ctx.eta_order; ++t) {
        bool keep = true;
        if (delta_nonvanishing)
            keep = ctx.fq_trace(ctx.fq_mul(ctx.delta_bar, ctx.reduce_mod_p(za))) != 0;
        if (keep) pairs.emplace(ctx.trace(za) % mod, ctx.trace(zb) % mod);
        za = ctx.o_mul(za, ctx.eta);
        zb = ctx.o_mul(zb, ctx.eta);
    }
    PairRelation rel;
    rel.level = level;
    rel.modulus = mod;
    rel.alpha = alpha;
    rel.beta = beta;
    rel.pairs.assign(pairs.begin(), pairs.end());
    return rel;
}

Partition closure_partition(const PairRelation& rel) {
    DisjointSet dsu(rel.modulus);
    for (auto [a, b] : rel.pairs) dsu.unite(static_cast<std::uint32_t>(a),
                                            static_cast<std::uint32_t>(b));
    std::vector<std::vector<std::uint64_t>> buckets(rel.modulus);
    for (std::uint32_t v = 0; v < rel.modulus; ++v) buckets[dsu.find(v)].push_back(v);
    Partition part;
    part.universe = rel.modulus;
    for (auto& b : buckets)
        if (!b.empty()) part.classes.push_back(std::move(b));
    return part;
}

OrbitIndex::OrbitIndex(const GaloisCtx& ctx_) : ctx(ctx_) {
    std::uint64_t count = ctx.o_count();
    if (count > (std::uint64_t{1} << 24))
        throw budget_error("OrbitIndex: O is too large to index densely");
    period = ctx.eta_order;
    trace_of.resize(count);
    next.resize(count);
    std::vector<bool> unit_flag(count);
    for (std::uint64_t idx = 0; idx < count; ++idx) {
        OElem z = ctx.o_from_index(idx);
        trace_of[idx] = ctx.trace(z);
        next[idx] = static_cast<std::uint32_t>(ctx.o_to_index(ctx.o_mul(z, ctx.eta)));
        unit_flag[idx] = ctx.is_unit(z);
        if (unit_flag[idx]) units.push_back(static_cast<std::uint32_t>(idx));
    }
    std::vector<bool> seen(count, false);
    for (std::uint32_t idx : units) {
        if (seen[idx]) continue;
        reps.push_back(idx);
        std::uint32_t w = idx;
        for (std::uint64_t t = 0; t < period; ++t) {
            seen[w] = true;
            w = next[w];
        }
        if (w != idx) throw std::logic_error("OrbitIndex: orbit did not close");
    }
}

bool compressed_equal(const CompressingMap& map, const GaloisCtx& ctx, const OElem& alpha,
                      const OElem& beta) {
    if (alpha == beta)
        throw input_error("compressed_equal: alpha == beta (trivially equal)");
    require_primitive(ctx, "compressed_equal");
    if (map.modulus != ctx.ring.modulus)
        throw input_error("compressed_equal: map/ring context mismatch");

    // Route 1: constancy of psi on the closure classes.
    Partition part = closure_partition(relation(ctx, alpha, beta, ctx.ring.e));
    bool by_classes = true;
    for (const auto& cls : part.classes)
        if (!constant_on(map, cls)) { by_classes = false; break; }

    // Route 2: direct pointwise comparison of the compressed sequences.
    bool direct = true;
    OElem za = alpha, zb = beta;
    for (std::uint64_t t = 0; t < ctx.eta_order && direct; ++t) {
        direct = map.table[ctx.trace(za)] == map.table[ctx.trace(zb)];
        za = ctx.o_mul(za, ctx.eta);
        zb = ctx.o_mul(zb, ctx.eta);
    }

    if (by_classes != direct)
        throw std::logic_error("compressed_equal: closure and direct routes disagree");
    return direct;
}

OracleResult oracle_injective(const CompressingMap& map, const GaloisCtx& ctx,
                              std::uint64_t budget) {
    return oracle_injective(map, OrbitIndex(ctx), budget);
}

OracleResult oracle_injective(const CompressingMap& map, const OrbitIndex& index,
                              std::uint64_t budget) {
    const GaloisCtx& ctx = index.ctx;
    require_primitive(ctx, "oracle_injective");
    if (map.modulus != ctx.ring.modulus)
        throw input_error("oracle_injective: map/ring context mismatch");
    std::uint64_t cost = static_cast<std::uint64_t>(index.reps.size()) * index.units.size();
    if (cost > budget / index.period)
        throw budget_error("oracle_injective: enumeration budget exceeded");

    for (std::uint32_t rep : index.reps) {
        for (std::uint32_t b : index.units) {
            if (b == rep) continue;
            std::uint32_t x = rep, y = b;
            bool equal = true;
            for (std::uint64_t t = 0; t < index.period; ++t) {
                if (map.table[index.trace_of[x]] != map.table[index.trace_of[y]]) {
                    equal = false;
                    break;
                }
                x = index.next[x];
                y = index.next[y];
            }
            if (equal) {
                OracleResult r;
                r.injective = false;
                r.witness = {ctx.o_from_index(rep), ctx.o_from_index(b)};
                return r;
            }
        }
    }
    return OracleResult{true, std::nullopt};
}

CriterionTables build_criterion_tables(const RingCtx& ring) {
    CriterionTables t;
    for (auto [m, k] : factor(ring.p - 1)) {
        for (RElem w : ring.roots_of_unity(m)) {
            if (w == 1) continue;
            t.omegas.push_back(w);
            std::vector<std::vector<std::uint64_t>> orbits;
            std::vector<bool> seen(ring.modulus, false);
            for (std::uint64_t a = 0; a < ring.modulus; ++a) {
                if (seen[a]) continue;
                std::vector<std::uint64_t> orbit;
                std::uint64_t v = a;
                do {
                    seen[v] = true;
                    orbit.push_back(v);
                    v = ring.mul(v, w);
                } while (v != a);
                orbits.push_back(std::move(orbit));
            }
            t.orbits.push_back(std::move(orbits));
        }
    }
    std::uint64_t step = ring.modulus / ring.p; // p^{e-1}
    for (std::uint64_t a0 = 0; a0 < step; ++a0) {
        if (ring.is_unit(a0)) t.unit_cosets.push_back(ring.top_coset(a0));
    }
    // Cosets a + p^{e-1}R over a in pR: the multiples of p below p^{e-1}
    // enumerate them without repetition.
    for (std::uint64_t a0 = 0; a0 < step; a0 += ring.p)
        t.p_cosets.push_back(ring.top_coset(a0));
    return t;
}

bool criterion_injective(const CompressingMap& map, const GaloisCtx& ctx) {
    require_primitive(ctx, "criterion_injective");
    if (ctx.fq_in_prime_field(ctx.fq_mul(ctx.delta_bar, ctx.delta_bar)))
        throw input_error("criterion_injective: hypothesis delta_bar^2 outside F_p not met");
    if (map.modulus != ctx.ring.modulus)
        throw input_error("criterion_injective: map/ring context mismatch");
    return criterion_injective(map, build_criterion_tables(ctx.ring));
}

bool criterion_injective(const CompressingMap& map, const CriterionTables& tables) {
    for (const auto& orbits : tables.orbits) {
        bool some_nonconstant = false;
        for (const auto& orbit : orbits)
            if (!constant_on(map, orbit)) { some_nonconstant = true; break; }
        if (!some_nonconstant) return false; // (i) fails for this omega
    }
    for (const auto& coset : tables.unit_cosets)
        if (!constant_on(map, coset)) return true; // (ii) holds
    return false;
}

FailureStatements classify_failure(const CompressingMap& map, const GaloisCtx& ctx) {
    return classify_failure(map, OrbitIndex(ctx));
}

FailureStatements classify_failure(const CompressingMap& map, const OrbitIndex& index) {
    const GaloisCtx& ctx = index.ctx;
    require_primitive(ctx, "classify_failure");
    if (oracle_injective(map, index).injective)
        throw input_error("classify_failure: map is entropy-preserving");

    const RingCtx& ring = ctx.ring;
    const bool strong = ctx.is_strongly_primitive();
    CriterionTables tables = build_criterion_tables(ring);

    FailureStatements out;
    for (std::size_t wi = 0; wi < tables.omegas.size(); ++wi) {
        bool all_constant = true;
        for (const auto& orbit : tables.orbits[wi]) {
            // Statement (I) quantifies over units, or all of R when f is
            // strongly primitive; orbits not meeting the quantifier range
            // are ignored.
            bool relevant = strong || std::any_of(orbit.begin(), orbit.end(),
                                                  [&](std::uint64_t a) { return ring.is_unit(a); });
            if (relevant && !constant_on(map, orbit)) { all_constant = false; break; }
        }
        if (all_constant) {
            out.orbit_collapse = true;
            out.omega = tables.omegas[wi];
            break;
        }
    }
    out.unit_coset_collapse = std::all_of(
        tables.unit_cosets.begin(), tables.unit_cosets.end(),
        [&](const auto& coset) { return constant_on(map, coset); });
    out.p_coset_collapse = std::all_of(
        tables.p_cosets.begin(), tables.p_cosets.end(),
        [&](const auto& coset) { return constant_on(map, coset); });
    return out;
}

GammaDecomposition gamma_decompose(const GaloisCtx& ctx, const OElem& alpha, const OElem& beta) {
    require_unit(ctx, alpha, "gamma_decompose");
    require_unit(ctx, beta, "gamma_decompose");
    GammaDecomposition d;
    d.gamma = ctx.o_mul(beta, ctx.o_inv(alpha));
    if (!ctx.fq_in_prime_field(ctx.reduce_mod_p(d.gamma))) return d; // irrational

    d.rational = true;
    // ell = min p-valuation of the non-constant coordinates, capped at e.
    std::uint32_t ell = ctx.ring.e;
    for (std::uint32_t i = 1; i < ctx.n; ++i) {
        std::uint64_t c = d.gamma.c[i];
        std::uint32_t v = 0;
        while (v < ctx.ring.e && c % ctx.ring.p == 0 && c != 0) { c /= ctx.ring.p; ++v; }
        if (d.gamma.c[i] != 0) ell = std::min(ell, v);
    }
    d.ell = ell;
    std::uint64_t pl = checked_pow(ctx.ring.p, ell);
    d.gamma0 = d.gamma.c[0] % pl;
    if (ell < ctx.ring.e) {
        OElem rest = ctx.o_sub(ctx.o_mul(d.gamma, ctx.o_inv(ctx.o_scalar(d.gamma0))), ctx.o_one());
        OElem gl = rest;
        for (std::uint32_t i = 0; i < ell; ++i) gl = ctx.div_exact_p(gl);
        FqElem glbar = ctx.reduce_mod_p(gl);
        if (ctx.fq_in_prime_field(glbar))
            throw std::logic_error("gamma_decompose: ell is not maximal");
        d.gamma_ell_bar = glbar;
    }
    return d;
}

Condition1Report condition1_check(const GaloisCtx& ctx, const OElem& alpha, const OElem& beta) {
    require_primitive(ctx, "condition1_check");
    require_unit(ctx, alpha, "condition1_check");
    require_unit(ctx, beta, "condition1_check");
    Condition1Report r;
    const FqElem& db = ctx.delta_bar;
    FqElem gamma_bar = ctx.fq_mul(ctx.reduce_mod_p(beta), ctx.fq_inv(ctx.reduce_mod_p(alpha)));
    r.delta_outside_prime_field = !ctx.fq_in_prime_field(db);
    FqElem db2 = ctx.fq_mul(db, db);
    r.delta_sq_unit_in_prime_field = ctx.fq_in_prime_field(db2) && !ctx.fq_is_zero(db2);
    r.gamma_outside_prime_field = !ctx.fq_in_prime_field(gamma_bar);
    FqElem ratio = ctx.fq_mul(db, ctx.fq_inv(gamma_bar));
    r.delta_over_gamma_unit_in_prime_field =
        ctx.fq_in_prime_field(ratio) && !ctx.fq_is_zero(ratio);
    return r;
}

PartitionPrediction predict_partition(const GaloisCtx& ctx, const OElem& alpha,
                                      const OElem& beta) {
    require_unit(ctx, alpha, "predict_partition");
    require_unit(ctx, beta, "predict_partition");
    PartitionPrediction out;
    if (!ctx.is_strongly_primitive()) {
        out.reason = "not-strongly-primitive";
        return out;
    }
    GammaDecomposition d = gamma_decompose(ctx, alpha, beta);
    const RingCtx& ring = ctx.ring;
    if (!d.rational) {
        if (condition1_check(ctx, alpha, beta).holds()) {
            out.reason = "condition1-holds";
            return out;
        }
        Partition part;
        part.universe = ring.modulus;
        std::vector<std::uint64_t> all(ring.modulus);
        for (std::uint64_t a = 0; a < ring.modulus; ++a) all[a] = a;
        part.classes.push_back(std::move(all));
        out.partition = std::move(part);
        out.reason = "irrational-single-class";
        return out;
    }

    // Classes {a gamma_0^i : i in Z} + p^ell R over a in R.
    std::uint64_t pl = checked_pow(ring.p, d.ell);
    Partition part;
    part.universe = ring.modulus;
    std::vector<bool> seen(ring.modulus, false);
    for (std::uint64_t a = 0; a < ring.modulus; ++a) {
        if (seen[a]) continue;
        std::set<std::uint64_t> cls;
        std::uint64_t v = a;
        do {
            for (std::uint64_t off = 0; off < ring.modulus; off += pl)
                cls.insert((v + off) % ring.modulus);
            v = ring.mul(v, d.gamma0);
        } while (v != a);
        for (std::uint64_t x : cls) {
            if (seen[x] && x != a)
                throw std::logic_error("predict_partition: predicted classes overlap");
            seen[x] = true;
        }
        part.classes.emplace_back(cls.begin(), cls.end());
    }
    std::sort(part.classes.begin(), part.classes.end(),
              [](const auto& x, const auto& y) { return x.front() < y.front(); });
    out.partition = std::move(part);
    out.reason = "rational-orbit";
    return out;
}

CensusResult census(const GaloisCtx& ctx, std::uint64_t alphabet, std::uint64_t budget,
                    unsigned workers) {
    require_primitive(ctx, "census");
    if (ctx.fq_in_prime_field(ctx.fq_mul(ctx.delta_bar, ctx.delta_bar)))
        throw input_error("census: hypothesis delta_bar^2 outside F_p not met");
    if (alphabet < 2)
        throw input_error("census: alphabet must have at least 2 labels "
                          "(constant maps are never entropy-preserving)");
    const RingCtx& ring = ctx.ring;
    std::uint64_t total = 1;
    for (std::uint64_t i = 0; i < ring.modulus; ++i) {
        if (total > budget / alphabet)
            throw budget_error("census: k^{p^e} exceeds budget");
        total *= alphabet;
    }

    CriterionTables tables = build_criterion_tables(ring);
    auto count_range = [&](std::uint64_t lo, std::uint64_t hi) {
        CompressingMap map{ring.modulus, alphabet,
                           std::vector<std::uint64_t>(ring.modulus, 0), ""};
        std::uint64_t w = lo;
        for (std::uint64_t a = 0; a < ring.modulus; ++a) { map.table[a] = w % alphabet; w /= alphabet; }
        std::uint64_t count = 0;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            if (criterion_injective(map, tables)) ++count;
            // Odometer step to the next table.
            for (std::uint64_t a = 0; a < ring.modulus; ++a) {
                if (++map.table[a] < alphabet) break;
                map.table[a] = 0;
            }
        }
        return count;
    };

    std::uint64_t ep = 0;
    if (workers <= 1) {
        ep = count_range(0, total);
    } else {
        std::vector<std::uint64_t> parts(workers, 0);
        std::vector<std::thread> ts;
        std::uint64_t chunk = (total + workers - 1) / workers;
        for (unsigned w = 0; w < workers; ++w) {
            std::uint64_t lo = std::min(total, w * chunk);
            std::uint64_t hi = std::min(total, lo + chunk);
            ts.emplace_back([&, lo, hi, w] { parts[w] = count_range(lo, hi); });
        }
        for (auto& t : ts) t.join();
        for (auto c : parts) ep += c;
    }

    CensusResult r;
    r.total = total;
    r.entropy_preserving = ep;
    r.proportion = static_cast<double>(ep) / static_cast<double>(total);
    double k = static_cast<double>(alphabet);
    double exp1 = -static_cast<double>((ring.p - 1) * (ring.p - 1)) *
                  static_cast<double>(checked_pow(ring.p, ring.e - 2));
    double exp2 = (1.0 - static_cast<double>(ring.modulus)) / 2.0;
    r.bound = 1.0 - std::pow(k, exp1) - std::pow(k, exp2) * std::log2(static_cast<double>(ring.p));
    if (!(r.proportion > r.bound))
        throw std::logic_error("census: proportion does not exceed the lower bound");
    return r;
}

} // namespace zpe
