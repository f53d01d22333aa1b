#include "zpe/compress.hpp"

#include "zpe/errors.hpp"
#include "zpe/numtheory.hpp"

#include <cctype>
#include <numeric>

namespace zpe {

namespace {

// Exponent addition under the functional identity x^p = x.
std::uint64_t exp_add(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
    std::uint64_t s = a + b;
    if (s >= p) s = (s - 1) % (p - 1) + 1;
    return s;
}

std::uint64_t exp_reduce(std::uint64_t k, std::uint64_t p) {
    if (k == 0 || k < p) return k;
    return (k - 1) % (p - 1) + 1;
}

} // namespace

CoordPoly CoordPoly::zero(std::uint64_t p, std::uint32_t nvars) {
    return CoordPoly{p, nvars, std::vector<std::uint64_t>(checked_pow(p, nvars), 0)};
}

CoordPoly CoordPoly::constant(std::uint64_t p, std::uint32_t nvars, std::uint64_t c) {
    CoordPoly r = zero(p, nvars);
    r.coeff[0] = c % p;
    return r;
}

CoordPoly CoordPoly::variable(std::uint64_t p, std::uint32_t nvars, std::uint32_t var) {
    if (var >= nvars) throw input_error("CoordPoly: variable index out of range");
    CoordPoly r = zero(p, nvars);
    r.coeff[checked_pow(p, var)] = 1;
    return r;
}

bool CoordPoly::is_zero() const {
    for (auto c : coeff)
        if (c) return false;
    return true;
}

std::uint32_t CoordPoly::degree_in(std::uint32_t var) const {
    std::uint64_t stride = checked_pow(p, var);
    std::uint32_t deg = 0;
    for (std::uint64_t m = 0; m < coeff.size(); ++m)
        if (coeff[m]) deg = std::max<std::uint32_t>(deg, m / stride % p);
    return deg;
}

bool CoordPoly::uses_only_below(std::uint32_t bound) const {
    for (std::uint32_t v = bound; v < nvars; ++v)
        if (degree_in(v) > 0) return false;
    return true;
}

bool CoordPoly::univariate_in(std::uint32_t var) const {
    for (std::uint32_t v = 0; v < nvars; ++v)
        if (v != var && degree_in(v) > 0) return false;
    return true;
}

std::uint64_t CoordPoly::eval(std::span<const std::uint64_t> point) const {
    if (point.size() != nvars) throw input_error("CoordPoly::eval: wrong point arity");
    // powers[v][k] = point[v]^k
    std::vector<std::vector<std::uint64_t>> powers(nvars, std::vector<std::uint64_t>(p, 1));
    for (std::uint32_t v = 0; v < nvars; ++v)
        for (std::uint64_t k = 1; k < p; ++k)
            powers[v][k] = powers[v][k - 1] * (point[v] % p) % p;
    std::uint64_t acc = 0;
    for (std::uint64_t m = 0; m < coeff.size(); ++m) {
        if (!coeff[m]) continue;
        std::uint64_t term = coeff[m], w = m;
        for (std::uint32_t v = 0; v < nvars; ++v) {
            term = term * powers[v][w % p] % p;
            w /= p;
        }
        acc = (acc + term) % p;
    }
    return acc;
}

CoordPoly CoordPoly::operator+(const CoordPoly& o) const {
    CoordPoly r = *this;
    for (std::size_t m = 0; m < coeff.size(); ++m) r.coeff[m] = (coeff[m] + o.coeff[m]) % p;
    return r;
}

CoordPoly CoordPoly::operator-(const CoordPoly& o) const {
    CoordPoly r = *this;
    for (std::size_t m = 0; m < coeff.size(); ++m)
        r.coeff[m] = (coeff[m] + p - o.coeff[m]) % p;
    return r;
}

CoordPoly CoordPoly::operator*(const CoordPoly& o) const {
    CoordPoly r = zero(p, nvars);
    for (std::uint64_t a = 0; a < coeff.size(); ++a) {
        if (!coeff[a]) continue;
        for (std::uint64_t b = 0; b < o.coeff.size(); ++b) {
            if (!o.coeff[b]) continue;
            std::uint64_t m = 0, stride = 1, wa = a, wb = b;
            for (std::uint32_t v = 0; v < nvars; ++v) {
                m += exp_add(wa % p, wb % p, p) * stride;
                stride *= p;
                wa /= p;
                wb /= p;
            }
            r.coeff[m] = (r.coeff[m] + coeff[a] * o.coeff[b]) % p;
        }
    }
    return r;
}

CoordPoly CoordPoly::pow(std::uint64_t k) const {
    k = exp_reduce(k, p);
    CoordPoly acc = constant(p, nvars, 1);
    for (std::uint64_t i = 0; i < k; ++i) acc = acc * *this;
    return acc;
}

namespace {

struct PolyParser {
    std::uint64_t p;
    std::uint32_t nvars;
    std::string_view s;
    std::size_t pos = 0;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }
    std::uint64_t number() {
        skip();
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            throw input_error("polynomial expression: expected a number at position " +
                              std::to_string(pos));
        std::uint64_t v = 0;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) {
            v = v * 10 + (s[pos] - '0');
            if (v > (std::uint64_t{1} << 40)) throw input_error("polynomial expression: number too large");
            ++pos;
        }
        return v;
    }

    CoordPoly expr() {
        bool neg = eat('-');
        CoordPoly acc = term();
        if (neg) acc = CoordPoly::zero(p, nvars) - acc;
        while (true) {
            if (eat('+')) acc = acc + term();
            else if (eat('-')) acc = acc - term();
            else break;
        }
        return acc;
    }
    CoordPoly term() {
        CoordPoly acc = factor();
        while (eat('*')) acc = acc * factor();
        return acc;
    }
    CoordPoly factor() {
        CoordPoly b = base();
        if (eat('^')) return b.pow(number());
        return b;
    }
    CoordPoly base() {
        skip();
        if (pos >= s.size()) throw input_error("polynomial expression: unexpected end");
        char c = s[pos];
        if (c == '(') {
            ++pos;
            CoordPoly inner = expr();
            if (!eat(')')) throw input_error("polynomial expression: missing ')'");
            return inner;
        }
        if (c == 'x' || c == 'X') {
            ++pos;
            std::uint64_t v = number();
            if (v >= nvars)
                throw input_error("polynomial expression: variable x" + std::to_string(v) +
                                  " out of range (nvars = " + std::to_string(nvars) + ")");
            return CoordPoly::variable(p, nvars, static_cast<std::uint32_t>(v));
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return CoordPoly::constant(p, nvars, number());
        throw input_error(std::string("polynomial expression: unexpected character '") + c + "'");
    }
};

} // namespace

CoordPoly parse_coord_poly(std::uint64_t p, std::uint32_t nvars, std::string_view expr) {
    PolyParser parser{p, nvars, expr};
    CoordPoly r = parser.expr();
    parser.skip();
    if (parser.pos != expr.size())
        throw input_error("polynomial expression: trailing characters at position " +
                          std::to_string(parser.pos));
    return r;
}

namespace {

void require_ctx_match(const RingCtx& ring, const CoordPoly& poly, const char* who) {
    if (poly.p != ring.p || poly.nvars != ring.e)
        throw input_error(std::string(who) + ": polynomial does not match the ring context");
}

// (x_0^{p-1}-1) | f  <=>  f vanishes at every point with x_0 != 0.
bool vanishes_on_x0_nonzero(const RingCtx& ring, const CoordPoly& f) {
    for (std::uint64_t a = 0; a < ring.modulus; ++a) {
        auto d = ring.digits(a);
        if (d[0] == 0) continue;
        if (f.eval(d) != 0) return false;
    }
    return true;
}

// x_0 | f  <=>  f vanishes at every point with x_0 = 0.
bool vanishes_on_x0_zero(const RingCtx& ring, const CoordPoly& f) {
    for (std::uint64_t a = 0; a < ring.modulus; ++a) {
        auto d = ring.digits(a);
        if (d[0] != 0) continue;
        if (f.eval(d) != 0) return false;
    }
    return true;
}

} // namespace

CompressingMap from_poly(const RingCtx& ring, const CoordPoly& poly) {
    require_ctx_match(ring, poly, "from_poly");
    CompressingMap m{ring.modulus, ring.p, std::vector<std::uint64_t>(ring.modulus, 0), ""};
    for (std::uint64_t a = 0; a < ring.modulus; ++a) m.table[a] = poly.eval(ring.digits(a));
    return m;
}

CoordPoly to_poly(const RingCtx& ring, const CompressingMap& map) {
    if (map.modulus != ring.modulus) throw input_error("to_poly: context mismatch");
    CoordPoly acc = CoordPoly::zero(ring.p, ring.e);
    for (std::uint64_t a = 0; a < ring.modulus; ++a) {
        std::uint64_t v = map.table[a] % ring.p;
        if (v == 0) continue;
        auto d = ring.digits(a);
        // Lagrange basis polynomial of the point `d`.
        CoordPoly basis = CoordPoly::constant(ring.p, ring.e, v);
        for (std::uint32_t var = 0; var < ring.e; ++var) {
            for (std::uint64_t c = 0; c < ring.p; ++c) {
                if (c == d[var]) continue;
                std::uint64_t scale = inv_mod((d[var] + ring.p - c) % ring.p, ring.p);
                CoordPoly lin = (CoordPoly::variable(ring.p, ring.e, var) -
                                 CoordPoly::constant(ring.p, ring.e, c)) *
                                CoordPoly::constant(ring.p, ring.e, scale);
                basis = basis * lin;
            }
        }
        acc = acc + basis;
    }
    return acc;
}

CompressingMap modular_map(const RingCtx& ring, std::uint64_t M) {
    if (M < 2) throw input_error("modular_map: M must be >= 2");
    std::uint64_t w = M;
    while (w % ring.p == 0) w /= ring.p;
    if (w == 1) throw input_error("modular_map: M must not be a power of p");
    CompressingMap m{ring.modulus, M, std::vector<std::uint64_t>(ring.modulus, 0),
                     "mod:" + std::to_string(M)};
    for (std::uint64_t a = 0; a < ring.modulus; ++a) m.table[a] = a % M;
    return m;
}

CompressingMap family_str(const RingCtx& ring, const CoordPoly& f0, const CoordPoly& f1,
                          const CoordPoly& f2) {
    require_ctx_match(ring, f0, "family_str");
    require_ctx_match(ring, f1, "family_str");
    require_ctx_match(ring, f2, "family_str");
    const std::uint32_t top = ring.e - 1;
    if (!f0.univariate_in(top))
        throw input_error("family_str: f0 must be univariate in x_{e-1}");
    if (!f1.uses_only_below(top) || !f2.uses_only_below(top))
        throw input_error("family_str: f1 and f2 must use only x_0..x_{e-2}");
    std::uint32_t d0 = f0.degree_in(top);
    if (d0 < 1) throw input_error("family_str: deg f0 must satisfy 1 <= deg f0 < p");
    if (vanishes_on_x0_nonzero(ring, f1))
        throw input_error("family_str: (x_0^{p-1}-1) divides f1");
    std::vector<std::uint64_t> origin(ring.e, 0);
    if (f1.eval(origin) == 0) throw input_error("family_str: f1(0,...,0) == 0");

    CompressingMap m = from_poly(ring, f0 * f1 + f2);
    m.provenance = "str";
    return m;
}

CompressingMap family_weak(const RingCtx& ring, const WeakPow& params) {
    require_ctx_match(ring, params.f1, "family_weak");
    require_ctx_match(ring, params.f2, "family_weak");
    const std::uint32_t top = ring.e - 1;
    if (params.ell < 2 || params.ell >= ring.p)
        throw input_error("family_weak: pow mode requires 2 <= l < p");
    if (!params.f1.uses_only_below(top) || !params.f2.uses_only_below(top))
        throw input_error("family_weak: f1 and f2 must use only x_0..x_{e-2}");
    if (vanishes_on_x0_nonzero(ring, params.f1))
        throw input_error("family_weak: (x_0^{p-1}-1) divides f1");
    if (vanishes_on_x0_zero(ring, params.f1))
        throw input_error("family_weak: x_0 divides f1");

    CoordPoly lead = CoordPoly::variable(ring.p, ring.e, top).pow(params.ell);
    CompressingMap m = from_poly(ring, lead * params.f1 + params.f2);
    m.provenance = "pow(l=" + std::to_string(params.ell) + ")";
    return m;
}

CompressingMap family_weak(const RingCtx& ring, const WeakLin& params) {
    require_ctx_match(ring, params.g0, "family_weak");
    require_ctx_match(ring, params.g1, "family_weak");
    require_ctx_match(ring, params.f2, "family_weak");
    const std::uint32_t top = ring.e - 1;
    const std::uint32_t k = params.k;
    if (k > ring.e - 2) throw input_error("family_weak: k must be in [0, e-2]");
    if (!params.g0.univariate_in(k))
        throw input_error("family_weak: g0 must be univariate in x_k");
    if (!params.g1.uses_only_below(k))
        throw input_error(k == 0 ? "family_weak: g1 must be zero when k = 0"
                                 : "family_weak: g1 must use only x_0..x_{k-1}");
    if (k == 0 && !params.g1.is_zero())
        throw input_error("family_weak: g1 must be zero when k = 0");
    if (!params.f2.uses_only_below(top))
        throw input_error("family_weak: f2 must use only x_0..x_{e-2}");
    std::uint32_t dg0 = params.g0.degree_in(k);
    if (k >= 1 && dg0 < 1)
        throw input_error("family_weak: deg g0 must satisfy 1 <= deg g0 < p for k >= 1");
    if (k == 0) {
        if (vanishes_on_x0_nonzero(ring, params.g0))
            throw input_error("family_weak: (x_0^{p-1}-1) divides g0");
        if (vanishes_on_x0_zero(ring, params.g0))
            throw input_error("family_weak: x_0 divides g0");
    }
    if (std::gcd<std::uint64_t>(ring.p - 1, dg0 + 1) != 1)
        throw input_error("family_weak: gcd(p-1, deg g0 + 1) != 1");

    CoordPoly lead = CoordPoly::variable(ring.p, ring.e, top);
    CompressingMap m = from_poly(ring, lead * (params.g0 + params.g1) + params.f2);
    m.provenance = "lin(k=" + std::to_string(k) + ")";
    return m;
}

PeriodicSequence apply(const CompressingMap& map, const PeriodicSequence& seq) {
    if (map.modulus != seq.domain) throw input_error("apply: map/sequence context mismatch");
    std::vector<std::uint64_t> out(seq.samples.size());
    for (std::size_t t = 0; t < out.size(); ++t) out[t] = map.table[seq.samples[t]];
    return make_periodic(map.alphabet, std::move(out));
}

} // namespace zpe
