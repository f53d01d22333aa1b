#include "zpe/formats.hpp"

#include "zpe/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

namespace zpe {

namespace {

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        std::size_t at = s.find(sep, start);
        if (at == std::string_view::npos) {
            out.emplace_back(s.substr(start));
            break;
        }
        out.emplace_back(s.substr(start, at - start));
        start = at + 1;
    }
    return out;
}

std::int64_t parse_int(std::string_view tok) {
    std::size_t b = 0, e = tok.size();
    while (b < e && std::isspace(static_cast<unsigned char>(tok[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(tok[e - 1]))) --e;
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(tok.data() + b, tok.data() + e, v);
    if (ec != std::errc() || ptr != tok.data() + e)
        throw input_error("expected an integer, got '" + std::string(tok) + "'");
    return v;
}

std::vector<std::uint64_t> parse_residues(const RingCtx& ring, std::string_view text) {
    std::vector<std::uint64_t> vals;
    for (const auto& tok : split(text, ','))
        vals.push_back(ring.reduce(parse_int(tok)));
    return vals;
}

std::string join(std::span<const std::uint64_t> vals) {
    std::ostringstream os;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        if (i) os << ',';
        os << vals[i];
    }
    return os.str();
}

} // namespace

std::vector<std::uint64_t> parse_poly(const RingCtx& ring, std::string_view text) {
    std::vector<std::uint64_t> vals = parse_residues(ring, text);
    if (vals.size() < 2) throw input_error("polynomial: need at least degree 1");
    std::reverse(vals.begin(), vals.end()); // store ascending
    if (vals.back() != 1) throw input_error("polynomial: must be monic");
    return vals;
}

std::string format_poly(std::span<const std::uint64_t> ascending_coeffs) {
    std::vector<std::uint64_t> v(ascending_coeffs.rbegin(), ascending_coeffs.rend());
    return join(v);
}

OElem parse_oelem(const GaloisCtx& ctx, std::string_view text) {
    std::vector<std::uint64_t> vals = parse_residues(ctx.ring, text);
    if (vals.size() != ctx.n)
        throw input_error("element: expected " + std::to_string(ctx.n) + " coefficients");
    std::reverse(vals.begin(), vals.end());
    return OElem{std::move(vals)};
}

std::string format_oelem(const OElem& z) {
    std::vector<std::uint64_t> v(z.c.rbegin(), z.c.rend());
    return join(v);
}

std::string format_fqelem(const FqElem& z) {
    std::vector<std::uint64_t> v(z.c.rbegin(), z.c.rend());
    return join(v);
}

CompressingMap parse_map_spec(const RingCtx& ring, std::string_view spec) {
    auto poly_of = [&](std::string_view expr) {
        return parse_coord_poly(ring.p, ring.e, expr);
    };
    if (spec.rfind("t:", 0) == 0) {
        std::vector<std::uint64_t> vals;
        for (const auto& tok : split(spec.substr(2), ',')) {
            std::int64_t v = parse_int(tok);
            if (v < 0) throw input_error("table map: labels must be nonnegative");
            vals.push_back(static_cast<std::uint64_t>(v));
        }
        if (vals.size() != ring.modulus)
            throw input_error("table map: expected " + std::to_string(ring.modulus) + " labels");
        std::uint64_t alphabet = *std::max_element(vals.begin(), vals.end()) + 1;
        if (alphabet < 2) alphabet = 2;
        return CompressingMap{ring.modulus, alphabet, std::move(vals), "table"};
    }
    if (spec.rfind("mod:", 0) == 0) {
        std::int64_t m = parse_int(spec.substr(4));
        if (m < 0) throw input_error("modular map: M must be positive");
        return modular_map(ring, static_cast<std::uint64_t>(m));
    }
    if (spec.rfind("str:", 0) == 0) {
        auto parts = split(spec.substr(4), ';');
        if (parts.size() != 3) throw input_error("str map: expected f0;f1;f2");
        return family_str(ring, poly_of(parts[0]), poly_of(parts[1]), poly_of(parts[2]));
    }
    if (spec.rfind("pow:", 0) == 0) {
        auto parts = split(spec.substr(4), ';');
        if (parts.size() != 3) throw input_error("pow map: expected l;f1;f2");
        std::int64_t ell = parse_int(parts[0]);
        if (ell < 0) throw input_error("pow map: l must be nonnegative");
        return family_weak(ring, WeakPow{static_cast<std::uint32_t>(ell),
                                         poly_of(parts[1]), poly_of(parts[2])});
    }
    if (spec.rfind("lin:", 0) == 0) {
        auto parts = split(spec.substr(4), ';');
        if (parts.size() != 4) throw input_error("lin map: expected k;g0;g1;f2");
        std::int64_t k = parse_int(parts[0]);
        if (k < 0) throw input_error("lin map: k must be nonnegative");
        return family_weak(ring, WeakLin{static_cast<std::uint32_t>(k), poly_of(parts[1]),
                                         poly_of(parts[2]), poly_of(parts[3])});
    }
    CompressingMap m = from_poly(ring, poly_of(spec));
    m.provenance = std::string(spec);
    return m;
}

} // namespace zpe
