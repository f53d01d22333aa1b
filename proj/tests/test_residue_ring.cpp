#include "zpe/residue_ring.hpp"

#include "zpe/errors.hpp"

#include <doctest.h>

#include <numeric>
#include <set>

using namespace zpe;

TEST_CASE("construction validates its inputs") {
    CHECK_THROWS_AS(RingCtx(4, 2), input_error);  // not prime
    CHECK_THROWS_AS(RingCtx(2, 2), input_error);  // even
    CHECK_THROWS_AS(RingCtx(9, 2), input_error);  // not prime
    CHECK_THROWS_AS(RingCtx(3, 1), input_error);  // e too small
    CHECK_THROWS_AS(RingCtx(3, 40), input_error); // p^e too wide
    RingCtx r(3, 2);
    CHECK(r.modulus == 9);
    CHECK(r.reduce(-4) == 5);
    CHECK(r.reduce(9) == 0);
}

TEST_CASE("digits and from_digits") {
    RingCtx r32(3, 2), r33(3, 3);
    CHECK(r32.digits(7) == std::vector<std::uint64_t>{1, 2});
    CHECK(r32.digits(0) == std::vector<std::uint64_t>{0, 0});
    CHECK(r33.digits(13) == std::vector<std::uint64_t>{1, 1, 1});
    CHECK(r32.from_digits(std::vector<std::uint64_t>{1, 2}) == 7);
    CHECK(r33.from_digits(std::vector<std::uint64_t>{0, 0, 0}) == 0);
    CHECK(r33.from_digits(std::vector<std::uint64_t>{1, 1, 1}) == 13);
    CHECK_THROWS_AS(r32.from_digits(std::vector<std::uint64_t>{3, 0}), input_error);
    CHECK_THROWS_AS(r32.from_digits(std::vector<std::uint64_t>{1}), input_error);

    for (std::uint64_t a = 0; a < r33.modulus; ++a)
        CHECK(r33.from_digits(r33.digits(a)) == a);
}

TEST_CASE("roots of unity") {
    RingCtx r32(3, 2), r52(5, 2);
    CHECK(r32.roots_of_unity(2) == std::vector<RElem>{1, 8});
    CHECK(r52.roots_of_unity(2) == std::vector<RElem>{1, 24});
    CHECK(r32.roots_of_unity(1) == std::vector<RElem>{1});
    CHECK_THROWS_AS(r52.roots_of_unity(3), input_error); // 3 does not divide 4

    // Closed under product and inverse, and all elements are units.
    auto roots = r52.roots_of_unity(4);
    std::set<RElem> rs(roots.begin(), roots.end());
    for (RElem a : roots) {
        CHECK(r52.is_unit(a));
        CHECK(rs.count(r52.inv(a)) == 1);
        for (RElem b : roots) CHECK(rs.count(r52.mul(a, b)) == 1);
    }
}

TEST_CASE("top cosets") {
    RingCtx r32(3, 2), r33(3, 3);
    CHECK(r32.top_coset(1) == std::vector<RElem>{1, 4, 7});
    CHECK(r32.top_coset(4) == std::vector<RElem>{1, 4, 7}); // representative independence
    CHECK(r33.top_coset(0) == std::vector<RElem>{0, 9, 18});

    // Cosets partition R into p^{e-1} blocks of size p, each containing its base.
    std::set<std::vector<RElem>> blocks;
    for (RElem a = 0; a < r33.modulus; ++a) {
        auto coset = r33.top_coset(a);
        CHECK(coset.size() == 3);
        CHECK(std::find(coset.begin(), coset.end(), a) != coset.end());
        blocks.insert(coset);
    }
    CHECK(blocks.size() == 9);
    std::size_t covered = 0;
    for (const auto& b : blocks) covered += b.size();
    CHECK(covered == r33.modulus);
}

TEST_CASE("unit group size is p^{e-1}(p-1)") {
    for (auto [p, e] : {std::pair<std::uint64_t, std::uint32_t>{3, 2}, {3, 3}, {5, 2}}) {
        RingCtx r(p, e);
        std::uint64_t count = 0;
        for (std::uint64_t a = 0; a < r.modulus; ++a)
            if (std::gcd(a, r.modulus) == 1) ++count;
        CHECK(count == r.modulus / p * (p - 1));
        CHECK(r.units().size() == count);
    }
}

TEST_CASE("modular helpers") {
    RingCtx r(3, 2);
    CHECK(r.pow(2, 4) == 7);
    CHECK(r.mul(r.inv(5), 5) == 1);
    CHECK_THROWS_AS(r.inv(3), input_error);
    CHECK(r.neg(0) == 0);
    CHECK(r.neg(4) == 5);
}
