#include <catch_amalgamated.hpp>

#include <set>

#include "ddf/galois_ring.hpp"
#include "oracles.hpp"

using namespace ddf;

namespace {

std::vector<Encoding> sorted_teichmuller(const GaloisRing& ring) {
    std::vector<Encoding> t = ring.teichmuller();
    std::sort(t.begin(), t.end());
    return t;
}

// 1 is a difference of two distinct elements of a, b.
bool one_in_difference(const GaloisRing& ring, const std::vector<Encoding>& a, const std::vector<Encoding>& b) {
    for (Encoding x : a)
        for (Encoding y : b)
            if (x != y && ring.sub(x, y) == 1) return true;
    return false;
}

const std::vector<std::pair<u64, unsigned>> kSmallRings{{5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1},
                                                        {5, 2}, {3, 3}, {7, 2}};

}  // namespace

TEST_CASE("Teichmuller sets match exhaustive solutions of t^p = t", "[galois_ring]") {
    const GaloisRing z25 = build_ring(5, 1);
    CHECK(sorted_teichmuller(z25) == std::vector<Encoding>{0, 1, 7, 18, 24});
    CHECK(z25.xi() == 7);
    const GaloisRing z9 = build_ring(3, 1);
    CHECK(sorted_teichmuller(z9) == std::vector<Encoding>{0, 1, 8});
    for (u64 p : {3, 5, 7, 11, 13, 17, 19}) {
        const auto expected = oracle::teichmuller_by_exhaustion(p);
        const auto got = sorted_teichmuller(build_ring(p, 1));
        CHECK(got == std::vector<Encoding>(expected.begin(), expected.end()));
    }
    const GaloisRing gr25 = build_ring(5, 2);
    CHECK(gr25.teichmuller().size() == 25);
    CHECK(gr25.order() == 625);
    u64 ord = 1;
    for (Encoding x = gr25.xi(); x != 1; x = gr25.mul(x, gr25.xi())) ++ord;
    CHECK(ord == 24);
}

TEST_CASE("p-adic digits and unit decomposition", "[galois_ring]") {
    const GaloisRing z25 = build_ring(5, 1);
    CHECK(z25.p_adic(12) == PAdicDigits{7, 1});
    CHECK(z25.p_adic(0) == PAdicDigits{0, 0});
    CHECK(z25.unit_decompose(6) == UnitDecomposition{1, 1});
    CHECK(z25.unit_decompose(7) == UnitDecomposition{7, 0});
    CHECK_THROWS_AS(z25.unit_decompose(10), std::domain_error);
    const GaloisRing z9 = build_ring(3, 1);
    CHECK(z9.p_adic(5) == PAdicDigits{8, 8});
    CHECK(z9.unit_decompose(4) == UnitDecomposition{1, 1});
}

TEST_CASE("p-adic and unit decompositions reconstruct every element", "[galois_ring][property]") {
    for (auto [p, r] : kSmallRings) {
        const GaloisRing ring = build_ring(p, r);
        std::set<std::pair<Encoding, Encoding>> seen;
        for (Encoding a = 0; a < ring.order(); ++a) {
            const PAdicDigits d = ring.p_adic(a);
            REQUIRE(ring.is_teichmuller(d.first));
            REQUIRE(ring.is_teichmuller(d.second));
            REQUIRE(ring.add(d.first, ring.times_p(d.second)) == a);
            seen.insert({d.first, d.second});
            if (ring.is_unit(a)) {
                const UnitDecomposition u = ring.unit_decompose(a);
                REQUIRE(ring.is_teichmuller(u.teich));
                REQUIRE(ring.mul(u.teich, ring.add(1, ring.times_p(u.principal))) == a);
            }
        }
        CHECK(seen.size() == ring.order());
    }
}

TEST_CASE("reduction restricted to T is a bijection", "[galois_ring][property]") {
    for (auto [p, r] : kSmallRings) {
        const GaloisRing ring = build_ring(p, r);
        std::set<Encoding> residues;
        for (Encoding t : ring.teichmuller()) residues.insert(ring.reduce(t));
        CHECK(residues.size() == ring.residue_order());
        for (Encoding t : ring.teichmuller()) CHECK(ring.pow(t, ring.residue_order()) == t);
    }
}

TEST_CASE("principal units multiply additively in the second digit", "[galois_ring][property]") {
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}, {5, 2}, {7, 2}}) {
        const GaloisRing ring = build_ring(p, r);
        for (Encoding a : ring.teichmuller())
            for (Encoding b : ring.teichmuller()) {
                const Encoding lhs = ring.mul(ring.add(1, ring.times_p(a)), ring.add(1, ring.times_p(b)));
                REQUIRE(lhs == ring.add(1, ring.times_p(ring.add(a, b))));
            }
    }
}

TEST_CASE("differences of distinct Teichmuller units are units", "[galois_ring][property]") {
    for (auto [p, r] : kSmallRings) {
        const GaloisRing ring = build_ring(p, r);
        const auto& t = ring.teichmuller();
        for (std::size_t i = 1; i < t.size(); ++i)
            for (std::size_t j = 1; j < t.size(); ++j)
                if (i != j) REQUIRE(ring.is_unit(ring.sub(t[i], t[j])));
    }
}

TEST_CASE("square split", "[galois_ring]") {
    const GaloisRing z25 = build_ring(5, 1);
    const SquareSplit s = square_split(z25);
    CHECK(s.squares == std::vector<Encoding>{1, 24});
    CHECK(s.non_squares == std::vector<Encoding>{7, 18});
    CHECK_THROWS_AS(square_split(build_ring(3, 1)), std::domain_error);
    CHECK_THROWS_AS(square_split(build_ring(2, 3)), std::domain_error);

    for (auto [p, r] : kSmallRings) {
        const GaloisRing ring = build_ring(p, r);
        const SquareSplit split = square_split(ring);
        // squares of T* by brute force
        std::set<Encoding> brute;
        for (std::size_t i = 1; i < ring.teichmuller().size(); ++i)
            brute.insert(ring.mul(ring.teichmuller()[i], ring.teichmuller()[i]));
        CHECK(std::vector<Encoding>(brute.begin(), brute.end()) == split.squares);
        CHECK(split.squares.size() == (ring.residue_order() - 1) / 2);
        CHECK(split.non_squares.size() == (ring.residue_order() - 1) / 2);
        const Encoding minus_one = ring.neg(1);
        const bool in_squares = std::binary_search(split.squares.begin(), split.squares.end(), minus_one);
        CHECK(in_squares == (ring.residue_order() % 4 == 1));
    }
}

TEST_CASE("classification of 2", "[galois_ring]") {
    CHECK(is_two_teichmuller_square(build_ring(5, 1)) == TwoClass::not_in_teichmuller);
    CHECK(is_two_teichmuller_square(build_ring(5, 2)) == TwoClass::not_in_teichmuller);
    CHECK(is_two_teichmuller_square(build_ring(7, 1)) == TwoClass::not_in_teichmuller);
    CHECK(is_two_teichmuller_square(build_ring(1093, 1)) != TwoClass::not_in_teichmuller);
    CHECK(std::string(to_string(TwoClass::not_in_teichmuller)) == "not-in-T*");
}

TEST_CASE("sixth roots and the unit 1 as a Teichmuller difference", "[galois_ring][property]") {
    for (auto [p, r] : kSmallRings) {
        const GaloisRing ring = build_ring(p, r);
        const u64 m = ring.residue_order();
        const SquareSplit s = square_split(ring);
        INFO("p^r = " << m);
        CHECK(one_in_difference(ring, s.squares, s.squares) == (m % 12 == 1));
        CHECK(one_in_difference(ring, s.non_squares, s.squares) == (m % 12 == 7));
        if ((m - 1) % 6 == 0) {
            Encoding sum = 0;
            for (u64 k = 0; k < 6; ++k) sum = ring.add(sum, ring.xi_power(k * (m - 1) / 6));
            CHECK(sum == 0);
        }
    }
}

TEST_CASE("2 is a ring square exactly when p^r is 1 or 7 mod 8", "[galois_ring][property]") {
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{
             {5, 1}, {7, 1}, {3, 2}, {11, 1}, {13, 1}, {5, 2}, {3, 3}, {7, 2}}) {
        const GaloisRing ring = build_ring(p, r);
        const u64 m = ring.residue_order();
        const Encoding two = ring.constant(2);
        std::set<Encoding> squares;
        for (Encoding u = 0; u < ring.order(); ++u)
            if (ring.is_unit(u)) squares.insert(ring.mul(u, u));
        INFO("p^r = " << m);
        CHECK(squares.contains(two) == (m % 8 == 1 || m % 8 == 7));
        CHECK(ring.is_square_unit(ring.unit_decompose(two).teich) == (m % 8 == 1 || m % 8 == 7));
    }
}

TEST_CASE("scaling and ring constructors reject bad input", "[galois_ring]") {
    CHECK_THROWS_AS(build_ring(4, 1), std::invalid_argument);
    CHECK_THROWS_AS(build_ring(2, 1), std::invalid_argument);
    const GaloisRing ring = build_ring(5, 1);
    const auto scaled = scale(ring, 2, {1, 7});
    CHECK(scaled == std::vector<Encoding>{2, 14});
}
