#include <catch_amalgamated.hpp>

#include <numeric>
#include <random>
#include <sstream>

#include "ddf/designs.hpp"
#include "ddf/families.hpp"
#include "ddf/field.hpp"
#include "ddf/galois_ring.hpp"
#include "oracles.hpp"

using namespace ddf;

namespace {

std::vector<DifferenceFamily> small_families() {
    std::vector<DifferenceFamily> out;
    for (auto [p, n, e] : std::vector<std::tuple<u64, unsigned, u64>>{
             {3, 2, 4}, {3, 2, 2}, {5, 2, 6}, {5, 2, 12}, {7, 2, 8}, {7, 2, 16}, {3, 4, 10}, {3, 4, 20}})
        out.push_back(wilson_family(build_field(p, n), e));
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {5, 1}, {7, 1}, {3, 2}}) {
        out.push_back(davis_family(build_ring(p, r)));
        if (p != 3 || r != 1) out.push_back(squares_family(build_ring(p, r)));
    }
    out.push_back(furino_family(build_field(13, 1), {1, 3, 9}));
    return out;
}

std::vector<Point> random_permutation(u64 v, std::mt19937_64& rng) {
    std::vector<Point> perm(v);
    std::iota(perm.begin(), perm.end(), Point{0});
    std::shuffle(perm.begin(), perm.end(), rng);
    return perm;
}

IntersectionProfile as_profile(const std::map<u64, u64>& m) {
    IntersectionProfile p;
    for (auto [n, c] : m) p.add(n, c);
    return p;
}

}  // namespace

TEST_CASE("development", "[designs]") {
    DifferenceFamily single;
    single.group = AdditiveGroup(5, 1);
    single.v = 5;
    single.k = 2;
    single.blocks = {{1, 2}};
    const Design d = develop(single);
    CHECK(d.size() == 5);
    CHECK(d.blocks[0] == std::vector<Point>{1, 2});
    CHECK(d.blocks[4] == std::vector<Point>{0, 1});

    CHECK(develop(squares_family(build_ring(5, 1))).size() == 300);
    const Design big = develop(wilson_family(build_field(5, 4), 52));
    CHECK(big.size() == 32500);
    CHECK(count_duplicate_blocks(big) == 0);

    // a family whose blocks repeat under translation
    const DifferenceFamily twice = make_family("twice", AdditiveGroup(7, 1), {{1, 2, 4}, {1, 2, 4}}, 2);
    CHECK(count_duplicate_blocks(develop(twice)) == 7);
}

TEST_CASE("2-design verification", "[designs]") {
    CHECK(verify_2design(develop(squares_family(build_ring(5, 1))), 1).pass);
    CHECK(verify_2design(develop(wilson_family(build_field(3, 2), 4)), 1).pass);
    const DesignCheck wrong_lambda = verify_2design(develop(wilson_family(build_field(3, 2), 4)), 2);
    CHECK_FALSE(wrong_lambda.pass);

    Design junk;
    junk.v = 4;
    junk.k = 2;
    junk.blocks = {{0, 1}, {0, 1}, {2, 3}};
    const DesignCheck fail = verify_2design(junk, 1);
    CHECK_FALSE(fail.pass);
    REQUIRE(fail.witness.has_value());
    CHECK(*fail.witness == std::make_pair(Point{0}, Point{1}));
    CHECK(fail.witness_count == 2);

    for (const auto& fam : small_families()) {
        INFO(fam.name);
        CHECK(verify_2design(develop(fam), fam.lambda).pass);
    }
}

TEST_CASE("direct profiles", "[designs]") {
    const Design sq = develop(squares_family(build_ring(5, 1)));
    const IntersectionProfile prof = profile_direct(sq);
    CHECK(prof.total() == choose2(300));
    for (u64 key : intersection_numbers(prof)) CHECK(key <= 2);

    CHECK(intersection_numbers(profile_direct(develop(wilson_family(build_field(3, 2), 4)))) ==
          std::vector<u64>{0, 1});

    Design same;
    same.v = 3;
    same.k = 2;
    same.blocks = {{0, 1}, {0, 1}};
    CHECK(profile_direct(same).at(2) == 1);

    CHECK_THROWS_AS(profile_direct(develop(wilson_family(build_field(5, 4), 52))), BudgetExceeded);
}

TEST_CASE("difference-based profile equals direct scan", "[designs][property]") {
    for (const auto& fam : small_families()) {
        INFO(fam.name);
        const Design d = develop(fam);
        if (d.size() > kDirectProfileBudget) continue;
        const IntersectionProfile direct = profile_direct(d);
        CHECK(direct == as_profile(oracle::naive_profile(d)));
        CHECK(profile_via_differences(fam, 1) == direct);
        CHECK(profile_via_differences(fam, 3) == direct);
        CHECK(direct.total() == choose2(fam.v * fam.b()));
        CHECK(direct.at(0) >= fam.v * fam.b() * (fam.b() - 1) / 2);
    }
}

TEST_CASE("profiles of non-disjoint families", "[designs][property]") {
    const DifferenceFamily twice = make_family("twice", AdditiveGroup(7, 1), {{1, 2, 4}, {1, 2, 4}}, 2);
    CHECK(profile_via_differences(twice) == profile_direct(develop(twice)));
    CHECK(profile_via_differences(twice).at(3) == 7);
}

TEST_CASE("profiles are invariant under relabeling", "[designs][property]") {
    std::mt19937_64 rng(20261019);
    for (const auto& fam : small_families()) {
        if (fam.v > 81) continue;
        const Design d = develop(fam);
        if (d.size() > kDirectProfileBudget) continue;
        const Design moved = relabel(d, random_permutation(d.v, rng));
        CHECK(profile_direct(moved) == profile_direct(d));
    }
}

TEST_CASE("isomorphism oracle", "[designs]") {
    std::mt19937_64 rng(7);
    for (const auto& fam : small_families()) {
        if (fam.v > 25) continue;
        INFO(fam.name);
        const Design d = develop(fam);
        const IsoResult self = iso_oracle(d, d, 1'000'000);
        REQUIRE(self.status == IsoStatus::found);
        CHECK(transports_blocks(d, d, self.mapping));

        Design moved = relabel(d, random_permutation(d.v, rng));
        std::shuffle(moved.blocks.begin(), moved.blocks.end(), rng);
        const IsoResult r = iso_oracle(d, moved, 1'000'000);
        REQUIRE(r.status == IsoStatus::found);
        CHECK(transports_blocks(d, moved, r.mapping));
    }

    // same (v, b, k), different profiles
    const Design a = develop(davis_family(build_ring(5, 1)));
    const Design b = develop(wilson_family(build_field(5, 2), 6));
    REQUIRE(profile_direct(a) != profile_direct(b));
    const IsoResult none = iso_oracle(a, b, 10);
    CHECK(none.status == IsoStatus::nonexistent);
    CHECK(none.nodes == 0);

    // tiny hand-made pair with different profiles
    Design x, y;
    x.v = y.v = 6;
    x.k = y.k = 2;
    x.blocks = {{0, 1}, {2, 3}, {4, 5}};
    y.blocks = {{0, 1}, {1, 2}, {3, 4}};
    const IsoResult xy = iso_oracle(x, y, 1000);
    CHECK(xy.status == IsoStatus::nonexistent);

    CHECK_THROWS_AS(iso_oracle(a, develop(squares_family(build_ring(5, 1))), 10), std::invalid_argument);
    const IsoResult starved = iso_oracle(x, x, 1);
    CHECK(starved.status == IsoStatus::unknown);
}

TEST_CASE("design files round-trip", "[designs]") {
    const Design d = develop(davis_family(build_ring(3, 2)));
    std::stringstream ss;
    write_design(ss, d);
    const Design back = read_design(ss);
    CHECK(back.v == d.v);
    CHECK(back.k == d.k);
    CHECK(back.blocks == d.blocks);

    std::istringstream short_file("5 2 2\n0 1\n");
    CHECK_THROWS_AS(read_design(short_file), std::invalid_argument);
    std::istringstream bad_point("5 1 2\n0 9\n");
    CHECK_THROWS_AS(read_design(bad_point), std::invalid_argument);
}
