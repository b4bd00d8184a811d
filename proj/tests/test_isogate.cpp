#include <catch_amalgamated.hpp>

#include <set>

#include "ddf/families.hpp"
#include "ddf/field.hpp"
#include "ddf/galois_ring.hpp"
#include "ddf/isogate.hpp"
#include "ddf/serialize.hpp"

using namespace ddf;

namespace {

DifferenceFamily wilson_full(u64 p, unsigned r) {
    return wilson_family(build_field(p, 2 * r), checked_pow(p, r) + 1);
}

DifferenceFamily wilson_half(u64 p, unsigned r) {
    return wilson_family(build_field(p, 2 * r), 2 * (checked_pow(p, r) + 1));
}

}  // namespace

TEST_CASE("closed-form profile of the order p^r + 1 design", "[isogate]") {
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{3, 1}, {3, 2}, {5, 1}, {7, 1}, {5, 2}}) {
        const DifferenceFamily fam = wilson_full(p, r);
        const IntersectionProfile cf = closed_form_profile_C(p, r);
        INFO("p=" << p << " r=" << r);
        CHECK(cf == profile_via_differences(fam));
        CHECK(cf.total() == choose2(fam.v * fam.b()));
    }
    CHECK(intersection_numbers(closed_form_profile_C(5, 2)) == std::vector<u64>{0, 1, 23});
    // keys 1 and p^r - 2 coincide at p^r = 3
    CHECK(intersection_numbers(closed_form_profile_C(3, 1)) == std::vector<u64>{0, 1});
}

TEST_CASE("closed-form profile of the order 2(p^r + 1) design", "[isogate]") {
    const IntersectionProfile cf = closed_form_profile_CH(5, 2);
    CHECK(cf.at(1) == 117000000);
    CHECK(cf.at(5) == 195000);
    CHECK(cf.at(6) == 585000);
    CHECK(cf.at(0) == 410328750);
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {7, 1}, {13, 1}, {5, 2}, {11, 1}}) {
        const DifferenceFamily fam = wilson_half(p, r);
        INFO("p=" << p << " r=" << r);
        CHECK(closed_form_profile_CH(p, r) == profile_via_differences(fam));
        CHECK(closed_form_profile_CH(p, r).total() == choose2(fam.v * fam.b()));
    }
    CHECK_THROWS_AS(closed_form_profile_CH(2, 3), std::invalid_argument);
    CHECK_THROWS_AS(closed_form_profile_CH(3, 1), std::invalid_argument);
}

TEST_CASE("gate", "[isogate]") {
    const GateReport g52 = gate(5, 2);
    CHECK(g52.applies);
    CHECK(g52.mod24 == 0);
    const GateReport g71 = gate(7, 1);
    CHECK_FALSE(g71.applies);
    CHECK(g71.mod24 == 6);
    CHECK(g71.reasons.size() == 1);
    const GateReport w = gate(1093, 2);
    CHECK(w.wieferich);
    CHECK_FALSE(w.applies);
    CHECK_FALSE(gate(2, 4).applies);
    CHECK_THROWS_AS(gate(9, 1), std::invalid_argument);
    for (u64 p = 3; p < 200; ++p) {
        if (!is_prime(p)) continue;
        for (unsigned r = 1; r <= 4; ++r) {
            const GateReport g = gate(p, r);
            CHECK(g.applies == (g.p_odd && !g.wieferich && g.mod24 == 0));
        }
    }
}

TEST_CASE("Wieferich primes below one million", "[isogate]") {
    std::vector<u64> found;
    for (u64 p = 2; p < 1'000'000; ++p)
        if (is_prime(p) && wieferich(p)) found.push_back(p);
    CHECK(found == std::vector<u64>{1093, 3511});
}

TEST_CASE("coset tallies", "[isogate]") {
    const CosetCountReport r25 = sn_coset_counts(build_ring(5, 2));
    CHECK(r25.delta_squares == CosetTally{5, 6});
    CHECK(r25.squares_minus_non == CosetTally{6, 6});
    CHECK(r25.matches());
    const CosetCountReport r7 = sn_coset_counts(build_ring(7, 1));
    CHECK(r7.delta_squares == CosetTally{1, 1});
    CHECK(r7.squares_minus_non == CosetTally{1, 2});
    CHECK(sn_coset_counts(build_ring(5, 1)).delta_squares == CosetTally{0, 1});
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{11, 1}, {13, 1}, {3, 2}, {3, 3}, {17, 1}, {19, 1}, {7, 2}}) {
        INFO("p=" << p << " r=" << r);
        CHECK(sn_coset_counts(build_ring(p, r)).matches());
    }
}

TEST_CASE("multiplicity bounds", "[isogate]") {
    const BoundReport b25 = bound_report(build_ring(5, 2));
    CHECK(b25.verdict);
    REQUIRE(b25.upper_bound.has_value());
    CHECK(*b25.upper_bound == 5);
    REQUIRE(b25.lower_scope_min.has_value());
    CHECK(*b25.lower_scope_min > 1);
    REQUIRE(b25.upper_scope_max.has_value());
    CHECK(*b25.upper_scope_max < 5);
    CHECK(bound_report(build_ring(7, 2)).verdict);
    CHECK(bound_report(build_ring(73, 1)).verdict);
    CHECK_THROWS_AS(bound_report(build_ring(3, 1)), std::domain_error);
}

TEST_CASE("pT_S* - pT_N* multiplicities at p^r = 19", "[isogate]") {
    const GaloisRing ring = build_ring(19, 1);
    const SquareSplit s = square_split(ring);
    const auto ps = scale(ring, ring.constant(19), s.squares);
    const auto pn = scale(ring, ring.constant(19), s.non_squares);
    const auto diffs = difference_counts(ring.additive_group(), ps, pn);
    const std::set<Encoding> ps_set(ps.begin(), ps.end()), pn_set(pn.begin(), pn.end());
    u64 on_n = 0, on_s = 0;
    for (const auto& [d, mult] : diffs) {
        if (pn_set.contains(d)) {
            CHECK(mult == (19 + 1) / 4);
            ++on_n;
        } else if (ps_set.contains(d)) {
            CHECK(mult == (19 - 3) / 4);
            ++on_s;
        }
    }
    CHECK(on_n == pn.size());
    CHECK(on_s == ps.size());
}

TEST_CASE("comparison verdicts", "[isogate]") {
    const DifferenceFamily ch = wilson_half(5, 2);
    const DifferenceFamily eh = squares_family(build_ring(5, 2));
    const Comparison cmp = compare_designs(ch, eh);
    CHECK(cmp.verdict == Verdict::nonisomorphic);
    REQUIRE(cmp.witness_key.has_value());
    CHECK(*cmp.witness_key == 2);
    CHECK(cmp.witness_kind == "intersection-number");
    CHECK(intersection_numbers(cmp.profile_a) == std::vector<u64>{0, 1, 5, 6});
    CHECK(intersection_numbers(cmp.profile_b) == std::vector<u64>{0, 1, 2, 5, 6});
    CHECK(cmp.profile_b.at(0) == 417078750);
    CHECK(cmp.profile_b.at(1) == 100687500);
    CHECK(cmp.profile_b.at(2) == 10312500);
    CHECK(cmp.profile_b.at(5) == 7500);
    CHECK(cmp.profile_b.at(6) == 22500);

    const Comparison self = compare_designs(ch, ch, 1);
    CHECK(self.verdict == Verdict::inconclusive);
    CHECK_FALSE(self.witness_key.has_value());

    CHECK_THROWS_AS(compare_designs(ch, davis_family(build_ring(5, 2))), std::invalid_argument);

    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{7, 2}, {73, 1}}) {
        REQUIRE(gate(p, r).applies);
        INFO("p=" << p << " r=" << r);
        CHECK(compare_designs(wilson_half(p, r), squares_family(build_ring(p, r))).verdict == Verdict::nonisomorphic);
    }
}

TEST_CASE("certificate layout", "[isogate]") {
    const DifferenceFamily ch = wilson_half(5, 2);
    const Comparison cmp = compare_designs(ch, squares_family(build_ring(5, 2)));
    const ordered_json cert = certificate_json(ch, cmp, {"wilson-half", "gr-squares", gate(5, 2)});
    std::vector<std::string> keys;
    for (const auto& [k, v] : cert.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"parameters", "gate", "profiles", "intersection_numbers", "verdict",
                                           "witness", "tool_version"});
    CHECK(cert["verdict"] == "nonisomorphic");
    CHECK(cert["witness"]["key"] == 2);
    CHECK(cert["profiles"]["a"]["0"] == "410328750");
    CHECK(profile_from_json(cert["profiles"]["b"]) == cmp.profile_b);
}
