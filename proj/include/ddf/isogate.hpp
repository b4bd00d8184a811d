#ifndef DDF_ISOGATE_HPP
#define DDF_ISOGATE_HPP

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddf/designs.hpp"
#include "ddf/families.hpp"
#include "ddf/galois_ring.hpp"
#include "ddf/number_theory.hpp"

namespace ddf {

namespace detail {

/// Evaluates (sum of coeffs[i] * m^i) / 2 exactly.
inline u64 half_poly(u64 m, std::initializer_list<std::int64_t> coeffs) {
    i128 acc = 0, power = 1;
    for (std::int64_t c : coeffs) {
        acc += static_cast<i128>(c) * power;
        power *= static_cast<i128>(m);
    }
    if (acc % 2 != 0) throw std::logic_error("closed form: odd numerator");
    return narrow_u64(acc / 2);
}

}  // namespace detail

/// Profile of dev(C) for the order p^r + 1 classes of F_{p^{2r}}:
///   0       -> (3m^5 + m^4 - 2m^3)/2
///   1       -> (m^6 - m^5 - m^4 + m^3)/2
///   m - 2   -> (m^4 - m^2)/2
/// with m = p^r; coinciding keys are summed.
inline IntersectionProfile closed_form_profile_C(u64 p, unsigned r) {
    const u64 m = checked_pow(p, r);
    if (m < 3) throw std::invalid_argument("closed_form_profile_C: requires p^r >= 3");
    IntersectionProfile profile;
    profile.add(0, detail::half_poly(m, {0, 0, 0, -2, 1, 3}));
    profile.add(1, detail::half_poly(m, {0, 0, 0, 1, -1, -1, 1}));
    profile.add(m - 2, detail::half_poly(m, {0, 0, -1, 0, 1}));
    return profile;
}

/// Profile of dev(C^H) for the order 2(p^r + 1) classes of F_{p^{2r}}.
inline IntersectionProfile closed_form_profile_CH(u64 p, unsigned r) {
    if (p % 2 == 0) throw std::invalid_argument("closed_form_profile_CH: requires odd p");
    const u64 m = checked_pow(p, r);
    if (m < 5) throw std::invalid_argument("closed_form_profile_CH: requires p^r >= 5");
    IntersectionProfile profile;
    profile.add(0, detail::half_poly(m, {0, 0, 2, -3, 1, 9, 3}));
    profile.add(1, detail::half_poly(m, {0, 0, 0, 1, -1, -1, 1}));
    const u64 once = detail::half_poly(m, {0, 0, -1, 0, 1});
    const u64 thrice = detail::half_poly(m, {0, 0, -3, 0, 3});
    if ((m - 1) % 4 == 0) {
        profile.add((m - 5) / 4, once);
        profile.add((m - 1) / 4, thrice);
    } else {
        profile.add((m - 3) / 4, thrice);
        profile.add((m + 1) / 4, once);
    }
    return profile;
}

struct GateReport {
    u64 p = 0;
    unsigned r = 0;
    bool p_odd = false;
    u64 mod24 = 0;  // (p^r - 1) mod 24
    bool wieferich = false;
    bool applies = false;
    std::vector<std::string> reasons;  // one entry per failed clause
};

/// Applicability of the non-isomorphism criterion for (C^H, E^H):
/// p odd, p not Wieferich, p^r = 1 (mod 24).
inline GateReport gate(u64 p, unsigned r) {
    if (!is_prime(p)) throw std::invalid_argument("gate: " + std::to_string(p) + " is not prime");
    if (r < 1) throw std::invalid_argument("gate: r must be at least 1");
    GateReport g;
    g.p = p;
    g.r = r;
    g.p_odd = p % 2 == 1;
    g.mod24 = (pow_mod(p, r, 24) + 23) % 24;
    g.wieferich = wieferich(p);
    if (!g.p_odd) g.reasons.push_back("p is even");
    if (g.wieferich) g.reasons.push_back("p is a Wieferich prime: 2^(p-1) = 1 (mod p^2)");
    if (g.mod24 != 0) g.reasons.push_back("p^r - 1 = " + std::to_string(g.mod24) + " (mod 24), not 0");
    g.applies = g.p_odd && !g.wieferich && g.mod24 == 0;
    return g;
}

struct CosetTally {
    u64 square_cosets = 0;
    u64 non_square_cosets = 0;
    friend bool operator==(const CosetTally&, const CosetTally&) = default;
};

struct CosetCountReport {
    CosetTally delta_squares;         // Delta T_S*
    CosetTally squares_minus_non;     // T_S* - T_N*
    CosetTally delta_squares_formula;
    CosetTally squares_minus_non_formula;
    [[nodiscard]] bool matches() const {
        return delta_squares == delta_squares_formula && squares_minus_non == squares_minus_non_formula;
    }
};

namespace detail {

inline void require_odd_ring(const GaloisRing& ring, const char* who) {
    if (ring.characteristic_prime() == 2 || ring.residue_order() < 5)
        throw std::domain_error(std::string(who) + ": requires odd p and p^r >= 5");
}

inline CosetTally tally(const GaloisRing& ring, const std::map<Encoding, u64>& diffs, u64 coset_size) {
    u64 sq = 0, nsq = 0;
    for (const auto& [d, mult] : diffs) (ring.is_square_unit(d) ? sq : nsq) += mult;
    if (sq % coset_size != 0 || nsq % coset_size != 0)
        throw std::logic_error("coset tally: multiset is not a union of cosets");
    return {sq / coset_size, nsq / coset_size};
}

}  // namespace detail

/// Square/non-square coset tallies of Delta T_S* and T_S* - T_N*.
inline CosetCountReport sn_coset_counts(const GaloisRing& ring) {
    detail::require_odd_ring(ring, "sn_coset_counts");
    const SquareSplit split = square_split(ring);
    const u64 h = split.squares.size();
    const u64 m = ring.residue_order();
    CosetCountReport report;
    report.delta_squares =
        detail::tally(ring, difference_counts(ring.additive_group(), split.squares, split.squares), h);
    report.squares_minus_non =
        detail::tally(ring, difference_counts(ring.additive_group(), split.squares, split.non_squares), h);
    if ((m - 1) % 4 == 0) {
        report.delta_squares_formula = {(m - 5) / 4, (m - 1) / 4};
        report.squares_minus_non_formula = {(m - 1) / 4, (m - 1) / 4};
    } else {
        report.delta_squares_formula = {(m - 3) / 4, (m - 3) / 4};
        report.squares_minus_non_formula = {(m - 3) / 4, (m + 1) / 4};
    }
    return report;
}

struct BoundEntry {
    Encoding d = 0;
    u64 multiplicity = 0;
    bool lower_scope = false;  // must satisfy N_d > 1
    bool upper_scope = false;  // must satisfy N_d < upper_bound
};

struct BoundReport {
    std::string multiset;          // "Delta T_S*" or "T_S* - T_N*"
    std::optional<u64> upper_bound;  // strict bound, when an upper scope exists
    std::vector<BoundEntry> entries;  // one per distinct difference, ascending encoding
    std::optional<u64> lower_scope_min;
    std::optional<u64> upper_scope_max;
    bool verdict = false;
};

/// Multiplicities N_d of the relevant difference multiset.
///  p^r = 1 (mod 4): Delta T_S*; lower scope d not in 2T_S*; when p^r = 1 (mod 24)
///    the upper scope is square d not in 2T_S* with N_d < (p^r - 5)/4.
///  p^r = 3 (mod 4): T_S* - T_N*; lower scope d not in 2T_S*; when
///    p^r = 19 (mod 24) the upper scope is the same set with N_d < (p^r + 1)/4.
inline BoundReport bound_report(const GaloisRing& ring) {
    detail::require_odd_ring(ring, "bound_report");
    const u64 p = ring.characteristic_prime();
    if (wieferich(p)) throw std::domain_error("bound_report: requires a non-Wieferich prime");
    const u64 m = ring.residue_order();
    const SquareSplit split = square_split(ring);
    const std::vector<Encoding> twice = scale(ring, ring.constant(2), split.squares);
    const std::set<Encoding> twice_set(twice.begin(), twice.end());

    BoundReport report;
    const bool one_mod_four = (m - 1) % 4 == 0;
    const auto diffs = one_mod_four ? difference_counts(ring.additive_group(), split.squares, split.squares)
                                    : difference_counts(ring.additive_group(), split.squares, split.non_squares);
    report.multiset = one_mod_four ? "Delta T_S*" : "T_S* - T_N*";
    const bool upper_delta = (m - 1) % 24 == 0;
    const bool upper_cross = (m - 1) % 24 == 18;
    if (upper_delta) report.upper_bound = (m - 5) / 4;
    if (upper_cross) report.upper_bound = (m + 1) / 4;

    report.verdict = true;
    for (const auto& [d, mult] : diffs) {
        BoundEntry entry{d, mult, false, false};
        const bool outside_twice = !twice_set.contains(d);
        entry.lower_scope = outside_twice;
        if (upper_delta) entry.upper_scope = outside_twice && ring.is_square_unit(d);
        if (upper_cross) entry.upper_scope = outside_twice;
        if (entry.lower_scope) {
            report.lower_scope_min = std::min(report.lower_scope_min.value_or(mult), mult);
            if (mult <= 1) report.verdict = false;
        }
        if (entry.upper_scope) {
            report.upper_scope_max = std::max(report.upper_scope_max.value_or(mult), mult);
            if (mult >= *report.upper_bound) report.verdict = false;
        }
        report.entries.push_back(entry);
    }
    return report;
}

enum class Verdict { nonisomorphic, inconclusive };

inline const char* to_string(Verdict v) { return v == Verdict::nonisomorphic ? "nonisomorphic" : "inconclusive"; }

struct Comparison {
    Verdict verdict = Verdict::inconclusive;
    IntersectionProfile profile_a;
    IntersectionProfile profile_b;
    std::optional<u64> witness_key;
    std::string witness_kind;  // "intersection-number" or "multiplicity"
};

/// Compares the intersection profiles of dev(a) and dev(b). A key present in
/// only one profile is preferred as witness over a multiplicity mismatch.
/// Equal profiles are inconclusive: the profile is not a complete invariant.
inline Comparison compare_designs(const DifferenceFamily& a, const DifferenceFamily& b, unsigned threads = 0) {
    if (a.v != b.v || a.b() != b.b() || a.k != b.k)
        throw std::invalid_argument("compare_designs: families differ in (v, b, k)");
    Comparison cmp;
    if (resolve_threads(threads) > 1) {
        const unsigned half = std::max(1U, resolve_threads(threads) / 2);
        auto fa = std::async(std::launch::async, [&] { return profile_via_differences(a, half); });
        cmp.profile_b = profile_via_differences(b, half);
        cmp.profile_a = fa.get();
    } else {
        cmp.profile_a = profile_via_differences(a, 1);
        cmp.profile_b = profile_via_differences(b, 1);
    }
    const auto keys_a = intersection_numbers(cmp.profile_a);
    const auto keys_b = intersection_numbers(cmp.profile_b);
    std::vector<u64> only;
    std::set_symmetric_difference(keys_a.begin(), keys_a.end(), keys_b.begin(), keys_b.end(),
                                  std::back_inserter(only));
    if (!only.empty()) {
        cmp.verdict = Verdict::nonisomorphic;
        cmp.witness_key = only.front();
        cmp.witness_kind = "intersection-number";
        return cmp;
    }
    for (u64 key : keys_a) {
        if (cmp.profile_a.at(key) != cmp.profile_b.at(key)) {
            cmp.verdict = Verdict::nonisomorphic;
            cmp.witness_key = key;
            cmp.witness_kind = "multiplicity";
            return cmp;
        }
    }
    return cmp;
}

}  // namespace ddf

#endif  // DDF_ISOGATE_HPP
