#ifndef DDF_FAMILIES_HPP
#define DDF_FAMILIES_HPP

#include <algorithm>
#include <array>
#include <concepts>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ddf/additive_group.hpp"
#include "ddf/field.hpp"
#include "ddf/galois_ring.hpp"
#include "ddf/number_theory.hpp"

namespace ddf {

using Block = std::vector<Encoding>;

/// Base blocks in an additive group together with the declared parameters.
/// Blocks are sorted, duplicate-free encodings.
struct DifferenceFamily {
    std::string name;
    AdditiveGroup group;
    std::vector<Block> blocks;
    u64 v = 0;
    u64 k = 0;
    u64 lambda = 0;
    bool disjoint = false;
    bool near_complete = false;

    [[nodiscard]] u64 b() const { return blocks.size(); }
};

struct ValidationReport {
    bool is_difference_family = false;
    std::optional<u64> observed_lambda;  // empty when the difference count is not constant
    bool disjoint = false;
    bool near_complete = false;
    bool uniform_block_size = false;
    std::optional<Encoding> offending_element;
    std::string detail;
};

/// A commutative ring with encoded elements whose additive group is an
/// AdditiveGroup; satisfied by FiniteField and GaloisRing.
template <class R>
concept EncodedRing = requires(const R& ring, Encoding a) {
    { ring.order() } -> std::convertible_to<u64>;
    { ring.mul(a, a) } -> std::same_as<Encoding>;
    { ring.sub(a, a) } -> std::same_as<Encoding>;
    { ring.is_unit(a) } -> std::same_as<bool>;
    { ring.additive_group() } -> std::convertible_to<const AdditiveGroup&>;
};

/// Checks the structural invariants shared by every constructor and importer.
inline DifferenceFamily make_family(std::string name, const AdditiveGroup& group, std::vector<Block> blocks,
                                    u64 lambda) {
    DifferenceFamily fam;
    fam.name = std::move(name);
    fam.group = group;
    fam.v = group.order();
    if (blocks.empty()) throw std::invalid_argument("make_family: no base blocks");
    fam.k = blocks.front().size();
    u64 diff_total = 0;
    std::vector<char> seen(fam.v, 0);
    bool disjoint = true;
    u64 covered = 0;
    for (auto& block : blocks) {
        std::sort(block.begin(), block.end());
        if (std::adjacent_find(block.begin(), block.end()) != block.end())
            throw std::invalid_argument("make_family: repeated element inside a base block");
        if (block.size() != fam.k) throw std::invalid_argument("make_family: base blocks differ in size");
        for (Encoding x : block) {
            if (!group.contains(x)) throw std::invalid_argument("make_family: element outside the group");
            if (seen[x]) disjoint = false;
            else ++covered;
            seen[x] = 1;
        }
        diff_total = checked_add(diff_total, checked_mul(block.size(), block.size() - 1));
    }
    if (checked_mul(lambda, fam.v - 1) != diff_total)
        throw std::invalid_argument("make_family: lambda(v-1) != sum k_i(k_i - 1)");
    fam.blocks = std::move(blocks);
    fam.lambda = lambda;
    fam.disjoint = disjoint;
    fam.near_complete = disjoint && !seen[0] && covered == fam.v - 1;
    return fam;
}

/// Cyclotomic classes of order e in F_q: a near-complete (q, f, f-1) family.
inline DifferenceFamily wilson_family(const FiniteField& field, u64 e) {
    const u64 q1 = field.order() - 1;
    if (e < 2 || q1 % e != 0 || q1 / e < 2)
        throw std::invalid_argument("wilson_family: need e*f = q-1 with e, f >= 2 (q = " +
                                    std::to_string(field.order()) + ", e = " + std::to_string(e) + ")");
    const u64 f = q1 / e;
    return make_family("wilson(q=" + std::to_string(field.order()) + ",e=" + std::to_string(e) + ")",
                       field.additive_group(), cyclotomic_classes(field, e), f - 1);
}

namespace detail {

/// Blocks (1 + p*alpha)S for alpha in T (Teichmuller order) followed by pS.
inline void append_cosets(const GaloisRing& ring, const std::vector<Encoding>& subgroup, std::vector<Block>& out) {
    const Encoding one = ring.one();
    for (Encoding alpha : ring.teichmuller()) {
        const Encoding unit = ring.add(one, ring.times_p(alpha));
        out.push_back(scale(ring, unit, subgroup));
    }
    out.push_back(scale(ring, ring.constant(static_cast<std::int64_t>(ring.characteristic_prime())), subgroup));
}

}  // namespace detail

/// Cosets of T* in GR(p^2, r): a near-complete (p^{2r}, p^r - 1, p^r - 2) family.
inline DifferenceFamily davis_family(const GaloisRing& ring) {
    const u64 m = ring.residue_order();
    if (m < 3) throw std::invalid_argument("davis_family: requires p^r >= 3");
    std::vector<Encoding> tstar(ring.teichmuller().begin() + 1, ring.teichmuller().end());
    std::vector<Block> blocks;
    blocks.reserve(m + 1);
    detail::append_cosets(ring, tstar, blocks);
    return make_family("davis(p=" + std::to_string(ring.characteristic_prime()) + ",r=" +
                           std::to_string(ring.degree()) + ")",
                       ring.additive_group(), std::move(blocks), m - 2);
}

/// Cosets of the Teichmuller squares: square cosets, pT_S*, non-square cosets, pT_N*.
inline DifferenceFamily squares_family(const GaloisRing& ring) {
    const u64 p = ring.characteristic_prime();
    const u64 m = ring.residue_order();
    if (p == 2 || m < 5) throw std::domain_error("squares_family: requires odd p and p^r >= 5");
    const SquareSplit split = square_split(ring);
    std::vector<Block> blocks;
    blocks.reserve(2 * (m + 1));
    detail::append_cosets(ring, split.squares, blocks);
    detail::append_cosets(ring, split.non_squares, blocks);
    return make_family("squares(p=" + std::to_string(p) + ",r=" + std::to_string(ring.degree()) + ")",
                       ring.additive_group(), std::move(blocks), (m - 3) / 2);
}

/// Thrown when the differences of a candidate subgroup are not all units.
class NonUnitDifference : public std::invalid_argument {
public:
    NonUnitDifference(Encoding a, Encoding b)
        : std::invalid_argument("furino_family: difference " + std::to_string(a) + " - " + std::to_string(b) +
                                " is not a unit"),
          first(a),
          second(b) {}
    Encoding first;
    Encoding second;
};

/// Cosets sB of a unit subgroup B with unit differences. Representatives
/// are taken in increasing encoding order.
template <EncodedRing Ring>
DifferenceFamily furino_family(const Ring& ring, std::vector<Encoding> subgroup) {
    std::sort(subgroup.begin(), subgroup.end());
    subgroup.erase(std::unique(subgroup.begin(), subgroup.end()), subgroup.end());
    if (subgroup.size() < 2) throw std::invalid_argument("furino_family: subgroup must have at least 2 elements");
    for (Encoding a : subgroup) {
        if (!ring.is_unit(a)) throw std::invalid_argument("furino_family: subgroup contains a non-unit");
        for (Encoding b : subgroup) {
            if (!std::binary_search(subgroup.begin(), subgroup.end(), ring.mul(a, b)))
                throw std::invalid_argument("furino_family: set is not closed under multiplication");
            if (a != b && !ring.is_unit(ring.sub(a, b))) throw NonUnitDifference(a, b);
        }
    }
    const u64 v = ring.order();
    const u64 k = subgroup.size();
    std::vector<char> covered(v, 0);
    std::vector<Block> blocks;
    for (u64 s = 1; s < v; ++s) {
        if (covered[s]) continue;
        Block coset;
        coset.reserve(k);
        for (Encoding b : subgroup) {
            const Encoding x = ring.mul(static_cast<Encoding>(s), b);
            coset.push_back(x);
            covered[x] = 1;
        }
        blocks.push_back(std::move(coset));
    }
    return make_family("furino(v=" + std::to_string(v) + ",k=" + std::to_string(k) + ")", ring.additive_group(),
                       std::move(blocks), k - 1);
}

/// The three two-block families in F_{11^3} built from unions of order-14
/// cyclotomic classes.
inline std::array<DifferenceFamily, 3> feng_families(const FiniteField& field) {
    if (field.characteristic() != 11 || field.degree() != 3)
        throw std::invalid_argument("feng_families: requires the field F_{11^3}");
    const auto classes = cyclotomic_classes(field, 14);
    const std::array<std::array<int, 7>, 3> first_halves{{
        {0, 2, 4, 6, 8, 10, 12},
        {0, 1, 2, 3, 4, 5, 6},
        {0, 1, 3, 4, 5, 6, 9},
    }};
    std::array<DifferenceFamily, 3> out;
    for (std::size_t f = 0; f < 3; ++f) {
        std::array<bool, 14> in_first{};
        for (int idx : first_halves[f]) in_first[static_cast<std::size_t>(idx)] = true;
        Block a, b;
        for (std::size_t i = 0; i < 14; ++i) {
            auto& target = in_first[i] ? a : b;
            target.insert(target.end(), classes[i].begin(), classes[i].end());
        }
        out[f] = make_family("feng-" + std::to_string(f + 1), field.additive_group(), {std::move(a), std::move(b)},
                             664);
    }
    return out;
}

/// Brute-force difference count over all ordered pairs inside each block.
inline ValidationReport validate_ddf(const DifferenceFamily& fam) {
    ValidationReport report;
    const u64 v = fam.group.order();
    report.uniform_block_size = !fam.blocks.empty();
    for (const auto& block : fam.blocks)
        if (block.size() != fam.blocks.front().size()) report.uniform_block_size = false;

    std::vector<u64> count(v, 0);
    std::vector<char> seen(v, 0);
    report.disjoint = true;
    u64 covered = 0;
    for (const auto& block : fam.blocks) {
        for (Encoding x : block) {
            if (seen[x]) {
                if (report.disjoint) {
                    report.offending_element = x;
                    report.detail = "element " + std::to_string(x) + " occurs in more than one base block";
                }
                report.disjoint = false;
            } else {
                ++covered;
            }
            seen[x] = 1;
        }
        for (Encoding a : block)
            for (Encoding b : block)
                if (a != b) ++count[fam.group.sub(a, b)];
    }
    report.near_complete = report.disjoint && !seen[0] && covered == v - 1;

    bool constant = v > 1;
    for (u64 d = 2; d < v && constant; ++d) {
        if (count[d] != count[1]) {
            constant = false;
            if (!report.offending_element) {
                report.offending_element = static_cast<Encoding>(d);
                report.detail = "difference " + std::to_string(d) + " occurs " + std::to_string(count[d]) +
                                " times, difference 1 occurs " + std::to_string(count[1]) + " times";
            }
        }
    }
    if (constant) report.observed_lambda = count[1];
    report.is_difference_family = constant && report.uniform_block_size;
    return report;
}

/// Multiset A - B = { a - b : a in A, b in B, a != b } as element -> multiplicity.
inline std::map<Encoding, u64> difference_counts(const AdditiveGroup& group, const std::vector<Encoding>& a,
                                                 const std::vector<Encoding>& b) {
    std::map<Encoding, u64> out;
    for (Encoding x : a)
        for (Encoding y : b)
            if (x != y) ++out[group.sub(x, y)];
    return out;
}

/// Header `v k lambda b`, a `# group <modulus> <rank>` directive, then one
/// line per base block.
inline void write_family(std::ostream& os, const DifferenceFamily& fam) {
    os << fam.v << ' ' << fam.k << ' ' << fam.lambda << ' ' << fam.b() << '\n';
    os << "# group " << fam.group.modulus() << ' ' << fam.group.rank() << '\n';
    if (!fam.name.empty()) os << "# name " << fam.name << '\n';
    for (const auto& block : fam.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) os << (i ? " " : "") << block[i];
        os << '\n';
    }
}

/// Inverse of write_family. Without a group directive the group is Z_v.
inline DifferenceFamily read_family(std::istream& is) {
    std::string line;
    std::optional<std::array<u64, 4>> header;
    std::optional<AdditiveGroup> group;
    std::string name;
    std::vector<Block> blocks;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::istringstream ls(line);
        if (line.front() == '#') {
            std::string hash, key;
            ls >> hash >> key;
            if (key == "group") {
                u64 modulus = 0;
                unsigned rank = 0;
                if (!(ls >> modulus >> rank)) throw std::invalid_argument("read_family: malformed group directive");
                group = AdditiveGroup(modulus, rank);
            } else if (key == "name") {
                ls >> std::ws;
                std::getline(ls, name);
            }
            continue;
        }
        if (!header) {
            std::array<u64, 4> h{};
            if (!(ls >> h[0] >> h[1] >> h[2] >> h[3])) throw std::invalid_argument("read_family: malformed header");
            header = h;
            continue;
        }
        Block block;
        long long x = 0;
        while (ls >> x) {
            if (x < 0 || static_cast<u64>(x) >= (*header)[0])
                throw std::invalid_argument("read_family: element " + std::to_string(x) + " out of range");
            block.push_back(static_cast<Encoding>(x));
        }
        if (!ls.eof()) throw std::invalid_argument("read_family: non-numeric token in block line");
        blocks.push_back(std::move(block));
    }
    if (!header) throw std::invalid_argument("read_family: missing header");
    const auto [v, k, lambda, b] = *header;
    if (!group) group = AdditiveGroup(v, 1);
    if (group->order() != v) throw std::invalid_argument("read_family: group order does not match v");
    if (blocks.size() != b) throw std::invalid_argument("read_family: block count does not match header");
    for (const auto& block : blocks)
        if (block.size() != k) throw std::invalid_argument("read_family: block size does not match header");
    return make_family(name.empty() ? "imported" : name, *group, std::move(blocks), lambda);
}

}  // namespace ddf

#endif  // DDF_FAMILIES_HPP
