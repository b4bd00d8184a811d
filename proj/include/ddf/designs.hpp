#ifndef DDF_DESIGNS_HPP
#define DDF_DESIGNS_HPP

#include <algorithm>
#include <bit>
#include <cstdint>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "ddf/families.hpp"
#include "ddf/number_theory.hpp"

namespace ddf {

using Point = std::uint32_t;

/// An indexed family of blocks on points 0..v-1. Repeated blocks are allowed.
struct Design {
    u64 v = 0;
    u64 k = 0;
    std::vector<std::vector<Point>> blocks;
    /// (base block index, translate) per block; empty for imported designs.
    std::vector<std::pair<std::uint32_t, Encoding>> provenance;

    [[nodiscard]] u64 size() const { return blocks.size(); }
};

/// Thrown when an exhaustive computation would exceed its size budget.
class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// All translates D_i + g, ordered by base block then by translate encoding.
inline Design develop(const DifferenceFamily& fam) {
    Design design;
    design.v = fam.v;
    design.k = fam.k;
    const u64 total = checked_mul(fam.v, fam.b());
    design.blocks.reserve(total);
    design.provenance.reserve(total);
    for (std::size_t i = 0; i < fam.blocks.size(); ++i) {
        for (u64 g = 0; g < fam.v; ++g) {
            std::vector<Point> block;
            block.reserve(fam.blocks[i].size());
            for (Encoding x : fam.blocks[i]) block.push_back(fam.group.add(x, static_cast<Encoding>(g)));
            std::sort(block.begin(), block.end());
            design.blocks.push_back(std::move(block));
            design.provenance.emplace_back(static_cast<std::uint32_t>(i), static_cast<Encoding>(g));
        }
    }
    return design;
}

/// Number of blocks equal to some earlier block (nonzero iff some orbit is short).
inline u64 count_duplicate_blocks(const Design& design) {
    std::vector<std::vector<Point>> sorted = design.blocks;
    std::sort(sorted.begin(), sorted.end());
    u64 dups = 0;
    for (std::size_t i = 1; i < sorted.size(); ++i)
        if (sorted[i] == sorted[i - 1]) ++dups;
    return dups;
}

struct DesignCheck {
    bool pass = false;
    std::optional<std::pair<Point, Point>> witness;
    u64 witness_count = 0;
};

inline constexpr u64 kMaxPairCountPoints = 4096;

/// Every unordered point pair must lie in exactly lambda blocks.
inline DesignCheck verify_2design(const Design& design, u64 lambda) {
    const u64 v = design.v;
    if (v > kMaxPairCountPoints) throw BudgetExceeded("verify_2design: too many points for exhaustive pair counting");
    std::vector<std::uint32_t> count(v * v, 0);
    for (const auto& block : design.blocks) {
        for (std::size_t a = 0; a < block.size(); ++a) {
            if (block[a] >= v) throw std::invalid_argument("verify_2design: point index out of range");
            for (std::size_t b = a + 1; b < block.size(); ++b) ++count[u64{block[a]} * v + block[b]];
        }
    }
    DesignCheck check;
    check.pass = true;
    for (u64 x = 0; x < v && check.pass; ++x) {
        for (u64 y = x + 1; y < v; ++y) {
            if (count[x * v + y] != lambda) {
                check.pass = false;
                check.witness = std::make_pair(static_cast<Point>(x), static_cast<Point>(y));
                check.witness_count = count[x * v + y];
                break;
            }
        }
    }
    return check;
}

/// Intersection number N -> number of unordered pairs of distinct block
/// indices meeting in exactly N points. Arithmetic is overflow-checked.
class IntersectionProfile {
public:
    void add(u64 n, u64 multiplicity) {
        if (multiplicity == 0) return;
        auto& slot = counts_[n];
        slot = checked_add(slot, multiplicity);
    }
    void merge(const IntersectionProfile& other) {
        for (const auto& [n, mult] : other.counts_) add(n, mult);
    }
    [[nodiscard]] const std::map<u64, u64>& counts() const { return counts_; }
    [[nodiscard]] u64 at(u64 n) const {
        auto it = counts_.find(n);
        return it == counts_.end() ? 0 : it->second;
    }
    [[nodiscard]] u64 total() const {
        u64 t = 0;
        for (const auto& [n, mult] : counts_) t = checked_add(t, mult);
        return t;
    }
    friend bool operator==(const IntersectionProfile&, const IntersectionProfile&) = default;

private:
    std::map<u64, u64> counts_;
};

inline std::ostream& operator<<(std::ostream& os, const IntersectionProfile& profile) {
    os << '{';
    bool first = true;
    for (const auto& [n, mult] : profile.counts()) {
        os << (first ? "" : ", ") << n << ": " << mult;
        first = false;
    }
    return os << '}';
}

/// Intersection numbers in ascending order.
inline std::vector<u64> intersection_numbers(const IntersectionProfile& profile) {
    std::vector<u64> keys;
    for (const auto& [n, mult] : profile.counts())
        if (mult > 0) keys.push_back(n);
    return keys;
}

inline constexpr u64 kDirectProfileBudget = 5000;

/// Pairwise scan over block bitsets (the entries of M^T M).
inline IntersectionProfile profile_direct(const Design& design, u64 budget = kDirectProfileBudget) {
    const u64 nblocks = design.size();
    if (nblocks > budget)
        throw BudgetExceeded("profile_direct: " + std::to_string(nblocks) + " blocks exceed the budget of " +
                             std::to_string(budget));
    const u64 words = (design.v + 63) / 64;
    std::vector<u64> bits(nblocks * words, 0);
    for (u64 i = 0; i < nblocks; ++i)
        for (Point x : design.blocks[i]) {
            if (x >= design.v) throw std::invalid_argument("profile_direct: point index out of range");
            bits[i * words + x / 64] |= u64{1} << (x % 64);
        }
    // Histogram indexed by intersection size, at most max block size.
    u64 max_k = 0;
    for (const auto& block : design.blocks) max_k = std::max<u64>(max_k, block.size());
    std::vector<u64> hist(max_k + 1, 0);
    for (u64 i = 0; i < nblocks; ++i) {
        const u64* a = &bits[i * words];
        for (u64 j = i + 1; j < nblocks; ++j) {
            const u64* b = &bits[j * words];
            unsigned n = 0;
            for (u64 w = 0; w < words; ++w) n += static_cast<unsigned>(std::popcount(a[w] & b[w]));
            ++hist[n];
        }
    }
    IntersectionProfile profile;
    for (u64 n = 0; n <= max_k; ++n) profile.add(n, hist[n]);
    return profile;
}

/// Resolves a requested thread count: 0 means available parallelism.
inline unsigned resolve_threads(unsigned requested) {
    if (requested != 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

/// Profile of dev(fam) from difference multiplicities. For ordered base
/// blocks (i, j) and d in G, N_d = #{(a, b) in D_i x D_j : a - b = d} is
/// |(D_i + g) cap (D_j + g + d)| for all v translates g. The pair i = j,
/// d = 0 is the block with itself and is skipped. Ordered counts are halved.
/// Base pairs are independent tasks merged by addition.
inline IntersectionProfile profile_via_differences(const DifferenceFamily& fam, unsigned threads = 0) {
    const u64 v = fam.group.order();
    const u64 b = fam.b();
    const u64 tasks = b * b;
    const unsigned nthreads = static_cast<unsigned>(std::min<u64>(resolve_threads(threads), std::max<u64>(tasks, 1)));

    auto worker = [&](unsigned tid, std::map<u64, u64>& ordered) {
        std::vector<std::uint32_t> count(v, 0);
        std::vector<Encoding> touched;
        std::vector<u64> hist;
        for (u64 task = tid; task < tasks; task += nthreads) {
            const auto& di = fam.blocks[task / b];
            const auto& dj = fam.blocks[task % b];
            const bool same = (task / b) == (task % b);
            touched.clear();
            for (Encoding a : di)
                for (Encoding c : dj) {
                    const Encoding d = fam.group.sub(a, c);
                    if (count[d]++ == 0) touched.push_back(d);
                }
            hist.assign(std::min(di.size(), dj.size()) + 1, 0);
            hist[0] = v - touched.size();
            for (Encoding d : touched) {
                if (!(same && d == 0)) ++hist[count[d]];
                count[d] = 0;
            }
            for (u64 n = 0; n < hist.size(); ++n)
                if (hist[n] != 0) {
                    auto& slot = ordered[n];
                    slot = checked_add(slot, checked_mul(hist[n], v));
                }
        }
    };

    std::vector<std::map<u64, u64>> partial(nthreads);
    if (nthreads == 1) {
        worker(0, partial[0]);
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(nthreads);
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker, t, std::ref(partial[t]));
    }
    std::map<u64, u64> ordered;
    for (const auto& part : partial)
        for (const auto& [n, c] : part) ordered[n] = checked_add(ordered[n], c);

    IntersectionProfile profile;
    for (const auto& [n, c] : ordered) {
        if (c % 2 != 0) throw std::logic_error("profile_via_differences: odd ordered count");
        profile.add(n, c / 2);
    }
    return profile;
}

enum class IsoStatus { found, nonexistent, unknown };

struct IsoResult {
    IsoStatus status = IsoStatus::unknown;
    std::vector<Point> mapping;  // mapping[x] = image of point x of A in B
    u64 nodes = 0;
};

inline const char* to_string(IsoStatus s) {
    switch (s) {
        case IsoStatus::found: return "found";
        case IsoStatus::nonexistent: return "nonexistent";
        case IsoStatus::unknown: return "unknown";
    }
    return "?";
}

/// True iff mapping carries the block multiset of a onto that of b.
inline bool transports_blocks(const Design& a, const Design& b, const std::vector<Point>& mapping) {
    if (a.size() != b.size() || mapping.size() != a.v) return false;
    std::vector<std::vector<Point>> image;
    image.reserve(a.size());
    for (const auto& block : a.blocks) {
        std::vector<Point> img;
        img.reserve(block.size());
        for (Point x : block) img.push_back(mapping[x]);
        std::sort(img.begin(), img.end());
        image.push_back(std::move(img));
    }
    auto target = b.blocks;
    std::sort(image.begin(), image.end());
    std::sort(target.begin(), target.end());
    return image == target;
}

namespace detail {

class IsoSearch {
public:
    IsoSearch(const Design& a, const Design& b, u64 budget) : a_(a), b_(b), budget_(budget) {
        const u64 v = a.v;
        blocks_of_a_.resize(v);
        for (std::size_t i = 0; i < a.blocks.size(); ++i)
            for (Point x : a.blocks[i]) blocks_of_a_[x].push_back(static_cast<std::uint32_t>(i));
        words_ = (v + 63) / 64;
        b_bits_.assign(b.blocks.size() * words_, 0);
        blocks_of_b_.resize(v);
        for (std::size_t j = 0; j < b.blocks.size(); ++j)
            for (Point y : b.blocks[j]) {
                b_bits_[j * words_ + y / 64] |= u64{1} << (y % 64);
                blocks_of_b_[y].push_back(static_cast<std::uint32_t>(j));
            }
        mapping_.assign(v, kUnmapped);
        used_.assign(v, 0);
    }

    IsoResult run() {
        IsoResult result;
        const bool ok = extend(0);
        result.nodes = nodes_;
        if (ok) {
            result.status = IsoStatus::found;
            result.mapping = mapping_;
        } else {
            result.status = exhausted_ ? IsoStatus::unknown : IsoStatus::nonexistent;
        }
        return result;
    }

private:
    static constexpr Point kUnmapped = ~Point{0};

    /// Every A-block touching x must have its mapped part inside some B-block
    /// containing y; fully mapped blocks must land on blocks of B with the
    /// right multiplicity (checked at the leaf).
    bool consistent(Point x, Point y) const {
        for (std::uint32_t bi : blocks_of_a_[x]) {
            const auto& block = a_.blocks[bi];
            bool fits = false;
            for (std::uint32_t bj : blocks_of_b_[y]) {
                const u64* bits = &b_bits_[bj * words_];
                bool all = true;
                for (Point z : block) {
                    const Point img = (z == x) ? y : mapping_[z];
                    if (img == kUnmapped) continue;
                    if (!((bits[img / 64] >> (img % 64)) & 1U)) {
                        all = false;
                        break;
                    }
                }
                if (all) {
                    fits = true;
                    break;
                }
            }
            if (!fits) return false;
        }
        return true;
    }

    bool extend(Point x) {
        if (x == a_.v) return transports_blocks(a_, b_, mapping_);
        for (Point y = 0; y < b_.v; ++y) {
            if (used_[y]) continue;
            if (++nodes_ > budget_) {
                exhausted_ = true;
                return false;
            }
            if (!consistent(x, y)) continue;
            mapping_[x] = y;
            used_[y] = 1;
            if (extend(x + 1)) return true;
            mapping_[x] = kUnmapped;
            used_[y] = 0;
            if (exhausted_) return false;
        }
        return false;
    }

    const Design& a_;
    const Design& b_;
    u64 budget_;
    u64 nodes_ = 0;
    bool exhausted_ = false;
    u64 words_ = 1;
    std::vector<std::vector<std::uint32_t>> blocks_of_a_;
    std::vector<std::vector<std::uint32_t>> blocks_of_b_;
    std::vector<u64> b_bits_;
    std::vector<Point> mapping_;
    std::vector<char> used_;
};

}  // namespace detail

/// Backtracking search for a point bijection carrying the blocks of a onto
/// those of b. Differing intersection profiles short-circuit to nonexistent.
inline IsoResult iso_oracle(const Design& a, const Design& b, u64 node_budget) {
    if (a.v != b.v || a.size() != b.size() || a.k != b.k)
        throw std::invalid_argument("iso_oracle: designs differ in (v, b, k)");
    if (a.size() <= kDirectProfileBudget && profile_direct(a) != profile_direct(b))
        return {IsoStatus::nonexistent, {}, 0};
    return detail::IsoSearch(a, b, node_budget).run();
}

/// Header `v b k` (b = number of blocks), then one sorted block per line.
inline void write_design(std::ostream& os, const Design& design) {
    os << design.v << ' ' << design.size() << ' ' << design.k << '\n';
    for (const auto& block : design.blocks) {
        for (std::size_t i = 0; i < block.size(); ++i) os << (i ? " " : "") << block[i];
        os << '\n';
    }
}

inline Design read_design(std::istream& is) {
    Design design;
    u64 nblocks = 0;
    std::string line;
    bool have_header = false;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line.front() == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            if (!(ls >> design.v >> nblocks >> design.k)) throw std::invalid_argument("read_design: malformed header");
            have_header = true;
            continue;
        }
        std::vector<Point> block;
        long long x = 0;
        while (ls >> x) {
            if (x < 0 || static_cast<u64>(x) >= design.v)
                throw std::invalid_argument("read_design: point " + std::to_string(x) + " out of range");
            block.push_back(static_cast<Point>(x));
        }
        if (!ls.eof()) throw std::invalid_argument("read_design: non-numeric token in block line");
        if (block.size() != design.k) throw std::invalid_argument("read_design: block size does not match header");
        std::sort(block.begin(), block.end());
        if (std::adjacent_find(block.begin(), block.end()) != block.end())
            throw std::invalid_argument("read_design: repeated point inside a block");
        design.blocks.push_back(std::move(block));
    }
    if (!have_header) throw std::invalid_argument("read_design: missing header");
    if (design.size() != nblocks) throw std::invalid_argument("read_design: block count does not match header");
    return design;
}

/// Applies a point relabeling to every block.
inline Design relabel(const Design& design, const std::vector<Point>& perm) {
    Design out = design;
    for (auto& block : out.blocks) {
        for (auto& x : block) x = perm.at(x);
        std::sort(block.begin(), block.end());
    }
    return out;
}

}  // namespace ddf

#endif  // DDF_DESIGNS_HPP
