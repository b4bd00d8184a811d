#ifndef DDF_GALOIS_RING_HPP
#define DDF_GALOIS_RING_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ddf/additive_group.hpp"
#include "ddf/field.hpp"
#include "ddf/number_theory.hpp"
#include "ddf/polynomial.hpp"

namespace ddf {

/// Largest ring order GR(p^2, r) accepted by build_ring.
inline constexpr u64 kMaxRingOrder = u64{1} << 26U;

/// u = teich * (1 + p * principal) with teich in T* and principal in T.
struct UnitDecomposition {
    Encoding teich = 0;
    Encoding principal = 0;
    friend bool operator==(const UnitDecomposition&, const UnitDecomposition&) = default;
};

/// a = first + p * second with both parts in the Teichmuller set.
struct PAdicDigits {
    Encoding first = 0;
    Encoding second = 0;
    friend bool operator==(const PAdicDigits&, const PAdicDigits&) = default;
};

struct SquareSplit {
    std::vector<Encoding> squares;      // even powers of xi, sorted
    std::vector<Encoding> non_squares;  // odd powers of xi, sorted
};

enum class TwoClass { square_in_teichmuller, nonsquare_in_teichmuller, not_in_teichmuller };

inline const char* to_string(TwoClass c) {
    switch (c) {
        case TwoClass::square_in_teichmuller: return "square-in-T*";
        case TwoClass::nonsquare_in_teichmuller: return "nonsquare-in-T*";
        case TwoClass::not_in_teichmuller: return "not-in-T*";
    }
    return "?";
}

/// GR(p^2, r) = Z_{p^2}[x]/(f) with f the residue field's primitive
/// polynomial read over Z_{p^2}. Elements pack coefficient vectors base p^2.
class GaloisRing {
public:
    [[nodiscard]] u64 characteristic_prime() const { return p_; }
    [[nodiscard]] unsigned degree() const { return r_; }
    /// p^r, the order of the residue field and of the Teichmuller set.
    [[nodiscard]] u64 residue_order() const { return m_; }
    [[nodiscard]] u64 order() const { return group_.order(); }
    [[nodiscard]] const Polynomial& modulus() const { return modulus_; }
    [[nodiscard]] const AdditiveGroup& additive_group() const { return group_; }
    [[nodiscard]] const FiniteField& residue_field() const { return residue_; }

    /// [0, 1, xi, xi^2, ..., xi^{p^r - 2}].
    [[nodiscard]] const std::vector<Encoding>& teichmuller() const { return teich_; }
    [[nodiscard]] Encoding xi() const { return teich_.size() > 2 ? teich_[2] : 1; }
    /// xi^k for any k.
    [[nodiscard]] Encoding xi_power(u64 k) const { return teich_[1 + k % (m_ - 1)]; }

    [[nodiscard]] Encoding add(Encoding a, Encoding b) const { return group_.add(a, b); }
    [[nodiscard]] Encoding sub(Encoding a, Encoding b) const { return group_.sub(a, b); }
    [[nodiscard]] Encoding neg(Encoding a) const { return group_.neg(a); }

    [[nodiscard]] Encoding mul(Encoding a, Encoding b) const {
        const u64 q = group_.modulus();
        if (r_ == 1) return static_cast<Encoding>(u64{a} * b % q);
        const auto da = group_.digits(a);
        const auto db = group_.digits(b);
        std::vector<u64> prod(2 * r_ - 1, 0);
        for (unsigned i = 0; i < r_; ++i) {
            if (da[i] == 0) continue;
            for (unsigned j = 0; j < r_; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % q;
        }
        for (unsigned deg = 2 * r_ - 2; deg >= r_; --deg) {
            const u64 top = prod[deg];
            if (top != 0) {
                for (unsigned i = 0; i < r_; ++i)
                    prod[deg - r_ + i] = (prod[deg - r_ + i] + q - top * modulus_[i] % q) % q;
            }
            prod[deg] = 0;
        }
        prod.resize(r_);
        return group_.pack(prod);
    }

    [[nodiscard]] Encoding pow(Encoding a, u64 k) const {
        Encoding result = one();
        while (k > 0) {
            if (k & 1U) result = mul(result, a);
            a = mul(a, a);
            k >>= 1U;
        }
        return result;
    }

    [[nodiscard]] Encoding one() const { return 1; }
    /// The integer c as a ring element.
    [[nodiscard]] Encoding constant(std::int64_t c) const {
        const auto q = static_cast<std::int64_t>(group_.modulus());
        return static_cast<Encoding>(((c % q) + q) % q);
    }
    /// p * a.
    [[nodiscard]] Encoding times_p(Encoding a) const { return mul(constant(static_cast<std::int64_t>(p_)), a); }

    /// Reduction modulo p, as an element encoding of residue_field().
    [[nodiscard]] Encoding reduce(Encoding a) const {
        auto d = group_.digits(a);
        for (auto& x : d) x %= p_;
        return residue_.from_coefficients(d);
    }

    [[nodiscard]] bool is_unit(Encoding a) const { return reduce(a) != 0; }

    /// The Teichmuller representative of a residue class.
    [[nodiscard]] Encoding lift(Encoding residue) const { return by_residue_.at(residue); }

    [[nodiscard]] bool is_teichmuller(Encoding a) const { return lift(reduce(a)) == a; }

    /// k with t = xi^k, for t in T*.
    [[nodiscard]] u64 teich_exponent(Encoding t) const {
        const Encoding res = reduce(t);
        if (res == 0 || by_residue_[res] != t) throw std::domain_error("teich_exponent: element is not in T*");
        return exponent_by_residue_[res];
    }

    [[nodiscard]] PAdicDigits p_adic(Encoding a) const {
        const Encoding first = lift(reduce(a));
        auto d = group_.digits(sub(a, first));
        for (auto& x : d) {
            if (x % p_ != 0) throw std::logic_error("p_adic: remainder not divisible by p");
            x /= p_;
        }
        return {first, lift(residue_.from_coefficients(d))};
    }

    [[nodiscard]] UnitDecomposition unit_decompose(Encoding u) const {
        const Encoding teich = lift(reduce(u));
        if (teich == 0) throw std::domain_error("unit_decompose: element lies in the maximal ideal pR");
        const Encoding principal_unit = mul(u, xi_power(m_ - 1 - teich_exponent(teich)));
        const PAdicDigits parts = p_adic(principal_unit);
        if (parts.first != 1) throw std::logic_error("unit_decompose: principal part is not 1 mod p");
        return {teich, parts.second};
    }

    /// Square test for units when p is odd: principal units are squares, so
    /// u is a square iff its Teichmuller part is an even power of xi.
    [[nodiscard]] bool is_square_unit(Encoding u) const {
        if (p_ == 2) throw std::domain_error("is_square_unit: requires odd p");
        return teich_exponent(unit_decompose(u).teich) % 2 == 0;
    }

    friend GaloisRing build_ring(u64 p, unsigned r);

private:
    u64 p_ = 2;
    unsigned r_ = 1;
    u64 m_ = 2;
    Polynomial modulus_;
    AdditiveGroup group_;
    FiniteField residue_;
    std::vector<Encoding> teich_;
    std::vector<Encoding> by_residue_;
    std::vector<u64> exponent_by_residue_;
};

inline GaloisRing build_ring(u64 p, unsigned r) {
    if (!is_prime(p)) throw std::invalid_argument("build_ring: " + std::to_string(p) + " is not prime");
    if (r < 1) throw std::invalid_argument("build_ring: degree must be at least 1");
    u64 order = 1;
    for (unsigned i = 0; i < 2 * r; ++i) {
        order *= p;
        if (order > kMaxRingOrder) throw std::invalid_argument("build_ring: ring order exceeds encoding budget");
    }

    GaloisRing ring;
    ring.p_ = p;
    ring.r_ = r;
    ring.residue_ = build_field(p, r);
    ring.m_ = ring.residue_.order();
    if (ring.m_ < 3) throw std::invalid_argument("build_ring: requires p^r >= 3");
    ring.modulus_ = ring.residue_.modulus().reinterpret(p * p);
    ring.group_ = AdditiveGroup(p * p, r);

    Encoding x = 0;
    if (r == 1) {
        x = ring.constant(-static_cast<std::int64_t>(ring.modulus_[0]));
    } else {
        x = ring.group_.pack({0, 1});
    }
    // One Frobenius power suffices in characteristic p^2.
    const Encoding xi = ring.pow(x, ring.m_);

    ring.teich_.reserve(ring.m_);
    ring.teich_.push_back(0);
    ring.by_residue_.assign(ring.m_, std::numeric_limits<Encoding>::max());
    ring.exponent_by_residue_.assign(ring.m_, 0);
    ring.by_residue_[0] = 0;
    Encoding cur = 1;
    for (u64 k = 0; k + 1 < ring.m_; ++k) {
        if (k > 0 && cur == 1) throw std::logic_error("build_ring: xi has order below p^r - 1");
        ring.teich_.push_back(cur);
        const Encoding res = ring.reduce(cur);
        if (ring.by_residue_[res] != std::numeric_limits<Encoding>::max())
            throw std::logic_error("build_ring: Teichmuller reductions collide");
        ring.by_residue_[res] = cur;
        ring.exponent_by_residue_[res] = k;
        cur = ring.mul(cur, xi);
    }
    if (cur != 1) throw std::logic_error("build_ring: xi^(p^r - 1) != 1");
    for (Encoding t : ring.teich_) {
        if (ring.pow(t, ring.m_) != t) throw std::logic_error("build_ring: t^(p^r) != t");
    }
    return ring;
}

inline SquareSplit square_split(const GaloisRing& ring) {
    if (ring.characteristic_prime() == 2) throw std::domain_error("square_split: requires odd p");
    if (ring.residue_order() < 5) throw std::domain_error("square_split: requires p^r >= 5");
    SquareSplit split;
    const u64 half = (ring.residue_order() - 1) / 2;
    split.squares.reserve(half);
    split.non_squares.reserve(half);
    for (u64 k = 0; k + 1 < ring.residue_order(); ++k)
        (k % 2 == 0 ? split.squares : split.non_squares).push_back(ring.xi_power(k));
    std::sort(split.squares.begin(), split.squares.end());
    std::sort(split.non_squares.begin(), split.non_squares.end());
    return split;
}

/// Classifies the ring element 2 relative to T*. Membership is read off the
/// Teichmuller table and must agree with 2^{p-1} = 1 (mod p^2).
inline TwoClass is_two_teichmuller_square(const GaloisRing& ring) {
    const u64 p = ring.characteristic_prime();
    if (p == 2) throw std::domain_error("is_two_teichmuller_square: requires odd p");
    const Encoding two = ring.constant(2);
    const bool member = ring.is_teichmuller(two);
    if (member != (pow_mod(2, p - 1, p * p) == 1))
        throw std::logic_error("is_two_teichmuller_square: membership disagrees with the Wieferich test");
    if (!member) return TwoClass::not_in_teichmuller;
    return ring.teich_exponent(two) % 2 == 0 ? TwoClass::square_in_teichmuller : TwoClass::nonsquare_in_teichmuller;
}

/// The set p*S = { p*s : s in S }, sorted.
inline std::vector<Encoding> scale(const GaloisRing& ring, Encoding factor, const std::vector<Encoding>& set) {
    std::vector<Encoding> out;
    out.reserve(set.size());
    for (Encoding s : set) out.push_back(ring.mul(factor, s));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ddf

#endif  // DDF_GALOIS_RING_HPP
