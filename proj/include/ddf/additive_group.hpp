#ifndef DDF_ADDITIVE_GROUP_HPP
#define DDF_ADDITIVE_GROUP_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddf/number_theory.hpp"

namespace ddf {

/// Encoded group or ring element. Encodings pack a coefficient vector in
/// mixed radix, least significant coefficient first.
using Encoding = std::uint32_t;

/// The group (Z_m)^rank with elements packed base m. Covers the additive
/// groups of F_{p^n} (m = p) and GR(p^2, r) (m = p^2).
class AdditiveGroup {
public:
    AdditiveGroup() = default;
    AdditiveGroup(u64 modulus, unsigned rank) : modulus_(modulus), rank_(rank) {
        if (modulus < 2 || rank < 1) throw std::invalid_argument("AdditiveGroup: need modulus >= 2 and rank >= 1");
        order_ = checked_pow(modulus, rank);
        if (order_ > (u64{1} << 31U)) throw std::invalid_argument("AdditiveGroup: order exceeds encoding range");
    }

    [[nodiscard]] u64 modulus() const { return modulus_; }
    [[nodiscard]] unsigned rank() const { return rank_; }
    [[nodiscard]] u64 order() const { return order_; }
    [[nodiscard]] bool contains(u64 a) const { return a < order_; }

    [[nodiscard]] Encoding add(Encoding a, Encoding b) const {
        if (rank_ == 1) return static_cast<Encoding>((u64{a} + b) % modulus_);
        u64 out = 0, place = 1;
        for (unsigned i = 0; i < rank_; ++i) {
            out += ((a % modulus_ + b % modulus_) % modulus_) * place;
            a = static_cast<Encoding>(a / modulus_);
            b = static_cast<Encoding>(b / modulus_);
            place *= modulus_;
        }
        return static_cast<Encoding>(out);
    }

    [[nodiscard]] Encoding sub(Encoding a, Encoding b) const {
        if (rank_ == 1) return static_cast<Encoding>((u64{a} + modulus_ - b) % modulus_);
        u64 out = 0, place = 1;
        for (unsigned i = 0; i < rank_; ++i) {
            out += ((a % modulus_ + modulus_ - b % modulus_) % modulus_) * place;
            a = static_cast<Encoding>(a / modulus_);
            b = static_cast<Encoding>(b / modulus_);
            place *= modulus_;
        }
        return static_cast<Encoding>(out);
    }

    [[nodiscard]] Encoding neg(Encoding a) const { return sub(0, a); }

    [[nodiscard]] std::vector<u64> digits(Encoding a) const {
        std::vector<u64> out(rank_);
        for (auto& d : out) {
            d = a % modulus_;
            a = static_cast<Encoding>(a / modulus_);
        }
        return out;
    }

    [[nodiscard]] Encoding pack(const std::vector<u64>& digits) const {
        if (digits.size() > rank_) throw std::invalid_argument("AdditiveGroup::pack: too many digits");
        u64 out = 0, place = 1;
        for (u64 d : digits) {
            if (d >= modulus_) throw std::invalid_argument("AdditiveGroup::pack: digit out of range");
            out += d * place;
            place *= modulus_;
        }
        return static_cast<Encoding>(out);
    }

    [[nodiscard]] std::string describe() const {
        return "Z_" + std::to_string(modulus_) + (rank_ > 1 ? "^" + std::to_string(rank_) : "");
    }

    friend bool operator==(const AdditiveGroup&, const AdditiveGroup&) = default;

private:
    u64 modulus_ = 2;
    unsigned rank_ = 1;
    u64 order_ = 2;
};

}  // namespace ddf

#endif  // DDF_ADDITIVE_GROUP_HPP
