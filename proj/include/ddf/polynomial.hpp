#ifndef DDF_POLYNOMIAL_HPP
#define DDF_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ddf/number_theory.hpp"

namespace ddf {

/// Dense polynomial over Z_m, coefficients least degree first. The zero
/// polynomial has an empty coefficient vector.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::vector<u64> coeffs, u64 modulus) : coeffs_(std::move(coeffs)), modulus_(modulus) {
        if (modulus_ < 2) throw std::invalid_argument("Polynomial: modulus must be at least 2");
        for (auto& c : coeffs_) c %= modulus_;
        trim();
    }

    static Polynomial monomial(std::size_t degree, u64 modulus) {
        std::vector<u64> c(degree + 1, 0);
        c.back() = 1;
        return {std::move(c), modulus};
    }

    [[nodiscard]] u64 modulus() const { return modulus_; }
    [[nodiscard]] const std::vector<u64>& coefficients() const { return coeffs_; }
    [[nodiscard]] bool is_zero() const { return coeffs_.empty(); }
    /// Degree; -1 for the zero polynomial.
    [[nodiscard]] int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    [[nodiscard]] u64 leading() const { return coeffs_.empty() ? 0 : coeffs_.back(); }
    [[nodiscard]] u64 operator[](std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : 0; }
    [[nodiscard]] bool is_monic() const { return !coeffs_.empty() && coeffs_.back() == 1; }

    /// Same coefficients read in another modulus (e.g. F_p -> Z_{p^2}).
    [[nodiscard]] Polynomial reinterpret(u64 modulus) const { return {coeffs_, modulus}; }

    friend bool operator==(const Polynomial&, const Polynomial&) = default;

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        check_same(a, b);
        std::vector<u64> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + b[i]) % a.modulus_;
        return {std::move(c), a.modulus_};
    }

    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
        check_same(a, b);
        std::vector<u64> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = (a[i] + a.modulus_ - b[i]) % a.modulus_;
        return {std::move(c), a.modulus_};
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        check_same(a, b);
        if (a.is_zero() || b.is_zero()) return {{}, a.modulus_};
        std::vector<u64> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                c[i + j] = (c[i + j] + mul_mod(a.coeffs_[i], b.coeffs_[j], a.modulus_)) % a.modulus_;
        return {std::move(c), a.modulus_};
    }

    /// Remainder modulo a monic divisor; valid over any Z_m.
    [[nodiscard]] Polynomial mod_monic(const Polynomial& f) const {
        check_same(*this, f);
        if (!f.is_monic()) throw std::invalid_argument("mod_monic: divisor must be monic");
        std::vector<u64> r = coeffs_;
        const std::size_t n = static_cast<std::size_t>(f.degree());
        while (r.size() > n && !r.empty()) {
            const u64 lead = r.back();
            const std::size_t shift = r.size() - 1 - n;
            for (std::size_t i = 0; i < n; ++i)
                r[shift + i] = (r[shift + i] + modulus_ - mul_mod(lead, f.coeffs_[i], modulus_)) % modulus_;
            r.pop_back();
            while (!r.empty() && r.back() == 0) r.pop_back();
        }
        return {std::move(r), modulus_};
    }

    [[nodiscard]] Polynomial pow_mod(u64 exp, const Polynomial& f) const {
        Polynomial result({1}, modulus_);
        Polynomial base = mod_monic(f);
        while (exp > 0) {
            if (exp & 1U) result = (result * base).mod_monic(f);
            base = (base * base).mod_monic(f);
            exp >>= 1U;
        }
        return result.mod_monic(f);
    }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& poly) {
        if (poly.is_zero()) return os << "0";
        bool first = true;
        for (int i = poly.degree(); i >= 0; --i) {
            const u64 c = poly.coeffs_[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            if (!first) os << " + ";
            first = false;
            if (c != 1 || i == 0) os << c;
            if (i >= 1) os << "x";
            if (i >= 2) os << "^" << i;
        }
        return os;
    }

private:
    static void check_same(const Polynomial& a, const Polynomial& b) {
        if (a.modulus_ != b.modulus_) throw std::invalid_argument("Polynomial: modulus mismatch");
    }
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    std::vector<u64> coeffs_;
    u64 modulus_ = 2;
};

namespace detail {

inline u64 inverse_mod_prime(u64 a, u64 p) { return pow_mod(a, p - 2, p); }

inline Polynomial make_monic(const Polynomial& a) {
    if (a.is_zero()) return a;
    const u64 inv = inverse_mod_prime(a.leading(), a.modulus());
    std::vector<u64> c = a.coefficients();
    for (auto& x : c) x = mul_mod(x, inv, a.modulus());
    return {std::move(c), a.modulus()};
}

}  // namespace detail

/// Monic gcd over a prime field F_p.
inline Polynomial gcd_prime(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.mod_monic(detail::make_monic(b));
        a = std::move(b);
        b = std::move(r);
    }
    return detail::make_monic(a);
}

/// Rabin-style test over F_p: f of degree n is irreducible iff
/// gcd(x^{p^i} - x, f) = 1 for 1 <= i <= n/2.
inline bool is_irreducible(const Polynomial& f) {
    const u64 p = f.modulus();
    if (!is_prime(p)) throw std::invalid_argument("is_irreducible: modulus must be prime");
    const int n = f.degree();
    if (n < 1) return false;
    if (n == 1) return true;
    const Polynomial monic = detail::make_monic(f);
    const Polynomial x = Polynomial::monomial(1, p);
    Polynomial frob = x;
    for (int i = 1; i <= n / 2; ++i) {
        frob = frob.pow_mod(p, monic);
        if (gcd_prime(monic, frob - x).degree() != 0) return false;
    }
    return true;
}

/// True iff f is irreducible over F_p and x has order p^n - 1 modulo f.
inline bool is_primitive(const Polynomial& f) {
    if (!is_irreducible(f) || !f.is_monic()) return false;
    const u64 p = f.modulus();
    const u64 order = checked_pow(p, static_cast<unsigned>(f.degree())) - 1;
    const Polynomial x = Polynomial::monomial(1, p);
    const Polynomial one({1}, p);
    if (x.pow_mod(order, f) != one) return false;
    for (u64 prime : prime_factors(order)) {
        if (x.pow_mod(order / prime, f) == one) return false;
    }
    return true;
}

}  // namespace ddf

#endif  // DDF_POLYNOMIAL_HPP
