#ifndef DDF_FIELD_HPP
#define DDF_FIELD_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "ddf/additive_group.hpp"
#include "ddf/number_theory.hpp"
#include "ddf/polynomial.hpp"

namespace ddf {

/// Largest field order for which exp/log tables are built.
inline constexpr u64 kMaxFieldOrder = u64{1} << 20U;

/// F_{p^n} with a primitive modulus polynomial and full exp/log tables.
/// Elements are base-p packings of their coefficient vectors. Immutable.
class FiniteField {
public:
    [[nodiscard]] u64 characteristic() const { return p_; }
    [[nodiscard]] unsigned degree() const { return n_; }
    [[nodiscard]] u64 order() const { return q_; }
    [[nodiscard]] const Polynomial& modulus() const { return modulus_; }
    [[nodiscard]] Encoding generator() const { return exp_.at(1 % exp_.size()); }
    [[nodiscard]] const AdditiveGroup& additive_group() const { return group_; }

    [[nodiscard]] Encoding add(Encoding a, Encoding b) const { return group_.add(a, b); }
    [[nodiscard]] Encoding sub(Encoding a, Encoding b) const { return group_.sub(a, b); }
    [[nodiscard]] Encoding neg(Encoding a) const { return group_.neg(a); }

    [[nodiscard]] Encoding mul(Encoding a, Encoding b) const {
        if (a == 0 || b == 0) return 0;
        return exp_[(u64{log_[a]} + log_[b]) % (q_ - 1)];
    }

    [[nodiscard]] Encoding inv(Encoding a) const {
        if (a == 0) throw std::domain_error("FiniteField::inv: zero has no inverse");
        return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
    }

    [[nodiscard]] Encoding pow(Encoding a, u64 k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        return exp_[static_cast<u64>(mul_mod(log_[a], k % (q_ - 1), q_ - 1))];
    }

    /// generator^t.
    [[nodiscard]] Encoding power_of_generator(u64 t) const { return exp_[t % (q_ - 1)]; }

    /// Discrete log to base generator(); a must be nonzero.
    [[nodiscard]] u64 log(Encoding a) const {
        if (a == 0 || a >= q_) throw std::domain_error("FiniteField::log: argument must be a nonzero element");
        return log_[a];
    }

    [[nodiscard]] bool is_unit(Encoding a) const { return a != 0; }

    [[nodiscard]] bool is_square(Encoding a) const { return a != 0 && (p_ == 2 || log_[a] % 2 == 0); }

    [[nodiscard]] std::vector<u64> coefficients(Encoding a) const { return group_.digits(a); }
    [[nodiscard]] Encoding from_coefficients(const std::vector<u64>& c) const { return group_.pack(c); }

    /// Multiplicative order of a nonzero element.
    [[nodiscard]] u64 element_order(Encoding a) const {
        const u64 l = log(a);
        u64 g = q_ - 1, x = l;
        while (x != 0) {
            const u64 t = g % x;
            g = x;
            x = t;
        }
        return (q_ - 1) / g;
    }

    friend FiniteField build_field(u64 p, unsigned n);

private:
    u64 p_ = 2;
    unsigned n_ = 1;
    u64 q_ = 2;
    Polynomial modulus_;
    AdditiveGroup group_;
    std::vector<Encoding> exp_;
    std::vector<Encoding> log_;
};

namespace detail {

/// Multiply a by x modulo a monic polynomial with lower coefficients `low`.
inline Encoding times_x(const AdditiveGroup& group, const std::vector<u64>& low, Encoding a) {
    const u64 m = group.modulus();
    const unsigned n = group.rank();
    auto d = group.digits(a);
    const u64 top = d[n - 1];
    for (unsigned i = n - 1; i > 0; --i) d[i] = d[i - 1];
    d[0] = 0;
    for (unsigned i = 0; i < n; ++i) d[i] = (d[i] + m - mul_mod(top, low[i], m)) % m;
    return group.pack(d);
}

}  // namespace detail

/// Degree-1 fields use x - g for the least primitive root g; higher degrees use
/// the lexicographically least monic primitive polynomial, comparing
/// (c_0, c_1, ..., c_{n-1}) with c_0 most significant.
inline FiniteField build_field(u64 p, unsigned n) {
    if (!is_prime(p)) throw std::invalid_argument("build_field: " + std::to_string(p) + " is not prime");
    if (n < 1) throw std::invalid_argument("build_field: degree must be at least 1");
    u64 q = 1;
    for (unsigned i = 0; i < n; ++i) {
        q *= p;
        if (q > kMaxFieldOrder) throw std::invalid_argument("build_field: field order exceeds table budget");
    }

    FiniteField field;
    field.p_ = p;
    field.n_ = n;
    field.q_ = q;
    field.group_ = AdditiveGroup(p, n);

    if (n == 1) {
        const u64 g = least_primitive_root(p);
        field.modulus_ = Polynomial({(p - g) % p, 1}, p);
    } else {
        const u64 count = q;  // choices for (c_0, ..., c_{n-1})
        bool found = false;
        for (u64 t = 0; t < count && !found; ++t) {
            std::vector<u64> c(n + 1, 0);
            u64 rest = t;
            for (unsigned i = n; i-- > 0;) {
                c[i] = rest % p;
                rest /= p;
            }
            c[n] = 1;
            Polynomial candidate(c, p);
            if (is_primitive(candidate)) {
                field.modulus_ = candidate;
                found = true;
            }
        }
        if (!found) throw std::logic_error("build_field: no primitive polynomial found");
    }

    std::vector<u64> low(n);
    for (unsigned i = 0; i < n; ++i) low[i] = field.modulus_[i];

    field.exp_.resize(q - 1);
    field.log_.assign(q, 0);
    Encoding cur = 1;
    for (u64 t = 0; t + 1 < q; ++t) {
        if (t > 0 && cur == 1) throw std::logic_error("build_field: modulus is not primitive");
        field.exp_[t] = cur;
        field.log_[cur] = static_cast<Encoding>(t);
        cur = detail::times_x(field.group_, low, cur);
    }
    if (cur != 1) throw std::logic_error("build_field: generator order mismatch");
    return field;
}

/// Cosets C_i = { g^t : t = i (mod e) } of the subgroup of e-th powers, each
/// sorted by encoding.
inline std::vector<std::vector<Encoding>> cyclotomic_classes(const FiniteField& field, u64 e) {
    const u64 q1 = field.order() - 1;
    if (e < 1 || q1 % e != 0)
        throw std::invalid_argument("cyclotomic_classes: e = " + std::to_string(e) + " does not divide q-1 = " +
                                    std::to_string(q1));
    std::vector<std::vector<Encoding>> classes(e);
    for (auto& c : classes) c.reserve(q1 / e);
    for (u64 t = 0; t < q1; ++t) classes[t % e].push_back(field.power_of_generator(t));
    for (auto& c : classes) std::sort(c.begin(), c.end());
    return classes;
}

/// Index i with a in C_i.
inline u64 cyclotomic_index(const FiniteField& field, Encoding a, u64 e) { return field.log(a) % e; }

}  // namespace ddf

#endif  // DDF_FIELD_HPP
