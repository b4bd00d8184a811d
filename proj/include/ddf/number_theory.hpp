#ifndef DDF_NUMBER_THEORY_HPP
#define DDF_NUMBER_THEORY_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace ddf {

using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

inline u64 checked_add(u64 a, u64 b) {
    u64 out = 0;
    if (__builtin_add_overflow(a, b, &out))
        throw std::overflow_error("multiplicity overflow in addition");
    return out;
}

inline u64 checked_mul(u64 a, u64 b) {
    u64 out = 0;
    if (__builtin_mul_overflow(a, b, &out))
        throw std::overflow_error("multiplicity overflow in multiplication");
    return out;
}

inline u64 checked_pow(u64 base, unsigned exp) {
    u64 out = 1;
    for (unsigned i = 0; i < exp; ++i) out = checked_mul(out, base);
    return out;
}

/// Narrow an exact 128-bit intermediate into the 64-bit multiplicity range.
inline u64 narrow_u64(i128 x) {
    if (x < 0 || x > static_cast<i128>(std::numeric_limits<u64>::max()))
        throw std::overflow_error("value does not fit in 64 bits");
    return static_cast<u64>(x);
}

inline u64 mul_mod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 pow_mod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1U) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1U;
    }
    return result;
}

inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % small == 0) return n == small;
    }
    // Deterministic Miller-Rabin for 64-bit inputs.
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1U) == 0) {
        d >>= 1U;
        ++s;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        u64 x = pow_mod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < s; ++i) {
            x = mul_mod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

/// Distinct prime factors in ascending order.
inline std::vector<u64> prime_factors(u64 n) {
    std::vector<u64> out;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

/// Multiplicative order of a modulo m (gcd(a, m) must be 1).
inline u64 multiplicative_order(u64 a, u64 m) {
    u64 phi = m;
    for (u64 prime : prime_factors(m)) phi = phi / prime * (prime - 1);
    u64 order = phi;
    for (u64 prime : prime_factors(phi)) {
        while (order % prime == 0 && pow_mod(a, order / prime, m) == 1) order /= prime;
    }
    return order;
}

inline u64 least_primitive_root(u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("least_primitive_root: " + std::to_string(p) + " is not prime");
    if (p == 2) return 1;
    const auto factors = prime_factors(p - 1);
    for (u64 g = 2; g < p; ++g) {
        bool primitive = true;
        for (u64 prime : factors) {
            if (pow_mod(g, (p - 1) / prime, p) == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) return g;
    }
    throw std::logic_error("no primitive root found");
}

/// 2^(p-1) == 1 (mod p^2).
inline bool wieferich(u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("wieferich: " + std::to_string(p) + " is not prime");
    if (p > std::numeric_limits<std::uint32_t>::max())
        throw std::invalid_argument("wieferich: p^2 exceeds 64 bits");
    return pow_mod(2, p - 1, p * p) == 1;
}

/// C(n, 2) with overflow check.
inline u64 choose2(u64 n) {
    if (n < 2) return 0;
    return (n % 2 == 0) ? checked_mul(n / 2, n - 1) : checked_mul(n, (n - 1) / 2);
}

}  // namespace ddf

#endif  // DDF_NUMBER_THEORY_HPP
