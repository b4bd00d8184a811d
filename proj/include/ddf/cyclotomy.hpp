#ifndef DDF_CYCLOTOMY_HPP
#define DDF_CYCLOTOMY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ddf/field.hpp"
#include "ddf/number_theory.hpp"

namespace ddf {

/// e x e table of cyclotomic numbers (i, j)_e = |(C_i + 1) cap C_j| in F_q.
/// Closed-form tables may leave cells unknown.
class CyclotomicTable {
public:
    using Cell = std::optional<u64>;

    CyclotomicTable() = default;
    CyclotomicTable(u64 e, u64 q) : e_(e), q_(q), cells_(e * e) {
        if (e == 0 || (q - 1) % e != 0) throw std::invalid_argument("CyclotomicTable: e must divide q-1");
    }

    [[nodiscard]] u64 order() const { return e_; }
    [[nodiscard]] u64 field_order() const { return q_; }
    [[nodiscard]] u64 class_size() const { return (q_ - 1) / e_; }

    [[nodiscard]] const Cell& at(u64 i, u64 j) const { return cells_[(i % e_) * e_ + (j % e_)]; }
    void set(u64 i, u64 j, Cell value) { cells_[(i % e_) * e_ + (j % e_)] = value; }

    [[nodiscard]] bool fully_known() const {
        for (const auto& c : cells_)
            if (!c) return false;
        return true;
    }

    friend bool operator==(const CyclotomicTable&, const CyclotomicTable&) = default;

private:
    u64 e_ = 1;
    u64 q_ = 2;
    std::vector<Cell> cells_;
};

/// Brute force over all elements of every C_i.
inline CyclotomicTable cyclotomic_table(const FiniteField& field, u64 e) {
    const u64 q1 = field.order() - 1;
    if (e < 1 || q1 % e != 0) throw std::invalid_argument("cyclotomic_table: e must divide q-1");
    std::vector<u64> counts(e * e, 0);
    for (u64 t = 0; t < q1; ++t) {
        const Encoding x = field.power_of_generator(t);
        const Encoding y = field.add(x, 1);
        if (y == 0) continue;
        ++counts[(t % e) * e + field.log(y) % e];
    }
    CyclotomicTable table(e, field.order());
    for (u64 i = 0; i < e; ++i)
        for (u64 j = 0; j < e; ++j) table.set(i, j, counts[i * e + j]);
    return table;
}

/// Order p^r + 1 table of F_{p^{2r}}: (0,0) = p^r - 2; (0,i) = (i,0) = (i,i) = 0
/// for i != 0; every other cell is 1.
inline CyclotomicTable closed_form_order_e(u64 p, unsigned r) {
    const u64 m = checked_pow(p, r);
    const u64 e = m + 1;
    CyclotomicTable table(e, checked_mul(m, m));
    for (u64 i = 0; i < e; ++i)
        for (u64 j = 0; j < e; ++j) {
            u64 value = 1;
            if (i == 0 && j == 0) value = m - 2;
            else if (i == 0 || j == 0 || i == j) value = 0;
            table.set(i, j, value);
        }
    return table;
}

/// Order 2(p^r + 1) table of F_{p^{2r}}. The four cells on {0, e} follow the
/// square/non-square counts of F_{p^r}; cells whose order-e parent is 0 are 0;
/// each quadruple over an order-e 1-cell is unknown (exactly one of its four
/// members is 1).
inline CyclotomicTable closed_form_order_2e(u64 p, unsigned r) {
    if (p % 2 == 0) throw std::invalid_argument("closed_form_order_2e: requires odd p");
    const u64 m = checked_pow(p, r);
    const u64 e = m + 1;
    CyclotomicTable table(2 * e, checked_mul(m, m));
    for (u64 k = 0; k < 2 * e; ++k)
        for (u64 l = 0; l < 2 * e; ++l) {
            const u64 i = k % e, j = l % e;
            if (i == 0 && j == 0) continue;
            if (i == 0 || j == 0 || i == j) table.set(k, l, u64{0});
            else table.set(k, l, std::nullopt);
        }
    if ((m - 1) % 4 == 0) {
        table.set(0, 0, (m - 5) / 4);
        table.set(0, e, (m - 1) / 4);
        table.set(e, 0, (m - 1) / 4);
        table.set(e, e, (m - 1) / 4);
    } else {
        table.set(0, e, (m + 1) / 4);
        table.set(0, 0, (m - 3) / 4);
        table.set(e, 0, (m - 3) / 4);
        table.set(e, e, (m - 3) / 4);
    }
    return table;
}

struct DicksonCounts {
    u64 qq = 0, qn = 0, nn = 0, nq = 0;
    friend bool operator==(const DicksonCounts&, const DicksonCounts&) = default;
};

/// Closed-form (QQ, QN, NN, NQ) for odd q, by q mod 4.
inline DicksonCounts dickson_formula(u64 q) {
    if (q % 2 == 0) throw std::invalid_argument("dickson_formula: requires odd q");
    if ((q - 1) % 4 == 0) return {(q - 5) / 4, (q - 1) / 4, (q - 1) / 4, (q - 1) / 4};
    return {(q - 3) / 4, (q + 1) / 4, (q - 3) / 4, (q - 3) / 4};
}

struct DicksonReport {
    DicksonCounts observed;
    DicksonCounts formula;
    [[nodiscard]] bool matches() const { return observed == formula; }
};

/// Counts of s in S (resp. N) with s + 1 in S or N, over F_{p^r}, p odd.
inline DicksonReport dickson_counts(u64 p, unsigned r) {
    if (p % 2 == 0) throw std::invalid_argument("dickson_counts: requires odd p");
    const FiniteField field = build_field(p, r);
    DicksonReport report;
    for (Encoding s = 1; s < field.order(); ++s) {
        const Encoding next = field.add(s, 1);
        if (next == 0) continue;
        const bool s_sq = field.is_square(s), next_sq = field.is_square(next);
        if (s_sq && next_sq) ++report.observed.qq;
        else if (s_sq) ++report.observed.qn;
        else if (next_sq) ++report.observed.nq;
        else ++report.observed.nn;
    }
    report.formula = dickson_formula(field.order());
    return report;
}

struct SumRelationResult {
    bool pass = false;
    std::optional<std::pair<u64, u64>> witness;  // failing (i, j) of the order-e table
};

/// (i, j)_e = sum over k in {i, e+i}, l in {j, e+j} of (k, l)_{2e}.
inline SumRelationResult check_sum_relation(const CyclotomicTable& order_e, const CyclotomicTable& order_2e) {
    if (order_e.field_order() != order_2e.field_order() || order_2e.order() != 2 * order_e.order())
        throw std::invalid_argument("check_sum_relation: tables are not of orders (e, 2e) over one field");
    if (!order_e.fully_known() || !order_2e.fully_known())
        throw std::invalid_argument("check_sum_relation: tables contain unknown cells");
    const u64 e = order_e.order();
    for (u64 i = 0; i < e; ++i)
        for (u64 j = 0; j < e; ++j) {
            const u64 sum = *order_2e.at(i, j) + *order_2e.at(i, j + e) + *order_2e.at(i + e, j) +
                            *order_2e.at(i + e, j + e);
            if (sum != *order_e.at(i, j)) return {false, std::make_pair(i, j)};
        }
    return {true, std::nullopt};
}

struct CountSummary {
    std::map<u64, u64> counts;  // N -> number of cells equal to N
    /// For order p^r + 1 tables of F_{p^{2r}}: whether n(0) = 3p^r,
    /// n(1) = p^r(p^r - 1) and n(p^r - 2) = 1 hold (merged when keys coincide).
    std::optional<bool> published_counts_hold;
};

namespace detail {

inline std::optional<u64> exact_sqrt(u64 q) {
    u64 s = 0;
    while ((s + 1) * (s + 1) <= q) ++s;
    return s * s == q ? std::optional<u64>(s) : std::nullopt;
}

}  // namespace detail

inline CountSummary count_summary(const CyclotomicTable& table) {
    if (!table.fully_known()) throw std::invalid_argument("count_summary: table contains unknown cells");
    CountSummary summary;
    const u64 e = table.order();
    for (u64 i = 0; i < e; ++i)
        for (u64 j = 0; j < e; ++j) ++summary.counts[*table.at(i, j)];
    if (auto m = detail::exact_sqrt(table.field_order()); m && *m >= 3 && e == *m + 1) {
        std::map<u64, u64> expected;
        expected[0] += 3 * *m;
        expected[1] += *m * (*m - 1);
        expected[*m - 2] += 1;
        summary.published_counts_hold = (expected == summary.counts);
    }
    return summary;
}

/// CSV: a header row `e,f,q` holding those three values, then e rows of e
/// cells with `?` for unknown.
inline void write_table_csv(std::ostream& os, const CyclotomicTable& table) {
    os << table.order() << ',' << table.class_size() << ',' << table.field_order() << '\n';
    for (u64 i = 0; i < table.order(); ++i) {
        for (u64 j = 0; j < table.order(); ++j) {
            if (j) os << ',';
            if (const auto& c = table.at(i, j)) os << *c;
            else os << '?';
        }
        os << '\n';
    }
}

}  // namespace ddf

#endif  // DDF_CYCLOTOMY_HPP
