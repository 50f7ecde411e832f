#pragma once

// Sparse monomials and the term order.
//
// The term order is degree-graded with reverse-lexicographic tie break over
// the variable ranking of varid.hpp (state strings compared right to left,
// earlier wins). Under this order the leading term of every ideal generator
// built in ideal.hpp is the designated one: the distinguished variable of
// each linear form and the main-diagonal product of each 2x2 minor.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "mtd/varid.hpp"

namespace mtd {

struct Monomial {
    // Sorted by structural VarId order; exponents strictly positive.
    std::vector<std::pair<VarId, std::uint32_t>> factors;

    bool is_one() const { return factors.empty(); }

    std::uint64_t degree() const {
        std::uint64_t d = 0;
        for (const auto& [v, e] : factors) d += e;
        return d;
    }

    std::uint32_t exponent_of(VarId v) const {
        for (const auto& [w, e] : factors)
            if (w == v) return e;
        return 0;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.factors == b.factors;
    }
};

inline Monomial monomial_one() { return {}; }

inline Monomial monomial_of(VarId v, std::uint32_t e = 1) {
    Monomial m;
    if (e > 0) m.factors.emplace_back(v, e);
    return m;
}

// Structural (order-independent) comparison used for canonical term storage.
inline bool struct_less(const Monomial& a, const Monomial& b) {
    const std::size_t n = std::min(a.factors.size(), b.factors.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (a.factors[i].first != b.factors[i].first)
            return a.factors[i].first < b.factors[i].first;
        if (a.factors[i].second != b.factors[i].second)
            return a.factors[i].second < b.factors[i].second;
    }
    return a.factors.size() < b.factors.size();
}

struct MonomialStructLess {
    bool operator()(const Monomial& a, const Monomial& b) const { return struct_less(a, b); }
};

inline Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r;
    r.factors.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            r.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            r.factors.push_back(b.factors[j++]);
        } else {
            r.factors.emplace_back(a.factors[i].first, a.factors[i].second + b.factors[j].second);
            ++i, ++j;
        }
    }
    return r;
}

inline bool divides(const Monomial& a, const Monomial& b) {
    std::size_t j = 0;
    for (const auto& [v, e] : a.factors) {
        while (j < b.factors.size() && b.factors[j].first < v) ++j;
        if (j == b.factors.size() || b.factors[j].first != v || b.factors[j].second < e)
            return false;
    }
    return true;
}

// b / a, if a divides b.
inline std::optional<Monomial> try_divide(const Monomial& b, const Monomial& a) {
    if (!divides(a, b)) return std::nullopt;
    Monomial r;
    std::size_t i = 0;
    for (const auto& [v, e] : b.factors) {
        std::uint32_t sub = 0;
        if (i < a.factors.size() && a.factors[i].first == v) sub = a.factors[i++].second;
        if (e > sub) r.factors.emplace_back(v, e - sub);
    }
    return r;
}

inline Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r;
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            r.factors.push_back(a.factors[i++]);
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            r.factors.push_back(b.factors[j++]);
        } else {
            r.factors.emplace_back(a.factors[i].first,
                                   std::max(a.factors[i].second, b.factors[j].second));
            ++i, ++j;
        }
    }
    return r;
}

inline bool coprime(const Monomial& a, const Monomial& b) {
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() && j < b.factors.size()) {
        if (a.factors[i].first < b.factors[j].first)
            ++i;
        else if (b.factors[j].first < a.factors[i].first)
            ++j;
        else
            return false;
    }
    return true;
}

enum class Ordering { Less, Equal, Greater };

// Tag for the fixed term order described above. Kept as an explicit argument
// so order-dependent operations read like their mathematical statements.
struct TermOrder {};

inline Ordering compare(const Monomial& a, const Monomial& b, TermOrder = {}) {
    const std::uint64_t da = a.degree(), db = b.degree();
    if (da != db) return da < db ? Ordering::Less : Ordering::Greater;
    // Reverse-lex tie break: walk variables from the lowest-ranked upward;
    // at the first exponent difference the smaller exponent wins.
    struct Entry {
        VarId v;
        std::uint32_t ea, eb;
    };
    std::vector<Entry> entries;
    entries.reserve(a.factors.size() + b.factors.size());
    std::size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (j == b.factors.size() ||
            (i < a.factors.size() && a.factors[i].first < b.factors[j].first)) {
            entries.push_back({a.factors[i].first, a.factors[i].second, 0});
            ++i;
        } else if (i == a.factors.size() || b.factors[j].first < a.factors[i].first) {
            entries.push_back({b.factors[j].first, 0, b.factors[j].second});
            ++j;
        } else {
            entries.push_back({a.factors[i].first, a.factors[i].second, b.factors[j].second});
            ++i, ++j;
        }
    }
    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return var_greater(y.v, x.v); });
    for (const auto& e : entries) {
        if (e.ea != e.eb) return e.ea < e.eb ? Ordering::Greater : Ordering::Less;
    }
    return Ordering::Equal;
}

inline bool greater(const Monomial& a, const Monomial& b, TermOrder ord = {}) {
    return compare(a, b, ord) == Ordering::Greater;
}

}  // namespace mtd
