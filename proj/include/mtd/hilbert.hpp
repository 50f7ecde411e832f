#pragma once

// Hilbert series numerator K(t) of a quotient by a monomial ideal:
// HS(R/I) = K(t)/(1-t)^nvars. Computed by recursive pivot splitting on the
// most frequently occurring variable, with memoization on the minimal
// generator set. Krull dimension and degree fall out of the multiplicity of
// the root t = 1.

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtd/monomial.hpp"
#include "mtd/polynomial.hpp"
#include "mtd/rational.hpp"

namespace mtd {

// Dense univariate integer polynomial, coeffs[k] = coefficient of t^k.
using IntPoly = std::vector<Int>;

namespace hilbert_detail {

inline void trim(IntPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline IntPoly add(const IntPoly& a, const IntPoly& b) {
    IntPoly r(std::max(a.size(), b.size()), Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    trim(r);
    return r;
}

// a * t^k
inline IntPoly shift(const IntPoly& a, std::size_t k) {
    if (a.empty()) return {};
    IntPoly r(a.size() + k, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i + k] = a[i];
    return r;
}

// a * (1 - t^k)
inline IntPoly mul_one_minus_tk(const IntPoly& a, std::size_t k) {
    IntPoly r(a.size() + k, Int(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        r[i] += a[i];
        r[i + k] -= a[i];
    }
    trim(r);
    return r;
}

// Remove generators divisible by another generator.
inline std::vector<Monomial> minimalize(std::vector<Monomial> gens) {
    std::sort(gens.begin(), gens.end(), [](const Monomial& a, const Monomial& b) {
        if (a.degree() != b.degree()) return a.degree() < b.degree();
        return struct_less(a, b);
    });
    std::vector<Monomial> out;
    for (const auto& g : gens) {
        bool redundant = false;
        for (const auto& h : out)
            if (divides(h, g)) {
                redundant = true;
                break;
            }
        if (!redundant) out.push_back(g);
    }
    return out;
}

inline std::string key_of(const std::vector<Monomial>& gens) {
    std::string key;
    key.reserve(gens.size() * 12);
    for (const auto& g : gens) {
        for (const auto& [v, e] : g.factors) {
            key.append(reinterpret_cast<const char*>(&v.code), sizeof(v.code));
            key.append(reinterpret_cast<const char*>(&e), sizeof(e));
        }
        key.push_back('\xff');
    }
    return key;
}

class Computer {
  public:
    IntPoly run(std::vector<Monomial> gens) {
        gens = minimalize(std::move(gens));
        return compute(gens);
    }

  private:
    IntPoly compute(const std::vector<Monomial>& gens) {
        if (gens.empty()) return IntPoly{Int(1)};
        for (const auto& g : gens)
            if (g.is_one()) return IntPoly{};  // unit ideal
        // Pure powers of distinct variables: K = prod (1 - t^deg).
        bool all_simple = true;
        for (const auto& g : gens)
            if (g.factors.size() != 1) {
                all_simple = false;
                break;
            }
        if (all_simple) {
            IntPoly k{Int(1)};
            for (const auto& g : gens) k = mul_one_minus_tk(k, g.factors[0].second);
            return k;
        }
        const std::string key = key_of(gens);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        // Pivot: the variable occurring in the most generators.
        std::unordered_map<std::uint64_t, std::pair<VarId, int>> counts;
        for (const auto& g : gens)
            if (g.factors.size() > 1)
                for (const auto& [v, e] : g.factors) {
                    auto& slot = counts[v.code];
                    slot.first = v;
                    ++slot.second;
                }
        VarId pivot{};
        int best = -1;
        for (const auto& [code, entry] : counts)
            if (entry.second > best || (entry.second == best && entry.first < pivot)) {
                pivot = entry.first;
                best = entry.second;
            }

        // K(I) = K(I + (x)) + t * K(I : x).
        std::vector<Monomial> plus, colon;
        const Monomial x = monomial_of(pivot);
        plus.push_back(x);
        for (const auto& g : gens) {
            if (auto q = try_divide(g, x)) {
                colon.push_back(*q);
            } else {
                plus.push_back(g);
                colon.push_back(g);
            }
        }
        IntPoly result = add(compute(minimalize(std::move(plus))),
                             shift(compute(minimalize(std::move(colon))), 1));
        memo_.emplace(key, result);
        return result;
    }

    std::unordered_map<std::string, IntPoly> memo_;
};

}  // namespace hilbert_detail

// K(t) with HS(R/I) = K(t)/(1-t)^nvars. nvars only matters for dimension
// extraction; it must cover every variable in gens.
inline IntPoly hilbert_numerator(const std::vector<Monomial>& gens, std::size_t nvars) {
    (void)nvars;
    hilbert_detail::Computer c;
    return c.run(gens);
}

// Overload guarding the "generators must be monomials" error path.
inline IntPoly hilbert_numerator(const std::vector<Polynomial>& gens, std::size_t nvars) {
    std::vector<Monomial> monos;
    monos.reserve(gens.size());
    for (const auto& g : gens) {
        if (g.terms.size() != 1)
            throw Error("hilbert_numerator: generator is not a monomial");
        monos.push_back(g.terms[0].first);
    }
    return hilbert_numerator(monos, nvars);
}

inline Int eval_at_one(const IntPoly& p) {
    Int s = 0;
    for (const auto& c : p) s += c;
    return s;
}

struct HilbertSummary {
    long krull_dim;           // dimension of R/I (affine)
    Int degree;               // multiplicity
    IntPoly reduced_numerator;  // K(t)/(1-t)^codim
};

inline HilbertSummary hilbert_dim_degree(const std::vector<Monomial>& gens, std::size_t nvars) {
    IntPoly k = hilbert_numerator(gens, nvars);
    // Divide out (1-t) while t=1 is a root.
    std::size_t mult = 0;
    while (!k.empty() && eval_at_one(k) == 0) {
        // k / (1-t): running prefix sums.
        IntPoly q(k.size() - 1, Int(0));
        Int carry = 0;
        for (std::size_t i = 0; i < q.size(); ++i) {
            carry += k[i];
            q[i] = carry;
        }
        k = std::move(q);
        hilbert_detail::trim(k);
        ++mult;
    }
    HilbertSummary s;
    s.krull_dim = static_cast<long>(nvars) - static_cast<long>(mult);
    s.degree = k.empty() ? Int(0) : eval_at_one(k);
    s.reduced_numerator = std::move(k);
    return s;
}

}  // namespace mtd
