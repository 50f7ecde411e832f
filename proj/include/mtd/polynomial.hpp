#pragma once

// Sparse multivariate polynomials over the rationals, with the division
// algorithm, S-polynomials and the Buchberger criterion check used to verify
// the Groebner property of the ideal generators.

#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mtd/monomial.hpp"
#include "mtd/rational.hpp"

namespace mtd {

struct Polynomial {
    // Terms sorted by struct_less on monomials; no zero coefficients.
    std::vector<std::pair<Monomial, Rational>> terms;

    bool is_zero() const { return terms.empty(); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.terms == b.terms;
    }
};

namespace poly_detail {
using Accum = std::map<Monomial, Rational, MonomialStructLess>;

inline Polynomial from_accum(Accum&& acc) {
    Polynomial p;
    p.terms.reserve(acc.size());
    for (auto& [m, c] : acc)
        if (c != 0) p.terms.emplace_back(m, std::move(c));
    return p;
}
}  // namespace poly_detail

inline Polynomial poly_zero() { return {}; }

inline Polynomial poly_const(const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms.emplace_back(monomial_one(), c);
    return p;
}

inline Polynomial poly_var(VarId v) {
    Polynomial p;
    p.terms.emplace_back(monomial_of(v), Rational(1));
    return p;
}

inline Polynomial poly_term(const Monomial& m, const Rational& c) {
    Polynomial p;
    if (c != 0) p.terms.emplace_back(m, c);
    return p;
}

inline Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    Polynomial r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    std::size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size() ||
            (i < a.terms.size() && struct_less(a.terms[i].first, b.terms[j].first))) {
            r.terms.push_back(a.terms[i++]);
        } else if (i == a.terms.size() || struct_less(b.terms[j].first, a.terms[i].first)) {
            r.terms.push_back(b.terms[j++]);
        } else {
            Rational c = a.terms[i].second + b.terms[j].second;
            if (c != 0) r.terms.emplace_back(a.terms[i].first, std::move(c));
            ++i, ++j;
        }
    }
    return r;
}

inline Polynomial operator-(const Polynomial& a) {
    Polynomial r = a;
    for (auto& [m, c] : r.terms) c = -c;
    return r;
}

inline Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

inline Polynomial operator*(const Polynomial& a, const Rational& c) {
    if (c == 0) return {};
    Polynomial r = a;
    for (auto& [m, coef] : r.terms) coef *= c;
    return r;
}

inline Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

inline Polynomial mul_term(const Polynomial& a, const Monomial& m, const Rational& c) {
    if (c == 0) return {};
    poly_detail::Accum acc;
    for (const auto& [mono, coef] : a.terms) acc[mono * m] += coef * c;
    return poly_detail::from_accum(std::move(acc));
}

inline Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    poly_detail::Accum acc;
    for (const auto& [ma, ca] : a.terms)
        for (const auto& [mb, cb] : b.terms) acc[ma * mb] += ca * cb;
    return poly_detail::from_accum(std::move(acc));
}

inline Polynomial& operator+=(Polynomial& a, const Polynomial& b) { return a = a + b; }
inline Polynomial& operator-=(Polynomial& a, const Polynomial& b) { return a = a - b; }

// Leading term under the term order. Polynomial must be nonzero.
inline const std::pair<Monomial, Rational>& leading_term(const Polynomial& p, TermOrder ord = {}) {
    if (p.is_zero()) throw Error("leading_term of zero polynomial");
    const std::pair<Monomial, Rational>* best = &p.terms[0];
    for (std::size_t i = 1; i < p.terms.size(); ++i)
        if (greater(p.terms[i].first, best->first, ord)) best = &p.terms[i];
    return *best;
}

inline const Monomial& leading_monomial(const Polynomial& p, TermOrder ord = {}) {
    return leading_term(p, ord).first;
}

// Substitute polynomials for variables (used to push generators through the
// model parametrization). Variables absent from the map are kept.
inline Polynomial substitute(const Polynomial& p,
                             const std::unordered_map<std::uint64_t, Polynomial>& subs) {
    Polynomial out;
    for (const auto& [mono, coef] : p.terms) {
        Polynomial term = poly_const(coef);
        for (const auto& [v, e] : mono.factors) {
            auto it = subs.find(v.code);
            const Polynomial base = it != subs.end() ? it->second : poly_var(v);
            for (std::uint32_t k = 0; k < e; ++k) term = term * base;
        }
        out += term;
    }
    return out;
}

// Partial derivative.
inline Polynomial derivative(const Polynomial& p, VarId v) {
    Polynomial out;
    poly_detail::Accum acc;
    for (const auto& [mono, coef] : p.terms) {
        std::uint32_t e = mono.exponent_of(v);
        if (e == 0) continue;
        auto q = try_divide(mono, monomial_of(v));
        acc[*q] += coef * Rational(static_cast<long>(e));
    }
    return poly_detail::from_accum(std::move(acc));
}

inline Rational evaluate(const Polynomial& p,
                         const std::unordered_map<std::uint64_t, Rational>& point) {
    Rational total = 0;
    for (const auto& [mono, coef] : p.terms) {
        Rational t = coef;
        for (const auto& [v, e] : mono.factors) {
            auto it = point.find(v.code);
            if (it == point.end()) throw Error("evaluate: unbound variable " + var_name(v));
            for (std::uint32_t k = 0; k < e; ++k) t *= it->second;
        }
        total += t;
    }
    return total;
}

// ---------------------------------------------------------------------------
// Division / Groebner machinery.

// Leading-term index over a fixed basis. Single-variable and squarefree
// quadratic leads (the only kinds our generators produce) get hash lookups;
// anything else falls back to a linear scan.
class BasisIndex {
  public:
    BasisIndex(const std::vector<Polynomial>& basis, TermOrder ord = {}) : basis_(&basis) {
        leads_.reserve(basis.size());
        lead_coeffs_.reserve(basis.size());
        for (std::size_t i = 0; i < basis.size(); ++i) {
            if (basis[i].is_zero()) throw Error("BasisIndex: zero basis element");
            const auto& lt = leading_term(basis[i], ord);
            leads_.push_back(lt.first);
            lead_coeffs_.push_back(lt.second);
            const auto& f = lt.first.factors;
            if (f.size() == 1 && f[0].second == 1) {
                auto [it, fresh] = single_.try_emplace(f[0].first.code, i);
                (void)it, (void)fresh;
            } else if (f.size() == 2 && f[0].second == 1 && f[1].second == 1) {
                pair_.try_emplace(pair_key(f[0].first, f[1].first), i);
            } else {
                general_.emplace_back(i, lt.first);
            }
        }
    }

    // Smallest basis index whose leading monomial divides m, or -1.
    int find_divisor(const Monomial& m) const {
        std::size_t best = SIZE_MAX;
        for (std::size_t a = 0; a < m.factors.size(); ++a) {
            auto it = single_.find(m.factors[a].first.code);
            if (it != single_.end() && it->second < best) best = it->second;
            for (std::size_t b = a + 1; b < m.factors.size(); ++b) {
                auto jt = pair_.find(pair_key(m.factors[a].first, m.factors[b].first));
                if (jt != pair_.end() && jt->second < best && divides(leads_[jt->second], m))
                    best = jt->second;
            }
        }
        for (const auto& [idx, lead] : general_) {
            if (idx >= best) break;
            if (divides(lead, m)) {
                best = idx;
                break;
            }
        }
        return best == SIZE_MAX ? -1 : static_cast<int>(best);
    }

    const Monomial& lead(std::size_t i) const { return leads_[i]; }
    const Rational& lead_coeff(std::size_t i) const { return lead_coeffs_[i]; }
    const Polynomial& element(std::size_t i) const { return (*basis_)[i]; }
    std::size_t size() const { return leads_.size(); }

  private:
    static std::uint64_t pair_key(VarId a, VarId b) {
        // Codes fit in 62 bits; mix symmetrically but order-sensitively.
        std::uint64_t x = a.code, y = b.code;
        return (x * 0x9e3779b97f4a7c15ULL) ^ (y + 0x7f4a7c15ULL);
    }

    const std::vector<Polynomial>* basis_;
    std::vector<Monomial> leads_;
    std::vector<Rational> lead_coeffs_;
    std::unordered_map<std::uint64_t, std::size_t> single_;
    std::unordered_map<std::uint64_t, std::size_t> pair_;
    std::vector<std::pair<std::size_t, Monomial>> general_;
};

// Normal form of f modulo basis: repeatedly cancels the greatest reducible
// term using the first (smallest-index) basis element whose lead divides it.
inline Polynomial reduce(const Polynomial& f, const BasisIndex& index, TermOrder ord = {}) {
    Polynomial r = f;
    while (!r.is_zero()) {
        int best_term = -1;
        int best_div = -1;
        for (std::size_t t = 0; t < r.terms.size(); ++t) {
            int d = index.find_divisor(r.terms[t].first);
            if (d < 0) continue;
            if (best_term < 0 || greater(r.terms[t].first, r.terms[best_term].first, ord)) {
                best_term = static_cast<int>(t);
                best_div = d;
            }
        }
        if (best_term < 0) break;
        const Monomial quotient = *try_divide(r.terms[best_term].first, index.lead(best_div));
        const Rational coef = r.terms[best_term].second / index.lead_coeff(best_div);
        r -= mul_term(index.element(best_div), quotient, coef);
    }
    return r;
}

inline Polynomial reduce(const Polynomial& f, const std::vector<Polynomial>& basis,
                         TermOrder ord = {}) {
    return reduce(f, BasisIndex(basis, ord), ord);
}

inline Polynomial s_polynomial(const Polynomial& f, const Polynomial& g, TermOrder ord = {}) {
    if (f.is_zero() || g.is_zero()) throw Error("s_polynomial: zero input");
    const auto& ltf = leading_term(f, ord);
    const auto& ltg = leading_term(g, ord);
    const Monomial l = lcm(ltf.first, ltg.first);
    return mul_term(f, *try_divide(l, ltf.first), Rational(1) / ltf.second) -
           mul_term(g, *try_divide(l, ltg.first), Rational(1) / ltg.second);
}

// Buchberger criterion: true iff every pairwise S-polynomial reduces to zero.
// With prune_coprime set, pairs with coprime leads are skipped (their S-pairs
// reduce to zero unconditionally by Buchberger's first criterion).
inline bool buchberger_check(const std::vector<Polynomial>& basis, TermOrder ord = {},
                             bool prune_coprime = false,
                             std::pair<std::size_t, std::size_t>* failing_pair = nullptr) {
    BasisIndex index(basis, ord);
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = i + 1; j < basis.size(); ++j) {
            if (prune_coprime && coprime(index.lead(i), index.lead(j))) continue;
            Polynomial s = s_polynomial(basis[i], basis[j], ord);
            if (!reduce(s, index, ord).is_zero()) {
                if (failing_pair) *failing_pair = {i, j};
                return false;
            }
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Text format. Terms are emitted in decreasing term order, joined by
// " + " / " - "; coefficients print as num/den with unit coefficients and
// "/1" omitted; variables within a term are sorted by decreasing rank and
// joined by "*", exponents as "^e".

inline std::string monomial_to_text(const Monomial& m) {
    auto vars = m.factors;
    std::sort(vars.begin(), vars.end(),
              [](const auto& a, const auto& b) { return var_greater(a.first, b.first); });
    std::string s;
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (i) s += "*";
        s += var_name(vars[i].first);
        if (vars[i].second > 1) s += "^" + std::to_string(vars[i].second);
    }
    return s;
}

inline std::string to_text(const Polynomial& p, TermOrder ord = {}) {
    if (p.is_zero()) return "0";
    auto terms = p.terms;
    std::sort(terms.begin(), terms.end(),
              [&](const auto& a, const auto& b) { return greater(a.first, b.first, ord); });
    std::string s;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Rational& c = terms[i].second;
        const bool neg = c < 0;
        if (i == 0) {
            if (neg) s += "-";
        } else {
            s += neg ? " - " : " + ";
        }
        Rational a = abs(c);
        const std::string mono = monomial_to_text(terms[i].first);
        if (mono.empty()) {
            s += to_string(a);
        } else if (a == 1) {
            s += mono;
        } else {
            s += to_string(a) + "*" + mono;
        }
    }
    return s;
}

inline Polynomial parse_polynomial(const std::string& text) {
    poly_detail::Accum acc;
    std::size_t i = 0;
    const auto skip_ws = [&] {
        while (i < text.size() && text[i] == ' ') ++i;
    };
    skip_ws();
    if (i == text.size()) throw ParseError("parse_polynomial: empty input");
    int sign = 1;
    if (text[i] == '-') {
        sign = -1;
        ++i;
    } else if (text[i] == '+') {
        ++i;
    }
    while (true) {
        skip_ws();
        // one term: factors separated by '*'
        Rational coef = sign;
        Monomial mono;
        bool saw_factor = false;
        while (i < text.size()) {
            skip_ws();
            if (i == text.size()) break;
            char c = text[i];
            if (c == '+' || c == '-') break;
            if (c >= '0' && c <= '9') {
                std::size_t j = i;
                while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || text[j] == '/'))
                    ++j;
                coef *= parse_rational(text.substr(i, j - i));
                i = j;
            } else if (std::isalpha(static_cast<unsigned char>(c))) {
                std::size_t j = i;
                while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
                    ++j;
                VarId v = parse_var(text.substr(i, j - i));
                i = j;
                std::uint32_t e = 1;
                if (i < text.size() && text[i] == '^') {
                    ++i;
                    std::size_t k = i;
                    while (k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]))) ++k;
                    e = static_cast<std::uint32_t>(std::stoul(text.substr(i, k - i)));
                    i = k;
                }
                mono = mono * monomial_of(v, e);
            } else {
                throw ParseError("parse_polynomial: unexpected character '" + std::string(1, c) +
                                 "'");
            }
            saw_factor = true;
            skip_ws();
            if (i < text.size() && text[i] == '*') {
                ++i;
                continue;
            }
            break;
        }
        if (!saw_factor) throw ParseError("parse_polynomial: missing term");
        acc[mono] += coef;
        skip_ws();
        if (i == text.size()) break;
        if (text[i] == '+') {
            sign = 1;
        } else if (text[i] == '-') {
            sign = -1;
        } else {
            throw ParseError("parse_polynomial: expected '+' or '-'");
        }
        ++i;
    }
    return poly_detail::from_accum(std::move(acc));
}

}  // namespace mtd
