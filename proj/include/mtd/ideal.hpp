#pragma once

// Generators of the prime ideal of the model closure: two families of linear
// forms, the l x (m-1)^2 matrix A of linear entries, and its 2x2 minors.
// Verification: every generator vanishes under the symbolic parametrization,
// every computed leading term is the designated one, and the whole set passes
// the Buchberger criterion. Dimension and degree come from the initial ideal.

#include <cstddef>
#include <utility>
#include <vector>

#include "mtd/hilbert.hpp"
#include "mtd/linalg.hpp"
#include "mtd/model.hpp"
#include "mtd/polynomial.hpp"

namespace mtd {

namespace ideal_detail {

// State with digit i at position j, all other prefix digits m, last digit r.
inline VarId spike_var(const ModelShape& shape, int j, int i, int r) {
    std::vector<int> digits(shape.l + 1, shape.m);
    digits[j] = i;
    digits[shape.l] = r;
    return state_var(digits);
}

// State m...m r.
inline VarId base_var(const ModelShape& shape, int r) {
    std::vector<int> digits(shape.l + 1, shape.m);
    digits[shape.l] = r;
    return state_var(digits);
}

inline int prefix_non_m_count(const ModelShape& shape, const std::vector<int>& digits) {
    int c = 0;
    for (int k = 0; k < shape.l; ++k)
        if (digits[k] != shape.m) ++c;
    return c;
}

}  // namespace ideal_detail

// Family (I): for every state whose prefix has at least two non-m digits,
//   p_w  -  sum_j p_{m..m w_j m..m w_l}  +  (l-1) p_{m..m w_l}.
inline std::vector<Polynomial> build_linrel1(const ModelShape& shape) {
    std::vector<Polynomial> out;
    const std::size_t n = shape.num_states();
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto digits = state_of_index(shape, idx);
        if (ideal_detail::prefix_non_m_count(shape, digits) < 2) continue;
        Polynomial f = poly_var(state_var(digits));
        for (int j = 0; j < shape.l; ++j)
            f -= poly_var(ideal_detail::spike_var(shape, j, digits[j], digits[shape.l]));
        f += poly_const(Rational(shape.l - 1)) *
             poly_var(ideal_detail::base_var(shape, digits[shape.l]));
        out.push_back(std::move(f));
    }
    const long expected = static_cast<long>(shape.num_states()) -
                          static_cast<long>(shape.m) * (1 + shape.l * (shape.m - 1));
    if (static_cast<long>(out.size()) != expected)
        throw FormulaMismatchError("build_linrel1: count formula violated");
    return out;
}

// Family (II): for j in 0..l-1 and i in 1..m-1,
//   sum_r p_{m..m i_j m..m r}  -  sum_r p_{m..m r}.
inline std::vector<Polynomial> build_linrel2(const ModelShape& shape) {
    std::vector<Polynomial> out;
    for (int j = 0; j < shape.l; ++j)
        for (int i = 1; i < shape.m; ++i) {
            Polynomial f;
            for (int r = 1; r <= shape.m; ++r) {
                f += poly_var(ideal_detail::spike_var(shape, j, i, r));
                f -= poly_var(ideal_detail::base_var(shape, r));
            }
            out.push_back(std::move(f));
        }
    if (out.size() != static_cast<std::size_t>(shape.l * (shape.m - 1)))
        throw FormulaMismatchError("build_linrel2: count formula violated");
    return out;
}

// The l x (m-1)^2 matrix A = (A_2 ... A_m); block A_r has entry
// p_{m..m i m..m r} - p_{m..m r} at row j, column i.
inline std::vector<std::vector<Polynomial>> build_matrix_A(const ModelShape& shape) {
    std::vector<std::vector<Polynomial>> a(shape.l);
    for (int j = 0; j < shape.l; ++j) {
        for (int r = 2; r <= shape.m; ++r)
            for (int i = 1; i < shape.m; ++i)
                a[j].push_back(poly_var(ideal_detail::spike_var(shape, j, i, r)) -
                               poly_var(ideal_detail::base_var(shape, r)));
    }
    return a;
}

inline std::vector<Polynomial> build_minors(const std::vector<std::vector<Polynomial>>& a) {
    std::vector<Polynomial> out;
    const std::size_t rows = a.size();
    const std::size_t cols = rows == 0 ? 0 : a[0].size();
    for (std::size_t j1 = 0; j1 < rows; ++j1)
        for (std::size_t j2 = j1 + 1; j2 < rows; ++j2)
            for (std::size_t c1 = 0; c1 < cols; ++c1)
                for (std::size_t c2 = c1 + 1; c2 < cols; ++c2)
                    out.push_back(a[j1][c1] * a[j2][c2] - a[j1][c2] * a[j2][c1]);
    return out;
}

struct GeneratorSet {
    ModelShape shape;
    TermOrder order;
    std::vector<Polynomial> linear1;
    std::vector<Polynomial> linear2;
    std::vector<std::vector<Polynomial>> matrixA;
    std::vector<Polynomial> minors;

    std::vector<Polynomial> all() const {
        std::vector<Polynomial> v = linear1;
        v.insert(v.end(), linear2.begin(), linear2.end());
        v.insert(v.end(), minors.begin(), minors.end());
        return v;
    }

    // Designated ("underlined") leading terms, in the order of all().
    std::vector<Monomial> designated_leads() const {
        std::vector<Monomial> leads;
        const std::size_t n = shape.num_states();
        for (std::size_t idx = 0; idx < n; ++idx) {
            auto digits = state_of_index(shape, idx);
            if (ideal_detail::prefix_non_m_count(shape, digits) >= 2)
                leads.push_back(monomial_of(state_var(digits)));
        }
        for (int j = 0; j < shape.l; ++j)
            for (int i = 1; i < shape.m; ++i)
                leads.push_back(monomial_of(ideal_detail::spike_var(shape, j, i, 1)));
        const std::size_t cols = matrixA.empty() ? 0 : matrixA[0].size();
        auto entry_var = [&](std::size_t j, std::size_t c) {
            const int r = 2 + static_cast<int>(c) / (shape.m - 1);
            const int i = 1 + static_cast<int>(c) % (shape.m - 1);
            return ideal_detail::spike_var(shape, static_cast<int>(j), i, r);
        };
        for (std::size_t j1 = 0; j1 < matrixA.size(); ++j1)
            for (std::size_t j2 = j1 + 1; j2 < matrixA.size(); ++j2)
                for (std::size_t c1 = 0; c1 < cols; ++c1)
                    for (std::size_t c2 = c1 + 1; c2 < cols; ++c2)
                        leads.push_back(monomial_of(entry_var(j1, c1)) *
                                        monomial_of(entry_var(j2, c2)));
        return leads;
    }
};

inline GeneratorSet full_basis(const ModelShape& shape) {
    GeneratorSet gs;
    gs.shape = shape;
    gs.linear1 = build_linrel1(shape);
    gs.linear2 = build_linrel2(shape);
    gs.matrixA = build_matrix_A(shape);
    gs.minors = build_minors(gs.matrixA);
    const std::size_t k = static_cast<std::size_t>(shape.m - 1) * (shape.m - 1);
    const std::size_t expect_minors =
        (shape.l * (shape.l - 1) / 2) * (k * (k - 1) / 2);
    if (gs.minors.size() != expect_minors)
        throw FormulaMismatchError("full_basis: minor count violated");
    return gs;
}

// Every generator must be sent to the zero polynomial by the symbolic
// parametrization (exact, in all free parameters).
inline bool verify_vanishing(const ModelShape& shape) {
    auto phi = symbolic_parametrize(shape);
    std::unordered_map<std::uint64_t, Polynomial> subs;
    const std::size_t n = shape.num_states();
    for (std::size_t idx = 0; idx < n; ++idx)
        subs.emplace(state_var(state_of_index(shape, idx)).code, phi[idx]);
    GeneratorSet gs = full_basis(shape);
    for (const auto& g : gs.all())
        if (!substitute(g, subs).is_zero()) return false;
    return true;
}

// (a) computed leading terms match the designated ones, and (b) every
// S-polynomial reduces to zero. Below (3,3) the check runs unpruned; larger
// shapes skip coprime-lead pairs (Buchberger's first criterion).
inline bool verify_groebner(const ModelShape& shape) {
    GeneratorSet gs = full_basis(shape);
    auto basis = gs.all();
    auto designated = gs.designated_leads();
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (!(leading_monomial(basis[i], gs.order) == designated[i])) return false;
    const bool prune = !(shape.l <= 3 && shape.m <= 3);
    return buchberger_check(basis, gs.order, prune);
}

// Projective dimension of the linear span: N - rank(linear system).
inline std::size_t span_dimension(const ModelShape& shape) {
    GeneratorSet gs = full_basis(shape);
    const std::size_t n = shape.num_states();
    MatR coeff;
    auto add_rows = [&](const std::vector<Polynomial>& polys) {
        for (const auto& f : polys) {
            VecR row(n, 0);
            for (const auto& [mono, c] : f.terms)
                row[index_of_state(shape, state_digits(mono.factors[0].first))] = c;
            coeff.push_back(std::move(row));
        }
    };
    add_rows(gs.linear1);
    add_rows(gs.linear2);
    const std::size_t dim = n - 1 - exact_rank(coeff);
    const std::size_t expected = static_cast<std::size_t>(
        (shape.m - 1) * (shape.l * shape.m - shape.l + 1));
    if (dim != expected) throw FormulaMismatchError("span_dimension: formula violated");
    return dim;
}

// (projective dimension, degree) of the variety, from the Hilbert series of
// the initial monomial ideal (leading variables plus diagonal products).
inline std::pair<std::size_t, Int> variety_dim_degree(const ModelShape& shape) {
    GeneratorSet gs = full_basis(shape);
    std::vector<Monomial> init = gs.designated_leads();
    auto summary = hilbert_dim_degree(init, shape.num_states());
    const long proj_dim = summary.krull_dim - 1;
    const long expected_dim = (shape.m - 1) * shape.m + shape.l - 1;
    const Int expected_degree = binomial(
        static_cast<unsigned>(shape.l + (shape.m - 1) * (shape.m - 1) - 2),
        static_cast<unsigned>(shape.l - 1));
    if (proj_dim != expected_dim)
        throw FormulaMismatchError("variety_dim_degree: dimension formula violated");
    if (summary.degree != expected_degree)
        throw FormulaMismatchError("variety_dim_degree: degree formula violated");
    return {static_cast<std::size_t>(proj_dim), summary.degree};
}

}  // namespace mtd
