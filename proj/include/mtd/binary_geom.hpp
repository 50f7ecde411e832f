#pragma once

// Exact geometry of the binary model: the linear constraints cutting out the
// closure, the cross-polytope P they carve from the simplex, the two model
// simplices glued along the diagonal S, membership classification, and exact
// volume ratios in a fixed affine chart.

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "mtd/linalg.hpp"
#include "mtd/model.hpp"
#include "mtd/polynomial.hpp"

namespace mtd {

namespace geom_detail {

inline ModelShape binary_shape(int l) { return ModelShape(l, 2); }

// Index of the binary state with prefix bits w (0-based digits in {1,2})
// and last digit `last`.
inline std::size_t bin_index(int l, const std::vector<int>& prefix, int last) {
    std::size_t idx = 0;
    for (int d : prefix) idx = idx * 2 + static_cast<std::size_t>(d - 1);
    return idx * 2 + static_cast<std::size_t>(last - 1);
}

inline std::vector<int> prefix_of(int l, std::size_t prefix_idx) {
    std::vector<int> digits(l);
    for (int k = l - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(prefix_idx % 2) + 1;
        prefix_idx /= 2;
    }
    return digits;
}

}  // namespace geom_detail

// The defining relations of the closure on the simplex:
//   p_{w2} + p_{w1} - 2^{-l}           (one per prefix w), and
//   the 2x2 exchange relations on last-digit-1 coordinates, canonicalized
//   with i_r = i_s = 1 and deduplicated.
inline std::vector<Polynomial> linear_constraints(int l) {
    if (l < 1) throw ShapeError("linear_constraints: l >= 1");
    const ModelShape shape = geom_detail::binary_shape(l);
    std::vector<Polynomial> out;
    const std::size_t np = shape.num_prefixes();
    for (std::size_t pr = 0; pr < np; ++pr) {
        auto digits = geom_detail::prefix_of(l, pr);
        digits.push_back(1);
        Polynomial f = poly_var(state_var(digits));
        digits[l] = 2;
        f += poly_var(state_var(digits));
        f -= poly_const(pow2(-l));
        out.push_back(std::move(f));
    }
    for (int r = 0; r < l; ++r)
        for (int s = r + 1; s < l; ++s) {
            // assignments of the other prefix positions
            std::vector<int> rest_pos;
            for (int k = 0; k < l; ++k)
                if (k != r && k != s) rest_pos.push_back(k);
            const std::size_t combos = std::size_t(1) << rest_pos.size();
            for (std::size_t mask = 0; mask < combos; ++mask) {
                std::vector<int> digits(l + 1, 1);
                for (std::size_t t = 0; t < rest_pos.size(); ++t)
                    digits[rest_pos[t]] = ((mask >> t) & 1) ? 2 : 1;
                digits[l] = 1;
                auto with = [&](int dr, int ds) {
                    auto d = digits;
                    d[r] = dr;
                    d[s] = ds;
                    return poly_var(state_var(d));
                };
                out.push_back(with(1, 1) + with(2, 2) - with(1, 2) - with(2, 1));
            }
        }
    return out;
}

struct AffineChart {
    int l = 1;
    VecR origin;                // uniform distribution
    std::vector<VecR> basis;    // l+1 directions spanning the solution space

    std::size_t ambient_dim() const { return origin.size(); }
    std::size_t dim() const { return basis.size(); }

    VecR to_ambient(const VecR& x) const {
        VecR p = origin;
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (std::size_t w = 0; w < p.size(); ++w) p[w] += x[k] * basis[k][w];
        return p;
    }

    // Exact chart coordinates, or nullopt when p is off the affine span.
    std::optional<VecR> to_chart(const VecR& p) const {
        MatR a(origin.size(), VecR(basis.size(), 0));
        for (std::size_t k = 0; k < basis.size(); ++k)
            for (std::size_t w = 0; w < origin.size(); ++w) a[w][k] = basis[k][w];
        VecR rhs(origin.size());
        for (std::size_t w = 0; w < origin.size(); ++w) rhs[w] = p[w] - origin[w];
        auto x = solve_linear(a, rhs);
        if (!x) return std::nullopt;
        // solve_linear guarantees a solution of the normal system only if
        // consistent; confirm the residual is identically zero.
        VecR back = to_ambient(*x);
        for (std::size_t w = 0; w < p.size(); ++w)
            if (back[w] != p[w]) return std::nullopt;
        return x;
    }
};

// Deterministic chart: origin at the uniform distribution, basis from the
// reduced-echelon kernel of the homogenized constraint system.
inline AffineChart affine_chart(int l) {
    const ModelShape shape = geom_detail::binary_shape(l);
    const std::size_t n = shape.num_states();
    auto constraints = linear_constraints(l);
    MatR hom;
    for (const auto& f : constraints) {
        VecR row(n, 0);
        for (const auto& [mono, c] : f.terms) {
            if (mono.is_one()) continue;  // drop the inhomogeneous part
            row[index_of_state(shape, state_digits(mono.factors[0].first))] = c;
        }
        hom.push_back(std::move(row));
    }
    AffineChart chart;
    chart.l = l;
    chart.origin.assign(n, pow2(-(l + 1)));
    chart.basis = kernel_basis(hom, n);
    if (chart.basis.size() != static_cast<std::size_t>(l + 1))
        throw FormulaMismatchError("affine_chart: solution space dimension != l+1");
    return chart;
}

struct CrossPolytope {
    int l = 1;
    std::vector<VecR> E;  // 2l points, ordered E_{0,1}, E_{0,2}, ..., E_{l-1,2}
    VecR u1, u2;          // apexes; S = [u1, u2]

    const VecR& e(int r, int s) const { return E[2 * r + (s - 1)]; }

    // Stable vertex order for output and tests.
    std::vector<VecR> vertices() const {
        std::vector<VecR> v = E;
        v.push_back(u1);
        v.push_back(u2);
        return v;
    }
};

inline CrossPolytope cross_polytope(int l) {
    if (l < 1) throw ShapeError("cross_polytope: l >= 1");
    const ModelShape shape = geom_detail::binary_shape(l);
    const std::size_t n = shape.num_states();
    const Rational c = pow2(-l);
    CrossPolytope p;
    p.l = l;
    for (int r = 0; r < l; ++r)
        for (int s = 1; s <= 2; ++s) {
            VecR v(n, 0);
            for (std::size_t idx = 0; idx < n; ++idx) {
                auto digits = state_of_index(shape, idx);
                const bool match = digits[r] == s;
                if ((digits[l] == 1 && match) || (digits[l] == 2 && !match)) v[idx] = c;
            }
            p.E.push_back(std::move(v));
        }
    p.u1.assign(n, 0);
    p.u2.assign(n, 0);
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto digits = state_of_index(shape, idx);
        (digits[l] == 1 ? p.u1 : p.u2)[idx] = c;
    }

    // Vertex certificates: each point satisfies the constraints and its
    // active coordinate hyperplanes span the chart dual (exact rank l+1).
    AffineChart chart = affine_chart(l);
    for (const auto& v : p.vertices()) {
        auto x = chart.to_chart(v);
        if (!x) throw FormulaMismatchError("cross_polytope: vertex off the span");
        MatR active;
        for (std::size_t w = 0; w < n; ++w) {
            if (v[w] != 0) continue;
            VecR normal(chart.dim());
            for (std::size_t k = 0; k < chart.dim(); ++k) normal[k] = chart.basis[k][w];
            active.push_back(std::move(normal));
        }
        if (exact_rank(active) != chart.dim())
            throw FormulaMismatchError("cross_polytope: point is not extreme");
    }
    return p;
}

struct ModelSimplex {
    int side = 1;                 // 1 or 2
    std::vector<VecR> vertices;   // u1, u2, E_{0,side}, ..., E_{l-1,side}
};

inline std::pair<ModelSimplex, ModelSimplex> model_simplices(int l) {
    CrossPolytope p = cross_polytope(l);
    std::pair<ModelSimplex, ModelSimplex> out;
    auto build = [&](int side) {
        ModelSimplex s;
        s.side = side;
        s.vertices.push_back(p.u1);
        s.vertices.push_back(p.u2);
        for (int r = 0; r < l; ++r) s.vertices.push_back(p.e(r, side));
        return s;
    };
    out.first = build(1);
    out.second = build(2);
    return out;
}

enum class MemberKind { OutsideClosure, ClosureOnly, InSimplex1, InSimplex2, OnDiagonalS };

template <class S>
struct MembershipResult {
    MemberKind kind = MemberKind::OutsideClosure;
    std::vector<S> barycentric;  // for InSimplex*/OnDiagonalS
};

namespace geom_detail {

// Barycentric coordinates of chart point x in the simplex with given chart
// vertices (square system: l+1 coordinates plus the affine constraint).
inline std::optional<VecR> barycentric_exact(const std::vector<VecR>& verts, const VecR& x) {
    const std::size_t d = x.size();
    MatR a(d + 1, VecR(verts.size(), 0));
    VecR rhs(d + 1, 0);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t v = 0; v < verts.size(); ++v) a[k][v] = verts[v][k];
        rhs[k] = x[k];
    }
    for (std::size_t v = 0; v < verts.size(); ++v) a[d][v] = 1;
    rhs[d] = 1;
    return solve_linear(a, rhs);
}

}  // namespace geom_detail

inline MembershipResult<Rational> membership(int l, const ProbTensor& p) {
    const ModelShape shape = geom_detail::binary_shape(l);
    if (p.values.size() != shape.num_states()) throw ShapeError("membership: tensor size");
    MembershipResult<Rational> res;
    for (const auto& v : p.values)
        if (v < 0) return res;  // OutsideClosure
    AffineChart chart = affine_chart(l);
    auto x = chart.to_chart(p.values);
    if (!x) return res;

    CrossPolytope cp = cross_polytope(l);
    auto chart_of = [&](const VecR& v) { return *chart.to_chart(v); };
    const VecR xu1 = chart_of(cp.u1), xu2 = chart_of(cp.u2);

    // On the diagonal S?
    {
        MatR a(x->size(), VecR(1, 0));
        VecR rhs(x->size());
        bool degenerate = true;
        for (std::size_t k = 0; k < x->size(); ++k) {
            a[k][0] = xu1[k] - xu2[k];
            rhs[k] = (*x)[k] - xu2[k];
            if (a[k][0] != 0) degenerate = false;
        }
        if (!degenerate) {
            if (auto t = solve_linear(a, rhs)) {
                const Rational& alpha = (*t)[0];
                if (alpha >= 0 && alpha <= 1) {
                    res.kind = MemberKind::OnDiagonalS;
                    res.barycentric = {alpha, Rational(1) - alpha};
                    return res;
                }
            }
        }
    }

    auto classify_side = [&](int side) -> std::optional<std::vector<Rational>> {
        std::vector<VecR> verts{xu1, xu2};
        for (int r = 0; r < l; ++r) verts.push_back(chart_of(cp.e(r, side)));
        auto bary = geom_detail::barycentric_exact(verts, *x);
        if (!bary) return std::nullopt;
        for (const auto& b : *bary)
            if (b < 0) return std::nullopt;
        return bary;
    };
    if (auto b = classify_side(1)) {
        res.kind = MemberKind::InSimplex1;
        res.barycentric = *b;
        return res;
    }
    if (auto b = classify_side(2)) {
        res.kind = MemberKind::InSimplex2;
        res.barycentric = *b;
        return res;
    }
    res.kind = MemberKind::ClosureOnly;
    return res;
}

// Real-mode classification with tolerance on constraint residuals and
// barycentric coordinates.
inline MembershipResult<double> membership(int l, const ProbTensorD& p, double tol = 1e-9) {
    const ModelShape shape = geom_detail::binary_shape(l);
    if (p.values.size() != shape.num_states()) throw ShapeError("membership: tensor size");
    MembershipResult<double> res;
    for (double v : p.values)
        if (v < -tol) return res;
    AffineChart chart = affine_chart(l);
    const std::size_t n = chart.ambient_dim(), d = chart.dim();

    // Least-squares chart coordinates via the normal equations, then a
    // residual check against the span.
    std::vector<std::vector<double>> b(d, std::vector<double>(n));
    for (std::size_t k = 0; k < d; ++k)
        for (std::size_t w = 0; w < n; ++w) b[k][w] = to_double(chart.basis[k][w]);
    std::vector<double> diff(n);
    for (std::size_t w = 0; w < n; ++w) diff[w] = p.values[w] - to_double(chart.origin[w]);
    std::vector<std::vector<double>> ata(d, std::vector<double>(d + 1, 0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t w = 0; w < n; ++w) ata[i][j] += b[i][w] * b[j][w];
        for (std::size_t w = 0; w < n; ++w) ata[i][d] += b[i][w] * diff[w];
    }
    // Gaussian elimination with partial pivoting.
    std::vector<double> x(d);
    {
        auto m = ata;
        for (std::size_t col = 0; col < d; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < d; ++r)
                if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
            std::swap(m[piv], m[col]);
            for (std::size_t r = 0; r < d; ++r) {
                if (r == col || m[r][col] == 0) continue;
                double f = m[r][col] / m[col][col];
                for (std::size_t c = col; c <= d; ++c) m[r][c] -= f * m[col][c];
            }
        }
        for (std::size_t k = 0; k < d; ++k) x[k] = m[k][d] / m[k][k];
    }
    double resid = 0;
    for (std::size_t w = 0; w < n; ++w) {
        double back = to_double(chart.origin[w]);
        for (std::size_t k = 0; k < d; ++k) back += x[k] * b[k][w];
        resid = std::max(resid, std::abs(back - p.values[w]));
    }
    if (resid > tol) return res;  // off the span: OutsideClosure

    // Classify via exact rational geometry at a rationalization of x, with
    // tolerance applied to the barycentric coordinates.
    CrossPolytope cp = cross_polytope(l);
    auto chart_of = [&](const VecR& v) { return *chart.to_chart(v); };
    auto bary_of = [&](int side) -> std::optional<std::vector<double>> {
        std::vector<VecR> verts{chart_of(cp.u1), chart_of(cp.u2)};
        for (int r = 0; r < l; ++r) verts.push_back(chart_of(cp.e(r, side)));
        const std::size_t k = verts.size();
        std::vector<std::vector<double>> m(d + 1, std::vector<double>(k + 1, 0));
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t v = 0; v < k; ++v) m[i][v] = to_double(verts[v][i]);
            m[i][k] = x[i];
        }
        for (std::size_t v = 0; v < k; ++v) m[d][v] = 1;
        m[d][k] = 1;
        // least squares on the (d+1) x k system
        std::vector<std::vector<double>> nrm(k, std::vector<double>(k + 1, 0));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j <= k; ++j)
                for (std::size_t r = 0; r <= d; ++r) nrm[i][j] += m[r][i] * m[r][j];
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t piv = col;
            for (std::size_t r = col + 1; r < k; ++r)
                if (std::abs(nrm[r][col]) > std::abs(nrm[piv][col])) piv = r;
            std::swap(nrm[piv], nrm[col]);
            for (std::size_t r = 0; r < k; ++r) {
                if (r == col || nrm[r][col] == 0) continue;
                double f = nrm[r][col] / nrm[col][col];
                for (std::size_t c = col; c <= k; ++c) nrm[r][c] -= f * nrm[col][c];
            }
        }
        std::vector<double> bary(k);
        for (std::size_t i = 0; i < k; ++i) bary[i] = nrm[i][k] / nrm[i][i];
        double rs = 0;
        for (std::size_t r = 0; r <= d; ++r) {
            double acc = -m[r][k];
            for (std::size_t v = 0; v < k; ++v) acc += m[r][v] * bary[v];
            rs = std::max(rs, std::abs(acc));
        }
        if (rs > tol) return std::nullopt;
        for (double bb : bary)
            if (bb < -tol) return std::nullopt;
        return bary;
    };

    auto b1 = bary_of(1), b2 = bary_of(2);
    if (b1 && b2) {
        // in both simplices means on (or numerically at) the diagonal
        res.kind = MemberKind::OnDiagonalS;
        res.barycentric = {(*b1)[0], (*b1)[1]};
        return res;
    }
    if (b1) {
        res.kind = MemberKind::InSimplex1;
        res.barycentric = *b1;
        return res;
    }
    if (b2) {
        res.kind = MemberKind::InSimplex2;
        res.barycentric = *b2;
        return res;
    }
    res.kind = MemberKind::ClosureOnly;
    return res;
}

// Exact (l+1)-volume of a chart simplex, up to the fixed chart scale factor
// (which cancels in every reported ratio).
inline Rational simplex_volume(const std::vector<VecR>& chart_vertices) {
    const std::size_t d = chart_vertices.size() - 1;
    MatR edges(d, VecR(d, 0));
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t k = 0; k < d; ++k)
            edges[i][k] = chart_vertices[i + 1][k] - chart_vertices[0][k];
    Rational det = exact_det(edges);
    if (det < 0) det = -det;
    Int fact = 1;
    for (std::size_t i = 2; i <= d; ++i) fact *= static_cast<long>(i);
    return det / Rational(fact);
}

// Volumes of the 2^l triangulation simplices conv{u1, u2, E_{0,s_0}, ...},
// in the order of the binary expansion of s.
inline std::vector<Rational> triangulation_volumes(int l) {
    AffineChart chart = affine_chart(l);
    CrossPolytope cp = cross_polytope(l);
    auto chart_of = [&](const VecR& v) { return *chart.to_chart(v); };
    std::vector<Rational> vols;
    for (std::size_t mask = 0; mask < (std::size_t(1) << l); ++mask) {
        std::vector<VecR> verts{chart_of(cp.u1), chart_of(cp.u2)};
        for (int r = 0; r < l; ++r) verts.push_back(chart_of(cp.e(r, ((mask >> r) & 1) ? 2 : 1)));
        vols.push_back(simplex_volume(verts));
    }
    return vols;
}

// vol(model) / vol(closure cap simplex) = 1 / 2^{l-1}, computed exactly.
inline Rational volume_ratio(int l) {
    auto vols = triangulation_volumes(l);
    Rational total = 0;
    for (const auto& v : vols) total += v;
    const Rational model = vols.front() + vols.back();  // all-1 and all-2 simplices
    Rational ratio = model / total;
    ratio.canonicalize();
    return ratio;
}

}  // namespace mtd
