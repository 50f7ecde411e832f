#pragma once

// ML degree of the binary model as the number of bounded regions of the
// restricted coordinate-hyperplane arrangement (Varchenko). The count runs
// through the intersection poset: flats by exact rank computations, Moebius
// function by recursion over the poset, characteristic polynomial, and
// Zaslavsky's theorem. In dimension <= 3 an independent sign-pattern cell
// enumerator must agree.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtd/binary_geom.hpp"
#include "mtd/hilbert.hpp"
#include "mtd/linalg.hpp"
#include "mtd/polyhedra.hpp"

namespace mtd {

struct Hyperplane {
    VecR normal;        // integer primitive, first nonzero positive
    Rational offset;    // normal . x = offset
    std::string provenance;  // state string w for {p_w = 0}, if applicable
};

struct Arrangement {
    int dim = 0;
    std::vector<Hyperplane> hyperplanes;
};

namespace arr_detail {

inline void canonicalize(Hyperplane& h) {
    Int den_lcm = 1;
    for (const auto& x : h.normal)
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), h.offset.get_den_mpz_t());
    Int content = 0;
    for (auto& x : h.normal) {
        x *= Rational(den_lcm);
        x.canonicalize();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_num_mpz_t());
    }
    h.offset *= Rational(den_lcm);
    h.offset.canonicalize();
    if (content == 0) throw Error("canonicalize: zero normal");
    int sign = 0;
    for (const auto& x : h.normal)
        if (x != 0) {
            sign = x > 0 ? 1 : -1;
            break;
        }
    Rational scale = Rational(content) * sign;
    for (auto& x : h.normal) {
        x /= scale;
        x.canonicalize();
    }
    h.offset /= scale;
    h.offset.canonicalize();
}

inline std::string key(const Hyperplane& h) {
    std::string k;
    for (const auto& x : h.normal) k += x.get_str() + ",";
    k += ";" + h.offset.get_str();
    return k;
}

}  // namespace arr_detail

// Restrictions of the coordinate hyperplanes {p_w = 0} to the affine chart of
// the binary model. For every l this yields 2^{l+1} distinct hyperplanes.
inline Arrangement build_arrangement(int l, const AffineChart& chart) {
    const ModelShape shape(l, 2);
    const std::size_t n = shape.num_states();
    Arrangement arr;
    arr.dim = static_cast<int>(chart.dim());
    std::map<std::string, std::size_t> seen;
    for (std::size_t w = 0; w < n; ++w) {
        Hyperplane h;
        h.normal.resize(chart.dim());
        bool zero = true;
        for (std::size_t k = 0; k < chart.dim(); ++k) {
            h.normal[k] = chart.basis[k][w];
            if (h.normal[k] != 0) zero = false;
        }
        if (zero) continue;  // coordinate constant on the chart
        h.offset = -chart.origin[w];
        h.provenance = state_string(state_of_index(shape, w));
        arr_detail::canonicalize(h);
        auto [it, fresh] = seen.try_emplace(arr_detail::key(h), arr.hyperplanes.size());
        if (fresh) arr.hyperplanes.push_back(std::move(h));
    }
    return arr;
}

inline Arrangement build_arrangement(int l) { return build_arrangement(l, affine_chart(l)); }

namespace arr_detail {

struct Flat {
    std::uint64_t mask = 0;  // hyperplanes containing the flat
    MatR eqs;                // RREF of [normal | offset] rows
    std::vector<std::size_t> pivots;
    int codim = 0;
};

// All nonempty intersections, grouped by codimension (level k = codim k).
inline std::vector<std::vector<Flat>> enumerate_flats(const Arrangement& arr) {
    if (arr.hyperplanes.size() > 64) throw Error("enumerate_flats: > 64 hyperplanes");
    const std::size_t d = static_cast<std::size_t>(arr.dim);
    std::vector<std::vector<Flat>> levels(1);
    levels[0].push_back(Flat{});  // ambient space

    auto row_of = [&](const Hyperplane& h) {
        VecR row = h.normal;
        row.push_back(h.offset);
        return row;
    };

    auto closure_mask = [&](const Flat& f) {
        std::uint64_t mask = 0;
        for (std::size_t hi = 0; hi < arr.hyperplanes.size(); ++hi)
            if (in_rowspace(f.eqs, f.pivots, row_of(arr.hyperplanes[hi])))
                mask |= std::uint64_t(1) << hi;
        return mask;
    };

    for (std::size_t level = 0; !levels[level].empty(); ++level) {
        std::map<std::string, bool> seen;
        std::vector<Flat> next;
        for (const auto& f : levels[level]) {
            for (std::size_t hi = 0; hi < arr.hyperplanes.size(); ++hi) {
                if ((f.mask >> hi) & 1) continue;
                MatR eqs = f.eqs;
                eqs.push_back(row_of(arr.hyperplanes[hi]));
                auto pivots = rref(eqs);
                if (!pivots.empty() && pivots.back() == d) continue;  // empty intersection
                if (eqs.size() != f.eqs.size() + 1) continue;         // no drop expected
                std::string key;
                for (const auto& row : eqs)
                    for (const auto& x : row) key += x.get_str() + ",";
                if (seen.try_emplace(std::move(key), true).second) {
                    Flat nf;
                    nf.eqs = std::move(eqs);
                    nf.pivots = std::move(pivots);
                    nf.codim = static_cast<int>(level) + 1;
                    nf.mask = closure_mask(nf);
                    next.push_back(std::move(nf));
                }
            }
        }
        levels.push_back(std::move(next));
        if (level + 1 == d) break;  // points reached
    }
    while (!levels.empty() && levels.back().empty()) levels.pop_back();
    return levels;
}

}  // namespace arr_detail

// chi(t) = sum over flats of mu(flat) t^{dim flat}. Coefficients returned
// dense, index = power of t.
inline IntPoly characteristic_polynomial(const Arrangement& arr) {
    auto levels = arr_detail::enumerate_flats(arr);
    // mu by level: mu(ambient) = 1; mu(F) = -sum over proper superset flats.
    std::vector<std::vector<Int>> mu(levels.size());
    mu[0] = {Int(1)};
    for (std::size_t level = 1; level < levels.size(); ++level) {
        mu[level].resize(levels[level].size());
        for (std::size_t i = 0; i < levels[level].size(); ++i) {
            const std::uint64_t m = levels[level][i].mask;
            Int s = 1;  // ambient
            for (std::size_t lo = 1; lo < level; ++lo)
                for (std::size_t g = 0; g < levels[lo].size(); ++g)
                    if ((levels[lo][g].mask & ~m) == 0) s += mu[lo][g];
            mu[level][i] = -s;
        }
    }
    IntPoly chi(static_cast<std::size_t>(arr.dim) + 1, Int(0));
    for (std::size_t level = 0; level < levels.size(); ++level) {
        const std::size_t dim = static_cast<std::size_t>(arr.dim) - level;
        for (std::size_t i = 0; i < levels[level].size(); ++i) chi[dim] += mu[level][i];
    }
    return chi;
}

inline Int eval_intpoly(const IntPoly& p, long x) {
    Int acc = 0;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return acc;
}

// Region counts via Zaslavsky: r(A) = (-1)^d chi(-1), b(A) = (-1)^d chi(1).
inline unsigned long zaslavsky_regions(const IntPoly& chi, int dim) {
    Int v = eval_intpoly(chi, -1);
    if (dim % 2) v = -v;
    return static_cast<unsigned long>(v.get_ui());
}

inline unsigned long zaslavsky_bounded(const IntPoly& chi, int dim) {
    Int v = eval_intpoly(chi, 1);
    if (dim % 2) v = -v;
    if (v < 0) throw Error("zaslavsky_bounded: negative count");
    return static_cast<unsigned long>(v.get_ui());
}

struct CellCounts {
    unsigned long regions = 0;
    unsigned long bounded = 0;
};

// Independent cross-check: enumerate sign patterns per parallel family and
// decide each candidate cell by exact feasibility; bounded cells are the
// feasible ones with trivial recession cone.
inline CellCounts count_cells_direct(const Arrangement& arr) {
    const std::size_t d = static_cast<std::size_t>(arr.dim);
    // Group into parallel families.
    std::map<std::string, std::vector<std::size_t>> families;
    for (std::size_t i = 0; i < arr.hyperplanes.size(); ++i) {
        std::string key;
        for (const auto& x : arr.hyperplanes[i].normal) key += x.get_str() + ",";
        families[key].push_back(i);
    }
    struct Family {
        VecR normal;
        std::vector<Rational> levels;  // sorted ascending
    };
    std::vector<Family> fams;
    for (auto& [key, idxs] : families) {
        Family f;
        f.normal = arr.hyperplanes[idxs[0]].normal;
        for (auto i : idxs) f.levels.push_back(arr.hyperplanes[i].offset);
        std::sort(f.levels.begin(), f.levels.end());
        f.levels.erase(std::unique(f.levels.begin(), f.levels.end()), f.levels.end());
        fams.push_back(std::move(f));
    }
    std::vector<std::size_t> choice(fams.size(), 0);
    CellCounts counts;
    while (true) {
        std::vector<LinIneq> sys;
        std::vector<LinIneq> cone;
        for (std::size_t fi = 0; fi < fams.size(); ++fi) {
            const auto& f = fams[fi];
            const std::size_t c = choice[fi];
            auto add = [&](const VecR& a, const Rational& b, bool strict, bool homogeneous) {
                LinIneq li{a, b, strict};
                sys.push_back(li);
                LinIneq hc{a, Rational(0), false};
                if (homogeneous) cone.push_back(hc);
            };
            VecR neg(f.normal.size());
            for (std::size_t k = 0; k < neg.size(); ++k) neg[k] = -f.normal[k];
            if (c == 0) {
                add(f.normal, f.levels[0], true, true);  // n.x < level_0, cone: n.d <= 0
            } else if (c == f.levels.size()) {
                add(neg, -f.levels.back(), true, true);  // n.x > last, cone: n.d >= 0
            } else {
                add(neg, -f.levels[c - 1], true, false);
                add(f.normal, f.levels[c], true, false);
                cone.push_back(LinIneq{f.normal, Rational(0), false});
                cone.push_back(LinIneq{neg, Rational(0), false});
            }
        }
        if (fm_feasible(sys, d)) {
            ++counts.regions;
            if (cone_is_trivial(cone, d)) ++counts.bounded;
        }
        std::size_t fi = 0;
        while (fi < fams.size()) {
            if (++choice[fi] <= fams[fi].levels.size()) break;
            choice[fi] = 0;
            ++fi;
        }
        if (fi == fams.size()) break;
    }
    return counts;
}

// Bounded regions, cross-checked against the direct enumerator in dim <= 3.
// Requires an essential arrangement (b(A) = (-1)^rank chi(1) needs rank = dim).
inline unsigned long bounded_regions(const Arrangement& arr) {
    MatR normals;
    for (const auto& h : arr.hyperplanes) normals.push_back(h.normal);
    if (arr.hyperplanes.empty() || exact_rank(normals) != static_cast<std::size_t>(arr.dim))
        throw Error("bounded_regions: arrangement is not essential");
    IntPoly chi = characteristic_polynomial(arr);
    unsigned long bounded = zaslavsky_bounded(chi, arr.dim);
    if (arr.dim <= 3) {
        CellCounts direct = count_cells_direct(arr);
        if (direct.bounded != bounded ||
            direct.regions != zaslavsky_regions(chi, arr.dim))
            throw OracleMismatchError("bounded_regions: enumerator disagrees with Zaslavsky");
    }
    return bounded;
}

inline unsigned long ml_degree(int l) { return bounded_regions(build_arrangement(l)); }

// Count table for 1..lmax, as reported by the CLI.
inline std::vector<std::pair<int, unsigned long>> ml_degree_table(int lmax) {
    std::vector<std::pair<int, unsigned long>> table;
    for (int l = 1; l <= lmax; ++l) table.emplace_back(l, ml_degree(l));
    return table;
}

// Deletion and restriction, for the chi(t) recurrence checks.
inline Arrangement delete_hyperplane(const Arrangement& arr, std::size_t idx) {
    Arrangement out;
    out.dim = arr.dim;
    for (std::size_t i = 0; i < arr.hyperplanes.size(); ++i)
        if (i != idx) out.hyperplanes.push_back(arr.hyperplanes[i]);
    return out;
}

inline Arrangement restrict_to(const Arrangement& arr, std::size_t idx) {
    const auto& h = arr.hyperplanes[idx];
    const std::size_t d = arr.hyperplanes[idx].normal.size();
    // Affine parametrization of h: x0 + span(kernel of normal).
    MatR sys{h.normal};
    VecR x0 = *solve_linear(sys, VecR{h.offset});
    auto kern = kernel_basis(MatR{h.normal}, d);
    Arrangement out;
    out.dim = arr.dim - 1;
    std::map<std::string, bool> seen;
    for (std::size_t i = 0; i < arr.hyperplanes.size(); ++i) {
        if (i == idx) continue;
        const auto& g = arr.hyperplanes[i];
        Hyperplane r;
        r.normal.resize(kern.size());
        bool zero = true;
        for (std::size_t k = 0; k < kern.size(); ++k) {
            Rational acc = 0;
            for (std::size_t j = 0; j < d; ++j) acc += g.normal[j] * kern[k][j];
            r.normal[k] = acc;
            if (acc != 0) zero = false;
        }
        if (zero) continue;  // parallel to h or containing it
        Rational shift = 0;
        for (std::size_t j = 0; j < d; ++j) shift += g.normal[j] * x0[j];
        r.offset = g.offset - shift;
        r.provenance = g.provenance;
        arr_detail::canonicalize(r);
        if (seen.try_emplace(arr_detail::key(r), true).second)
            out.hyperplanes.push_back(std::move(r));
    }
    return out;
}

}  // namespace mtd
