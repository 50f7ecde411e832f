#include <catch2/catch_amalgamated.hpp>

#include "mtd/binary_geom.hpp"

using namespace mtd;

TEST_CASE("linear constraints: l = 1 plane") {
    auto cons = linear_constraints(1);
    REQUIRE(cons.size() == 2);  // p_11 + p_12 = 1/2, p_21 + p_22 = 1/2
    ModelShape shape(1, 2);
    // together with nonnegativity these cut the plane p11+p12 = p21+p22 on the simplex
    auto chart = affine_chart(1);
    REQUIRE(chart.dim() == 2);
}

TEST_CASE("constraints annihilate every model point") {
    for (int l = 1; l <= 3; ++l) {
        ModelShape shape(l, 2);
        auto cons = linear_constraints(l);
        for (std::uint64_t s = 0; s < 5; ++s) {
            auto p = parametrize(shape, sample_params(shape, 300 + s));
            std::unordered_map<std::uint64_t, Rational> point;
            for (std::size_t w = 0; w < p.values.size(); ++w)
                point[state_var(state_of_index(shape, w)).code] = p.values[w];
            for (const auto& f : cons) {
                // constants in f live on the empty monomial
                Rational acc = 0;
                for (const auto& [mono, c] : f.terms) {
                    if (mono.is_one())
                        acc += c;
                    else
                        acc += c * point.at(mono.factors[0].first.code);
                }
                REQUIRE(acc == 0);
            }
        }
    }
}

TEST_CASE("solution space dimension is l + 1") {
    for (int l = 1; l <= 6; ++l) REQUIRE(affine_chart(l).dim() == static_cast<std::size_t>(l + 1));
}

TEST_CASE("chart round trips exactly on cross-polytope vertices") {
    for (int l = 1; l <= 4; ++l) {
        auto chart = affine_chart(l);
        auto cp = cross_polytope(l);
        for (const auto& v : cp.vertices()) {
            auto x = chart.to_chart(v);
            REQUIRE(x.has_value());
            REQUIRE(chart.to_ambient(*x) == v);
        }
    }
}

TEST_CASE("cross-polytope vertex sets match the displayed small cases") {
    SECTION("l = 1: the four displayed matrices") {
        auto cp = cross_polytope(1);
        const Rational h = rat(1, 2);
        REQUIRE(cp.e(0, 1) == VecR({h, 0, 0, h}));
        REQUIRE(cp.e(0, 2) == VecR({0, h, h, 0}));
        REQUIRE(cp.u1 == VecR({h, 0, h, 0}));
        REQUIRE(cp.u2 == VecR({0, h, 0, h}));
    }
    SECTION("l = 2: octahedron with the displayed common edge") {
        auto cp = cross_polytope(2);
        const Rational q = rat(1, 4);
        VecR u1(8, 0), u2(8, 0);
        for (int i = 0; i < 4; ++i) {
            u1[2 * i] = q;   // states ending in 1
            u2[2 * i + 1] = q;
        }
        REQUIRE(cp.u1 == u1);
        REQUIRE(cp.u2 == u2);
        REQUIRE(cp.vertices().size() == 6);
    }
}

TEST_CASE("midpoint and central symmetry identities, l <= 6") {
    for (int l = 1; l <= 6; ++l) {
        auto cp = cross_polytope(l);
        const Rational unif = pow2(-(l + 1));
        const std::size_t n = cp.u1.size();
        for (int r = 0; r < l; ++r)
            for (std::size_t w = 0; w < n; ++w)
                REQUIRE(cp.e(r, 1)[w] + cp.e(r, 2)[w] == 2 * unif);
        for (std::size_t w = 0; w < n; ++w) REQUIRE(cp.u1[w] + cp.u2[w] == 2 * unif);
    }
}

TEST_CASE("model simplices: vertices, affine independence, intersection = S") {
    for (int l = 1; l <= 4; ++l) {
        auto [t1, t2] = model_simplices(l);
        REQUIRE(t1.vertices.size() == static_cast<std::size_t>(l + 2));
        auto chart = affine_chart(l);
        auto chart_of = [&](const VecR& v) { return *chart.to_chart(v); };
        for (const auto& s : {t1, t2}) {
            MatR edges;
            auto base = chart_of(s.vertices[0]);
            for (std::size_t i = 1; i < s.vertices.size(); ++i) {
                auto x = chart_of(s.vertices[i]);
                VecR e(x.size());
                for (std::size_t k = 0; k < x.size(); ++k) e[k] = x[k] - base[k];
                edges.push_back(std::move(e));
            }
            REQUIRE(exact_rank(edges) == static_cast<std::size_t>(l + 1));
        }
        // intersection of affine hulls with both nonnegativity systems == S:
        // checked on a dense segment sample plus interior points of each simplex
        ModelShape shape(l, 2);
        for (int k = 0; k <= 4; ++k) {
            Rational alpha = rat(k, 4);
            ProbTensor p{shape, VecR(shape.num_states())};
            for (std::size_t w = 0; w < p.values.size(); ++w)
                p.values[w] = alpha * t1.vertices[0][w] + (1 - alpha) * t1.vertices[1][w];
            auto res = membership(l, p);
            REQUIRE(res.kind == MemberKind::OnDiagonalS);
        }
    }
}

TEST_CASE("vertex images of the parameter cube") {
    for (int l = 1; l <= 3; ++l) {
        ModelShape shape(l, 2);
        auto cp = cross_polytope(l);
        // (a, b) = (1, 0) with lambda = e_{r+1} maps to E_{r,1}; (0, 1) to E_{r,2}
        for (int r = 0; r < l; ++r) {
            MTDParams theta;
            theta.Q = {{rat(1), rat(0)}, {rat(0), rat(1)}};
            theta.lambda.assign(l, rat(0));
            theta.lambda[r] = 1;
            REQUIRE(parametrize(shape, theta).values == cp.e(r, 1));
            theta.Q = {{rat(0), rat(1)}, {rat(1), rat(0)}};
            REQUIRE(parametrize(shape, theta).values == cp.e(r, 2));
        }
        // (1,1) contracts to u1 and (0,0) to u2, any lambda
        MTDParams ones;
        ones.Q = {{rat(1), rat(0)}, {rat(1), rat(0)}};
        ones.lambda.assign(l, rat(1, l));
        REQUIRE(parametrize(shape, ones).values == cp.u1);
        ones.Q = {{rat(0), rat(1)}, {rat(0), rat(1)}};
        REQUIRE(parametrize(shape, ones).values == cp.u2);
    }
}

TEST_CASE("membership classification") {
    const int l = 2;
    ModelShape shape(l, 2);
    SECTION("uniform distribution is the midpoint of S") {
        ProbTensor uni{shape, VecR(shape.num_states(), pow2(-(l + 1)))};
        auto res = membership(l, uni);
        REQUIRE(res.kind == MemberKind::OnDiagonalS);
        REQUIRE(res.barycentric[0] == rat(1, 2));
    }
    SECTION("sign of a - b selects the simplex") {
        Rng rng(5);
        for (int t = 0; t < 100; ++t) {
            auto theta = sample_params(shape, 600 + t);
            if (theta.Q[0][0] == theta.Q[1][0]) continue;
            auto res = membership(l, parametrize(shape, theta));
            if (theta.Q[0][0] > theta.Q[1][0])
                REQUIRE(res.kind == MemberKind::InSimplex1);
            else
                REQUIRE(res.kind == MemberKind::InSimplex2);
        }
    }
    SECTION("off-span perturbation is outside the closure") {
        auto cp = cross_polytope(l);
        ProbTensor p{shape, VecR(shape.num_states())};
        for (std::size_t w = 0; w < p.values.size(); ++w)
            p.values[w] = (cp.e(0, 1)[w] + cp.e(0, 2)[w] + cp.u1[w]) / 3;
        p.values[0] += rat(1, 1000);
        p.values[1] -= rat(1, 1000);
        REQUIRE(membership(l, p).kind == MemberKind::OutsideClosure);
    }
    SECTION("negative coordinates are outside the closure") {
        ProbTensor p{shape, VecR(shape.num_states(), pow2(-(l + 1)))};
        p.values[0] = -rat(1, 100);
        REQUIRE(membership(l, p).kind == MemberKind::OutsideClosure);
    }
    SECTION("closure-only points exist (octahedron minus two tetrahedra)") {
        auto cp = cross_polytope(l);
        // centroid of {E01, E12, u1}: inside P but in neither model simplex
        ProbTensor p{shape, VecR(shape.num_states())};
        for (std::size_t w = 0; w < p.values.size(); ++w)
            p.values[w] = (cp.e(0, 1)[w] + cp.e(1, 2)[w] + cp.u1[w]) / 3;
        REQUIRE(membership(l, p).kind == MemberKind::ClosureOnly);
    }
    SECTION("real-mode tolerance classification agrees") {
        auto theta = sample_params(shape, 1234);
        auto p = parametrize(shape, theta);
        auto exact = membership(l, p);
        auto real = membership(l, to_real(p), 1e-9);
        REQUIRE(exact.kind == real.kind);
    }
}

TEST_CASE("volume ratios and equal triangulation volumes") {
    for (int l = 1; l <= 6; ++l) {
        REQUIRE(volume_ratio(l) == pow2(-(l - 1)));
        auto vols = triangulation_volumes(l);
        REQUIRE(vols.size() == (std::size_t(1) << l));
        for (const auto& v : vols) REQUIRE(v == vols[0]);
        REQUIRE(vols[0] > 0);
    }
}
