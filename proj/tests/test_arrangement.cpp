#include <catch2/catch_amalgamated.hpp>

#include "mtd/arrangement.hpp"

using namespace mtd;

namespace {

Arrangement make(int dim, std::vector<std::pair<VecR, Rational>> planes) {
    Arrangement arr;
    arr.dim = dim;
    for (auto& [n, o] : planes) {
        Hyperplane h{n, o, ""};
        arr_detail::canonicalize(h);
        arr.hyperplanes.push_back(h);
    }
    return arr;
}

}  // namespace

TEST_CASE("characteristic polynomial: trivial arrangements") {
    SECTION("empty arrangement in R^d") {
        Arrangement arr;
        arr.dim = 3;
        REQUIRE(characteristic_polynomial(arr) == IntPoly({Int(0), Int(0), Int(0), Int(1)}));
    }
    SECTION("single hyperplane in R^2") {
        auto arr = make(2, {{{rat(1), rat(0)}, rat(0)}});
        REQUIRE(characteristic_polynomial(arr) == IntPoly({Int(0), Int(-1), Int(1)}));
    }
    SECTION("2x2 grid of four lines") {
        auto arr = make(2, {{{rat(1), rat(0)}, rat(0)},
                            {{rat(1), rat(0)}, rat(1, 2)},
                            {{rat(0), rat(1)}, rat(0)},
                            {{rat(0), rat(1)}, rat(1, 2)}});
        auto chi = characteristic_polynomial(arr);
        REQUIRE(chi == IntPoly({Int(4), Int(-4), Int(1)}));
        REQUIRE(zaslavsky_regions(chi, 2) == 9);
        REQUIRE(zaslavsky_bounded(chi, 2) == 1);
    }
}

TEST_CASE("build_arrangement: dedup count is 2^(l+1)") {
    for (int l = 1; l <= 4; ++l) {
        auto arr = build_arrangement(l);
        REQUIRE(arr.hyperplanes.size() == (std::size_t(1) << (l + 1)));
        REQUIRE(arr.dim == l + 1);
    }
}

TEST_CASE("l = 1 arrangement is the 2x2 grid in the chart") {
    auto arr = build_arrangement(1);
    auto chi = characteristic_polynomial(arr);
    REQUIRE(chi == IntPoly({Int(4), Int(-4), Int(1)}));
    REQUIRE(bounded_regions(arr) == 1);
}

TEST_CASE("l = 2: eight planes, nine bounded regions, direct enumerator agrees") {
    auto arr = build_arrangement(2);
    auto chi = characteristic_polynomial(arr);
    auto direct = count_cells_direct(arr);
    REQUIRE(zaslavsky_bounded(chi, arr.dim) == 9);
    REQUIRE(direct.bounded == 9);
    REQUIRE(direct.regions == zaslavsky_regions(chi, arr.dim));
    REQUIRE(bounded_regions(arr) == 9);
}

TEST_CASE("ml_degree table: 1, 9, 209") {
    REQUIRE(ml_degree(1) == 1);
    REQUIRE(ml_degree(2) == 9);
    REQUIRE(ml_degree(3) == 209);
}

TEST_CASE("deletion-restriction recurrence on random hyperplanes") {
    for (int l = 1; l <= 3; ++l) {
        auto arr = build_arrangement(l);
        for (std::size_t idx : {std::size_t(0), arr.hyperplanes.size() / 2}) {
            auto chi = characteristic_polynomial(arr);
            auto chi_del = characteristic_polynomial(delete_hyperplane(arr, idx));
            auto chi_res = characteristic_polynomial(restrict_to(arr, idx));
            IntPoly rhs(chi.size(), Int(0));
            for (std::size_t i = 0; i < chi_del.size(); ++i) rhs[i] += chi_del[i];
            for (std::size_t i = 0; i < chi_res.size(); ++i) rhs[i] -= chi_res[i];
            hilbert_detail::trim(rhs);
            IntPoly lhs = chi;
            hilbert_detail::trim(lhs);
            REQUIRE(lhs == rhs);
        }
    }
}

TEST_CASE("chart invariance of the bounded-region count") {
    // an alternative chart: permute the kernel basis and mix directions
    for (int l = 1; l <= 3; ++l) {
        AffineChart chart = affine_chart(l);
        AffineChart alt = chart;
        std::reverse(alt.basis.begin(), alt.basis.end());
        for (std::size_t w = 0; w < alt.basis[0].size(); ++w) alt.basis[0][w] += alt.basis[1][w];
        auto a1 = build_arrangement(l, chart);
        auto a2 = build_arrangement(l, alt);
        REQUIRE(bounded_regions(a1) == bounded_regions(a2));
        REQUIRE(zaslavsky_regions(characteristic_polynomial(a1), a1.dim) ==
                zaslavsky_regions(characteristic_polynomial(a2), a2.dim));
    }
}

TEST_CASE("region count identity via Zaslavsky matches the enumerator, l <= 2") {
    for (int l = 1; l <= 2; ++l) {
        auto arr = build_arrangement(l);
        auto chi = characteristic_polynomial(arr);
        auto direct = count_cells_direct(arr);
        REQUIRE(direct.regions == zaslavsky_regions(chi, arr.dim));
        REQUIRE(direct.bounded == zaslavsky_bounded(chi, arr.dim));
    }
}

TEST_CASE("fourier-motzkin feasibility") {
    // x > 0, y > 0, x + y < 1 is feasible; adding x + y > 2 is not
    std::vector<LinIneq> sys{{{rat(-1), rat(0)}, rat(0), true},
                             {{rat(0), rat(-1)}, rat(0), true},
                             {{rat(1), rat(1)}, rat(1), true}};
    REQUIRE(fm_feasible(sys, 2));
    sys.push_back({{rat(-1), rat(-1)}, rat(-2), true});
    REQUIRE_FALSE(fm_feasible(sys, 2));
    // recession cone of the open unit square is trivial; of a half-plane not
    std::vector<LinIneq> cone_box{{{rat(1), rat(0)}, rat(0), false},
                                  {{rat(-1), rat(0)}, rat(0), false},
                                  {{rat(0), rat(1)}, rat(0), false},
                                  {{rat(0), rat(-1)}, rat(0), false}};
    REQUIRE(cone_is_trivial(cone_box, 2));
    std::vector<LinIneq> cone_half{{{rat(1), rat(0)}, rat(0), false}};
    REQUIRE_FALSE(cone_is_trivial(cone_half, 2));
}
