#include <catch2/catch_amalgamated.hpp>

#include "mtd/likelihood.hpp"
#include "mtd/repro.hpp"

using namespace mtd;

namespace {

ProbTensorD tensor_of(const ModelShape& shape, const VecR& v) {
    ProbTensorD t;
    t.shape = shape;
    for (const auto& x : v) t.values.push_back(to_double(x));
    return t;
}

double linf(const std::vector<double>& a, const std::vector<double>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_CASE("log likelihood closed forms") {
    ModelShape shape(2, 2);
    CountsTensor u{shape, {5, 3, 0, 2, 1, 4, 7, 2}};
    SECTION("uniform distribution") {
        ProbTensorD p{shape, std::vector<double>(8, 0.125)};
        REQUIRE(log_likelihood(u, p) ==
                Catch::Approx(-static_cast<double>(u.total()) * 3 * std::log(2.0)));
    }
    SECTION("point mass data") {
        CountsTensor one{shape, {0, 0, 9, 0, 0, 0, 0, 0}};
        auto p = to_real(parametrize(shape, sample_params(shape, 8)));
        REQUIRE(log_likelihood(one, p) == Catch::Approx(9 * std::log(p.values[2])));
    }
    SECTION("zero probability at observed state gives -infinity") {
        ProbTensorD p{shape, std::vector<double>(8, 0.125)};
        p.values[0] = 0;
        p.values[1] = 0.25;
        REQUIRE(log_likelihood(u, p) == -std::numeric_limits<double>::infinity());
    }
    SECTION("0 log 0 = 0 convention") {
        CountsTensor z{shape, {0, 8, 0, 2, 3, 1, 0, 6}};
        ProbTensorD p{shape, {0.0, 0.2, 0.0, 0.2, 0.2, 0.1, 0.0, 0.3}};
        REQUIRE(std::isfinite(log_likelihood(z, p)));
    }
}

TEST_CASE("em_step: monotonicity and fixed points") {
    ModelShape shape(2, 2);
    auto u = sample_balanced_counts(shape, 400, 21);
    SECTION("one step never decreases the log likelihood") {
        Rng rng(31);
        for (int t = 0; t < 50; ++t) {
            MTDParamsD theta;
            theta.Q = {rng.simplex_uniform(2), rng.simplex_uniform(2)};
            theta.lambda = rng.simplex_uniform(2);
            double before = log_likelihood(u, parametrize(shape, theta));
            auto next = em_step(shape, u, theta);
            double after = log_likelihood(u, parametrize(shape, next));
            REQUIRE(after >= before - 1e-12);
        }
    }
    SECTION("a self-consistent pure-lag point is a fixed point") {
        // lambda = e_1 and Q = the exact lag-1 row estimates
        auto cand = markov_candidate(u, 1);
        auto params = invert(shape, to_real(cand), 1e-6);
        auto next = em_step(shape, u, params);
        REQUIRE(linf(parametrize(shape, next).values, parametrize(shape, params).values) <
                1e-12);
    }
    SECTION("degenerate denominator raises") {
        MTDParamsD theta;
        theta.Q = {{1.0, 0.0}, {1.0, 0.0}};
        theta.lambda = {1.0, 0.0};
        CountsTensor bad{shape, {0, 1, 0, 0, 0, 0, 0, 0}};  // state 112 has density 0
        REQUIRE_THROWS_AS(em_step(shape, bad, theta), DegenerateDenominatorError);
    }
}

TEST_CASE("em_fit: zero locking and scale invariance") {
    ModelShape shape(2, 2);
    auto u = sample_balanced_counts(shape, 400, 22);
    SECTION("lambda locked at zero stays at zero and yields the lag fit") {
        MTDParamsD theta;
        theta.Q = {{0.6, 0.4}, {0.3, 0.7}};
        theta.lambda = {1.0, 0.0};
        EMOptions opts;
        opts.loglik_tol = 1e-14;
        opts.max_iter = 1000;
        auto fit = em_fit(shape, u, theta, opts);
        REQUIRE(fit.params.lambda[1] == 0.0);
        auto cand = to_real(markov_candidate(u, 1));
        REQUIRE(linf(parametrize(shape, fit.params).values, cand.values) < 1e-12);
    }
    SECTION("doubling the data leaves the fit unchanged") {
        MTDParamsD theta;
        theta.Q = {{0.55, 0.45}, {0.35, 0.65}};
        theta.lambda = {0.5, 0.5};
        EMOptions opts;
        opts.loglik_tol = 1e-13;
        opts.max_iter = 100000;
        auto fit1 = em_fit(shape, u, theta, opts);
        CountsTensor u2 = u;
        for (auto& c : u2.counts) c *= 2;
        auto fit2 = em_fit(shape, u2, theta, opts);
        REQUIRE(linf(parametrize(shape, fit1.params).values,
                     parametrize(shape, fit2.params).values) < 1e-7);
    }
}

TEST_CASE("markov_candidate") {
    ModelShape shape(2, 2);
    SECTION("balanced data reproduces the printed closed forms exactly") {
        auto u = sample_balanced_counts(shape, 400, 23);
        for (int j = 1; j <= 2; ++j) {
            auto cand = markov_candidate(u, j);
            REQUIRE(cand.values == repro_detail::printed_candidate(u, j).values);
        }
    }
    SECTION("data from a deterministic pure-lag model recovers Q exactly") {
        MTDParams det;
        det.Q = {{rat(1), rat(0)}, {rat(0), rat(1)}};
        det.lambda = {rat(0), rat(1)};
        auto u = sample_data(shape, det, 64, true, 9);
        auto cand = markov_candidate(u, 2);
        REQUIRE(cand.values == parametrize(shape, det).values);
    }
    SECTION("candidates lie in the model closure for balanced data") {
        auto u = sample_balanced_counts(shape, 400, 24);
        for (int j = 1; j <= 2; ++j) {
            auto res = membership(shape.l, markov_candidate(u, j));
            REQUIRE(res.kind != MemberKind::OutsideClosure);
            REQUIRE(res.kind != MemberKind::ClosureOnly);
        }
    }
    SECTION("zero marginal raises") {
        CountsTensor u{shape, {0, 0, 0, 0, 1, 2, 3, 4}};  // no observation with i_0 = 1
        REQUIRE_THROWS_AS(markov_candidate(u, 1), ZeroMarginalError);
    }
}

TEST_CASE("maximize_over_simplex") {
    ModelShape shape(2, 2);
    auto [t1, t2] = model_simplices(2);
    auto verts_of = [&](const ModelSimplex& s) {
        std::vector<ProbTensorD> verts;
        for (const auto& v : s.vertices) verts.push_back(tensor_of(shape, v));
        return verts;
    };
    SECTION("data at a vertex drives the weights to that vertex") {
        auto verts = verts_of(t1);
        // vertex 2 = E_{0,1}: counts proportional to its support
        CountsTensor u{shape, {}};
        u.counts.assign(8, 0);
        for (std::size_t w = 0; w < 8; ++w)
            u.counts[w] = static_cast<std::int64_t>(100 * to_double(t1.vertices[2][w]) * 4);
        auto sm = maximize_over_simplex(u, verts, 1e-14);
        REQUIRE(sm.barycentric[2] == Catch::Approx(1.0).margin(1e-6));
    }
    SECTION("doubling data leaves the maximizer unchanged") {
        auto u = sample_balanced_counts(shape, 400, 25);
        auto s1 = maximize_over_simplex(u, verts_of(t1), 1e-14);
        CountsTensor u2 = u;
        for (auto& c : u2.counts) c *= 2;
        auto s2 = maximize_over_simplex(u2, verts_of(t1), 1e-14);
        REQUIRE(linf(s1.point.values, s2.point.values) < 1e-9);
    }
    SECTION("KKT residual is small at the reported maximum") {
        auto u = sample_balanced_counts(shape, 400, 26);
        auto sm = maximize_over_simplex(u, verts_of(t2), 1e-14);
        REQUIRE(sm.kkt_residual < 1e-6);
    }
    SECTION("piecewise maximization over P agrees with projected gradient ascent") {
        auto u = sample_balanced_counts(shape, 400, 27);
        auto pm = maximize_over_cross_polytope(u, 1e-15);
        // oracle: projected gradient on the barycentric coordinates of the
        // simplex piece that attained the maximum
        CrossPolytope cp = cross_polytope(2);
        std::vector<ProbTensorD> verts{tensor_of(shape, cp.u1), tensor_of(shape, cp.u2)};
        for (int r = 0; r < 2; ++r)
            verts.push_back(tensor_of(shape, cp.e(r, ((pm.simplex_index >> r) & 1) ? 2 : 1)));
        const std::size_t k = verts.size();
        std::vector<double> theta(k, 1.0 / k);
        const double total = static_cast<double>(u.total());
        double step = 1e-3;
        for (int it = 0; it < 200000; ++it) {
            std::vector<double> mix(8, 0.0);
            for (std::size_t v = 0; v < k; ++v)
                for (std::size_t w = 0; w < 8; ++w) mix[w] += theta[v] * verts[v].values[w];
            std::vector<double> grad(k, 0.0);
            for (std::size_t w = 0; w < 8; ++w) {
                if (u.counts[w] == 0) continue;
                for (std::size_t v = 0; v < k; ++v)
                    grad[v] += u.counts[w] / mix[w] * verts[v].values[w] / total;
            }
            // project the gradient onto the simplex tangent and step
            double mean = 0;
            for (double g : grad) mean += g;
            mean /= k;
            for (std::size_t v = 0; v < k; ++v) {
                theta[v] += step * (grad[v] - mean);
                theta[v] = std::max(theta[v], 1e-12);
            }
            double s = 0;
            for (double t : theta) s += t;
            for (auto& t : theta) t /= s;
        }
        std::vector<double> mix(8, 0.0);
        for (std::size_t v = 0; v < k; ++v)
            for (std::size_t w = 0; w < 8; ++w) mix[w] += theta[v] * verts[v].values[w];
        REQUIRE(linf(mix, pm.point.values) < 1e-6);
    }
}

TEST_CASE("em_fit approaches the truth's likelihood at scale") {
    ModelShape shape(2, 2);
    MTDParams truth;
    truth.Q = {{rat(3, 5), rat(2, 5)}, {rat(1, 4), rat(3, 4)}};
    truth.lambda = {rat(1, 3), rat(2, 3)};
    auto u = sample_data(shape, truth, 100000, true, 31337);
    const double ll_truth = log_likelihood(u, to_real(parametrize(shape, truth)));
    MTDParamsD start;
    start.Q = {{0.5, 0.5}, {0.5, 0.5}};
    start.lambda = {0.6, 0.4};
    // rows equal at the start is a saddle; nudge off it
    start.Q[0][0] = 0.51;
    start.Q[0][1] = 0.49;
    EMOptions opts;
    opts.loglik_tol = 1e-10;
    opts.max_iter = 100000;
    auto fit = em_fit(shape, u, start, opts);
    REQUIRE(fit.loglik >= ll_truth - 1e-6);
}

TEST_CASE("estimators are invariant under integer data scaling") {
    ModelShape shape(2, 2);
    auto u = sample_balanced_counts(shape, 400, 28);
    CountsTensor u3 = u;
    for (auto& c : u3.counts) c *= 3;
    SECTION("markov candidates scale-invariant (exact)") {
        for (int j = 1; j <= 2; ++j)
            REQUIRE(markov_candidate(u, j).values == markov_candidate(u3, j).values);
    }
    SECTION("mle_binary scale-invariant") {
        auto m1 = mle_binary(u);
        auto m3 = mle_binary(u3);
        REQUIRE(m1.kind == m3.kind);
        REQUIRE(linf(m1.global.values, m3.global.values) < 1e-8);
    }
    SECTION("census scale-invariant") {
        EMOptions opts;
        opts.restarts = 20;
        opts.seed = 17;
        opts.loglik_tol = 1e-12;
        opts.max_iter = 200000;
        auto c1 = census(u, opts);
        auto c3 = census(u3, opts);
        REQUIRE(c1.maxima.size() == c3.maxima.size());
        for (std::size_t i = 0; i < c1.maxima.size(); ++i)
            REQUIRE(linf(c1.maxima[i].point.values, c3.maxima[i].point.values) < 1e-6);
    }
}

TEST_CASE("census") {
    ModelShape shape(2, 2);
    SECTION("balanced random data: one or two clusters, never more") {
        for (int d = 0; d < 5; ++d) {
            auto u = sample_balanced_counts(shape, 400, 500 + d);
            EMOptions opts;
            opts.restarts = 50;
            opts.seed = 600 + d;
            opts.loglik_tol = 1e-12;
            opts.max_iter = 200000;
            auto cen = census(u, opts);
            REQUIRE(cen.maxima.size() >= 1);
            REQUIRE(cen.maxima.size() <= 2);
            int basins = 0;
            for (const auto& c : cen.maxima) basins += c.basin_count;
            REQUIRE(basins == 50);
        }
    }
    SECTION("diagonal data gives a single cluster") {
        MTDParams diag;
        diag.Q = {{rat(3, 10), rat(7, 10)}, {rat(3, 10), rat(7, 10)}};
        diag.lambda = {rat(1, 2), rat(1, 2)};
        auto u = sample_data(shape, diag, 400, true, 7777);
        EMOptions opts;
        opts.restarts = 40;
        opts.seed = 1;
        opts.loglik_tol = 1e-12;
        opts.max_iter = 200000;
        auto cen = census(u, opts);
        REQUIRE(cen.maxima.size() == 1);
    }
}

TEST_CASE("mle_binary trichotomy") {
    ModelShape shape(2, 2);
    SECTION("uniform counts give p* = uniform on the diagonal") {
        CountsTensor u{shape, std::vector<std::int64_t>(8, 50)};
        auto mle = mle_binary(u);
        REQUIRE(mle.p_star_membership == MemberKind::OnDiagonalS);
        ProbTensorD uni{shape, std::vector<double>(8, 0.125)};
        REQUIRE(linf(mle.p_star.values, uni.values) < 1e-9);
        REQUIRE(mle.global_loglik == Catch::Approx(log_likelihood(u, uni)));
    }
    SECTION("interior truth is recovered at large n") {
        MTDParams truth;
        truth.Q = {{rat(7, 10), rat(3, 10)}, {rat(2, 10), rat(8, 10)}};
        truth.lambda = {rat(2, 5), rat(3, 5)};
        auto u = sample_data(shape, truth, 100000, true, 4242);
        auto mle = mle_binary(u);
        REQUIRE(mle.kind == MLEKind::PStarInterior);
        REQUIRE(mle.side == 1);
        auto pt = to_real(parametrize(shape, truth));
        double tv = 0;
        for (std::size_t w = 0; w < 8; ++w)
            tv += std::abs(mle.global.values[w] - pt.values[w]);
        REQUIRE(tv / 2 < 0.02);
    }
    SECTION("outside-model data picks the better boundary maximum") {
        auto u = sample_balanced_counts(shape, 400, 95006);  // ClosureOnly case
        auto mle = mle_binary(u);
        if (mle.kind == MLEKind::BoundaryLocal) {
            REQUIRE(mle.global_loglik ==
                    Catch::Approx(std::max(mle.side_max1.loglik, mle.side_max2.loglik)));
            const SimplexMax& winner = mle.side == 1 ? mle.side_max1 : mle.side_max2;
            // boundary maximum: some barycentric coordinate vanishes
            double min_b = 1;
            for (double b : winner.barycentric) min_b = std::min(min_b, b);
            REQUIRE(min_b < 1e-6);
        }
    }
}

TEST_CASE("rank certificate") {
    ModelShape shape(2, 2);
    SECTION("rank <= 5 at p*, rank 6 at a generic point, 20 seeds") {
        for (int t = 0; t < 20; ++t) {
            Rng rng(9100 + t);
            CountsTensor u{shape, std::vector<std::int64_t>(8, 1)};
            std::vector<double> p = rng.simplex_uniform(8);
            for (int k = 0; k < 392; ++k) ++u.counts[rng.categorical(p)];
            auto pm = maximize_over_cross_polytope(u, 1e-15);
            auto cert = rank_certificate(u, pm.point);
            REQUIRE(cert.relative_gap < 1e-6);

            CrossPolytope cp = cross_polytope(2);
            auto verts = cp.vertices();
            std::vector<double> weights = rng.simplex_uniform(verts.size());
            ProbTensorD q{shape, std::vector<double>(8, 0.0)};
            for (std::size_t v = 0; v < verts.size(); ++v)
                for (std::size_t w = 0; w < 8; ++w)
                    q.values[w] += weights[v] * to_double(verts[v][w]);
            auto cert2 = rank_certificate(u, q);
            REQUIRE(cert2.rank == 6);
        }
    }
    SECTION("u proportional to p drops the rank") {
        ProbTensorD p{shape, {0.1, 0.15, 0.1, 0.15, 0.1, 0.15, 0.1, 0.15}};
        CountsTensor u{shape, {10, 15, 10, 15, 10, 15, 10, 15}};
        auto cert = rank_certificate(u, p);
        REQUIRE(cert.rank <= 5);
    }
    SECTION("shape errors") {
        ModelShape s3(3, 2);
        CountsTensor u{s3, std::vector<std::int64_t>(16, 1)};
        ProbTensorD p{s3, std::vector<double>(16, 1.0 / 16)};
        REQUIRE_THROWS_AS(rank_certificate(u, p), ShapeError);
    }
}

TEST_CASE("cross-oracle: census clusters match constrained maxima") {
    ModelShape shape(2, 2);
    auto [t1, t2] = model_simplices(2);
    CrossPolytope cp = cross_polytope(2);
    for (int d = 0; d < 5; ++d) {
        auto u = sample_balanced_counts(shape, 400, 700 + d);
        EMOptions opts;
        opts.restarts = 50;
        opts.seed = 800 + d;
        opts.loglik_tol = 1e-12;
        opts.max_iter = 200000;
        auto cen = census(u, opts);
        std::vector<SimplexMax> cands;
        auto verts_of = [&](const ModelSimplex& s) {
            std::vector<ProbTensorD> verts;
            for (const auto& v : s.vertices) verts.push_back(tensor_of(shape, v));
            return verts;
        };
        cands.push_back(maximize_over_simplex(u, verts_of(t1), 1e-14));
        cands.push_back(maximize_over_simplex(u, verts_of(t2), 1e-14));
        for (int j = 0; j < 2; ++j)
            for (int s = 1; s <= 2; ++s) {
                std::vector<ProbTensorD> verts{tensor_of(shape, cp.u1), tensor_of(shape, cp.u2),
                                               tensor_of(shape, cp.e(j, s))};
                cands.push_back(maximize_over_simplex(u, verts, 1e-14));
            }
        for (const auto& c : cen.maxima) {
            double best = 1e300;
            for (const auto& cand : cands)
                best = std::min(best, linf(c.point.values, cand.point.values));
            REQUIRE(best < 1e-5);
        }
    }
}
