#pragma once

// Likelihood inference: log-likelihood, the hidden-lag EM algorithm, exact
// Markov (single-lag) candidates, concave maximization over the binary
// polytopes by multiplicative updates, the local-maxima census, the MLE
// trichotomy, and the rank certificate for criticality.

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "mtd/binary_geom.hpp"
#include "mtd/model.hpp"
#include "mtd/rng.hpp"

namespace mtd {

struct EMOptions {
    int max_iter = 10000;
    double loglik_tol = 1e-10;
    int restarts = 100;
    std::uint64_t seed = 0;
    double init_floor = 1e-6;   // strictly positive starts
    double cluster_tol = 1e-5;  // L-infinity on probability coordinates
};

inline double log_likelihood(const CountsTensor& u, const ProbTensorD& p) {
    if (u.counts.size() != p.values.size()) throw ShapeError("log_likelihood: size mismatch");
    double ll = 0;
    for (std::size_t w = 0; w < u.counts.size(); ++w) {
        if (u.counts[w] == 0) continue;
        if (p.values[w] <= 0) return -std::numeric_limits<double>::infinity();
        ll += static_cast<double>(u.counts[w]) * std::log(p.values[w]);
    }
    return ll;
}

// One EM step for the hidden-lag mixture: responsibilities
//   r_j(w) = lambda_j q(w_{j-1}, w_l) / sum_k lambda_k q(w_{k-1}, w_l),
// then weight and row-normalize.
inline MTDParamsD em_step(const ModelShape& shape, const CountsTensor& u,
                          const MTDParamsD& params) {
    const std::size_t n = shape.num_states();
    if (u.counts.size() != n) throw ShapeError("em_step: counts size");
    std::vector<double> new_lambda(shape.l, 0.0);
    std::vector<std::vector<double>> new_q(shape.m, std::vector<double>(shape.m, 0.0));
    for (std::size_t w = 0; w < n; ++w) {
        if (u.counts[w] == 0) continue;
        auto digits = state_of_index(shape, w);
        const int last = digits[shape.l];
        double denom = 0;
        for (int j = 1; j <= shape.l; ++j)
            denom += params.lambda[j - 1] * params.Q[digits[j - 1] - 1][last - 1];
        if (denom <= 0)
            throw DegenerateDenominatorError("em_step: zero mixture density at observed state " +
                                             state_string(digits));
        const double weight = static_cast<double>(u.counts[w]);
        for (int j = 1; j <= shape.l; ++j) {
            const double resp =
                params.lambda[j - 1] * params.Q[digits[j - 1] - 1][last - 1] / denom;
            new_lambda[j - 1] += weight * resp;
            new_q[digits[j - 1] - 1][last - 1] += weight * resp;
        }
    }
    const double total = static_cast<double>(u.total());
    MTDParamsD out;
    out.lambda = new_lambda;
    for (auto& x : out.lambda) x /= total;
    out.Q = params.Q;
    for (int a = 0; a < shape.m; ++a) {
        double row_sum = 0;
        for (int b = 0; b < shape.m; ++b) row_sum += new_q[a][b];
        if (row_sum > 0)
            for (int b = 0; b < shape.m; ++b) out.Q[a][b] = new_q[a][b] / row_sum;
        // rows with no responsibility mass keep their current values
    }
    return out;
}

struct EMFit {
    MTDParamsD params;
    double loglik = 0;
    int iterations = 0;
    double min_step_delta = 0;  // most negative per-step loglik change observed
};

namespace lik_detail {

inline std::vector<double> flatten(const MTDParamsD& p) {
    std::vector<double> x;
    for (const auto& row : p.Q) x.insert(x.end(), row.begin(), row.end());
    x.insert(x.end(), p.lambda.begin(), p.lambda.end());
    return x;
}

inline MTDParamsD unflatten(const ModelShape& shape, const std::vector<double>& x) {
    MTDParamsD p;
    std::size_t k = 0;
    p.Q.assign(shape.m, std::vector<double>(shape.m));
    for (int i = 0; i < shape.m; ++i)
        for (int j = 0; j < shape.m; ++j) p.Q[i][j] = x[k++];
    p.lambda.assign(x.begin() + k, x.end());
    return p;
}

}  // namespace lik_detail

// EM iteration with squared-extrapolation acceleration. Each round takes two
// em_step evaluations, extrapolates along the observed trajectory, and keeps
// the plain double step whenever the extrapolated point is infeasible or does
// not improve the log-likelihood; fixed points, zero-locking and monotonicity
// are all preserved. Convergence is declared on the log-likelihood gain.
inline EMFit em_fit(const ModelShape& shape, const CountsTensor& u, const MTDParamsD& theta0,
                    const EMOptions& opts = {}) {
    using lik_detail::flatten;
    using lik_detail::unflatten;
    EMFit fit;
    fit.params = theta0;
    fit.loglik = log_likelihood(u, parametrize(shape, fit.params));
    fit.min_step_delta = 0;
    for (int it = 1; it <= opts.max_iter; ++it) {
        const MTDParamsD t1 = em_step(shape, u, fit.params);
        const MTDParamsD t2 = em_step(shape, u, t1);
        const double ll2 = log_likelihood(u, parametrize(shape, t2));

        MTDParamsD next = t2;
        double ll_next = ll2;
        const std::vector<double> x0 = flatten(fit.params), x1 = flatten(t1), x2 = flatten(t2);
        double rr = 0, vv = 0;
        std::vector<double> r(x0.size()), v(x0.size());
        for (std::size_t i = 0; i < x0.size(); ++i) {
            r[i] = x1[i] - x0[i];
            v[i] = x2[i] - x1[i] - r[i];
            rr += r[i] * r[i];
            vv += v[i] * v[i];
        }
        if (vv > 0 && rr > 0) {
            double alpha = -std::sqrt(rr / vv);
            for (int bt = 0; bt < 8; ++bt) {
                std::vector<double> xe(x0.size());
                bool feasible = true;
                for (std::size_t i = 0; i < x0.size(); ++i) {
                    xe[i] = x0[i] - 2 * alpha * r[i] + alpha * alpha * v[i];
                    if (xe[i] < 0) feasible = false;
                }
                if (feasible) {
                    try {
                        MTDParamsD accel = em_step(shape, u, unflatten(shape, xe));
                        const double ll_acc = log_likelihood(u, parametrize(shape, accel));
                        if (ll_acc > ll_next) {
                            next = std::move(accel);
                            ll_next = ll_acc;
                        }
                        break;
                    } catch (const DegenerateDenominatorError&) {
                        // fall through to a shorter extrapolation
                    }
                }
                alpha /= 2;
                if (alpha > -1.0) break;  // no useful extrapolation left
            }
        }
        const double delta = ll_next - fit.loglik;
        fit.min_step_delta = std::min(fit.min_step_delta, delta);
        fit.params = std::move(next);
        fit.loglik = ll_next;
        fit.iterations = it;
        if (std::abs(delta) < opts.loglik_tol) break;
    }
    return fit;
}

// Exact single-lag Markov estimate: qhat_{a,b} = u(a,b)/u(a,+) over pairs
// (w_{j-1}, w_l), returned through the parametrization with lambda = e_j.
inline ProbTensor markov_candidate(const CountsTensor& u, int j) {
    const ModelShape& shape = u.shape;
    if (j < 1 || j > shape.l) throw ShapeError("markov_candidate: lag out of range");
    std::vector<std::vector<Int>> pair_counts(shape.m, std::vector<Int>(shape.m, 0));
    std::vector<Int> row_counts(shape.m, 0);
    for (std::size_t w = 0; w < u.counts.size(); ++w) {
        if (u.counts[w] == 0) continue;
        auto digits = state_of_index(shape, w);
        pair_counts[digits[j - 1] - 1][digits[shape.l] - 1] += static_cast<long>(u.counts[w]);
        row_counts[digits[j - 1] - 1] += static_cast<long>(u.counts[w]);
    }
    MTDParams params;
    params.Q.assign(shape.m, std::vector<Rational>(shape.m));
    for (int a = 0; a < shape.m; ++a) {
        if (row_counts[a] == 0)
            throw ZeroMarginalError("markov_candidate: empty marginal for symbol " +
                                    std::to_string(a + 1));
        for (int b = 0; b < shape.m; ++b)
            params.Q[a][b] = rat(pair_counts[a][b], row_counts[a]);
    }
    params.lambda.assign(shape.l, Rational(0));
    params.lambda[j - 1] = 1;
    return parametrize(shape, params);
}

struct SimplexMax {
    ProbTensorD point;
    std::vector<double> barycentric;
    double loglik = 0;
    double kkt_residual = 0;
    int iterations = 0;
};

// Maximize the concave map theta -> sum_w u_w log((V theta)_w) over the
// barycentric simplex by multiplicative (fixed-support mixture EM) updates.
// Vertex weights that decay toward zero while their multiplier still exceeds
// one are revived; for a concave objective this terminates at the true
// constrained maximum instead of a face-locked point.
inline SimplexMax maximize_over_simplex(const CountsTensor& u,
                                        const std::vector<ProbTensorD>& vertices, double tol,
                                        int max_iter = 400000) {
    const std::size_t k = vertices.size();
    if (k == 0) throw ShapeError("maximize_over_simplex: no vertices");
    const std::size_t n = vertices[0].values.size();
    if (u.counts.size() != n) throw ShapeError("maximize_over_simplex: size mismatch");
    const double total = static_cast<double>(u.total());
    std::vector<double> theta(k, 1.0 / static_cast<double>(k));
    std::vector<double> mix(n);
    auto remix = [&] {
        for (std::size_t w = 0; w < n; ++w) {
            double acc = 0;
            for (std::size_t v = 0; v < k; ++v) acc += theta[v] * vertices[v].values[w];
            mix[w] = acc;
        }
    };
    remix();
    auto loglik = [&] {
        double ll = 0;
        for (std::size_t w = 0; w < n; ++w) {
            if (u.counts[w] == 0) continue;
            if (mix[w] <= 0) return -std::numeric_limits<double>::infinity();
            ll += static_cast<double>(u.counts[w]) * std::log(mix[w]);
        }
        return ll;
    };
    auto multipliers = [&](std::vector<double>& grad) {
        grad.assign(k, 0.0);
        for (std::size_t w = 0; w < n; ++w) {
            if (u.counts[w] == 0 || mix[w] <= 0) continue;
            const double f = static_cast<double>(u.counts[w]) / mix[w];
            for (std::size_t v = 0; v < k; ++v) grad[v] += f * vertices[v].values[w];
        }
        for (auto& g : grad) g /= total;
    };
    double ll = loglik();
    SimplexMax out;
    std::vector<double> grad;

    // Newton polish on the active support: multiplicative updates stall on
    // flat likelihoods, so finish with equality-constrained Newton steps.
    auto polish = [&] {
        for (int round = 0; round < 60; ++round) {
            std::vector<std::size_t> support;
            for (std::size_t v = 0; v < k; ++v)
                if (theta[v] > 1e-12) support.push_back(v);
            const std::size_t s = support.size();
            if (s <= 1) return;
            std::vector<double> g(s, 0.0);
            std::vector<std::vector<double>> h(s, std::vector<double>(s, 0.0));
            for (std::size_t w = 0; w < n; ++w) {
                if (u.counts[w] == 0 || mix[w] <= 0) continue;
                const double f = static_cast<double>(u.counts[w]) / mix[w];
                for (std::size_t a = 0; a < s; ++a) {
                    const double va = vertices[support[a]].values[w];
                    if (va == 0) continue;
                    g[a] += f * va;
                    for (std::size_t b = a; b < s; ++b)
                        h[a][b] -= f / mix[w] * va * vertices[support[b]].values[w];
                }
            }
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t b = 0; b < a; ++b) h[a][b] = h[b][a];
            // KKT system: H d + 1 nu = -g, sum d = 0
            const std::size_t dim = s + 1;
            std::vector<std::vector<double>> m(dim, std::vector<double>(dim + 1, 0.0));
            for (std::size_t a = 0; a < s; ++a) {
                for (std::size_t b = 0; b < s; ++b) m[a][b] = h[a][b];
                m[a][s] = 1.0;
                m[a][dim] = -g[a];
            }
            for (std::size_t b = 0; b < s; ++b) m[s][b] = 1.0;
            for (std::size_t col = 0; col < dim; ++col) {
                std::size_t piv = col;
                for (std::size_t r = col + 1; r < dim; ++r)
                    if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
                if (m[piv][col] == 0) return;
                std::swap(m[piv], m[col]);
                for (std::size_t r = 0; r < dim; ++r) {
                    if (r == col || m[r][col] == 0) continue;
                    const double f = m[r][col] / m[col][col];
                    for (std::size_t c = col; c <= dim; ++c) m[r][c] -= f * m[col][c];
                }
            }
            std::vector<double> d(s);
            double dmax = 0;
            for (std::size_t a = 0; a < s; ++a) {
                d[a] = m[a][dim] / m[a][a];
                dmax = std::max(dmax, std::abs(d[a]));
            }
            if (!(dmax > 0) || dmax < 1e-16) return;
            double alpha = 1.0;
            const double ll_before = ll;
            auto theta_before = theta;
            for (int bt = 0; bt < 50; ++bt) {
                theta = theta_before;
                bool ok = true;
                for (std::size_t a = 0; a < s; ++a) {
                    theta[support[a]] += alpha * d[a];
                    if (theta[support[a]] < 0) ok = false;
                }
                if (ok) {
                    remix();
                    const double ll_new = loglik();
                    if (ll_new >= ll_before) {
                        ll = ll_new;
                        break;
                    }
                }
                alpha /= 2;
                if (bt == 49) {
                    theta = theta_before;
                    remix();
                    ll = ll_before;
                    return;
                }
            }
            if (dmax * alpha < 1e-15) return;
        }
    };

    for (int attempt = 0; attempt < 6; ++attempt) {
        for (int it = 1; it <= max_iter; ++it) {
            multipliers(grad);
            double sum = 0;
            for (std::size_t v = 0; v < k; ++v) {
                theta[v] *= grad[v];
                sum += theta[v];
            }
            for (auto& t : theta) t /= sum;
            remix();
            const double ll_new = loglik();
            ++out.iterations;
            const double gain = ll_new - ll;
            ll = ll_new;
            if (gain < tol && gain > -tol) break;
        }
        polish();
        // Revive starved weights whose multiplier still indicates ascent.
        multipliers(grad);
        bool revived = false;
        for (std::size_t v = 0; v < k; ++v)
            if (theta[v] < 1e-13 && grad[v] > 1.0 + 1e-10) {
                theta[v] = std::max(theta[v], 1e-10);
                revived = true;
            }
        if (!revived) break;
        double sum = 0;
        for (auto& t : theta) sum += t;
        for (auto& t : theta) t /= sum;
        remix();
        ll = loglik();
    }
    multipliers(grad);
    double resid = 0;
    for (std::size_t v = 0; v < k; ++v) {
        // KKT: multiplier 1 on the support, <= 1 off it.
        if (theta[v] > 1e-12)
            resid = std::max(resid, std::abs(grad[v] - 1.0));
        else
            resid = std::max(resid, std::max(0.0, grad[v] - 1.0));
    }
    out.kkt_residual = resid;
    out.barycentric = theta;
    out.point.shape = u.shape;
    out.point.values = mix;
    out.loglik = ll;
    return out;
}

namespace lik_detail {

inline ProbTensorD tensor_from(const ModelShape& shape, const VecR& v) {
    ProbTensorD t;
    t.shape = shape;
    t.values.reserve(v.size());
    for (const auto& x : v) t.values.push_back(to_double(x));
    return t;
}

}  // namespace lik_detail

struct PolytopeMax {
    ProbTensorD point;
    double loglik = 0;
    std::size_t simplex_index = 0;  // triangulation piece attaining the max
};

// p*: the maximizer of L_u over the cross-polytope P, computed piecewise over
// the 2^l triangulation simplices (they agree on shared faces).
inline PolytopeMax maximize_over_cross_polytope(const CountsTensor& u, double tol = 1e-14) {
    const int l = u.shape.l;
    if (u.shape.m != 2) throw ShapeError("maximize_over_cross_polytope: binary only");
    CrossPolytope cp = cross_polytope(l);
    PolytopeMax best;
    best.loglik = -std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (std::size_t(1) << l); ++mask) {
        std::vector<ProbTensorD> verts{lik_detail::tensor_from(u.shape, cp.u1),
                                       lik_detail::tensor_from(u.shape, cp.u2)};
        for (int r = 0; r < l; ++r)
            verts.push_back(lik_detail::tensor_from(u.shape, cp.e(r, ((mask >> r) & 1) ? 2 : 1)));
        SimplexMax sm = maximize_over_simplex(u, verts, tol);
        if (sm.loglik > best.loglik) {
            best.loglik = sm.loglik;
            best.point = sm.point;
            best.simplex_index = mask;
        }
    }
    return best;
}

struct CensusCluster {
    MTDParamsD params;   // representative (first limit in the cluster)
    ProbTensorD point;
    double loglik = 0;
    int basin_count = 0;
};

struct LocalMaxCensus {
    std::vector<CensusCluster> maxima;
    double cluster_tol = 1e-5;
    double min_step_delta = 0;  // most negative per-step loglik change seen
};

// Multistart EM census: run em_fit from seeded strictly positive random
// initializations and cluster the limits in probability coordinates.
inline LocalMaxCensus census(const CountsTensor& u, const EMOptions& opts = {}) {
    const ModelShape& shape = u.shape;
    Rng rng(opts.seed);
    LocalMaxCensus out;
    out.cluster_tol = opts.cluster_tol;
    for (int r = 0; r < opts.restarts; ++r) {
        MTDParamsD theta0;
        for (int i = 0; i < shape.m; ++i) {
            auto row = rng.simplex_uniform(shape.m);
            double s = 0;
            for (auto& x : row) {
                x = std::max(x, opts.init_floor);
                s += x;
            }
            for (auto& x : row) x /= s;
            theta0.Q.push_back(row);
        }
        theta0.lambda = rng.simplex_uniform(shape.l);
        {
            double s = 0;
            for (auto& x : theta0.lambda) {
                x = std::max(x, opts.init_floor);
                s += x;
            }
            for (auto& x : theta0.lambda) x /= s;
        }
        EMFit fit = em_fit(shape, u, theta0, opts);
        out.min_step_delta = std::min(out.min_step_delta, fit.min_step_delta);
        ProbTensorD p = parametrize(shape, fit.params);
        bool merged = false;
        for (auto& cluster : out.maxima) {
            double dist = 0;
            for (std::size_t w = 0; w < p.values.size(); ++w)
                dist = std::max(dist, std::abs(p.values[w] - cluster.point.values[w]));
            if (dist < opts.cluster_tol) {
                ++cluster.basin_count;
                if (fit.loglik > cluster.loglik) {
                    cluster.loglik = fit.loglik;
                    cluster.point = p;
                    cluster.params = fit.params;
                }
                merged = true;
                break;
            }
        }
        if (!merged)
            out.maxima.push_back(CensusCluster{fit.params, std::move(p), fit.loglik, 1});
    }
    return out;
}

enum class MLEKind { PStarInterior, BoundaryLocal };

struct MLEResult {
    ProbTensorD global;
    double global_loglik = 0;
    MLEKind kind = MLEKind::PStarInterior;
    int side = 0;  // simplex containing the global maximizer; 0 on the diagonal
    ProbTensorD p_star;
    double p_star_loglik = 0;
    MemberKind p_star_membership = MemberKind::OutsideClosure;
    SimplexMax side_max1, side_max2;
};

// Trichotomy: p* is the MLE when it lies in the model; otherwise the two
// simplex maxima are boundary local maxima and the better one is the MLE.
inline MLEResult mle_binary(const CountsTensor& u, double tol = 1e-14,
                            double membership_tol = 1e-7) {
    const int l = u.shape.l;
    if (u.shape.m != 2) throw ShapeError("mle_binary: binary only");
    MLEResult res;
    PolytopeMax pm = maximize_over_cross_polytope(u, tol);
    res.p_star = pm.point;
    res.p_star_loglik = pm.loglik;
    auto mem = membership(l, pm.point, membership_tol);
    res.p_star_membership = mem.kind;

    auto [t1, t2] = model_simplices(l);
    auto verts_of = [&](const ModelSimplex& s) {
        std::vector<ProbTensorD> verts;
        for (const auto& v : s.vertices) verts.push_back(lik_detail::tensor_from(u.shape, v));
        return verts;
    };
    res.side_max1 = maximize_over_simplex(u, verts_of(t1), tol);
    res.side_max2 = maximize_over_simplex(u, verts_of(t2), tol);

    if (mem.kind == MemberKind::InSimplex1 || mem.kind == MemberKind::InSimplex2 ||
        mem.kind == MemberKind::OnDiagonalS) {
        res.kind = MLEKind::PStarInterior;
        res.side = mem.kind == MemberKind::InSimplex1   ? 1
                   : mem.kind == MemberKind::InSimplex2 ? 2
                                                        : 0;
        res.global = pm.point;
        res.global_loglik = pm.loglik;
    } else {
        res.kind = MLEKind::BoundaryLocal;
        if (res.side_max1.loglik >= res.side_max2.loglik) {
            res.side = 1;
            res.global = res.side_max1.point;
            res.global_loglik = res.side_max1.loglik;
        } else {
            res.side = 2;
            res.global = res.side_max2.point;
            res.global_loglik = res.side_max2.loglik;
        }
    }
    return res;
}

struct RankCertificate {
    std::array<double, 6> singular_values{};
    int rank = 0;            // at relative tolerance 1e-8
    double relative_gap = 0;  // sigma_6 / sigma_1
};

// The 6x8 criticality certificate for the 8-coordinate binary case: rows are
// the data vector, the point, and four sign-pattern rows built from it.
// Rank <= 5 certifies that p satisfies the critical equations for u.
inline RankCertificate rank_certificate(const CountsTensor& u, const ProbTensorD& p) {
    if (u.counts.size() != 8 || p.values.size() != 8)
        throw ShapeError("rank_certificate: needs the 8-coordinate binary case");
    for (double v : p.values)
        if (v <= 0) throw ShapeError("rank_certificate: p must be strictly positive");
    const double* q = p.values.data();
    // coordinate order: 111 112 121 122 211 212 221 222
    Eigen::Matrix<double, 6, 8> m;
    for (int c = 0; c < 8; ++c) m(0, c) = static_cast<double>(u.counts[c]);
    for (int c = 0; c < 8; ++c) m(1, c) = q[c];
    m.row(2) << q[0], q[1], -q[2], -q[3], 0, 0, 0, 0;
    m.row(3) << 0, 0, 0, 0, q[4], q[5], -q[6], -q[7];
    m.row(4) << 0, 0, q[2], q[3], 0, 0, -q[6], -q[7];
    m.row(5) << q[0], 0, -q[2], 0, -q[4], 0, q[6], 0;
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    RankCertificate cert;
    const auto& sv = svd.singularValues();
    for (int i = 0; i < 6; ++i) cert.singular_values[i] = sv(i);
    const double top = sv(0);
    for (int i = 0; i < 6; ++i)
        if (sv(i) > 1e-8 * top) cert.rank = i + 1;
    cert.relative_gap = top > 0 ? sv(5) / top : 0.0;
    return cert;
}

}  // namespace mtd
