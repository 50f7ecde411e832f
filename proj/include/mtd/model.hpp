#pragma once

// The MTD model: state indexing, the mixture parametrization (numeric and
// symbolic), its inverse on identifiable fibers, Jacobian rank, and seeded
// sampling of parameters and data.
//
// A state is a string i_0 i_1 ... i_l over the alphabet 1..m. The model maps
// a row-stochastic m x m matrix Q and a mixture weight vector lambda to
//   p_w = m^{-l} * sum_j lambda_j * q(w_{j-1}, w_l).

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "mtd/errors.hpp"
#include "mtd/linalg.hpp"
#include "mtd/polynomial.hpp"
#include "mtd/rational.hpp"
#include "mtd/rng.hpp"

namespace mtd {

struct ModelShape {
    int l = 1;
    int m = 2;

    ModelShape() = default;
    ModelShape(int l_, int m_) : l(l_), m(m_) {
        if (l < 1 || m < 2 || m > 9) throw ShapeError("ModelShape: need l >= 1, 2 <= m <= 9");
        if (l + 1 > 14) throw ShapeError("ModelShape: l too large");
    }

    std::size_t num_states() const {
        std::size_t n = 1;
        for (int k = 0; k <= l; ++k) n *= static_cast<std::size_t>(m);
        return n;
    }
    std::size_t num_prefixes() const { return num_states() / static_cast<std::size_t>(m); }

    friend bool operator==(const ModelShape& a, const ModelShape& b) {
        return a.l == b.l && a.m == b.m;
    }
};

// States are enumerated in lexicographic order of their digit strings.
inline std::vector<int> state_of_index(const ModelShape& shape, std::size_t idx) {
    std::vector<int> digits(shape.l + 1);
    for (int k = shape.l; k >= 0; --k) {
        digits[k] = static_cast<int>(idx % shape.m) + 1;
        idx /= shape.m;
    }
    return digits;
}

inline std::size_t index_of_state(const ModelShape& shape, const std::vector<int>& digits) {
    std::size_t idx = 0;
    for (int d : digits) {
        if (d < 1 || d > shape.m) throw ShapeError("index_of_state: digit out of range");
        idx = idx * shape.m + static_cast<std::size_t>(d - 1);
    }
    return idx;
}

inline std::string state_string(const std::vector<int>& digits) {
    std::string s;
    for (int d : digits) s += static_cast<char>('0' + d);
    return s;
}

inline std::vector<int> state_from_string(const ModelShape& shape, const std::string& s) {
    if (s.size() != static_cast<std::size_t>(shape.l + 1))
        throw ShapeError("state string has wrong length: " + s);
    std::vector<int> digits;
    for (char c : s) {
        if (c < '1' || c > '0' + shape.m) throw ShapeError("state string digit out of range: " + s);
        digits.push_back(c - '0');
    }
    return digits;
}

template <class S>
struct MTDParamsT {
    std::vector<std::vector<S>> Q;  // m x m, rows sum to 1
    std::vector<S> lambda;          // length l, sums to 1
};

using MTDParams = MTDParamsT<Rational>;
using MTDParamsD = MTDParamsT<double>;

template <class S>
struct ProbTensorT {
    ModelShape shape;
    std::vector<S> values;  // length m^{l+1}, state-lexicographic
};

using ProbTensor = ProbTensorT<Rational>;
using ProbTensorD = ProbTensorT<double>;

struct CountsTensor {
    ModelShape shape;
    std::vector<std::int64_t> counts;

    std::int64_t total() const {
        std::int64_t t = 0;
        for (auto c : counts) t += c;
        return t;
    }
};

inline MTDParamsD to_real(const MTDParams& p) {
    MTDParamsD r;
    r.Q.resize(p.Q.size());
    for (std::size_t i = 0; i < p.Q.size(); ++i)
        for (const auto& x : p.Q[i]) r.Q[i].push_back(to_double(x));
    for (const auto& x : p.lambda) r.lambda.push_back(to_double(x));
    return r;
}

inline ProbTensorD to_real(const ProbTensor& t) {
    ProbTensorD r;
    r.shape = t.shape;
    r.values.reserve(t.values.size());
    for (const auto& x : t.values) r.values.push_back(to_double(x));
    return r;
}

template <class S>
inline void validate_params(const ModelShape& shape, const MTDParamsT<S>& params) {
    if (params.Q.size() != static_cast<std::size_t>(shape.m) ||
        params.lambda.size() != static_cast<std::size_t>(shape.l))
        throw ShapeError("params do not match shape");
    for (const auto& row : params.Q) {
        if (row.size() != static_cast<std::size_t>(shape.m)) throw ShapeError("Q row size");
        S s = 0;
        for (const auto& x : row) {
            if (x < 0) throw ShapeError("negative Q entry");
            s += x;
        }
        if constexpr (std::is_same_v<S, Rational>) {
            if (s != 1) throw ShapeError("Q row does not sum to 1");
        } else {
            if (std::abs(s - 1.0) > 1e-12) throw ShapeError("Q row does not sum to 1");
        }
    }
    S s = 0;
    for (const auto& x : params.lambda) {
        if (x < 0) throw ShapeError("negative lambda entry");
        s += x;
    }
    if constexpr (std::is_same_v<S, Rational>) {
        if (s != 1) throw ShapeError("lambda does not sum to 1");
    } else {
        if (std::abs(s - 1.0) > 1e-12) throw ShapeError("lambda does not sum to 1");
    }
}

template <class S>
inline ProbTensorT<S> parametrize(const ModelShape& shape, const MTDParamsT<S>& params) {
    validate_params(shape, params);
    ProbTensorT<S> out;
    out.shape = shape;
    const std::size_t n = shape.num_states();
    out.values.resize(n);
    S scale;
    if constexpr (std::is_same_v<S, Rational>) {
        scale = rat(Int(1), int_pow(shape.m, static_cast<unsigned>(shape.l)));
    } else {
        scale = std::pow(static_cast<double>(shape.m), -shape.l);
    }
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto digits = state_of_index(shape, idx);
        S sum = 0;
        for (int j = 1; j <= shape.l; ++j)
            sum += params.lambda[j - 1] * params.Q[digits[j - 1] - 1][digits[shape.l] - 1];
        out.values[idx] = scale * sum;
    }
    return out;
}

// phi^*(p_w) for every state w, as polynomials in the free parameters only:
// lambda_l and the last column q_{i,m} are eliminated via the simplex
// constraints, so identities that hold on the simplices become literal zeros.
inline std::vector<Polynomial> symbolic_parametrize(const ModelShape& shape) {
    std::vector<Polynomial> lam(shape.l + 1);  // 1-based
    for (int j = 1; j < shape.l; ++j) lam[j] = poly_var(lambda_var(j));
    {
        Polynomial last = poly_const(1);
        for (int j = 1; j < shape.l; ++j) last -= poly_var(lambda_var(j));
        lam[shape.l] = last;
    }
    std::vector<std::vector<Polynomial>> q(shape.m + 1, std::vector<Polynomial>(shape.m + 1));
    for (int i = 1; i <= shape.m; ++i) {
        Polynomial last = poly_const(1);
        for (int r = 1; r < shape.m; ++r) {
            q[i][r] = poly_var(q_var(i, r));
            last -= q[i][r];
        }
        q[i][shape.m] = last;
    }
    const Rational scale = rat(Int(1), int_pow(shape.m, static_cast<unsigned>(shape.l)));
    std::vector<Polynomial> out;
    const std::size_t n = shape.num_states();
    out.reserve(n);
    for (std::size_t idx = 0; idx < n; ++idx) {
        auto digits = state_of_index(shape, idx);
        Polynomial sum;
        for (int j = 1; j <= shape.l; ++j) sum += lam[j] * q[digits[j - 1]][digits[shape.l]];
        out.push_back(sum * scale);
    }
    return out;
}

// Inverse of the parametrization on fibers with distinct transition rows:
// q_ij = m^l p_{ii...ij}, then each lambda from the row differences.
inline MTDParams invert(const ModelShape& shape, const ProbTensor& p) {
    if (p.values.size() != shape.num_states()) throw ShapeError("invert: tensor size");
    const Rational ml = Rational(int_pow(shape.m, static_cast<unsigned>(shape.l)));
    MTDParams params;
    params.Q.assign(shape.m, std::vector<Rational>(shape.m));
    for (int i = 1; i <= shape.m; ++i) {
        std::vector<int> digits(shape.l + 1, i);
        for (int jcol = 1; jcol <= shape.m; ++jcol) {
            digits[shape.l] = jcol;
            params.Q[i - 1][jcol - 1] = ml * p.values[index_of_state(shape, digits)];
        }
    }
    for (const auto& row : params.Q) {
        Rational s = 0;
        for (const auto& x : row) {
            if (x < 0) throw NotInModelError("invert: negative recovered Q entry");
            s += x;
        }
        if (s != 1) throw NotInModelError("invert: recovered Q row does not sum to 1");
    }

    // Pick (i, r) with q_{i,r} != q_{m,r}; the difference isolates lambda.
    // No such pair means every row equals row m, i.e. all rows coincide.
    int pi = -1, pr = -1;
    for (int i = 1; i < shape.m && pi < 0; ++i)
        for (int r = 1; r <= shape.m; ++r)
            if (params.Q[i - 1][r - 1] != params.Q[shape.m - 1][r - 1]) {
                pi = i;
                pr = r;
                break;
            }
    if (pi < 0)
        throw NonIdentifiableError("invert: all transition rows equal, lambda undetermined");
    const Rational denom = params.Q[pi - 1][pr - 1] - params.Q[shape.m - 1][pr - 1];

    std::vector<int> base(shape.l + 1, shape.m);
    base[shape.l] = pr;
    const Rational p_base = p.values[index_of_state(shape, base)];
    params.lambda.resize(shape.l);
    Rational sum = 0;
    for (int j = 0; j < shape.l; ++j) {
        auto digits = base;
        digits[j] = pi;
        Rational lam = ml * (p.values[index_of_state(shape, digits)] - p_base) / denom;
        params.lambda[j] = lam;
        sum += lam;
    }
    if (sum == 0) throw NotInModelError("invert: recovered lambda sums to zero");
    for (auto& x : params.lambda) x /= sum;

    for (const auto& x : params.lambda)
        if (x < 0) throw NotInModelError("invert: negative recovered lambda");
    ProbTensor back = parametrize(shape, params);
    if (back.values != p.values) throw NotInModelError("invert: round trip residual nonzero");
    return params;
}

// Real-mode inversion; residuals beyond tol mean the point is off the model.
inline MTDParamsD invert(const ModelShape& shape, const ProbTensorD& p, double tol = 1e-9) {
    if (p.values.size() != shape.num_states()) throw ShapeError("invert: tensor size");
    const double ml = std::pow(static_cast<double>(shape.m), shape.l);
    MTDParamsD params;
    params.Q.assign(shape.m, std::vector<double>(shape.m));
    for (int i = 1; i <= shape.m; ++i) {
        std::vector<int> digits(shape.l + 1, i);
        for (int jcol = 1; jcol <= shape.m; ++jcol) {
            digits[shape.l] = jcol;
            params.Q[i - 1][jcol - 1] = ml * p.values[index_of_state(shape, digits)];
        }
    }
    for (auto& row : params.Q) {
        double s = 0;
        for (double x : row) {
            if (x < -tol) throw NotInModelError("invert: negative recovered Q entry");
            s += x;
        }
        if (std::abs(s - 1.0) > 1e-9) throw NotInModelError("invert: recovered Q row sum off");
        for (double& x : row) x = std::max(x, 0.0) / s;
    }
    int pi = -1, pr = -1;
    double best = tol;
    for (int i = 1; i < shape.m; ++i)
        for (int r = 1; r <= shape.m; ++r) {
            double diff = std::abs(params.Q[i - 1][r - 1] - params.Q[shape.m - 1][r - 1]);
            if (diff > best) {
                best = diff;
                pi = i;
                pr = r;
            }
        }
    if (pi < 0)
        throw NonIdentifiableError("invert: all transition rows equal, lambda undetermined");
    const double denom = params.Q[pi - 1][pr - 1] - params.Q[shape.m - 1][pr - 1];
    std::vector<int> base(shape.l + 1, shape.m);
    base[shape.l] = pr;
    const double p_base = p.values[index_of_state(shape, base)];
    params.lambda.resize(shape.l);
    double sum = 0;
    for (int j = 0; j < shape.l; ++j) {
        auto digits = base;
        digits[j] = pi;
        params.lambda[j] = ml * (p.values[index_of_state(shape, digits)] - p_base) / denom;
        sum += params.lambda[j];
    }
    if (std::abs(sum) < tol) throw NotInModelError("invert: recovered lambda sums to zero");
    for (auto& x : params.lambda) x /= sum;
    for (auto& x : params.lambda) {
        if (x < -tol) throw NotInModelError("invert: negative recovered lambda");
        x = std::max(x, 0.0);
    }
    ProbTensorD back = parametrize(shape, params);
    for (std::size_t i = 0; i < back.values.size(); ++i)
        if (std::abs(back.values[i] - p.values[i]) > tol)
            throw NotInModelError("invert: round trip residual exceeds tolerance");
    return params;
}

// Exact Jacobian rank of the parametrization in the free coordinates
// (q_{i,r}, r < m and lambda_j, j < l), evaluated at a rational point.
inline std::size_t jacobian_rank(const ModelShape& shape, const MTDParams& params) {
    validate_params(shape, params);
    std::vector<VarId> free_vars;
    for (int i = 1; i <= shape.m; ++i)
        for (int r = 1; r < shape.m; ++r) free_vars.push_back(q_var(i, r));
    for (int j = 1; j < shape.l; ++j) free_vars.push_back(lambda_var(j));

    std::unordered_map<std::uint64_t, Rational> point;
    for (int i = 1; i <= shape.m; ++i)
        for (int r = 1; r < shape.m; ++r) point[q_var(i, r).code] = params.Q[i - 1][r - 1];
    for (int j = 1; j < shape.l; ++j) point[lambda_var(j).code] = params.lambda[j - 1];

    auto phi = symbolic_parametrize(shape);
    MatR jac(phi.size(), VecR(free_vars.size(), 0));
    for (std::size_t row = 0; row < phi.size(); ++row)
        for (std::size_t col = 0; col < free_vars.size(); ++col)
            jac[row][col] = evaluate(derivative(phi[row], free_vars[col]), point);
    return exact_rank(jac);
}

namespace model_detail {

// Round a simplex point to denominator <= max_den, repairing the largest
// entry so the sum stays exactly one and every entry stays nonnegative.
inline std::vector<Rational> rationalize_simplex(const std::vector<double>& x, long max_den) {
    std::vector<Rational> r(x.size());
    const Rational floor_val = rat(1, max_den);
    for (std::size_t i = 0; i < x.size(); ++i) {
        r[i] = round_to_denominator(x[i], max_den);
        if (r[i] < floor_val) r[i] = floor_val;
    }
    Rational sum = 0;
    for (const auto& v : r) sum += v;
    std::size_t largest = 0;
    for (std::size_t i = 1; i < r.size(); ++i)
        if (r[i] > r[largest]) largest = i;
    r[largest] += Rational(1) - sum;
    if (r[largest] < 0) throw Error("rationalize_simplex: repair failed");
    return r;
}

}  // namespace model_detail

inline MTDParams sample_params(const ModelShape& shape, std::uint64_t seed) {
    Rng rng(seed);
    const long max_den = 1000000;
    MTDParams params;
    params.Q.reserve(shape.m);
    for (int i = 0; i < shape.m; ++i)
        params.Q.push_back(
            model_detail::rationalize_simplex(rng.simplex_uniform(shape.m), max_den));
    params.lambda = model_detail::rationalize_simplex(rng.simplex_uniform(shape.l), max_den);
    return params;
}

// n observed sequences: prefix uniform (balanced: exactly n/m^l each), hidden
// lag from lambda, last symbol from the matching row of Q.
inline CountsTensor sample_data(const ModelShape& shape, const MTDParamsD& params,
                                std::int64_t n, bool balanced, std::uint64_t seed) {
    validate_params(shape, params);
    const std::size_t num_prefix = shape.num_prefixes();
    if (balanced && n % static_cast<std::int64_t>(num_prefix) != 0)
        throw BalanceError("sample_data: n not divisible by m^l");
    Rng rng(seed);
    CountsTensor out;
    out.shape = shape;
    out.counts.assign(shape.num_states(), 0);
    auto draw_one = [&](std::size_t prefix_idx) {
        auto digits = state_of_index(shape, prefix_idx * shape.m);  // last digit = 1
        std::size_t j = rng.categorical(params.lambda);
        std::size_t last = rng.categorical(params.Q[digits[j] - 1]);
        ++out.counts[prefix_idx * shape.m + last];
    };
    if (balanced) {
        const std::int64_t per = n / static_cast<std::int64_t>(num_prefix);
        for (std::size_t pr = 0; pr < num_prefix; ++pr)
            for (std::int64_t k = 0; k < per; ++k) draw_one(pr);
    } else {
        for (std::int64_t k = 0; k < n; ++k)
            draw_one(static_cast<std::size_t>(rng.uniform_below(num_prefix)));
    }
    return out;
}

inline CountsTensor sample_data(const ModelShape& shape, const MTDParams& params,
                                std::int64_t n, bool balanced, std::uint64_t seed) {
    return sample_data(shape, to_real(params), n, balanced, seed);
}

}  // namespace mtd
