#pragma once

// Exact feasibility of small systems of rational linear inequalities via
// Fourier-Motzkin elimination, plus a recession-cone triviality test. Used by
// the direct cell enumerator that cross-checks the Zaslavsky region counts.

#include <set>
#include <string>
#include <vector>

#include "mtd/linalg.hpp"

namespace mtd {

struct LinIneq {
    VecR a;       // coefficients
    Rational b;   // right-hand side
    bool strict;  // a.x < b when set, a.x <= b otherwise
};

namespace fm_detail {

// Scale to integer primitive form for deduplication.
inline void normalize(LinIneq& c) {
    Int den_lcm = 1;
    for (const auto& x : c.a) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.b.get_den_mpz_t());
    Int content = 0;
    for (auto& x : c.a) {
        x *= Rational(den_lcm);
        x.canonicalize();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), x.get_num_mpz_t());
    }
    c.b *= Rational(den_lcm);
    c.b.canonicalize();
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), c.b.get_num_mpz_t());
    if (content > 1) {
        for (auto& x : c.a) {
            x /= Rational(content);
            x.canonicalize();
        }
        c.b /= Rational(content);
        c.b.canonicalize();
    }
}

inline std::string key(const LinIneq& c) {
    std::string k = c.strict ? "<" : "=";
    for (const auto& x : c.a) k += x.get_str() + ",";
    k += ";" + c.b.get_str();
    return k;
}

}  // namespace fm_detail

// True iff the system has a solution over the rationals.
inline bool fm_feasible(std::vector<LinIneq> sys, std::size_t nvars) {
    for (std::size_t var = 0; var < nvars; ++var) {
        std::vector<LinIneq> pos, neg, rest;
        for (auto& c : sys) {
            if (c.a[var] > 0)
                pos.push_back(std::move(c));
            else if (c.a[var] < 0)
                neg.push_back(std::move(c));
            else
                rest.push_back(std::move(c));
        }
        std::set<std::string> seen;
        std::vector<LinIneq> next;
        for (auto& c : rest) {
            fm_detail::normalize(c);
            if (seen.insert(fm_detail::key(c)).second) next.push_back(std::move(c));
        }
        for (const auto& p : pos)
            for (const auto& n : neg) {
                LinIneq comb;
                comb.a.resize(nvars, 0);
                const Rational wp = -n.a[var];  // > 0
                const Rational wn = p.a[var];   // > 0
                for (std::size_t j = 0; j < nvars; ++j) comb.a[j] = wp * p.a[j] + wn * n.a[j];
                comb.b = wp * p.b + wn * n.b;
                comb.strict = p.strict || n.strict;
                fm_detail::normalize(comb);
                if (seen.insert(fm_detail::key(comb)).second) next.push_back(std::move(comb));
            }
        sys = std::move(next);
    }
    for (const auto& c : sys) {
        if (c.strict ? !(0 < c.b) : !(0 <= c.b)) return false;
    }
    return true;
}

// True iff {d : constraints} = {0} for a homogeneous nonstrict system.
inline bool cone_is_trivial(const std::vector<LinIneq>& cone, std::size_t nvars) {
    for (std::size_t i = 0; i < nvars; ++i) {
        for (int sigma : {1, -1}) {
            auto sys = cone;
            LinIneq up, dn;  // d_i = sigma as a pair of inequalities
            up.a.assign(nvars, 0);
            up.a[i] = 1;
            up.b = sigma;
            up.strict = false;
            dn.a.assign(nvars, 0);
            dn.a[i] = -1;
            dn.b = -sigma;
            dn.strict = false;
            sys.push_back(up);
            sys.push_back(dn);
            if (fm_feasible(std::move(sys), nvars)) return false;
        }
    }
    return true;
}

}  // namespace mtd
