#pragma once

// Deterministic random draws. mt19937_64 has a standard-pinned sequence and
// the transforms below avoid std::*_distribution, whose output is
// implementation-defined; results are therefore reproducible across builds.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

namespace mtd {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double exponential() { return -std::log1p(-uniform01()); }

    std::uint64_t uniform_below(std::uint64_t n) {
        // Rejection-free modulo is biased; n here is tiny relative to 2^64,
        // so use the double path for determinism and uniformity.
        auto k = static_cast<std::uint64_t>(uniform01() * static_cast<double>(n));
        return k < n ? k : n - 1;
    }

    // Uniform draw from the probability simplex (normalized exponentials).
    std::vector<double> simplex_uniform(std::size_t k) {
        std::vector<double> x(k);
        double s = 0;
        for (auto& v : x) {
            v = exponential();
            s += v;
        }
        for (auto& v : x) v /= s;
        return x;
    }

    std::size_t categorical(const std::vector<double>& w) {
        double u = uniform01();
        double acc = 0;
        for (std::size_t i = 0; i + 1 < w.size(); ++i) {
            acc += w[i];
            if (u < acc) return i;
        }
        return w.empty() ? 0 : w.size() - 1;
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace mtd
