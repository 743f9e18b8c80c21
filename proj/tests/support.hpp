#pragma once

// Shared fixtures and oracles for the test suites.

#include "zariski/filtration.hpp"
#include "zariski/random.hpp"

#include <random>
#include <vector>

namespace zariski::testing {

/// Origin; p1 free on E0 at t = 0 (tangent of y^2 - x^3); p2 the satellite E1 n E0.
inline Cluster cusp_cluster() {
    Cluster c;
    c.add_origin();
    c.add_free_point(0, Param(Rational(0)));
    c.add_satellite_point(1, 0);
    return c;
}

inline IntMatrix from_rows(const std::vector<std::vector<long>>& rows) {
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(i, j) = rows[i][j];
    return m;
}

inline IntegerVector ints(std::initializer_list<long> xs) {
    IntegerVector v;
    for (long x : xs)
        v.emplace_back(x);
    return v;
}

/// a/b in canonical form; gmp comparisons assume canonical operands.
inline Rational frac(long a, long b) { return make_rational(a, b); }

inline RationalVector rats(std::initializer_list<Rational> xs) { return RationalVector(xs); }

/// Brute-force least antinef integral divisor above d: scans the box
/// [d, d + reach] and takes the componentwise minimum of the antinef points.
/// Returns an empty vector when the box contains none.
inline IntegerVector brute_force_closure(const Cluster& c, const IntegerVector& d, long reach) {
    const std::size_t n = c.size();
    IntegerVector best;
    IntegerVector x = d;
    std::vector<long> offset(n, 0);
    const IntMatrix m = intersection_matrix(c);
    for (;;) {
        bool antinef = true;
        for (std::size_t i = 0; i < n && antinef; ++i) {
            Integer s = 0;
            for (std::size_t j = 0; j < n; ++j)
                s += x[j] * m(i, j);
            antinef = s <= 0;
        }
        if (antinef) {
            if (best.empty())
                best = x;
            else
                for (std::size_t i = 0; i < n; ++i)
                    if (x[i] < best[i])
                        best[i] = x[i];
        }
        std::size_t k = 0;
        while (k < n && offset[k] == reach) {
            offset[k] = 0;
            x[k] = d[k];
            ++k;
        }
        if (k == n)
            break;
        ++offset[k];
        x[k] += 1;
    }
    return best;
}

}  // namespace zariski::testing
