#include "support.hpp"

#include <doctest.h>

#include <algorithm>

using namespace zariski;
using namespace zariski::testing;

namespace {

ExcDivisor star_divisor(const ClusterPtr& c, std::size_t n) {
    IntegerVector a(n + 1, Integer(static_cast<long>(2 * n + 2)));
    a[0] = static_cast<long>(2 * n + 1);
    return ExcDivisor(c, a);
}

}  // namespace

TEST_CASE("intersection products on the star family") {
    for (std::size_t n : {1u, 2u, 5u, 12u}) {
        const auto c = share(star_cluster(n));
        const ExcDivisor d = star_divisor(c, n);
        const ExcDivisor minus_d = Rational(-1) * d;
        CHECK(intersect(minus_d, ExcDivisor::curve(c, 0)) == Rational(static_cast<long>(n + 1)));
        for (std::size_t i = 1; i <= n; ++i)
            CHECK(intersect(minus_d, ExcDivisor::curve(c, i)) == 1);
        // (D.D) = (2n+1)(D.E_0) + (2n+2) sum_i (D.E_i) = -(n+1)(4n+1)
        const long nn = static_cast<long>(n);
        CHECK(intersect(d, d) == Rational(-(nn + 1) * (4 * nn + 1)));
        CHECK(intersect(d, ExcDivisor::zero(c)) == 0);
    }
}

TEST_CASE("intersection is symmetric and rejects foreign clusters") {
    const auto c = share(cusp_cluster());
    const ExcDivisor a(c, rats({Rational(1, 2), 3, Rational(-2, 5)}));
    const ExcDivisor b(c, rats({2, Rational(7, 3), 1}));
    CHECK(intersect(a, b) == intersect(b, a));
    const ExcDivisor other = ExcDivisor::zero(share(star_cluster(2)));
    CHECK_THROWS_AS(intersect(a, other), DomainError);
    CHECK_THROWS_AS(ExcDivisor(c, rats({1, 2})), DomainError);
}

TEST_CASE("ceil and floor") {
    const auto c = share(star_cluster(1));
    const ExcDivisor d(c, rats({Rational(3, 2), 2}));
    CHECK(ceil(d).coefficients() == rats({2, 2}));
    CHECK(floor(d).coefficients() == rats({1, 2}));
    CHECK(ceil(ceil(d)) == ceil(d));
    const auto cusp = share(cusp_cluster());
    const ExcDivisor half_e2(cusp, rats({0, 0, Rational(1, 2)}));
    CHECK(ceil(Rational(5) * half_e2).coefficients() == rats({0, 0, 3}));
    const ExcDivisor neg(c, rats({Rational(-3, 2), Rational(-1, 3)}));
    CHECK(ceil(neg).coefficients() == rats({-1, 0}));
    CHECK(floor(neg).coefficients() == rats({-2, -1}));
}

TEST_CASE("antinef test") {
    const auto cusp = share(cusp_cluster());
    CHECK_FALSE(is_antinef(ExcDivisor::curve(cusp, 2)));
    CHECK(is_antinef(ExcDivisor::zero(cusp)));
    CHECK(is_antinef(ExcDivisor(cusp, ints({1, 1, 2}))));
    for (std::size_t n = 1; n <= 10; ++n) {
        const auto c = share(star_cluster(n));
        CHECK(is_antinef(star_divisor(c, n)));
    }
}

TEST_CASE("unloading on the cusp cluster") {
    const auto cusp = share(cusp_cluster());
    const auto model = unload(ExcDivisor(cusp, ints({0, 0, 1})));
    CHECK(model.divisor.coefficients() == rats({1, 1, 2}));
    CHECK(intersections_with_curves(model.divisor) == rats({-1, 0, 0}));
    CHECK(model.degrees == ints({1, 0, 0}));
    CHECK(model.multiplicity == 1);
    CHECK(fixed_part(ExcDivisor(cusp, ints({0, 0, 1}))).coefficients() == rats({1, 1, 1}));
    CHECK(rees_valuations(ExcDivisor(cusp, ints({1, 1, 2}))) == std::vector<PointIndex>{0});

    const ExcDivisor zero = ExcDivisor::zero(cusp);
    CHECK(unload(zero).divisor == zero);
    CHECK(multiplicity(zero) == 0);
    CHECK(degree_coefficients(zero) == ints({0, 0, 0}));
    CHECK(rees_valuations(zero).empty());
    CHECK(fixed_part(zero) == zero);

    CHECK_THROWS_AS(unload(ExcDivisor(cusp, rats({Rational(1, 2), 0, 0}))), DomainError);
}

TEST_CASE("unloading leaves the star divisors fixed") {
    for (std::size_t n = 1; n <= 20; ++n) {
        const auto c = share(star_cluster(n));
        const ExcDivisor d = star_divisor(c, n);
        const auto model = unload(d);
        CHECK(model.divisor == d);
        CHECK(model.degrees[0] == static_cast<long>(n + 1));
        for (std::size_t i = 1; i <= n; ++i)
            CHECK(model.degrees[i] == 1);
        const long nn = static_cast<long>(n);
        CHECK(model.multiplicity == (nn + 1) * (4 * nn + 1));
        CHECK(rees_valuations(d).size() == n + 1);
        CHECK(fixed_part(d).is_zero());
    }
    CHECK(multiplicity(star_divisor(share(star_cluster(1)), 1)) == 10);
}

TEST_CASE("unloading dominates non-effective input") {
    const auto cusp = share(cusp_cluster());
    CHECK(unload(ExcDivisor(cusp, ints({-5, -3, -1}))).divisor.is_zero());
    CHECK(unload(ExcDivisor(cusp, ints({-5, -3, 1}))).divisor.coefficients() == rats({1, 1, 2}));
}

TEST_CASE("unloading agrees with a brute-force closure") {
    std::mt19937_64 rng(99);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = share(random_cluster(rng, 4, false));
        const auto d = random_integers(rng, c->size(), -2, 4);
        const auto expected = brute_force_closure(*c, d, 12);
        if (expected.empty())
            continue;
        ++compared;
        CHECK(unload(ExcDivisor(c, d)).divisor.integer_coefficients() == expected);
    }
    CHECK(compared > 250);
}

TEST_CASE("nef envelope") {
    const auto cusp = share(cusp_cluster());
    const ExcDivisor half(cusp, rats({0, 0, Rational(1, 2)}));
    CHECK(nef_envelope(half).coefficients() == rats({Rational(1, 6), Rational(1, 4), Rational(1, 2)}));
    const ExcDivisor e2 = ExcDivisor::curve(cusp, 2);
    const ExcDivisor env = nef_envelope(e2);
    CHECK(env.coefficients() == rats({Rational(1, 3), Rational(1, 2), 1}));
    CHECK(-intersect(env, env) == Rational(1, 6));
    CHECK(intersections_with_curves(env) == rats({0, 0, Rational(-1, 6)}));

    const ExcDivisor m(cusp, ints({1, 1, 2}));
    CHECK(nef_envelope(m) == m);
    CHECK(nef_envelope(ExcDivisor::zero(cusp)).is_zero());
    CHECK_THROWS_AS(nef_envelope(ExcDivisor(cusp, ints({0, -1, 1}))), DomainError);
}

TEST_CASE("property: unloading is a closure operator") {
    std::mt19937_64 rng(4242);
    for (int trial = 0; trial < 500; ++trial) {
        const auto c = share(random_cluster(rng, 10, false));
        const ExcDivisor d(c, random_integers(rng, c->size(), -5, 20));
        const auto model = unload(d);
        const ExcDivisor& dbar = model.divisor;
        CHECK(is_antinef(dbar));
        CHECK(d.dominated_by(dbar));
        CHECK(unload(dbar).divisor == dbar);
        if (!dbar.is_zero()) {
            for (const auto& a : dbar.coefficients())
                CHECK(a > 0);
            CHECK(model.multiplicity > 0);
        }
        // Monotone: raising d can only raise the closure.
        auto bumped = d.integer_coefficients();
        std::uniform_int_distribution<std::size_t> pick(0, bumped.size() - 1);
        bumped[pick(rng)] += 3;
        CHECK(dbar.dominated_by(unload(ExcDivisor(c, bumped)).divisor));
        // Order independence: random violation choices.
        auto random_pick = [&rng](std::span<const PointIndex> v) {
            std::uniform_int_distribution<std::size_t> k(0, v.size() - 1);
            return k(rng);
        };
        CHECK(unload(d, random_pick).divisor == dbar);
        CHECK(unload(d, [](std::span<const PointIndex> v) { return v.size() - 1; }).divisor == dbar);
        // Degrees vanish exactly off the Rees valuations.
        const auto rees = rees_valuations(d);
        for (PointIndex i = 0; i < model.degrees.size(); ++i) {
            CHECK(model.degrees[i] >= 0);
            CHECK((model.degrees[i] > 0) == std::binary_search(rees.begin(), rees.end(), i));
        }
        CHECK(fixed_part(d).is_effective());
    }
}

TEST_CASE("property: scaling an antinef divisor scales the multiplicity quadratically") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const auto c = share(random_cluster(rng, 8, false));
        const ExcDivisor d = unload(ExcDivisor(c, random_integers(rng, c->size(), 0, 6))).divisor;
        for (long k : {1L, 2L, 5L}) {
            const ExcDivisor kd = Rational(k) * d;
            CHECK(unload(kd).divisor == kd);
            CHECK(multiplicity(kd) == k * k * multiplicity(d));
        }
    }
}

TEST_CASE("property: nef envelope complementarity and homogeneity") {
    std::mt19937_64 rng(31337);
    for (int trial = 0; trial < 300; ++trial) {
        const auto c = share(random_cluster(rng, 8, false));
        const ExcDivisor delta(c, random_effective_rationals(rng, c->size(), 9, 6));
        const ExcDivisor env = nef_envelope(delta);
        CHECK(is_antinef(env));
        CHECK(delta.dominated_by(env));
        const auto products = intersections_with_curves(env);
        for (std::size_t i = 0; i < env.size(); ++i)
            CHECK((env[i] == delta[i] || products[i] == 0));
        const Rational lambda(std::uniform_int_distribution<long>(1, 7)(rng), std::uniform_int_distribution<long>(1, 5)(rng));
        Rational l = lambda;
        l.canonicalize();
        CHECK(nef_envelope(l * delta) == l * env);
        // Rounding up never undercuts the envelope: unload(ceil(n delta)) >= n env.
        const ExcDivisor d10 = unload(ceil(Rational(10) * delta)).divisor;
        CHECK((Rational(10) * env).dominated_by(d10));
    }
}
