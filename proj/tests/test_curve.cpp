#include "support.hpp"

#include <doctest.h>

using namespace zariski;
using namespace zariski::testing;

TEST_CASE("polynomial parsing") {
    CHECK(to_string(parse_polynomial("y^2 - x^3")) == "-x^3 + y^2");
    CHECK(parse_polynomial("x*(x+y)") == parse_polynomial("x^2 + x*y"));
    CHECK(parse_polynomial("  ( x + y ) ^ 2 ") == parse_polynomial("x^2 + 2*x*y + y^2"));
    CHECK(parse_polynomial("3/2*x - 1/2") == Poly::monomial(Rational(3, 2), 1, 0) - Poly(Rational(1, 2)));
    CHECK(parse_polynomial("2xy") == Poly::monomial(2, 1, 1));
    CHECK(parse_polynomial("-(x - y)") == parse_polynomial("y - x"));
    CHECK(parse_polynomial("x/2") == Poly::monomial(Rational(1, 2), 1, 0));
    CHECK(parse_polynomial("x - x").is_zero());

    CHECK_THROWS_AS(parse_poly("0"), DomainError);
    CHECK_THROWS_AS(parse_poly("x - x"), DomainError);
    CHECK_THROWS_AS(parse_polynomial("x +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x ^ y"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("z"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("(x"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x / y"), ParseError);
    CHECK_THROWS_AS(parse_polynomial("x / 0"), ParseError);
    try {
        parse_polynomial("x + * y");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("property: canonical printing round-trips through the parser") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coef(-6, 6), den(1, 4);
    std::uniform_int_distribution<unsigned> ex(0, 4);
    for (int trial = 0; trial < 200; ++trial) {
        Poly p;
        for (int k = 0; k < 5; ++k) {
            Rational c(coef(rng), den(rng));
            c.canonicalize();
            p += Poly::monomial(c, ex(rng), ex(rng));
        }
        CHECK(parse_polynomial(to_string(p)) == p);
    }
}

TEST_CASE("blowup substitution") {
    const Poly cusp = parse_polynomial("y^2 - x^3");
    const Poly at_tangent = blowup_strict_transform(cusp, Param(Rational(0)));
    CHECK(at_tangent == parse_polynomial("y^2 - x"));
    CHECK(at_tangent.order() == 1);
    const Poly at_inf = blowup_strict_transform(at_tangent, Param::infinity());
    CHECK(at_inf == parse_polynomial("y - x"));
    // A line y = 2x passes through t = 2 with multiplicity one.
    CHECK(blowup_strict_transform(parse_polynomial("y - 2*x"), Param(Rational(2))) == parse_polynomial("y"));
    CHECK(blowup_strict_transform(parse_polynomial("y - 2*x"), Param(Rational(1))).order() == 0);
}

TEST_CASE("value vectors on the cusp cluster") {
    const Cluster cusp = cusp_cluster();
    const auto f = value_vector(cusp, parse_poly("y^2 - x^3"));
    CHECK(f.multiplicities == ints({2, 1, 1}));
    CHECK(f.values == ints({2, 3, 6}));
    CHECK(value_vector(cusp, parse_poly("x")).values == ints({1, 1, 2}));
    CHECK(value_vector(cusp, parse_poly("y")).values == ints({1, 2, 3}));
    CHECK(value_vector(cusp, parse_poly("1 + x")).values == ints({0, 0, 0}));
    CHECK(multiplicity_vector(cusp, parse_poly("7")) == ints({0, 0, 0}));
}

TEST_CASE("value vectors on a star cluster") {
    std::vector<Param> params;
    for (int t = 0; t < 6; ++t)
        params.emplace_back(Rational(t == 2 ? 10 : t));
    const Cluster c = star_cluster(params);
    const auto line = value_vector(c, parse_poly("y - 2*x"));
    CHECK(line.multiplicities == ints({1, 0, 0, 0, 0, 0, 0}));
    CHECK(line.values == ints({1, 1, 1, 1, 1, 1, 1}));
    // y - x passes through q_2 (t = 1).
    CHECK(value_vector(c, parse_poly("y - x")).values == ints({1, 1, 2, 1, 1, 1, 1}));
}

TEST_CASE("missing coordinates fail loudly, but only when needed") {
    const Cluster bare = star_cluster(3);
    CHECK_THROWS_AS(multiplicity_vector(bare, parse_poly("y")), MissingCoordinates);
    CHECK(multiplicity_vector(bare, parse_poly("1 + y")) == ints({0, 0, 0, 0}));
    const auto d = ExcDivisor(share(bare), ints({3, 4, 4, 4}));
    CHECK_THROWS_AS(degree_function(d, parse_poly("x")), MissingCoordinates);
}

TEST_CASE("degree functions") {
    std::vector<Param> params{Param(Rational(0))};
    const auto star1 = share(star_cluster(params));
    const ExcDivisor d1(star1, ints({3, 4}));
    // d = (2, 1), v(generic line) = (1, 1)
    CHECK(degree_function(d1, parse_poly("y + x")) == 3);
    CHECK(degree_function(d1, parse_poly("1 - y")) == 0);

    const auto cusp = share(cusp_cluster());
    const ExcDivisor maximal(cusp, ints({1, 1, 2}));
    for (const char* f : {"x", "y", "y^2 - x^3", "x^3 + y^5", "x*y*(x + y)"})
        CHECK(degree_function(maximal, parse_poly(f)) == parse_poly(f).poly().order());
}

TEST_CASE("newton polygon oracle") {
    CHECK(newton_multiplicity_oracle({{1, 1, 3}, {1, 2, 4}}) == 10);
    CHECK(newton_multiplicity_oracle({{1, 1, 1}}) == 1);
    // closure of (x^a, y^b) is {b*alpha + a*beta >= a*b}, multiplicity a*b
    CHECK(newton_multiplicity_oracle({{3, 2, 6}}) == 6);
    CHECK(newton_multiplicity_oracle({{5, 7, 35}}) == 35);
    // v(x) = 2, v(y) = 3 valuation ideal of value n: 2*area = n^2 / 6
    CHECK(newton_multiplicity_oracle({{2, 3, 6}}) == 6);
    CHECK(newton_multiplicity_oracle({{1, 1, 0}}) == 0);
    CHECK_THROWS_AS(newton_multiplicity_oracle({{1, 0, 2}, {0, 1, 3}}), DomainError);
    CHECK_THROWS_AS(newton_multiplicity_oracle({{-1, 1, 2}}), DomainError);
}

TEST_CASE("monomial valuation volume oracle") {
    const auto seq = monomial_valuation_volume_oracle(1, 1, 50);
    // #{a + b < n} = n(n+1)/2, so 2l/n^2 = (n+1)/n
    for (unsigned n = 1; n <= 50; ++n)
        CHECK(seq[n - 1] == frac(n + 1, n));
    const auto cusp = monomial_valuation_volume_oracle(2, 3, 300);
    for (unsigned n = 10; n <= 300; ++n) {
        Rational err = cusp[n - 1] - Rational(1, 6);
        if (err < 0)
            err = -err;
        CHECK(err <= frac(3, n));
    }
}

TEST_CASE("squarefree test") {
    CHECK(is_squarefree(parse_polynomial("y^2 - x^3")));
    CHECK(is_squarefree(parse_polynomial("x*y*(x + y)")));
    CHECK_FALSE(is_squarefree(parse_polynomial("x^2")));
    CHECK_FALSE(is_squarefree(parse_polynomial("(y - x^2)^2 * (x + 1)")));
    CHECK_FALSE(is_squarefree(parse_polynomial("(x*y + 1)^3")));
    CHECK(is_squarefree(parse_polynomial("x^2 + y^2")));
    CHECK(gcd(parse_polynomial("(x + y)*(x - y^2)"), parse_polynomial("(x + y)*(y + 3)")) ==
          parse_polynomial("x + y"));
    CHECK(gcd(parse_polynomial("2*x^2*y"), parse_polynomial("6*x*y^2")) == parse_polynomial("x*y"));
}

TEST_CASE("property: valuations are additive and obey the proximity inequality") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> coef(-3, 3);
    std::uniform_int_distribution<unsigned> ex(0, 3);
    auto random_element = [&] {
        for (;;) {
            Poly p;
            for (int k = 0; k < 4; ++k)
                p += Poly::monomial(Rational(coef(rng)), ex(rng), ex(rng));
            if (!p.is_zero())
                return PlaneElement(p);
        }
    };
    for (int trial = 0; trial < 150; ++trial) {
        const Cluster c = random_cluster(rng, 8, true);
        const auto f = random_element();
        const auto g = random_element();
        const auto vf = value_vector(c, f);
        const auto vg = value_vector(c, g);
        const auto vfg = value_vector(c, f * g);
        for (std::size_t i = 0; i < c.size(); ++i)
            CHECK(vfg.values[i] == vf.values[i] + vg.values[i]);
        CHECK(vf.values[0] == f.poly().order());
        CHECK(multiplicities_from_values(c, vf.values) == vf.multiplicities);
        for (PointIndex i = 0; i < c.size(); ++i) {
            Integer proximate_sum = 0;
            for (const auto& rec : c.points())
                if (std::find(rec.prox.begin(), rec.prox.end(), i) != rec.prox.end())
                    proximate_sum += vf.multiplicities[rec.id];
            CHECK(vf.multiplicities[i] >= proximate_sum);
        }
    }
}
