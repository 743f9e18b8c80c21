// Acceptance suite: one PASS/FAIL line per criterion. The first argument is
// the path of the CLI binary (criterion 10). Exit status is nonzero if any
// criterion fails.

#include "zariski/random.hpp"
#include "zariski/scenario.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

using namespace zariski;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

// Records the first few mismatches; later ones only flip the verdict.
class Checker {
public:
    void expect(bool cond, const std::string& what) {
        if (cond)
            return;
        ok_ = false;
        if (++failures_ <= 3)
            notes_ += (notes_.empty() ? "" : "; ") + what;
    }
    Outcome done(std::string summary) const {
        if (!ok_)
            summary += " | " + std::to_string(failures_) + " mismatches: " + notes_;
        return {ok_, summary};
    }

private:
    bool ok_ = true;
    std::size_t failures_ = 0;
    std::string notes_;
};

Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

ExcDivisor star_divisor(const ClusterPtr& c, long n) {
    IntegerVector a(n + 1, Integer(2 * n + 2));
    a[0] = 2 * n + 1;
    return ExcDivisor(c, a);
}

Outcome star_matrices() {
    Checker ck;
    for (long n = 1; n <= 50; ++n) {
        const IntMatrix m = intersection_matrix(*realize(StarFamilySpec{}, n).ideal.divisor.cluster_ptr());
        IntMatrix expected(n + 1, n + 1);
        expected(0, 0) = -(n + 1);
        for (long i = 1; i <= n; ++i) {
            expected(i, i) = -1;
            expected(0, i) = expected(i, 0) = 1;
        }
        ck.expect(m == expected, "n=" + std::to_string(n));
    }
    return ck.done("(E0^2)=-(n+1), (Ei^2)=-1, (E0.Ei)=1, (Ei.Ej)=0 for n=1..50");
}

Outcome star_degrees() {
    Checker ck;
    for (long n = 1; n <= 50; ++n) {
        const auto r = realize(StarFamilySpec{}, n);
        const ExcDivisor& d = r.divisor;
        ck.expect(d == star_divisor(d.cluster_ptr(), n), "D_n shape n=" + std::to_string(n));
        ck.expect(is_antinef(d), "antinef n=" + std::to_string(n));
        ck.expect(unload(d).divisor == d, "unload fixes D_n, n=" + std::to_string(n));
        const auto deg = degree_coefficients(d);
        ck.expect(deg[0] == n + 1, "d0 n=" + std::to_string(n));
        for (long i = 1; i <= n; ++i)
            ck.expect(deg[i] == 1, "di n=" + std::to_string(n));
        std::vector<PointIndex> all(n + 1);
        for (long i = 0; i <= n; ++i)
            all[i] = i;
        ck.expect(rees_valuations(d) == all, "Rees set n=" + std::to_string(n));
    }
    return ck.done("D_n antinef and unload-fixed, d0=n+1, di=1, Rees valuations v0..vn for n=1..50");
}

Outcome star_multiplicities() {
    Checker ck;
    const auto report = multiplicity_sequence(StarFamilySpec{}, 50);
    for (long n = 1; n <= 50; ++n) {
        const Integer closed = (n + 1) * (4 * n + 1);
        const ExcDivisor d = realize(StarFamilySpec{}, n).divisor;
        ck.expect(-intersect(d, d) == Rational(closed), "-(D_n^2) n=" + std::to_string(n));
        ck.expect(report.sequence[n - 1] * n * n == Rational(closed), "e(I_n) n=" + std::to_string(n));
        if (n >= 10) {
            const Rational gap = abs_value(report.sequence[n - 1] - 4);
            ck.expect(gap <= make_rational(5, n), "n=" + std::to_string(n) + ": |e/n^2-4| = " + to_string(gap) +
                                                      " > 5/n = " + to_string(make_rational(5, n)));
        }
    }
    const Rational newton = newton_multiplicity_oracle({{1, 1, 3}, {1, 2, 4}});
    ck.expect(newton == 10, "Newton oracle gave " + to_string(newton));
    ck.expect(report.closed_form && *report.closed_form == 4, "limit 4");
    return ck.done("e(I_n)=(n+1)(4n+1) for n=1..50, Newton oracle e(I_1)=10, |e/n^2-4|<=5/n for n>=10");
}

Outcome star_noncommutation() {
    Checker ck;
    for (const char* line : {"y + x", "x", "y - 1/2*x"}) {
        const auto f = parse_poly(line);
        const auto report = commutation_report(StarFamilySpec{}, f, 60);
        for (long n = 1; n <= 60; ++n)
            ck.expect(report.lim_of_sums.sequence[n - 1] == make_rational(2 * n + 1, n),
                      std::string(line) + ": lim_of_sums(" + std::to_string(n) + ")");
        ck.expect(report.lim_of_sums.closed_form && *report.lim_of_sums.closed_form == 2,
                  std::string(line) + ": limit of sums");
        ck.expect(report.sum_of_lims && *report.sum_of_lims == 1, std::string(line) + ": sum of limits");
        ck.expect(report.exact && !report.commute, std::string(line) + ": verdict");
    }
    return ck.done("generic lines: lim_of_sums(n)=(2n+1)/n -> 2, sum_of_lims=1, commute=false (exact)");
}

Outcome cusp_limits() {
    Checker ck;
    Cluster c;
    c.add_origin();
    c.add_free_point(0, Param(Rational(0)));
    c.add_satellite_point(1, 0);
    const FiltrationSpec spec = QDivisorialSpec{ExcDivisor::curve(share(std::move(c)), 2)};
    const unsigned N = 600;
    const RationalVector closed{0, 0, make_rational(1, 6)};
    for (PointIndex v = 0; v < 3; ++v) {
        const auto r = degree_limit(spec, v, N);
        ck.expect(r.closed_form && *r.closed_form == closed[v], "closed form v" + std::to_string(v));
        for (unsigned n = 1; n <= N; ++n)
            ck.expect(abs_value(r.sequence[n - 1] - closed[v]) <= make_rational(2, n),
                      "d_v" + std::to_string(v) + " n=" + std::to_string(n));
    }
    const auto e = multiplicity_sequence(spec, N);
    ck.expect(e.closed_form && *e.closed_form == make_rational(1, 6), "multiplicity limit");
    const auto oracle = monomial_valuation_volume_oracle(2, 3, N);
    for (unsigned n = 1; n <= N; ++n)
        ck.expect(abs_value(e.sequence[n - 1] - oracle[n - 1]) <= make_rational(3, n),
                  "volume oracle n=" + std::to_string(n));
    ck.expect(abs_value(oracle[N - 1] - make_rational(1, 6)) <= make_rational(3, N), "oracle limit");
    return ck.done("cusp, delta=E2, n<=600: |d_v/n-(0,0,1/6)|<=2/n, e-limit 1/6, volume oracle (2,3) within 3/n");
}

Outcome unloading_properties() {
    Checker ck;
    Rng rng(20261016);
    const std::size_t trials = 10000;
    std::size_t nonzero = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto c = share(random_cluster(rng, 12, t % 2 == 0));
        const ExcDivisor d(c, random_integers(rng, c->size(), -5, 20));
        const ExcDivisor dbar = unload(d).divisor;
        ck.expect(is_antinef(dbar), "antinef");
        ck.expect(d.dominated_by(dbar), "extensive");
        ck.expect(unload(dbar).divisor == dbar, "idempotent");
        auto higher = d.integer_coefficients();
        for (auto& a : higher)
            a += std::uniform_int_distribution<long>(0, 3)(rng);
        ck.expect(dbar.dominated_by(unload(ExcDivisor(c, higher)).divisor), "monotone");
        auto picker = [&rng](std::span<const PointIndex> v) {
            return std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng);
        };
        const ExcDivisor first = unload(d, picker).divisor;
        const ExcDivisor second = unload(d, picker).divisor;
        ck.expect(first == second && first == dbar, "order independence");
        if (!dbar.is_zero()) {
            ++nonzero;
            for (const auto& a : dbar.coefficients())
                ck.expect(a > 0, "full support");
        }
    }
    return ck.done(std::to_string(trials) + " random clusters (<=12 points), coefficients in [-5,20], " +
                   std::to_string(nonzero) + " nonzero closures: idempotent, extensive, monotone, order-independent, positive");
}

Outcome envelope_properties() {
    Checker ck;
    Rng rng(77);
    const std::size_t trials = 1000;
    Rational worst_c100 = 0, worst_c1000 = 0;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto c = share(random_cluster(rng, 8, false));
        const ExcDivisor delta(c, random_effective_rationals(rng, c->size(), 9, 6));
        const ExcDivisor env = nef_envelope(delta);
        const auto products = intersections_with_curves(env);
        ck.expect(is_antinef(env), "antinef");
        ck.expect(delta.dominated_by(env), "dominates");
        for (std::size_t i = 0; i < env.size(); ++i)
            ck.expect(env[i] == delta[i] || products[i] == 0, "complementarity");
        const Rational lambda = make_rational(std::uniform_int_distribution<long>(1, 11)(rng),
                                              std::uniform_int_distribution<long>(1, 7)(rng));
        ck.expect(nef_envelope(lambda * delta) == lambda * env, "homogeneity");

        auto scaled_error = [&](long n) {
            const ExcDivisor dn = unload(ceil(Rational(n) * delta)).divisor;
            Rational worst = 0;
            for (std::size_t i = 0; i < env.size(); ++i)
                worst = std::max(worst, abs_value(dn[i] - n * env[i]));
            return worst;  // n * ||D_n/n - env||
        };
        const Rational c100 = scaled_error(100);
        const Rational c1000 = scaled_error(1000);
        worst_c100 = std::max(worst_c100, c100);
        worst_c1000 = std::max(worst_c1000, c1000);
        ck.expect(c1000 <= c100, "envelope constant grew: C(100)=" + to_string(c100) + " C(1000)=" + to_string(c1000) +
                                     " delta=" + to_string(delta));
    }
    return ck.done(std::to_string(trials) + " random effective rational divisors: complementarity, domination, "
                   "antinef, homogeneity; n*||D_n/n-env|| max " + to_string(worst_c100) + " at n=100, " +
                   to_string(worst_c1000) + " at n=1000");
}

Outcome valuation_engine() {
    Checker ck;
    Cluster cusp;
    cusp.add_origin();
    cusp.add_free_point(0, Param(Rational(0)));
    cusp.add_satellite_point(1, 0);
    const auto v = value_vector(cusp, parse_poly("y^2 - x^3"));
    ck.expect(v.values == IntegerVector{2, 3, 6}, "cusp values");
    Rng rng(8);
    std::uniform_int_distribution<long> coef(-4, 4);
    std::uniform_int_distribution<unsigned> ex(0, 4);
    auto random_element = [&] {
        for (;;) {
            Poly p;
            for (int k = 0; k < 4; ++k)
                p += Poly::monomial(Rational(coef(rng)), ex(rng), ex(rng));
            if (!p.is_zero())
                return PlaneElement(p);
        }
    };
    for (int t = 0; t < 100; ++t) {
        const Cluster c = random_cluster(rng, 10, true);
        const auto f = random_element();
        const auto g = random_element();
        const auto vf = value_vector(c, f), vg = value_vector(c, g), vfg = value_vector(c, f * g);
        for (std::size_t i = 0; i < c.size(); ++i)
            ck.expect(vfg.values[i] == vf.values[i] + vg.values[i], "additivity");
        ck.expect(multiplicities_from_values(c, vf.values) == vf.multiplicities, "m = P v");
        ck.expect(values_from_multiplicities(c, vf.multiplicities) == vf.values, "v = P^-1 m");
    }
    return ck.done("cusp values (2,3,6); additive on 100 random products; m = P v round-trips");
}

Outcome negative_definiteness() {
    Checker ck;
    Rng rng(4);
    std::size_t matrices = 0;
    for (int t = 0; t < 2000; ++t) {
        ck.expect(is_negative_definite(intersection_matrix(random_cluster(rng, 12, t % 2 == 0))), "random cluster");
        ++matrices;
    }
    for (std::size_t n = 1; n <= 50; ++n, ++matrices)
        ck.expect(is_negative_definite(intersection_matrix(star_cluster(n))), "star cluster");
    IntMatrix accept(2, 2), reject(2, 2);
    accept(0, 0) = -1, accept(0, 1) = accept(1, 0) = 1, accept(1, 1) = -2;
    reject(0, 0) = -1, reject(0, 1) = reject(1, 0) = 1, reject(1, 1) = -1;
    ck.expect(is_negative_definite(accept), "[[-1,1],[1,-2]]");
    ck.expect(!is_negative_definite(reject), "[[-1,1],[1,-1]]");
    return ck.done(std::to_string(matrices) + " generated matrices accepted; [[-1,1],[1,-2]] accepted, [[-1,1],[1,-1]] rejected");
}

std::string capture(const std::string& command, int& status) {
    std::string out;
    FILE* pipe = popen(command.c_str(), "r");
    if (!pipe) {
        status = -1;
        return out;
    }
    char buf[4096];
    std::size_t got;
    while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0)
        out.append(buf, got);
    status = pclose(pipe);
    return out;
}

Outcome cli_determinism(const std::string& cli) {
    Checker ck;
    if (cli.empty())
        return {false, "no CLI path given"};
    const std::string command = "\"" + cli + "\" example42 --nmax 10";
    int s1 = 0, s2 = 0;
    const std::string a = capture(command, s1);
    const std::string b = capture(command, s2);
    ck.expect(s1 == 0 && s2 == 0, "exit status");
    ck.expect(!a.empty() && a == b, "outputs differ");
    bool row = false, summary = false;
    std::istringstream in(a);
    for (std::string line; std::getline(in, line);) {
        row = row || line.rfind("1,10,", 0) == 0;
        summary = summary || line.rfind("commute=false", 0) == 0;
    }
    ck.expect(row, "row n=1 with e_I1=10");
    ck.expect(summary, "commute=false summary");
    return ck.done("example42 --nmax 10: " + std::to_string(a.size()) + " identical bytes twice, e_I1=10, commute=false");
}

}  // namespace

int main(int argc, char** argv) {
    const std::string cli = argc > 1 ? argv[1] : "";
    struct Criterion {
        const char* name;
        double budget_seconds;
        std::function<Outcome()> body;
    };
    const std::vector<Criterion> criteria{
        {"star-family intersection matrices", 5, star_matrices},
        {"star-family degree data", 5, star_degrees},
        {"star-family multiplicities", 5, star_multiplicities},
        {"non-commutation of limit and sum", 5, star_noncommutation},
        {"q-divisorial limits on the cusp", 30, cusp_limits},
        {"unloading closure properties", 60, unloading_properties},
        {"nef envelope properties", 60, envelope_properties},
        {"valuation engine", 10, valuation_engine},
        {"negative definiteness", 5, negative_definiteness},
        {"CLI determinism", 10, [&cli] { return cli_determinism(cli); }},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        const auto& c = criteria[k];
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.body();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (secs > c.budget_seconds) {
            o.ok = false;
            o.detail += " | over the " + std::to_string(static_cast<int>(c.budget_seconds)) + " s budget";
        }
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2f s", secs);
        std::cout << (o.ok ? "PASS" : "FAIL") << "  " << (k + 1) << ". " << c.name << ": " << o.detail << " ["
                  << timing << "]\n";
        std::cout.flush();
        if (!o.ok)
            ++failed;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << '\n';
    return failed ? 1 : 0;
}
