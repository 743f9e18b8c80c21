#include "zariski/random.hpp"

#include <algorithm>
#include <map>

namespace zariski {

Cluster random_cluster(Rng& rng, std::size_t max_points, bool with_coordinates) {
    std::uniform_int_distribution<std::size_t> size_dist(1, std::max<std::size_t>(1, max_points));
    const std::size_t target = size_dist(rng);
    Cluster c;
    c.add_origin();
    std::uniform_int_distribution<int> coin(0, 2);
    while (c.size() < target) {
        std::vector<std::pair<PointIndex, PointIndex>> satellites;
        for (PointIndex p = 0; p < c.size(); ++p)
            for (const auto& [o, w] : c.form().neighbors(p))
                if (o < p && w == 1)
                    satellites.emplace_back(p, o);
        if (!satellites.empty() && coin(rng) == 0) {
            std::uniform_int_distribution<std::size_t> pick(0, satellites.size() - 1);
            const auto [p, o] = satellites[pick(rng)];
            c.add_satellite_point(p, o);
            continue;
        }
        std::uniform_int_distribution<PointIndex> parent_dist(0, c.size() - 1);
        const PointIndex parent = parent_dist(rng);
        if (!with_coordinates) {
            c.add_free_point(parent);
            continue;
        }
        std::uniform_int_distribution<int> t_dist(-3, 4);
        for (int attempt = 0; attempt < 16; ++attempt) {
            const int t = t_dist(rng);
            const Param param = t == 4 ? Param::infinity() : Param(Rational(t));
            try {
                c.add_free_point(parent, param);
                break;
            } catch (const StructuralError&) {
                // coincident or satellite position; draw again
            }
        }
    }
    return c;
}

IntegerVector random_integers(Rng& rng, std::size_t n, long lo, long hi) {
    std::uniform_int_distribution<long> dist(lo, hi);
    IntegerVector v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.emplace_back(dist(rng));
    return v;
}

RationalVector random_effective_rationals(Rng& rng, std::size_t n, long max_num, long max_den) {
    std::uniform_int_distribution<long> num(0, max_num), den(1, max_den), zero(0, 3);
    RationalVector v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        v.push_back(zero(rng) == 0 ? Rational(0) : make_rational(num(rng), den(rng)));
    return v;
}

std::vector<PropertyTally> self_check(std::uint64_t seed, std::size_t trials) {
    Rng rng(seed);
    std::map<std::string, PropertyTally> tally;
    auto record = [&tally](const char* name, bool ok) {
        auto& t = tally[name];
        t.name = name;
        ++t.checked;
        if (!ok)
            ++t.failed;
    };
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const auto c = share(random_cluster(rng, 12, false));
        const ExcDivisor d(c, random_integers(rng, c->size(), -5, 20));
        const ExcDivisor dbar = unload(d).divisor;
        record("unload_antinef", is_antinef(dbar));
        record("unload_extensive", d.dominated_by(dbar));
        record("unload_idempotent", unload(dbar).divisor == dbar);
        record("unload_positive_support",
               dbar.is_zero() || std::all_of(dbar.coefficients().begin(), dbar.coefficients().end(),
                                             [](const Rational& a) { return a > 0; }));
        auto bumped = d.integer_coefficients();
        bumped[std::uniform_int_distribution<std::size_t>(0, bumped.size() - 1)(rng)] += 1;
        record("unload_monotone", dbar.dominated_by(unload(ExcDivisor(c, bumped)).divisor));
        const ViolationPicker random_pick = [&rng](std::span<const PointIndex> v) {
            return std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng);
        };
        record("unload_order_independent", unload(d, random_pick).divisor == dbar);

        const ExcDivisor delta(c, random_effective_rationals(rng, c->size(), 9, 6));
        const ExcDivisor env = nef_envelope(delta);
        const auto products = intersections_with_curves(env);
        bool complementary = true;
        for (std::size_t i = 0; i < env.size(); ++i)
            complementary = complementary && (env[i] == delta[i] || products[i] == 0);
        record("envelope_antinef", is_antinef(env));
        record("envelope_dominates", delta.dominated_by(env));
        record("envelope_complementary", complementary);
        const Rational lambda = make_rational(std::uniform_int_distribution<long>(1, 9)(rng),
                                              std::uniform_int_distribution<long>(1, 7)(rng));
        record("envelope_homogeneous", nef_envelope(lambda * delta) == lambda * env);
    }
    std::vector<PropertyTally> out;
    for (auto& [name, t] : tally)
        out.push_back(std::move(t));
    return out;
}

}  // namespace zariski
