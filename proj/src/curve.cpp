#include "zariski/curve.hpp"

#include <algorithm>
#include <optional>

namespace zariski {

namespace {

Integer binomial(unsigned n, unsigned k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

}  // namespace

Poly blowup_strict_transform(const Poly& g, const Param& t) {
    const unsigned m = g.order();
    Poly out;
    if (t.is_infinite()) {
        // x = u v, y = v: c x^a y^b -> c u^a v^(a+b-m)
        for (const auto& [e, c] : g.terms())
            out += Poly::monomial(c, e.first, e.first + e.second - m);
        return out;
    }
    // x = u, y = u (t + v): c x^a y^b -> c u^(a+b-m) (t + v)^b
    const Rational& tv = t.value();
    for (const auto& [e, c] : g.terms()) {
        const unsigned a = e.first, b = e.second;
        Rational tpow = 1;  // t^(b-k), built from k = b downward
        for (unsigned k = b + 1; k-- > 0;) {
            out += Poly::monomial(c * binomial(b, k) * tpow, a + b - m, k);
            tpow *= tv;
        }
    }
    return out;
}

IntegerVector multiplicity_vector(const Cluster& c, const PlaneElement& f) {
    const std::size_t n = c.size();
    IntegerVector m(n);
    if (n == 0)
        return m;

    // Which points still have children to process: keep local equations only for those.
    std::vector<std::size_t> pending_children(n, 0);
    for (const auto& rec : c.points())
        if (rec.parent)
            ++pending_children[*rec.parent];

    std::vector<std::optional<Poly>> local(n);
    local[0] = f.poly();
    m[0] = f.poly().order();
    for (PointIndex q = 1; q < n; ++q) {
        const auto& rec = c.point(q);
        const PointIndex p = *rec.parent;
        if (m[p] == 0) {
            // The strict transform does not pass through p, hence not through q.
            m[q] = 0;
        } else {
            if (!rec.param)
                throw MissingCoordinates("the strict transform of " + to_string(f.poly()) + " passes through point " +
                                         std::to_string(p) + " but point " + std::to_string(q) +
                                         " has no parameter");
            Poly g = blowup_strict_transform(*local[p], *rec.param);
            const unsigned mult = g.is_constant() ? 0u : g.order();
            m[q] = mult;
            if (pending_children[q] > 0 && mult > 0)
                local[q] = std::move(g);
        }
        if (--pending_children[p] == 0)
            local[p].reset();
    }
    return m;
}

ValuationVector value_vector(const Cluster& c, const PlaneElement& f) {
    ValuationVector out;
    out.multiplicities = multiplicity_vector(c, f);
    out.values = values_from_multiplicities(c, out.multiplicities);
    return out;
}

Integer degree_function(const ExcDivisor& d, const PlaneElement& f) {
    const auto degrees = degree_coefficients(d);
    Integer acc = 0;
    const auto v = value_vector(d.cluster(), f).values;
    for (std::size_t i = 0; i < degrees.size(); ++i)
        acc += v[i] * degrees[i];
    return acc;
}

// ---------------------------------------------------------------------------

Rational newton_multiplicity_oracle(const std::vector<HalfPlane>& region) {
    // Complement of the region in the quadrant is the subgraph of
    // h(alpha) = max(0, max_i (c_i - a_i alpha) / b_i), a convex piecewise
    // linear function. Its breakpoints are among the pairwise crossings and
    // the zeros of the pieces.
    std::vector<const HalfPlane*> active;
    for (const auto& h : region) {
        if (h.a < 0 || h.b < 0)
            throw DomainError("half-plane coefficients must be nonnegative");
        if (h.c <= 0)
            continue;  // holds on the whole quadrant
        if (h.a == 0 || h.b == 0)
            throw DomainError("region is not co-finite: a constraint with a zero coefficient leaves an unbounded strip");
        active.push_back(&h);
    }
    if (active.empty())
        return 0;

    std::vector<Rational> xs{Rational(0)};
    Rational right = 0;
    for (const auto* h : active) {
        const Rational zero = h->c / h->a;
        xs.push_back(zero);
        right = std::max(right, zero);
    }
    for (std::size_t i = 0; i < active.size(); ++i)
        for (std::size_t j = i + 1; j < active.size(); ++j) {
            const auto& p = *active[i];
            const auto& q = *active[j];
            // (c_p - a_p x) / b_p = (c_q - a_q x) / b_q
            const Rational den = p.a * q.b - q.a * p.b;
            if (den == 0)
                continue;
            const Rational x = (p.c * q.b - q.c * p.b) / den;
            if (x > 0 && x < right)
                xs.push_back(x);
        }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    auto height = [&](const Rational& x) {
        Rational best = 0;
        for (const auto* h : active)
            best = std::max(best, Rational((h->c - h->a * x) / h->b));
        return best;
    };

    // Polygon (0,0) -> (right,0) -> boundary points right to left; shoelace.
    std::vector<std::pair<Rational, Rational>> poly{{0, 0}};
    for (auto it = xs.rbegin(); it != xs.rend(); ++it)
        poly.emplace_back(*it, height(*it));
    Rational twice_area = 0;
    for (std::size_t i = 0; i < poly.size(); ++i) {
        const auto& [x0, y0] = poly[i];
        const auto& [x1, y1] = poly[(i + 1) % poly.size()];
        twice_area += x0 * y1 - x1 * y0;
    }
    return twice_area < 0 ? Rational(-twice_area) : twice_area;
}

RationalVector monomial_valuation_volume_oracle(unsigned p, unsigned q, unsigned count) {
    if (p == 0 || q == 0)
        throw DomainError("monomial valuation weights must be positive");
    RationalVector out;
    out.reserve(count);
    for (unsigned n = 1; n <= count; ++n) {
        Integer length = 0;
        for (unsigned long a = 0; p * a < n; ++a)
            length += (n - p * a + q - 1) / q;  // #{b >= 0 : q b < n - p a}
        out.emplace_back(Rational(2 * length, Integer(n) * n));
        out.back().canonicalize();
    }
    return out;
}

}  // namespace zariski
