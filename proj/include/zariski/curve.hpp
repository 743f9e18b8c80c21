#pragma once

// Plane elements f in Q[x, y] localized at the origin, their behaviour under
// point blowups, and brute-force multiplicity oracles for monomial ideals.

#include "zariski/divisor.hpp"

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zariski {

/// Bivariate polynomial with exact rational coefficients, possibly zero.
class Poly {
public:
    using Exponent = std::pair<unsigned, unsigned>;  // (deg x, deg y)
    using Terms = std::map<Exponent, Rational>;

    Poly() = default;
    explicit Poly(const Rational& c);
    static Poly x();
    static Poly y();
    static Poly monomial(const Rational& c, unsigned ex, unsigned ey);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const;
    /// Lowest total degree of a term (order of vanishing at the origin). Zero polynomial: throws.
    unsigned order() const;
    unsigned total_degree() const;
    Rational coefficient(unsigned ex, unsigned ey) const;

    Poly derivative_x() const;
    Poly derivative_y() const;
    Poly pow(unsigned k) const;

    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    Poly& operator*=(const Rational& s);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) { return a *= Rational(-1); }
    friend Poly operator*(const Poly& a, const Poly& b);
    friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
    friend bool operator==(const Poly& a, const Poly& b) = default;

private:
    void add_term(const Exponent& e, const Rational& c);
    Terms terms_;
};

/// Canonical text, terms by descending total degree then descending x-degree.
std::string to_string(const Poly& p);

/// Parses the polynomial grammar documented in docs/scenario_grammar.md.
Poly parse_polynomial(std::string_view text);

/// A nonzero element of the local ring, given by a polynomial representative.
class PlaneElement {
public:
    explicit PlaneElement(Poly p);
    const Poly& poly() const noexcept { return poly_; }
    friend PlaneElement operator*(const PlaneElement& a, const PlaneElement& b) {
        return PlaneElement(a.poly_ * b.poly_);
    }

private:
    Poly poly_;
};

/// Rejects syntax errors (ParseError) and the zero polynomial (DomainError).
PlaneElement parse_poly(std::string_view text);

/// Strict transform of g at the point with parameter t on the exceptional
/// line of the blowup of the origin: g(u, u(t + v)) / u^m for finite t,
/// g(uv, v) / v^m for t = infinity, where m = order(g).
Poly blowup_strict_transform(const Poly& g, const Param& t);

/// Polynomial gcd in Q[x, y], normalized so the leading term is monic.
Poly gcd(const Poly& a, const Poly& b);

/// f has no repeated factor in Q[x, y] (gcd(f, f_x, f_y) is constant).
bool is_squarefree(const Poly& f);

struct ValuationVector {
    IntegerVector multiplicities;  // m_i: multiplicity of the strict transform at point i
    IntegerVector values;          // v_i = v_{E_i}(f)
};

/// Strict-transform multiplicities at every point of the cluster, by iterated
/// blowup substitution. Throws MissingCoordinates when the strict transform
/// passes through a point's parent and the point has no parameter.
IntegerVector multiplicity_vector(const Cluster& c, const PlaneElement& f);

ValuationVector value_vector(const Cluster& c, const PlaneElement& f);

/// e(I(R/fR)) = sum_i v_i(f) d_i(I) for I = Gamma(X, O(-d)).
Integer degree_function(const ExcDivisor& d, const PlaneElement& f);

/// Lattice half-plane a*alpha + b*beta >= c with a, b >= 0.
struct HalfPlane {
    Rational a;
    Rational b;
    Rational c;
};

/// 2 * area of the part of the positive quadrant outside the intersection of
/// the half-planes; the multiplicity of the monomial ideal they cut out.
/// Throws DomainError when the complement is unbounded.
Rational newton_multiplicity_oracle(const std::vector<HalfPlane>& region);

/// 2 * #{(a, b) in N^2 : p*a + q*b < n} / n^2 for n = 1..count: the normalized
/// colengths of the valuation ideals of the monomial valuation v(x) = p, v(y) = q.
RationalVector monomial_valuation_volume_oracle(unsigned p, unsigned q, unsigned count);

}  // namespace zariski
