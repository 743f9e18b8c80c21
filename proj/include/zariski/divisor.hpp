#pragma once

// Exceptional Q-divisors on the resolution defined by a cluster.

#include "zariski/cluster.hpp"

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace zariski {

using ClusterPtr = std::shared_ptr<const Cluster>;

inline ClusterPtr share(Cluster c) { return std::make_shared<const Cluster>(std::move(c)); }

/// sum_i a_i E_i with exact rational a_i, strict-transform basis.
class ExcDivisor {
public:
    ExcDivisor(ClusterPtr cluster, RationalVector coefficients);
    ExcDivisor(ClusterPtr cluster, std::span<const Integer> coefficients);

    static ExcDivisor zero(ClusterPtr cluster);
    /// The curve E_i itself.
    static ExcDivisor curve(ClusterPtr cluster, PointIndex i);

    const Cluster& cluster() const noexcept { return *cluster_; }
    const ClusterPtr& cluster_ptr() const noexcept { return cluster_; }
    const RationalVector& coefficients() const noexcept { return coefficients_; }
    std::size_t size() const noexcept { return coefficients_.size(); }
    const Rational& operator[](PointIndex i) const { return coefficients_[i]; }

    bool is_integral() const;
    bool is_effective() const;
    bool is_zero() const;
    /// Coefficients as integers; throws DomainError if any is fractional.
    IntegerVector integer_coefficients() const;

    /// Componentwise a_i <= b_i.
    bool dominated_by(const ExcDivisor& other) const;

    ExcDivisor& operator+=(const ExcDivisor& other);
    ExcDivisor& operator-=(const ExcDivisor& other);
    ExcDivisor& operator*=(const Rational& s);

    friend ExcDivisor operator+(ExcDivisor a, const ExcDivisor& b) { return a += b; }
    friend ExcDivisor operator-(ExcDivisor a, const ExcDivisor& b) { return a -= b; }
    friend ExcDivisor operator*(const Rational& s, ExcDivisor a) { return a *= s; }
    friend bool operator==(const ExcDivisor& a, const ExcDivisor& b);

private:
    ClusterPtr cluster_;
    RationalVector coefficients_;
};

/// "(a0, a1, ...)" with a/b rationals.
std::string to_string(const ExcDivisor& d);

/// Throws DomainError unless both divisors live on the same cluster.
void require_same_cluster(const ExcDivisor& a, const ExcDivisor& b);

/// Complete m-primary ideal Gamma(X, O(-D)) represented by its antinef divisor.
struct CompleteIdealModel {
    ExcDivisor divisor;          // antinef, integral
    IntegerVector degrees;       // d_i = -(D . E_i)
    Integer multiplicity;        // e = -(D . D)
};

Rational intersect(const ExcDivisor& a, const ExcDivisor& b);

/// (D . E_i) for all i.
RationalVector intersections_with_curves(const ExcDivisor& d);

ExcDivisor ceil(const ExcDivisor& d);
ExcDivisor floor(const ExcDivisor& d);

bool is_antinef(const ExcDivisor& d);

/// Chooses which violated index to raise next; receives the current
/// violations in increasing order and returns a position into that list.
using ViolationPicker = std::function<std::size_t(std::span<const PointIndex>)>;

/// Least integral antinef divisor dominating d (unloading). d must be integral.
CompleteIdealModel unload(const ExcDivisor& d);
CompleteIdealModel unload(const ExcDivisor& d, const ViolationPicker& pick);

/// Least rational antinef divisor dominating an effective Q-divisor.
ExcDivisor nef_envelope(const ExcDivisor& delta);

/// Hilbert-Samuel multiplicity of Gamma(X, O(-d)): -(dbar . dbar).
Integer multiplicity(const ExcDivisor& d);

/// d_i = -(dbar . E_i), all nonnegative.
IntegerVector degree_coefficients(const ExcDivisor& d);

/// Curves i with d_i > 0.
std::vector<PointIndex> rees_valuations(const ExcDivisor& d);

/// unload(d) - d.
ExcDivisor fixed_part(const ExcDivisor& d);

}  // namespace zariski
