#pragma once

// Graded families of complete ideals realized by exceptional divisors, and
// the limits of their multiplicities and degree functions.

#include "zariski/curve.hpp"

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace zariski {

/// I_n = Gamma(X, O(-ceil(n * delta))) on a fixed cluster.
struct QDivisorialSpec {
    ExcDivisor delta;
};

/// Origin blown up, then n distinct free points q_1..q_n on E_0, with
/// D_n = (2n+1) E_0 + (2n+2) (E_1 + ... + E_n).
struct StarFamilySpec {
    /// Parameters of q_1, q_2, ...; empty means t_i = i - 1.
    std::vector<Param> params;
};

/// D_n given directly, entry k holding D_{k+1} on its own cluster.
struct ExplicitSpec {
    std::vector<ExcDivisor> table;
};

using FiltrationSpec = std::variant<QDivisorialSpec, StarFamilySpec, ExplicitSpec>;

/// Throws DomainError when the spec breaks its variant's invariants.
void validate(const FiltrationSpec& spec);

/// Parameter of q_i (1-based) in a star family.
Param star_param(const StarFamilySpec& spec, std::size_t i);

struct Realization {
    ExcDivisor divisor;        // D_n before closure
    CompleteIdealModel ideal;  // antinef closure and its invariants
    const Cluster& cluster() const { return ideal.divisor.cluster(); }
};

Realization realize(const FiltrationSpec& spec, unsigned n);

/// Pulls a divisor back along the blowups that extend its cluster to `target`,
/// whose first points must coincide with the divisor's cluster.
ExcDivisor pullback(const ExcDivisor& d, const ClusterPtr& target);

/// Whether cluster `a` is a prefix of cluster `b`.
bool is_prefix(const Cluster& a, const Cluster& b);

/// I_n I_m subset of I_{n+m}, checked as an inequality of antinef divisors
/// on the larger resolution. Returns nullopt when the three clusters are not
/// nested (only possible for explicit families).
std::optional<bool> graded_law_holds(const FiltrationSpec& spec, unsigned n, unsigned m);

struct SweepOptions {
    bool parallel = false;
};

struct LimitReport {
    RationalVector sequence;             // entry n-1 holds the n-th term
    std::optional<Rational> closed_form;  // exact limit when known
    std::optional<Rational> envelope;     // C with |s_n - L| <= C / n for all computed n
    std::size_t monotone_from = 1;        // |s_n - L| nonincreasing for n >= this
    double last = 0;
    std::optional<double> richardson;     // tail extrapolation assuming a 1/n error term
    std::optional<double> rate;           // empirical exponent of the error decay
};

/// Closure invariants of I_n that the limit reports are built from.
struct FamilyTerm {
    IntegerVector degrees;  // d_i(I_n) on the n-th cluster
    Integer multiplicity;   // e(I_n)
};

/// Realizes n = 1..count once; entry n-1 holds the n-th term.
std::vector<FamilyTerm> family_terms(const FiltrationSpec& spec, unsigned count, SweepOptions options = {});

/// Fills the diagnostics of a LimitReport from a sequence and optional exact limit.
LimitReport limit_report(RationalVector sequence, std::optional<Rational> closed_form);

/// lim e(I_n)/n^2 when known exactly: -(env^2) for q-divisorial, 4 for the star family.
std::optional<Rational> multiplicity_closed_form(const FiltrationSpec& spec);

/// lim d_v(I_n)/n when known exactly.
std::optional<Rational> degree_closed_form(const FiltrationSpec& spec, PointIndex curve);

/// e(I_n) / n^2, n = 1..count.
LimitReport multiplicity_sequence(const FiltrationSpec& spec, unsigned count, SweepOptions options = {});

/// Parses "v<k>" into k. Throws DomainError for anything else.
PointIndex parse_valuation_label(std::string_view label);
std::string valuation_label(PointIndex i);

/// d_v(I_n) / n, n = 1..count. Curves absent from a realized cluster contribute 0.
LimitReport degree_limit(const FiltrationSpec& spec, PointIndex curve, unsigned count, SweepOptions options = {});

struct CommutationReport {
    LimitReport lim_of_sums;            // sum_v v(f) d_v(I_n) / n
    std::optional<Rational> sum_of_lims;
    double sum_of_lims_estimate = 0;
    bool commute = false;
    bool exact = false;                 // both sides are closed forms
};

struct CommutationOptions {
    bool require_reduced = true;  // reject f with a repeated factor
    SweepOptions sweep;
};

CommutationReport commutation_report(const FiltrationSpec& spec, const PlaneElement& f, unsigned count,
                                     CommutationOptions options = {});

struct ReesUnionReport {
    std::vector<std::vector<PointIndex>> per_n;
    std::set<PointIndex> all;
    bool stabilized = false;  // heuristic: union unchanged over the last ceil(count/4) indices
};

ReesUnionReport rees_union(const FiltrationSpec& spec, unsigned count, SweepOptions options = {});

}  // namespace zariski
