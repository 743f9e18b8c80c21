#include "zariski/divisor.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace zariski {

ExcDivisor::ExcDivisor(ClusterPtr cluster, RationalVector coefficients)
    : cluster_(std::move(cluster)), coefficients_(std::move(coefficients)) {
    if (!cluster_)
        throw DomainError("divisor without a cluster");
    if (coefficients_.size() != cluster_->size())
        throw DomainError("divisor has " + std::to_string(coefficients_.size()) + " coefficients, cluster has " +
                          std::to_string(cluster_->size()) + " curves");
    for (auto& a : coefficients_)
        a.canonicalize();
}

ExcDivisor::ExcDivisor(ClusterPtr cluster, std::span<const Integer> coefficients)
    : ExcDivisor(std::move(cluster), RationalVector(coefficients.begin(), coefficients.end())) {}

ExcDivisor ExcDivisor::zero(ClusterPtr cluster) {
    const std::size_t n = cluster->size();
    return ExcDivisor(std::move(cluster), RationalVector(n));
}

ExcDivisor ExcDivisor::curve(ClusterPtr cluster, PointIndex i) {
    if (i >= cluster->size())
        throw DomainError("curve index " + std::to_string(i) + " out of range");
    RationalVector a(cluster->size());
    a[i] = 1;
    return ExcDivisor(std::move(cluster), std::move(a));
}

bool ExcDivisor::is_integral() const {
    return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Rational& a) { return zariski::is_integral(a); });
}

bool ExcDivisor::is_effective() const {
    return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Rational& a) { return a >= 0; });
}

bool ExcDivisor::is_zero() const {
    return std::all_of(coefficients_.begin(), coefficients_.end(), [](const Rational& a) { return a == 0; });
}

IntegerVector ExcDivisor::integer_coefficients() const {
    IntegerVector out;
    out.reserve(size());
    for (const auto& a : coefficients_) {
        if (!zariski::is_integral(a))
            throw DomainError("integral divisor required, got coefficient " + to_string(a));
        out.push_back(a.get_num());
    }
    return out;
}

bool ExcDivisor::dominated_by(const ExcDivisor& other) const {
    require_same_cluster(*this, other);
    for (std::size_t i = 0; i < size(); ++i)
        if (coefficients_[i] > other.coefficients_[i])
            return false;
    return true;
}

ExcDivisor& ExcDivisor::operator+=(const ExcDivisor& other) {
    require_same_cluster(*this, other);
    for (std::size_t i = 0; i < size(); ++i)
        coefficients_[i] += other.coefficients_[i];
    return *this;
}

ExcDivisor& ExcDivisor::operator-=(const ExcDivisor& other) {
    require_same_cluster(*this, other);
    for (std::size_t i = 0; i < size(); ++i)
        coefficients_[i] -= other.coefficients_[i];
    return *this;
}

ExcDivisor& ExcDivisor::operator*=(const Rational& s) {
    for (auto& a : coefficients_)
        a *= s;
    return *this;
}

bool operator==(const ExcDivisor& a, const ExcDivisor& b) {
    return (a.cluster_ == b.cluster_ || *a.cluster_ == *b.cluster_) && a.coefficients_ == b.coefficients_;
}

std::string to_string(const ExcDivisor& d) {
    std::ostringstream out;
    out << '(';
    for (std::size_t i = 0; i < d.size(); ++i)
        out << (i ? ", " : "") << to_string(d[i]);
    out << ')';
    return out.str();
}

void require_same_cluster(const ExcDivisor& a, const ExcDivisor& b) {
    if (a.cluster_ptr() != b.cluster_ptr() && !(a.cluster() == b.cluster()))
        throw DomainError("divisors live on different clusters");
}

// ---------------------------------------------------------------------------

Rational intersect(const ExcDivisor& a, const ExcDivisor& b) {
    require_same_cluster(a, b);
    const auto& form = a.cluster().form();
    Rational acc = 0;
    for (PointIndex i = 0; i < a.size(); ++i)
        if (a[i] != 0)
            acc += a[i] * form.apply_row(b.coefficients(), i);
    return acc;
}

RationalVector intersections_with_curves(const ExcDivisor& d) {
    return d.cluster().form().apply(d.coefficients());
}

ExcDivisor ceil(const ExcDivisor& d) {
    RationalVector a;
    a.reserve(d.size());
    for (const auto& x : d.coefficients())
        a.emplace_back(ceil(x));
    return ExcDivisor(d.cluster_ptr(), std::move(a));
}

ExcDivisor floor(const ExcDivisor& d) {
    RationalVector a;
    a.reserve(d.size());
    for (const auto& x : d.coefficients())
        a.emplace_back(floor(x));
    return ExcDivisor(d.cluster_ptr(), std::move(a));
}

bool is_antinef(const ExcDivisor& d) {
    const auto& form = d.cluster().form();
    for (PointIndex i = 0; i < d.size(); ++i)
        if (form.apply_row(d.coefficients(), i) > 0)
            return false;
    return true;
}

namespace {

CompleteIdealModel make_model(ExcDivisor dbar, const IntegerVector& products) {
    IntegerVector degrees;
    degrees.reserve(products.size());
    Integer e = 0;
    for (std::size_t i = 0; i < products.size(); ++i) {
        degrees.push_back(-products[i]);
        e -= dbar[i].get_num() * products[i];
    }
    return CompleteIdealModel{std::move(dbar), std::move(degrees), std::move(e)};
}

}  // namespace

CompleteIdealModel unload(const ExcDivisor& d) { return unload(d, ViolationPicker{}); }

CompleteIdealModel unload(const ExcDivisor& d, const ViolationPicker& pick) {
    const auto& form = d.cluster().form();
    const std::size_t n = d.size();
    IntegerVector x = d.integer_coefficients();

    // s_i = (D . E_i), kept in sync with x.
    IntegerVector s(n);
    for (PointIndex i = 0; i < n; ++i) {
        s[i] = x[i] * form.self(i);
        for (const auto& [j, w] : form.neighbors(i))
            s[i] += x[j] * w;
    }
    std::set<PointIndex> violated;
    for (PointIndex i = 0; i < n; ++i)
        if (s[i] > 0)
            violated.insert(i);

    std::vector<PointIndex> scratch;
    while (!violated.empty()) {
        PointIndex i;
        if (pick) {
            scratch.assign(violated.begin(), violated.end());
            const std::size_t k = pick(scratch);
            if (k >= scratch.size())
                throw DomainError("violation picker returned an out-of-range position");
            i = scratch[k];
        } else {
            i = *violated.begin();
        }
        // Any antinef divisor above x must raise coefficient i by at least
        // ceil(s_i / -(E_i^2)), so this step never overshoots the closure.
        const Integer denom = -form.self(i);
        Integer step;
        mpz_cdiv_q(step.get_mpz_t(), s[i].get_mpz_t(), denom.get_mpz_t());
        x[i] += step;
        s[i] += step * form.self(i);
        if (s[i] <= 0)
            violated.erase(i);
        for (const auto& [j, w] : form.neighbors(i)) {
            s[j] += step * w;
            if (s[j] > 0)
                violated.insert(j);
            else
                violated.erase(j);
        }
    }
    return make_model(ExcDivisor(d.cluster_ptr(), x), s);
}

namespace {

// Solves A y = b exactly by Gauss-Jordan elimination; A is nonsingular.
RationalVector solve(std::vector<RationalVector> a, RationalVector b) {
    const std::size_t n = b.size();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && a[piv][k] == 0)
            ++piv;
        if (piv == n)
            throw DomainError("singular system in nef envelope");
        std::swap(a[piv], a[k]);
        std::swap(b[piv], b[k]);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == k || a[i][k] == 0)
                continue;
            const Rational f = a[i][k] / a[k][k];
            for (std::size_t j = k; j < n; ++j)
                a[i][j] -= f * a[k][j];
            b[i] -= f * b[k];
        }
    }
    for (std::size_t k = 0; k < n; ++k)
        b[k] /= a[k][k];
    return b;
}

}  // namespace

ExcDivisor nef_envelope(const ExcDivisor& delta) {
    if (!delta.is_effective())
        throw DomainError("nef envelope of a non-effective divisor " + to_string(delta));
    const auto& form = delta.cluster().form();
    const std::size_t n = delta.size();
    const RationalVector& base = delta.coefficients();
    RationalVector x = base;
    std::vector<bool> active(n, false);

    // Active-set iteration. The active set only grows: once raised, a
    // coefficient stays pinned by (x . E_i) = 0, and each re-solve can only
    // increase x because -M restricted to the active set is an M-matrix.
    for (;;) {
        bool grew = false;
        for (PointIndex i = 0; i < n; ++i)
            if (!active[i] && form.apply_row(x, i) > 0) {
                active[i] = true;
                grew = true;
            }
        if (!grew)
            break;
        std::vector<PointIndex> idx;
        std::vector<std::size_t> pos(n, n);
        for (PointIndex i = 0; i < n; ++i)
            if (active[i]) {
                pos[i] = idx.size();
                idx.push_back(i);
            }
        const std::size_t k = idx.size();
        std::vector<RationalVector> a(k, RationalVector(k));
        RationalVector b(k);
        for (std::size_t r = 0; r < k; ++r) {
            const PointIndex i = idx[r];
            a[r][r] = form.self(i);
            for (const auto& [j, w] : form.neighbors(i)) {
                if (active[j])
                    a[r][pos[j]] = w;
                else
                    b[r] -= base[j] * w;
            }
        }
        const RationalVector y = solve(std::move(a), std::move(b));
        for (std::size_t r = 0; r < k; ++r)
            x[idx[r]] = y[r];
    }
    return ExcDivisor(delta.cluster_ptr(), std::move(x));
}

Integer multiplicity(const ExcDivisor& d) { return unload(d).multiplicity; }

IntegerVector degree_coefficients(const ExcDivisor& d) { return unload(d).degrees; }

std::vector<PointIndex> rees_valuations(const ExcDivisor& d) {
    const auto degrees = degree_coefficients(d);
    std::vector<PointIndex> out;
    for (PointIndex i = 0; i < degrees.size(); ++i)
        if (degrees[i] > 0)
            out.push_back(i);
    return out;
}

ExcDivisor fixed_part(const ExcDivisor& d) { return unload(d).divisor - d; }

}  // namespace zariski
