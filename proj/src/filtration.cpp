#include "zariski/filtration.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace zariski {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Evaluates step(n) for n = 1..count; results are stored by index so the
// output never depends on completion order.
template <class T, class F>
std::vector<T> sweep(unsigned count, const F& step, SweepOptions options) {
    std::vector<std::optional<T>> slots(count);
    if (!options.parallel || count < 2) {
        for (unsigned n = 1; n <= count; ++n)
            slots[n - 1].emplace(step(n));
    } else {
        const unsigned workers = std::max(1u, std::min(count, std::thread::hardware_concurrency()));
        std::atomic<unsigned> next{1};
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (unsigned n = next++; n <= count; n = next++) {
                    try {
                        slots[n - 1].emplace(step(n));
                    } catch (...) {
                        std::lock_guard lock(failure_mutex);
                        if (!failure)
                            failure = std::current_exception();
                    }
                }
            });
        for (auto& t : pool)
            t.join();
        if (failure)
            std::rethrow_exception(failure);
    }
    std::vector<T> out;
    out.reserve(count);
    for (auto& s : slots)
        out.push_back(std::move(*s));
    return out;
}

const QDivisorialSpec* as_qdivisorial(const FiltrationSpec& spec) { return std::get_if<QDivisorialSpec>(&spec); }
const StarFamilySpec* as_star(const FiltrationSpec& spec) { return std::get_if<StarFamilySpec>(&spec); }

Rational abs_value(const Rational& q) { return q < 0 ? Rational(-q) : q; }

}  // namespace

std::vector<FamilyTerm> family_terms(const FiltrationSpec& spec, unsigned count, SweepOptions options) {
    validate(spec);
    return sweep<FamilyTerm>(
        count,
        [&spec](unsigned n) {
            auto r = realize(spec, n);
            return FamilyTerm{std::move(r.ideal.degrees), std::move(r.ideal.multiplicity)};
        },
        options);
}

LimitReport limit_report(RationalVector sequence, std::optional<Rational> closed_form) {
    LimitReport report;
    report.sequence = std::move(sequence);
    report.closed_form = std::move(closed_form);
    const auto& s = report.sequence;
    const std::size_t count = s.size();
    if (count == 0)
        return report;
    report.last = s.back().get_d();
    if (count >= 2) {
        const std::size_t big = count, half = count / 2;
        const Rational r = (Rational(big) * s[big - 1] - Rational(half) * s[half - 1]) / Rational(big - half);
        report.richardson = r.get_d();
    }
    if (count >= 4) {
        const Rational a = abs_value(s[count / 4 - 1] - s[count / 2 - 1]);
        const Rational b = abs_value(s[count / 2 - 1] - s[count - 1]);
        if (a > 0 && b > 0)
            report.rate = std::log2(a.get_d() / b.get_d()) / std::log2(static_cast<double>(count / 2) / (count / 4));
    }
    if (report.closed_form) {
        const Rational& limit = *report.closed_form;
        Rational c = 0;
        std::vector<Rational> err(count);
        for (std::size_t n = 1; n <= count; ++n) {
            err[n - 1] = abs_value(s[n - 1] - limit);
            c = std::max(c, Rational(err[n - 1] * n));
        }
        std::size_t from = count;
        while (from > 1 && err[from - 2] >= err[from - 1])
            --from;
        report.envelope = c;
        report.monotone_from = from;
    }
    return report;
}

void validate(const FiltrationSpec& spec) {
    std::visit(overloaded{
                   [](const QDivisorialSpec& q) {
                       if (!q.delta.is_effective())
                           throw DomainError("q-divisorial filtration needs an effective divisor, got " +
                                             to_string(q.delta));
                   },
                   [](const StarFamilySpec& s) {
                       std::set<std::string> seen;
                       for (const auto& t : s.params)
                           if (!seen.insert(to_string(t)).second)
                               throw DomainError("star family parameters must be distinct; " + to_string(t) +
                                                 " repeats");
                   },
                   [](const ExplicitSpec& e) {
                       for (const auto& d : e.table)
                           if (!d.is_integral())
                               throw DomainError("explicit filtration entries must be integral divisors");
                   },
               },
               spec);
}

Param star_param(const StarFamilySpec& spec, std::size_t i) {
    if (spec.params.empty())
        return Param(Rational(static_cast<long>(i) - 1));
    if (i == 0 || i > spec.params.size())
        throw DomainError("star family defines " + std::to_string(spec.params.size()) + " points, q_" +
                          std::to_string(i) + " requested");
    return spec.params[i - 1];
}

namespace {

ClusterPtr star_family_cluster(const StarFamilySpec& spec, unsigned n) {
    std::vector<Param> params;
    params.reserve(n);
    for (unsigned i = 1; i <= n; ++i)
        params.push_back(star_param(spec, i));
    return share(star_cluster(params));
}

}  // namespace

Realization realize(const FiltrationSpec& spec, unsigned n) {
    if (n == 0)
        throw DomainError("realize: n must be positive");
    return std::visit(overloaded{
                          [n](const QDivisorialSpec& q) {
                              ExcDivisor d = ceil(Rational(n) * q.delta);
                              auto model = unload(d);
                              return Realization{std::move(d), std::move(model)};
                          },
                          [n](const StarFamilySpec& s) {
                              auto cluster = star_family_cluster(s, n);
                              IntegerVector a(n + 1, Integer(2 * n + 2));
                              a[0] = 2 * n + 1;
                              ExcDivisor d(cluster, a);
                              auto model = unload(d);
                              return Realization{std::move(d), std::move(model)};
                          },
                          [n](const ExplicitSpec& e) {
                              if (n > e.table.size())
                                  throw DomainError("explicit filtration defines " + std::to_string(e.table.size()) +
                                                    " terms, n = " + std::to_string(n) + " requested");
                              const ExcDivisor& d = e.table[n - 1];
                              return Realization{d, unload(d)};
                          },
                      },
                      spec);
}

bool is_prefix(const Cluster& a, const Cluster& b) {
    if (a.size() > b.size())
        return false;
    for (PointIndex i = 0; i < a.size(); ++i) {
        const auto& p = a.point(i);
        const auto& q = b.point(i);
        if (p.parent != q.parent || p.prox != q.prox || p.kind != q.kind || p.param != q.param)
            return false;
    }
    return true;
}

ExcDivisor pullback(const ExcDivisor& d, const ClusterPtr& target) {
    if (!is_prefix(d.cluster(), *target))
        throw DomainError("pullback: target cluster does not extend the divisor's cluster");
    RationalVector a = d.coefficients();
    a.resize(target->size());
    for (PointIndex j = d.size(); j < target->size(); ++j)
        for (PointIndex k : target->point(j).prox)
            a[j] += a[k];
    return ExcDivisor(target, std::move(a));
}

std::optional<bool> graded_law_holds(const FiltrationSpec& spec, unsigned n, unsigned m) {
    const auto rn = realize(spec, n);
    const auto rm = realize(spec, m);
    const auto rnm = realize(spec, n + m);
    const ClusterPtr& big = rnm.ideal.divisor.cluster_ptr();
    if (!is_prefix(rn.cluster(), *big) || !is_prefix(rm.cluster(), *big))
        return std::nullopt;
    const ExcDivisor product = pullback(rn.ideal.divisor, big) + pullback(rm.ideal.divisor, big);
    return rnm.ideal.divisor.dominated_by(product);
}

LimitReport multiplicity_sequence(const FiltrationSpec& spec, unsigned count, SweepOptions options) {
    validate(spec);
    const auto all = family_terms(spec, count, options);
    RationalVector seq;
    seq.reserve(count);
    for (unsigned n = 1; n <= count; ++n) {
        Rational q(all[n - 1].multiplicity, Integer(n) * n);
        q.canonicalize();
        seq.push_back(q);
    }
    return limit_report(std::move(seq), multiplicity_closed_form(spec));
}

std::optional<Rational> multiplicity_closed_form(const FiltrationSpec& spec) {
    if (const auto* q = as_qdivisorial(spec)) {
        const ExcDivisor env = nef_envelope(q->delta);
        return -intersect(env, env);
    }
    if (as_star(spec))
        return Rational(4);
    return std::nullopt;
}

PointIndex parse_valuation_label(std::string_view label) {
    if (label.size() < 2 || label[0] != 'v')
        throw DomainError("unknown valuation label '" + std::string(label) + "'");
    PointIndex k = 0;
    for (char c : label.substr(1)) {
        if (c < '0' || c > '9')
            throw DomainError("unknown valuation label '" + std::string(label) + "'");
        k = k * 10 + static_cast<PointIndex>(c - '0');
    }
    return k;
}

std::string valuation_label(PointIndex i) { return "v" + std::to_string(i); }

std::optional<Rational> degree_closed_form(const FiltrationSpec& spec, PointIndex curve) {
    if (const auto* q = as_qdivisorial(spec)) {
        if (curve >= q->delta.size())
            return Rational(0);
        const ExcDivisor env = nef_envelope(q->delta);
        return -env.cluster().form().apply_row(env.coefficients(), curve);
    }
    if (as_star(spec))
        return Rational(curve == 0 ? 1 : 0);
    return std::nullopt;
}

namespace {

RationalVector degree_sequence(const std::vector<FamilyTerm>& all, PointIndex curve) {
    RationalVector seq;
    seq.reserve(all.size());
    for (std::size_t n = 1; n <= all.size(); ++n) {
        const auto& d = all[n - 1].degrees;
        Rational q = curve < d.size() ? Rational(d[curve], Integer(n)) : Rational(0);
        q.canonicalize();
        seq.push_back(q);
    }
    return seq;
}

}  // namespace

LimitReport degree_limit(const FiltrationSpec& spec, PointIndex curve, unsigned count, SweepOptions options) {
    validate(spec);
    const auto all = family_terms(spec, count, options);
    return limit_report(degree_sequence(all, curve), degree_closed_form(spec, curve));
}

CommutationReport commutation_report(const FiltrationSpec& spec, const PlaneElement& f, unsigned count,
                                     CommutationOptions options) {
    validate(spec);
    if (count == 0)
        throw DomainError("commutation report needs at least one term");
    if (options.require_reduced && !is_squarefree(f.poly()))
        throw DomainError(to_string(f.poly()) + " has a repeated factor, so R/fR is not reduced");

    const auto all = family_terms(spec, count, options.sweep);

    // Values v_i(f). The star family's clusters are nested, and a fixed
    // cluster trivially so; explicit families get values per term.
    std::vector<IntegerVector> values(count);
    if (const auto* q = as_qdivisorial(spec)) {
        const auto v = value_vector(q->delta.cluster(), f).values;
        std::fill(values.begin(), values.end(), v);
    } else if (const auto* s = as_star(spec)) {
        const auto v = value_vector(*star_family_cluster(*s, count), f).values;
        for (unsigned n = 1; n <= count; ++n)
            values[n - 1].assign(v.begin(), v.begin() + n + 1);
    } else {
        const auto& e = std::get<ExplicitSpec>(spec);
        for (unsigned n = 1; n <= count; ++n)
            values[n - 1] = value_vector(e.table.at(n - 1).cluster(), f).values;
    }

    RationalVector seq;
    seq.reserve(count);
    for (unsigned n = 1; n <= count; ++n) {
        const auto& d = all[n - 1].degrees;
        const auto& v = values[n - 1];
        Integer acc = 0;
        for (std::size_t i = 0; i < d.size(); ++i)
            acc += v[i] * d[i];
        Rational q(acc, Integer(n));
        q.canonicalize();
        seq.push_back(q);
    }

    CommutationReport report;
    std::optional<Rational> lim_closed;
    if (const auto* q = as_qdivisorial(spec)) {
        // Finitely many curves: the limit of the sum is the sum of the limits.
        const ExcDivisor env = nef_envelope(q->delta);
        const auto products = intersections_with_curves(env);
        Rational sum = 0;
        for (std::size_t i = 0; i < products.size(); ++i)
            sum -= Rational(values[0][i]) * products[i];
        lim_closed = sum;
        report.sum_of_lims = sum;
    } else if (as_star(spec)) {
        // Only finitely many q_i lie on the strict transform of f, so
        // v_i(f) = v_0(f) for almost all i and the averaged sum tends to 2 v_0(f);
        // the degree limits vanish except at v_0, whose limit is 1.
        const Rational v0(values[0][0]);
        lim_closed = 2 * v0;
        report.sum_of_lims = v0;
    } else {
        const auto& last_values = values.back();
        double estimate = 0;
        for (std::size_t i = 0; i < last_values.size(); ++i) {
            if (last_values[i] == 0)
                continue;
            const auto r = limit_report(degree_sequence(all, i), std::nullopt);
            estimate += last_values[i].get_d() * r.richardson.value_or(r.last);
        }
        report.sum_of_lims_estimate = estimate;
    }
    report.lim_of_sums = limit_report(std::move(seq), lim_closed);
    if (report.sum_of_lims)
        report.sum_of_lims_estimate = report.sum_of_lims->get_d();

    if (report.lim_of_sums.closed_form && report.sum_of_lims) {
        report.exact = true;
        report.commute = *report.lim_of_sums.closed_form == *report.sum_of_lims;
    } else {
        const auto& s = report.lim_of_sums.sequence;
        const double extrapolated = report.lim_of_sums.richardson.value_or(report.lim_of_sums.last);
        const double spread = count >= 2 ? std::fabs(Rational(s[count - 1] - s[count / 2 - 1]).get_d()) : 1.0;
        const double tolerance = std::max(spread, 1.0 / count);
        report.commute = std::fabs(extrapolated - report.sum_of_lims_estimate) <= tolerance;
    }
    return report;
}

ReesUnionReport rees_union(const FiltrationSpec& spec, unsigned count, SweepOptions options) {
    validate(spec);
    const auto all = family_terms(spec, count, options);
    ReesUnionReport report;
    const unsigned tail = (count + 3) / 4;
    std::set<PointIndex> before_tail;
    for (unsigned n = 1; n <= count; ++n) {
        std::vector<PointIndex> rees;
        const auto& d = all[n - 1].degrees;
        for (PointIndex i = 0; i < d.size(); ++i)
            if (d[i] > 0)
                rees.push_back(i);
        report.all.insert(rees.begin(), rees.end());
        report.per_n.push_back(std::move(rees));
        if (n + tail == count)
            before_tail = report.all;
    }
    report.stabilized = count > tail && before_tail == report.all;
    return report;
}

}  // namespace zariski
