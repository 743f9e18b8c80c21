#include "zariski/scenario.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <sstream>

namespace zariski {

namespace {

// One task's output: a header row, data rows and trailing summary lines.
struct Block {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> notes;
};

std::string approx(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "~%.6f", x);
    return buf;
}

std::string labels(const std::vector<PointIndex>& curves) {
    std::string s;
    for (PointIndex i : curves)
        s += (s.empty() ? "" : " ") + valuation_label(i);
    return s.empty() ? "-" : s;
}

void render(const Block& b, OutputFormat format, std::ostream& out) {
    if (format == OutputFormat::csv) {
        auto line = [&out](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i)
                out << (i ? "," : "") << cells[i];
            out << '\n';
        };
        if (!b.header.empty())
            line(b.header);
        for (const auto& r : b.rows)
            line(r);
    } else if (!b.header.empty()) {
        std::vector<std::size_t> width(b.header.size());
        for (std::size_t j = 0; j < width.size(); ++j) {
            width[j] = b.header[j].size();
            for (const auto& r : b.rows)
                width[j] = std::max(width[j], r[j].size());
        }
        auto line = [&](const std::vector<std::string>& cells) {
            std::string s;
            for (std::size_t j = 0; j < cells.size(); ++j) {
                if (j)
                    s += "  ";
                s += std::string(width[j] - cells[j].size(), ' ') + cells[j];
            }
            out << s << '\n';
        };
        line(b.header);
        std::vector<std::string> rule;
        for (std::size_t w : width)
            rule.emplace_back(w, '-');
        line(rule);
        for (const auto& r : b.rows)
            line(r);
    }
    for (const auto& n : b.notes)
        out << n << '\n';
}

std::string diagnostics(const std::string& column, const LimitReport& r) {
    std::string s = column + ": last=" + approx(r.last);
    s += " richardson=" + (r.richardson ? approx(*r.richardson) : std::string("n/a"));
    s += " rate=" + (r.rate ? approx(*r.rate) : std::string("n/a"));
    if (r.closed_form) {
        s += " envelope_C=" + to_string(*r.envelope);
        s += " monotone_from=" + std::to_string(r.monotone_from);
    } else {
        s += " (estimate)";
    }
    return s;
}

class Runner {
public:
    Runner(const Scenario& s, const RunOptions& o) : s_(s), o_(o) {}

    Block execute(const Task& t) const {
        const std::string& k = t.kind;
        if (k == "intersection_matrix" || k == "proximity_matrix")
            return matrix(t);
        if (k == "negative_definite")
            return definiteness(t);
        if (k == "values")
            return values(t);
        if (k == "unload")
            return unloading(t);
        if (k == "nef_envelope")
            return envelope(t);
        if (k == "degree_function")
            return degree(t);
        if (k == "multiplicity" || k == "degree_limits" || k == "sequence")
            return sequence(t);
        if (k == "commutation")
            return commutation(t);
        if (k == "rees_union")
            return rees(t);
        if (k == "graded_law")
            return graded(t);
        throw DomainError("unknown task kind '" + k + "'");
    }

private:
    const NamedCluster& cluster(const Task& t) const { return s_.clusters.at(*t.find("cluster")); }
    const ExcDivisor& divisor(const Task& t) const { return s_.divisors.at(*t.find("divisor")); }
    const PlaneElement& element(const Task& t) const { return s_.elements.at(*t.find("element")); }
    const FiltrationSpec& filtration(const Task& t) const { return s_.filtrations.at(*t.find("filtration")); }
    SweepOptions sweep() const { return SweepOptions{o_.parallel}; }

    unsigned nmax(const Task& t) const {
        if (o_.nmax)
            return *o_.nmax;
        if (const auto* v = t.find("nmax"))
            return static_cast<unsigned>(std::stoul(*v));
        return default_nmax;
    }

    // Point names of the cluster a divisor lives on, when the scenario named them.
    std::string point_name(const Cluster& c, PointIndex i) const {
        for (const auto& [name, nc] : s_.clusters)
            if (nc.cluster.get() == &c)
                return nc.point_names.at(i);
        return "";
    }

    Block matrix(const Task& t) const {
        const auto& nc = cluster(t);
        const IntMatrix m = t.kind == "intersection_matrix" ? intersection_matrix(*nc.cluster)
                                                            : proximity_matrix(*nc.cluster);
        Block b;
        b.header = {"curve", "point"};
        for (std::size_t j = 0; j < m.cols(); ++j)
            b.header.push_back(valuation_label(j));
        for (std::size_t i = 0; i < m.rows(); ++i) {
            std::vector<std::string> row{valuation_label(i), nc.point_names[i]};
            for (std::size_t j = 0; j < m.cols(); ++j)
                row.push_back(std::to_string(m(i, j)));
            b.rows.push_back(std::move(row));
        }
        return b;
    }

    Block definiteness(const Task& t) const {
        const IntMatrix m = intersection_matrix(*cluster(t).cluster);
        Block b;
        b.header = {"k", "minor"};
        const auto minors = leading_principal_minors(m);
        for (std::size_t k = 0; k < minors.size(); ++k)
            b.rows.push_back({std::to_string(k + 1), to_string(minors[k])});
        b.notes.push_back(std::string("negative_definite=") + (is_negative_definite(m) ? "true" : "false"));
        return b;
    }

    Block values(const Task& t) const {
        const auto& nc = cluster(t);
        const auto v = value_vector(*nc.cluster, element(t));
        Block b;
        b.header = {"curve", "point", "multiplicity", "value"};
        for (PointIndex i = 0; i < nc.cluster->size(); ++i)
            b.rows.push_back({valuation_label(i), nc.point_names[i], to_string(v.multiplicities[i]),
                              to_string(v.values[i])});
        return b;
    }

    Block unloading(const Task& t) const {
        const ExcDivisor& d = divisor(t);
        const auto model = unload(d);
        const auto products = intersections_with_curves(model.divisor);
        Block b;
        b.header = {"curve", "point", "input", "closure", "intersection", "degree"};
        for (PointIndex i = 0; i < d.size(); ++i)
            b.rows.push_back({valuation_label(i), point_name(d.cluster(), i), to_string(d[i]),
                              to_string(model.divisor[i]), to_string(products[i]), to_string(model.degrees[i])});
        b.notes.push_back("multiplicity=" + to_string(model.multiplicity));
        b.notes.push_back("rees=" + labels(rees_valuations(d)));
        return b;
    }

    Block envelope(const Task& t) const {
        const ExcDivisor& d = divisor(t);
        const ExcDivisor env = nef_envelope(d);
        const auto products = intersections_with_curves(env);
        Block b;
        b.header = {"curve", "point", "delta", "envelope", "degree"};
        for (PointIndex i = 0; i < d.size(); ++i)
            b.rows.push_back({valuation_label(i), point_name(d.cluster(), i), to_string(d[i]), to_string(env[i]),
                              to_string(Rational(-products[i]))});
        b.notes.push_back("anti_positive_product=" + to_string(Rational(-intersect(env, env))));
        return b;
    }

    Block degree(const Task& t) const {
        const ExcDivisor& d = divisor(t);
        const auto model = unload(d);
        const auto v = value_vector(d.cluster(), element(t));
        Block b;
        b.header = {"curve", "point", "degree", "value"};
        for (PointIndex i = 0; i < d.size(); ++i)
            b.rows.push_back({valuation_label(i), point_name(d.cluster(), i), to_string(model.degrees[i]),
                              to_string(v.values[i])});
        b.notes.push_back("degree_function=" + to_string(degree_function(d, element(t))));
        return b;
    }

    std::vector<PointIndex> columns(const Task& t, const FiltrationSpec& spec, unsigned n) const {
        std::vector<PointIndex> cols;
        if (const auto* v = t.find("valuations")) {
            std::string list = *v;
            std::replace(list.begin(), list.end(), ',', ' ');
            std::istringstream in(list);
            for (std::string label; in >> label;)
                cols.push_back(parse_valuation_label(label));
        } else {
            for (PointIndex i = 0; i < curve_count(spec, n); ++i)
                cols.push_back(i);
        }
        return cols;
    }

    Block sequence(const Task& t) const {
        const FiltrationSpec& spec = filtration(t);
        const unsigned n = nmax(t);
        const bool with_e = t.kind != "degree_limits";
        const auto cols = t.kind == "multiplicity" ? std::vector<PointIndex>{} : columns(t, spec, n);
        const auto terms = family_terms(spec, n, sweep());

        Block b;
        b.header = {"n"};
        if (with_e) {
            b.header.push_back("e_In");
            b.header.push_back("e_In_over_n2");
        }
        for (PointIndex c : cols)
            b.header.push_back("d_" + valuation_label(c));

        RationalVector e_seq;
        std::vector<RationalVector> d_seq(cols.size());
        for (unsigned k = 1; k <= n; ++k) {
            const auto& term = terms[k - 1];
            std::vector<std::string> row{std::to_string(k)};
            if (with_e) {
                Rational q(term.multiplicity, Integer(k) * k);
                q.canonicalize();
                row.push_back(to_string(term.multiplicity));
                row.push_back(to_string(q));
                e_seq.push_back(q);
            }
            for (std::size_t j = 0; j < cols.size(); ++j) {
                const Integer d = cols[j] < term.degrees.size() ? term.degrees[cols[j]] : Integer(0);
                Rational q(d, Integer(k));
                q.canonicalize();
                row.push_back(to_string(d));
                d_seq[j].push_back(q);
            }
            b.rows.push_back(std::move(row));
        }

        // Limits: e_In_over_n2 itself, d_v(I_n)/n for the degree columns.
        std::vector<std::string> limit_row{"closed_form"};
        if (with_e) {
            const auto report = limit_report(e_seq, multiplicity_closed_form(spec));
            limit_row.push_back("");
            limit_row.push_back(report.closed_form ? to_string(*report.closed_form) : "");
            b.notes.push_back(diagnostics("e_In_over_n2", report));
        }
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const auto report = limit_report(d_seq[j], degree_closed_form(spec, cols[j]));
            limit_row.push_back(report.closed_form ? to_string(*report.closed_form) : "");
            b.notes.push_back(diagnostics("d_" + valuation_label(cols[j]) + "/n", report));
        }
        b.rows.push_back(std::move(limit_row));
        return b;
    }

    Block commutation(const Task& t) const {
        CommutationOptions opts;
        opts.sweep = sweep();
        if (const auto* r = t.find("reduced"))
            opts.require_reduced = *r == "true";
        const auto report = commutation_report(filtration(t), element(t), nmax(t), opts);
        const auto& seq = report.lim_of_sums;
        Block b;
        b.header = {"n", "lim_of_sums"};
        for (std::size_t k = 1; k <= seq.sequence.size(); ++k)
            b.rows.push_back({std::to_string(k), to_string(seq.sequence[k - 1])});
        b.rows.push_back({"closed_form", seq.closed_form ? to_string(*seq.closed_form) : ""});
        b.notes.push_back(diagnostics("lim_of_sums", seq));
        const std::string verdict = std::string("commute=") + (report.commute ? "true" : "false");
        if (report.exact)
            b.notes.push_back(verdict + " lim_of_sums→" + to_string(*seq.closed_form) +
                              " sum_of_lims=" + to_string(*report.sum_of_lims));
        else
            b.notes.push_back(verdict + " lim_of_sums→" +
                              approx(seq.richardson.value_or(seq.last)) + " sum_of_lims=" +
                              (report.sum_of_lims ? to_string(*report.sum_of_lims)
                                                  : approx(report.sum_of_lims_estimate)) +
                              " (estimate)");
        return b;
    }

    Block rees(const Task& t) const {
        const auto report = rees_union(filtration(t), nmax(t), sweep());
        Block b;
        b.header = {"n", "rees"};
        for (std::size_t k = 1; k <= report.per_n.size(); ++k)
            b.rows.push_back({std::to_string(k), labels(report.per_n[k - 1])});
        b.notes.push_back("union=" + labels({report.all.begin(), report.all.end()}));
        b.notes.push_back(std::string("stabilized=") + (report.stabilized ? "true" : "false") + " (heuristic)");
        return b;
    }

    Block graded(const Task& t) const {
        const FiltrationSpec& spec = filtration(t);
        const unsigned n = nmax(t);
        Block b;
        b.header = {"n", "m", "contained"};
        std::size_t checked = 0, failed = 0, skipped = 0;
        for (unsigned i = 1; i < n; ++i)
            for (unsigned j = i; i + j <= n; ++j) {
                const auto holds = graded_law_holds(spec, i, j);
                if (!holds) {
                    ++skipped;
                    b.rows.push_back({std::to_string(i), std::to_string(j), "not_nested"});
                    continue;
                }
                ++checked;
                if (!*holds) {
                    ++failed;
                    b.rows.push_back({std::to_string(i), std::to_string(j), "false"});
                }
            }
        b.notes.push_back("checked=" + std::to_string(checked) + " failed=" + std::to_string(failed) +
                          " not_nested=" + std::to_string(skipped));
        b.notes.push_back(std::string("graded_law=") + (failed == 0 && skipped == 0 ? "true" : "false"));
        return b;
    }

    const Scenario& s_;
    const RunOptions& o_;
};

}  // namespace

std::size_t curve_count(const FiltrationSpec& spec, unsigned nmax) {
    if (const auto* q = std::get_if<QDivisorialSpec>(&spec))
        return q->delta.size();
    if (std::holds_alternative<StarFamilySpec>(spec))
        return nmax + 1;
    const auto& table = std::get<ExplicitSpec>(spec).table;
    std::size_t most = 0;
    for (std::size_t k = 0; k < std::min<std::size_t>(nmax, table.size()); ++k)
        most = std::max(most, table[k].size());
    return most;
}

int run(const Scenario& scenario, std::ostream& out, std::ostream& log, const RunOptions& options) {
    const Runner runner(scenario, options);
    int status = 0;
    for (std::size_t k = 0; k < scenario.tasks.size(); ++k) {
        const Task& t = scenario.tasks[k];
        const std::string title = "task " + std::to_string(k + 1) + ": " + t.describe();
        if (k)
            out << '\n';
        out << (options.format == OutputFormat::csv ? "# " : "") << title << '\n';
        try {
            render(runner.execute(t), options.format, out);
        } catch (const Error& e) {
            status = 1;
            out << (options.format == OutputFormat::csv ? "# " : "") << "error: " << e.what() << '\n';
            log << "task " << k + 1 << " (line " << t.line << ") failed: " << e.what() << '\n';
        }
    }
    return status;
}

Scenario star_family_scenario(unsigned nmax, const std::string& element) {
    if (element.find_first_of("\n\r#[") != std::string::npos)
        throw ScenarioError("element text may not contain newlines, '#' or '['", 0);
    const std::string n = std::to_string(nmax);
    return parse_scenario("[filtration family]\n"
                          "kind = example42\n"
                          "[element f]\n"
                          "poly = " + element + "\n"
                          "[task]\n"
                          "sequence filtration=family nmax=" + n + "\n"
                          "commutation filtration=family element=f nmax=" + n + "\n"
                          "rees_union filtration=family nmax=" + n + "\n");
}

}  // namespace zariski
