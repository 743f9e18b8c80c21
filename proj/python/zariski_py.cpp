#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "zariski/random.hpp"
#include "zariski/scenario.hpp"

#include <cmath>
#include <sstream>

namespace py = pybind11;
using namespace zariski;

// Exact scalars cross the boundary as int and fractions.Fraction; strings
// such as "3/4" are accepted on the way in.
namespace pybind11::detail {

template <>
struct type_caster<mpz_class> {
    PYBIND11_TYPE_CASTER(mpz_class, const_name("int"));
    bool load(handle src, bool) {
        if (!PyLong_Check(src.ptr()))
            return false;
        value.set_str(py::str(src).cast<std::string>(), 10);
        return true;
    }
    static handle cast(const mpz_class& z, return_value_policy, handle) {
        return PyLong_FromString(z.get_str().c_str(), nullptr, 10);
    }
};

template <>
struct type_caster<mpq_class> {
    PYBIND11_TYPE_CASTER(mpq_class, const_name("fractions.Fraction"));
    bool load(handle src, bool) {
        static const py::object fraction = py::module_::import("fractions").attr("Fraction");
        if (PyBool_Check(src.ptr()))
            return false;
        if (PyLong_Check(src.ptr()) || py::isinstance(src, fraction) || py::isinstance<py::str>(src)) {
            try {
                value = parse_rational(py::str(src).cast<std::string>());
                return true;
            } catch (const zariski::Error&) {
                return false;
            }
        }
        return false;
    }
    static handle cast(const mpq_class& q, return_value_policy, handle) {
        static const py::object fraction = py::module_::import("fractions").attr("Fraction");
        py::int_ num = py::reinterpret_steal<py::int_>(PyLong_FromString(q.get_num().get_str().c_str(), nullptr, 10));
        py::int_ den = py::reinterpret_steal<py::int_>(PyLong_FromString(q.get_den().get_str().c_str(), nullptr, 10));
        return fraction(num, den).release();
    }
};

}  // namespace pybind11::detail

namespace {

// None, "inf"/math.inf, or anything rational.
std::optional<Param> to_param(const py::object& t) {
    if (t.is_none())
        return std::nullopt;
    if (py::isinstance<py::float_>(t)) {
        const double d = t.cast<double>();
        if (std::isinf(d) && d > 0)
            return Param::infinity();
        throw DomainError("float parameters other than inf are not exact; pass a Fraction or a string");
    }
    if (py::isinstance<py::str>(t))
        return Param::parse(t.cast<std::string>());
    return Param(t.cast<Rational>());
}

py::object from_param(const std::optional<Param>& p) {
    if (!p)
        return py::none();
    if (p->is_infinite())
        return py::str("inf");
    return py::cast(p->value());
}

std::vector<std::vector<long>> rows(const IntMatrix& m) {
    std::vector<std::vector<long>> out(m.rows(), std::vector<long>(m.cols()));
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            out[i][j] = m(i, j);
    return out;
}

IntMatrix matrix(const std::vector<std::vector<long>>& r) {
    IntMatrix m(r.size(), r.empty() ? 0 : r[0].size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        if (r[i].size() != m.cols())
            throw DomainError("ragged matrix");
        for (std::size_t j = 0; j < m.cols(); ++j)
            m(i, j) = r[i][j];
    }
    return m;
}

PointIndex curve_index(const py::object& v) {
    if (py::isinstance<py::str>(v))
        return parse_valuation_label(v.cast<std::string>());
    return v.cast<PointIndex>();
}

// FiltrationSpec is a variant without a default-constructible first
// alternative, which pybind11's variant caster needs; box it instead.
struct Filtration {
    FiltrationSpec spec;
    explicit Filtration(FiltrationSpec s) : spec(std::move(s)) { validate(spec); }
};

// Divisors keep a frozen copy of the cluster they were built on.
ExcDivisor make_divisor(const Cluster& c, const RationalVector& a) { return ExcDivisor(share(c), a); }

std::string repr(const ExcDivisor& d) { return "Divisor" + to_string(d); }

}  // namespace

PYBIND11_MODULE(_zariski, m) {
    m.doc() = "Exact intersection theory on resolutions of plane singularities";

    auto error = py::register_exception<zariski::Error>(m, "Error");
    py::register_exception<StructuralError>(m, "StructuralError", error);
    py::register_exception<DomainError>(m, "DomainError", error);
    py::register_exception<MissingCoordinates>(m, "MissingCoordinates", error);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<ScenarioError>(m, "ScenarioError", error);

    py::class_<Cluster>(m, "Cluster")
        .def(py::init<>())
        .def("add_origin", &Cluster::add_origin)
        .def(
            "add_free_point",
            [](Cluster& c, PointIndex parent, const py::object& t) { return c.add_free_point(parent, to_param(t)); },
            py::arg("parent"), py::arg("param") = py::none())
        .def("add_satellite_point", &Cluster::add_satellite_point, py::arg("parent"), py::arg("other"))
        .def("__len__", &Cluster::size)
        .def("point",
             [](const Cluster& c, PointIndex i) {
                 const auto& p = c.point(i);
                 py::dict d;
                 d["id"] = p.id;
                 d["parent"] = p.parent ? py::cast(*p.parent) : py::none();
                 d["prox"] = p.prox;
                 d["kind"] = !p.parent ? "origin" : p.kind == PointKind::satellite ? "satellite" : "free";
                 d["param"] = from_param(p.param);
                 return d;
             })
        .def("intersection_matrix", [](const Cluster& c) { return rows(intersection_matrix(c)); })
        .def("proximity_matrix", [](const Cluster& c) { return rows(proximity_matrix(c)); })
        .def("__eq__", [](const Cluster& a, const Cluster& b) { return a == b; });

    m.def("star_cluster", [](const std::vector<py::object>& params) {
        std::vector<Param> ps;
        for (const auto& t : params) {
            auto p = to_param(t);
            if (!p)
                throw DomainError("star_cluster parameters may not be None");
            ps.push_back(*p);
        }
        return star_cluster(ps);
    });
    m.def("is_negative_definite", [](const std::vector<std::vector<long>>& r) { return is_negative_definite(matrix(r)); });
    m.def("leading_principal_minors",
          [](const std::vector<std::vector<long>>& r) { return leading_principal_minors(matrix(r)); });
    m.def("values_from_multiplicities",
          [](const Cluster& c, const IntegerVector& mult) { return values_from_multiplicities(c, mult); });
    m.def("multiplicities_from_values",
          [](const Cluster& c, const IntegerVector& v) { return multiplicities_from_values(c, v); });

    py::class_<ExcDivisor>(m, "Divisor")
        .def(py::init(&make_divisor), py::arg("cluster"), py::arg("coefficients"))
        .def_static("curve", [](const Cluster& c, PointIndex i) { return ExcDivisor::curve(share(c), i); })
        .def_property_readonly("coefficients", &ExcDivisor::coefficients)
        .def_property_readonly("cluster", &ExcDivisor::cluster)
        .def("__len__", &ExcDivisor::size)
        .def("__getitem__", [](const ExcDivisor& d, std::size_t i) {
            if (i >= d.size())
                throw py::index_error();
            return d[i];
        })
        .def("__repr__", &repr)
        .def(py::self == py::self)
        .def(py::self + py::self)
        .def(py::self - py::self)
        .def("__mul__", [](const ExcDivisor& d, const Rational& q) { return q * d; })
        .def("__rmul__", [](const ExcDivisor& d, const Rational& q) { return q * d; })
        .def("dominated_by", &ExcDivisor::dominated_by)
        .def("is_effective", &ExcDivisor::is_effective)
        .def("is_antinef", [](const ExcDivisor& d) { return is_antinef(d); })
        .def("intersect", [](const ExcDivisor& a, const ExcDivisor& b) { return intersect(a, b); })
        .def("intersections_with_curves", [](const ExcDivisor& d) { return intersections_with_curves(d); })
        .def("ceil", [](const ExcDivisor& d) { return ceil(d); })
        .def("floor", [](const ExcDivisor& d) { return floor(d); })
        .def("unload", [](const ExcDivisor& d) { return unload(d); })
        .def("nef_envelope", [](const ExcDivisor& d) { return nef_envelope(d); })
        .def("multiplicity", [](const ExcDivisor& d) { return multiplicity(d); })
        .def("degree_coefficients", [](const ExcDivisor& d) { return degree_coefficients(d); })
        .def("rees_valuations", [](const ExcDivisor& d) { return rees_valuations(d); })
        .def("fixed_part", [](const ExcDivisor& d) { return fixed_part(d); })
        .def("degree_function",
             [](const ExcDivisor& d, const std::string& f) { return degree_function(d, parse_poly(f)); });

    py::class_<CompleteIdealModel>(m, "CompleteIdeal")
        .def_readonly("divisor", &CompleteIdealModel::divisor)
        .def_readonly("degrees", &CompleteIdealModel::degrees)
        .def_readonly("multiplicity", &CompleteIdealModel::multiplicity);

    m.def("parse_polynomial", [](const std::string& text) { return to_string(parse_polynomial(text)); },
          "Canonical form of a polynomial in x and y");
    m.def("is_squarefree", [](const std::string& text) { return is_squarefree(parse_polynomial(text)); });
    m.def("value_vector", [](const Cluster& c, const std::string& f) {
        const auto v = value_vector(c, parse_poly(f));
        return py::make_tuple(v.multiplicities, v.values);
    });
    m.def("newton_multiplicity_oracle", [](const std::vector<std::tuple<Rational, Rational, Rational>>& planes) {
        std::vector<HalfPlane> region;
        for (const auto& [a, b, c] : planes)
            region.push_back(HalfPlane{a, b, c});
        return newton_multiplicity_oracle(region);
    });
    m.def("monomial_valuation_volume_oracle", &monomial_valuation_volume_oracle, py::arg("p"), py::arg("q"),
          py::arg("count"));

    py::class_<Filtration>(m, "Filtration")
        .def_static("qdivisorial", [](const ExcDivisor& d) { return Filtration{QDivisorialSpec{d}}; },
                    py::arg("delta"))
        .def_static(
            "star",
            [](const std::vector<py::object>& params) {
                StarFamilySpec s;
                for (const auto& t : params) {
                    auto p = to_param(t);
                    if (!p)
                        throw DomainError("star family parameters may not be None");
                    s.params.push_back(*p);
                }
                return Filtration{s};
            },
            py::arg("params") = std::vector<py::object>{})
        .def_static("explicit", [](const std::vector<ExcDivisor>& table) { return Filtration{ExplicitSpec{table}}; },
                    py::arg("table"))
        .def_property_readonly("kind", [](const Filtration& f) {
            return std::visit(
                [](const auto& s) -> std::string {
                    using T = std::decay_t<decltype(s)>;
                    if constexpr (std::is_same_v<T, QDivisorialSpec>)
                        return "qdivisorial";
                    else if constexpr (std::is_same_v<T, StarFamilySpec>)
                        return "star";
                    else
                        return "explicit";
                },
                f.spec);
        });

    py::class_<LimitReport>(m, "LimitReport")
        .def_readonly("sequence", &LimitReport::sequence)
        .def_readonly("closed_form", &LimitReport::closed_form)
        .def_readonly("envelope", &LimitReport::envelope)
        .def_readonly("monotone_from", &LimitReport::monotone_from)
        .def_readonly("last", &LimitReport::last)
        .def_readonly("richardson", &LimitReport::richardson)
        .def_readonly("rate", &LimitReport::rate);
    py::class_<CommutationReport>(m, "CommutationReport")
        .def_readonly("lim_of_sums", &CommutationReport::lim_of_sums)
        .def_readonly("sum_of_lims", &CommutationReport::sum_of_lims)
        .def_readonly("sum_of_lims_estimate", &CommutationReport::sum_of_lims_estimate)
        .def_readonly("commute", &CommutationReport::commute)
        .def_readonly("exact", &CommutationReport::exact);
    py::class_<ReesUnionReport>(m, "ReesUnionReport")
        .def_readonly("per_n", &ReesUnionReport::per_n)
        .def_readonly("union", &ReesUnionReport::all)
        .def_readonly("stabilized", &ReesUnionReport::stabilized);

    m.def("realize", [](const Filtration& s, unsigned n) { return realize(s.spec, n).ideal; });
    m.def(
        "multiplicity_sequence",
        [](const Filtration& s, unsigned n, bool parallel) {
            py::gil_scoped_release release;
            return multiplicity_sequence(s.spec, n, {parallel});
        },
        py::arg("spec"), py::arg("count"), py::arg("parallel") = false);
    m.def(
        "degree_limit",
        [](const Filtration& s, const py::object& v, unsigned n, bool parallel) {
            const PointIndex curve = curve_index(v);
            py::gil_scoped_release release;
            return degree_limit(s.spec, curve, n, {parallel});
        },
        py::arg("spec"), py::arg("valuation"), py::arg("count"), py::arg("parallel") = false);
    m.def(
        "commutation_report",
        [](const Filtration& s, const std::string& f, unsigned n, bool require_reduced) {
            CommutationOptions o;
            o.require_reduced = require_reduced;
            const auto element = parse_poly(f);
            py::gil_scoped_release release;
            return commutation_report(s.spec, element, n, o);
        },
        py::arg("spec"), py::arg("f"), py::arg("count"), py::arg("require_reduced") = true);
    m.def("rees_union", [](const Filtration& s, unsigned n) { return rees_union(s.spec, n); });
    
    m.def("graded_law_holds", [](const Filtration& s, unsigned n, unsigned k) { return graded_law_holds(s.spec, n, k); });

    m.def(
        "run_scenario",
        [](const std::string& text, const std::string& format, std::optional<unsigned> nmax, bool parallel) {
            if (format != "csv" && format != "table")
                throw DomainError("format must be 'csv' or 'table'");
            const Scenario s = parse_scenario(text);
            RunOptions o;
            o.format = format == "csv" ? OutputFormat::csv : OutputFormat::table;
            o.nmax = nmax;
            o.parallel = parallel;
            std::ostringstream out, log;
            const int status = run(s, out, log, o);
            return py::make_tuple(status, out.str(), log.str());
        },
        py::arg("text"), py::arg("format") = "csv", py::arg("nmax") = py::none(), py::arg("parallel") = false,
        "Parses and runs a scenario; returns (exit status, output, task log)");
    m.def("star_family_output",
          [](unsigned nmax, const std::string& element) {
              std::ostringstream out, log;
              RunOptions o;
              o.format = OutputFormat::csv;
              run(star_family_scenario(nmax, element), out, log, o);
              return out.str();
          },
          py::arg("nmax") = 10, py::arg("element") = "x");
    m.def("self_check", [](std::uint64_t seed, std::size_t trials) {
        std::vector<py::tuple> out;
        for (const auto& t : self_check(seed, trials))
            out.push_back(py::make_tuple(t.name, t.checked, t.failed));
        return out;
    });
}
