#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tg/harness.hpp"
#include "tg/reduction.hpp"

namespace py = pybind11;
using namespace tg;

namespace {

Int to_int(const py::object& o) { return Int(py::str(o).cast<std::string>()); }

py::object from_int(const Int& x) {
    return py::reinterpret_steal<py::object>(PyLong_FromString(x.get_str().c_str(), nullptr, 10));
}

CurveQ curve_from_list(const std::vector<py::object>& a) {
    if (a.size() != 5) throw py::value_error("curve wants [a1, a2, a3, a4, a6]");
    CurveQ e{to_int(a[0]), to_int(a[1]), to_int(a[2]), to_int(a[3]), to_int(a[4])};
    e.validate();
    return e;
}

py::list report_to_py(const GrowthReport& r) {
    py::list out;
    for (const auto& en : r) {
        py::dict d;
        d["deg"] = en.field->degree();
        py::list mp;
        for (const auto& c : en.field->min_poly()) mp.append(from_int(c));
        d["minpoly"] = mp;
        d["torsion"] = py::make_tuple(en.group.m, en.group.n);
        py::list pr;
        for (long p : en.primes) pr.append(p);
        d["primes"] = pr;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "torsion growth of elliptic curves over number fields of bounded degree";

    m.def(
        "torsion_growth",
        [](const std::vector<py::object>& ainvs, int d) {
            return report_to_py(torsion_growth(curve_from_list(ainvs), d));
        },
        py::arg("ainvs"), py::arg("degree"),
        "All number fields of degree dividing `degree` with primitive torsion growth,\n"
        "each as {'deg', 'minpoly', 'torsion', 'primes'}.");

    m.def(
        "naive_oracle",
        [](const std::vector<py::object>& ainvs, int d) {
            return report_to_py(naive_oracle(curve_from_list(ainvs), d));
        },
        py::arg("ainvs"), py::arg("degree"),
        "Brute-force cross-check of torsion_growth (small degrees only).");

    m.def(
        "torsion_over_q",
        [](const std::vector<py::object>& ainvs) {
            auto t = torsion_over_Q(curve_from_list(ainvs));
            return py::make_tuple(t.group.m, t.group.n);
        },
        py::arg("ainvs"), "Rational torsion structure (m, n) with m | n.");

    m.def(
        "conductor",
        [](const std::vector<py::object>& ainvs) {
            return from_int(conductor(curve_from_list(ainvs)));
        },
        py::arg("ainvs"), "Conductor of the curve.");

    m.def(
        "minimal_model",
        [](const std::vector<py::object>& ainvs) {
            CurveQ e = minimal_model(curve_from_list(ainvs));
            py::list out;
            for (const Int* c : {&e.a1, &e.a2, &e.a3, &e.a4, &e.a6}) out.append(from_int(*c));
            return out;
        },
        py::arg("ainvs"), "Global minimal model as [a1, a2, a3, a4, a6].");

    m.def(
        "factor_q",
        [](const std::vector<py::object>& coeffs) {
            std::vector<Rat> c;
            for (const auto& o : coeffs) c.emplace_back(to_int(o));
            auto fac = factor_over_Q(QPoly(std::move(c)));
            py::list out;
            for (const auto& fa : fac.factors) {
                py::list poly;
                for (const auto& q : to_primitive_z(fa.poly)) poly.append(from_int(q));
                out.append(py::make_tuple(poly, fa.mult));
            }
            return out;
        },
        py::arg("coeffs"),
        "Irreducible factors over Q of an integer polynomial (lowest degree first),\n"
        "as (primitive integer coefficients, multiplicity) pairs.");
}
