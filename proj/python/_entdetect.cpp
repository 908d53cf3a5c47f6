#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "entdetect/criteria.hpp"
#include "entdetect/density_matrix.hpp"
#include "entdetect/families.hpp"
#include "entdetect/linalg.hpp"
#include "entdetect/measures.hpp"
#include "entdetect/reproduce.hpp"
#include "entdetect/search.hpp"
#include "entdetect/state_io.hpp"
#include "entdetect/states.hpp"
#include "entdetect/version.hpp"

namespace py = pybind11;
using namespace entdetect;

namespace {

const std::map<std::string, CriterionKind> kKinds{
    {"realignment", CriterionKind::Realignment},
    {"ppt", CriterionKind::Ppt},
    {"bordered", CriterionKind::Bordered},
    {"gme", CriterionKind::Gme},
    {"fullsep", CriterionKind::FullSeparability},
    {"concurrence", CriterionKind::ConcurrenceBound},
    {"cren", CriterionKind::CrenBound},
    {"gme-concurrence", CriterionKind::GmeConcurrenceBound},
    {"baseline", CriterionKind::ConcurrenceBaseline},
};

CriterionSpec make_spec(const std::string& kind, double alpha, double beta, int l, int q,
                        std::optional<std::vector<double>> alphas, std::optional<int> cut, double tol) {
    const auto it = kKinds.find(kind);
    if (it == kKinds.end()) throw InvalidArgument("unknown criterion '" + kind + "'");
    CriterionSpec s;
    s.kind = it->second;
    s.bipartite = {alpha, beta, l};
    s.multipartite.q = q;
    s.multipartite.l = l;
    if (alphas) s.multipartite.alphas = *alphas;
    if (cut) s.party = *cut - 1;
    s.tolerance = tol;
    return s;
}

py::dict verdict_dict(const CriterionVerdict& v) {
    py::dict d;
    d["verdict"] = to_string(v.verdict);
    d["detected"] = v.detected();
    d["norm"] = v.norm_value;
    d["bound"] = v.bound;
    d["margin"] = v.margin;
    return d;
}

py::dict bound_dict(const BoundResult& b) {
    py::dict d;
    d["measure"] = to_string(b.measure);
    d["value"] = b.value;
    d["informative"] = b.value > 0.0;
    return d;
}

DensityMatrix as_bipartite(const DensityMatrix& r, const CriterionSpec& s, const std::string& name) {
    if (s.party) return bipartition(r, *s.party);
    if (r.parties() != 2) throw InvalidArgument(name + " on a multipartite state needs a cut");
    return r;
}

} // namespace

PYBIND11_MODULE(_entdetect, m) {
    m.doc() = "Entanglement detection with bordered realignment matrices.";
    m.attr("__version__") = kVersion;

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<FormatError>(m, "FormatError", PyExc_ValueError);
    static py::exception<NoThresholdFound> no_threshold(m, "NoThresholdFound", base.ptr());
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const NoThresholdFound& e) {
            py::list profile;
            for (const auto& [x, v] : e.profile()) profile.append(py::make_tuple(x, v));
            py::object err = py::reinterpret_borrow<py::object>(no_threshold.ptr())(e.what());
            err.attr("profile") = profile;
            PyErr_SetObject(no_threshold.ptr(), err.ptr());
        }
    });

    py::class_<DensityMatrix>(m, "DensityMatrix")
        .def(py::init<ComplexMatrix, Dims>(), py::arg("matrix"), py::arg("dims"))
        .def_property_readonly("matrix", &DensityMatrix::matrix)
        .def_property_readonly("dims", &DensityMatrix::dims)
        .def_property_readonly("dim", &DensityMatrix::dim)
        .def_property_readonly("parties", &DensityMatrix::parties)
        .def("to_json", [](const DensityMatrix& r) { return state_to_json(r); })
        .def_static("from_json", &state_from_json)
        .def("__repr__", [](const DensityMatrix& r) {
            std::string s = "DensityMatrix(dims=[";
            for (std::size_t i = 0; i < r.dims().size(); ++i) s += (i ? ", " : "") + std::to_string(r.dims()[i]);
            return s + "])";
        });

    m.def("validate", [](const DensityMatrix& r) {
        const auto v = validate(r);
        py::dict d;
        d["valid"] = v.valid();
        d["hermitian"] = v.hermitian();
        d["unit_trace"] = v.unit_trace();
        d["positive"] = v.positive();
        d["hermiticity_defect"] = v.hermiticity_defect;
        d["trace_defect"] = v.trace_defect;
        d["min_eigenvalue"] = v.min_eigenvalue;
        return d;
    });
    m.def("read_state", &read_state_file);
    m.def("write_state", &write_state_file);

    m.def("realign", &realign, py::arg("z"), py::arg("m"), py::arg("n"));
    m.def("trace_norm", [](const ComplexMatrix& a) { return trace_norm(a); });
    m.def("partial_trace", [](const DensityMatrix& r, std::vector<int> traced) { return partial_trace(r, traced); },
          py::arg("rho"), py::arg("traced"));
    m.def("partial_transpose", [](const DensityMatrix& r, int k) { return partial_transpose(r, k); },
          py::arg("rho"), py::arg("subsystem"));
    m.def("bordered_matrix",
          [](const DensityMatrix& r, double a, double b, int l) { return bordered_matrix(r, {a, b, l}); },
          py::arg("rho"), py::arg("alpha"), py::arg("beta"), py::arg("l") = 1);

    m.def("bell_state", &bell_state);
    m.def("ghz3_state", &ghz3_state);
    m.def("w_bar_state", &w_bar_state);
    m.def("tiles_upb_state", &tiles_upb_state);
    m.def("horodecki_2x4", &horodecki_2x4, py::arg("d"));
    m.def("horodecki_3x3", &horodecki_3x3, py::arg("x"));
    m.def("mix_with_white_noise", &mix_with_white_noise, py::arg("rho"), py::arg("p"));
    m.def("random_pure", &random_pure, py::arg("dims"), py::arg("seed"));
    m.def("random_mixed", &random_mixed, py::arg("dims"), py::arg("rank"), py::arg("seed"));
    m.def("random_separable", &random_separable, py::arg("dims"), py::arg("terms"), py::arg("seed"));
    m.def("random_biseparable", &random_biseparable, py::arg("dims"), py::arg("terms"), py::arg("seed"));

    m.def("family_ids", &builtin_family_ids);
    m.def(
        "family_state",
        [](const std::string& id, double value, const std::map<std::string, double>& fixed) {
            return make_builtin_family(id, fixed).at(value);
        },
        py::arg("id"), py::arg("value"), py::arg("fixed") = std::map<std::string, double>{});

    m.def(
        "detect",
        [](const DensityMatrix& r, const std::string& kind, double alpha, double beta, int l, int q,
           std::optional<std::vector<double>> alphas, std::optional<int> cut, double tol) {
            require_valid(r);
            auto s = make_spec(kind, alpha, beta, l, q, alphas, cut, tol);
            if (s.kind == CriterionKind::FullSeparability && s.multipartite.alphas.empty())
                s.multipartite.alphas.assign(r.parties() - q + 1, alpha);
            switch (s.kind) {
            case CriterionKind::Ppt: return verdict_dict(ppt_test(r, s.party, tol));
            case CriterionKind::Gme: return verdict_dict(gme_test(r, s.bipartite, tol));
            case CriterionKind::FullSeparability:
                return verdict_dict(full_separability_test(r, s.multipartite, tol));
            case CriterionKind::Realignment: return verdict_dict(realignment_test(as_bipartite(r, s, kind), tol));
            case CriterionKind::Bordered:
                return verdict_dict(bordered_realignment_test(as_bipartite(r, s, kind), s.bipartite, tol));
            default: throw InvalidArgument("'" + kind + "' is a measure bound; use bound()");
            }
        },
        py::arg("rho"), py::arg("criterion") = "bordered", py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
        py::arg("l") = 1, py::arg("q") = 1, py::arg("alphas") = py::none(), py::arg("cut") = py::none(),
        py::arg("tol") = kDecisionTolerance);

    m.def(
        "bound",
        [](const DensityMatrix& r, const std::string& measure, double alpha, double beta, int l,
           std::optional<int> cut, bool clamp) {
            require_valid(r);
            const auto s = make_spec(measure, alpha, beta, l, 1, std::nullopt, cut, kDecisionTolerance);
            auto bip = [&] { return as_bipartite(r, s, measure); };
            switch (s.kind) {
            case CriterionKind::ConcurrenceBound: return bound_dict(concurrence_lower_bound(bip(), s.bipartite, clamp));
            case CriterionKind::CrenBound: return bound_dict(cren_lower_bound(bip(), s.bipartite, clamp));
            case CriterionKind::GmeConcurrenceBound:
                return bound_dict(gme_concurrence_lower_bound(r, s.bipartite, clamp));
            case CriterionKind::ConcurrenceBaseline: return bound_dict(realignment_concurrence_baseline(bip(), clamp));
            default: throw InvalidArgument("'" + measure + "' is not a measure bound");
            }
        },
        py::arg("rho"), py::arg("measure") = "concurrence", py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
        py::arg("l") = 1, py::arg("cut") = py::none(), py::arg("clamp") = false);

    m.def(
        "threshold",
        [](const std::string& family, const std::string& kind, double alpha, double beta, int l, int q,
           std::optional<std::vector<double>> alphas, std::optional<int> cut,
           std::optional<std::pair<double, double>> bracket, double search_tol,
           const std::map<std::string, double>& fixed) {
            const auto fam = make_builtin_family(family, fixed);
            auto s = make_spec(kind, alpha, beta, l, q, alphas, cut, kDecisionTolerance);
            if (s.kind == CriterionKind::FullSeparability && s.multipartite.alphas.empty())
                s.multipartite.alphas.assign(fam.at(fam.lo).parties() - q + 1, alpha);
            const auto r = find_threshold(fam, s, bracket, search_tol);
            py::dict d;
            d["family"] = r.family;
            d["criterion"] = r.criterion;
            d["threshold"] = r.threshold;
            d["lo"] = r.lo;
            d["hi"] = r.hi;
            d["margin_lo"] = r.margin_lo;
            d["margin_hi"] = r.margin_hi;
            d["detected_above"] = r.detected_above;
            d["monotone"] = r.monotone;
            d["evaluations"] = r.evaluations;
            return d;
        },
        py::arg("family"), py::arg("criterion") = "bordered", py::arg("alpha") = 1.0, py::arg("beta") = 1.0,
        py::arg("l") = 1, py::arg("q") = 1, py::arg("alphas") = py::none(), py::arg("cut") = py::none(),
        py::arg("bracket") = py::none(), py::arg("search_tol") = kThresholdTolerance,
        py::arg("fixed") = std::map<std::string, double>{});

    m.def("reproduce_ids", &reproduce_ids);
    m.def("reproduce", [](const std::string& id) {
        const auto r = reproduce(id);
        py::list checks;
        for (const auto& c : r.checks) {
            py::dict d;
            d["label"] = c.label;
            d["computed"] = c.computed;
            d["reference"] = c.reference ? py::cast(*c.reference) : py::none();
            d["tolerance"] = c.tolerance;
            d["pass"] = c.pass;
            d["note"] = c.note;
            checks.append(d);
        }
        py::dict d;
        d["id"] = r.id;
        d["title"] = r.title;
        d["parameters"] = r.parameters;
        d["checks"] = checks;
        d["columns"] = r.table_columns;
        d["rows"] = r.table_rows;
        d["passed"] = r.passed();
        return d;
    });
}
