#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "crossmin/errors.hpp"
#include "crossmin/evaluate.hpp"
#include "crossmin/format.hpp"
#include "crossmin/normalize.hpp"
#include "crossmin/oracle.hpp"
#include "crossmin/reduce.hpp"
#include "crossmin/render.hpp"
#include "crossmin/solve.hpp"

namespace py = pybind11;
using namespace crossmin;

namespace {

Instance load(const std::string& text) {
  Instance inst = parse_instance(text);
  require_valid(inst);
  return inst;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Minimum crossing counts of perturbed piecewise-linear drawings";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);

  m.def("validate", [](const std::string& text) {
    Instance inst = parse_instance(text);
    auto rep = validate(inst);
    py::dict out;
    out["admissible"] = rep.admissible();
    py::list violations;
    for (const auto& v : rep.violations) violations.append(v.code + ": " + v.detail);
    out["violations"] = violations;
    out["spurs"] = rep.spurs;
    out["forks"] = rep.forks;
    return out;
  }, py::arg("instance"), "Structural validation report for an instance file text.");

  m.def("solve", [](const std::string& text) { return solve(load(text)).cr; },
        py::arg("instance"),
        "Minimum crossing count of a perturbation of a spur-free cycle instance.");

  m.def("solve_trace", [](const std::string& text) {
    SolveResult r = solve(load(text));
    return py::make_tuple(r.cr, format_trace(r.trace));
  }, py::arg("instance"));

  m.def("evaluate", [](const std::string& inst_text, const std::string& orders_text) {
    Instance inst = load(inst_text);
    return evaluate(inst, parse_orders(orders_text)).total;
  }, py::arg("instance"), py::arg("orders"),
     "Crossing count of the perturbation induced by the given pipe orders.");

  m.def("check_certificate",
        [](const std::string& inst_text, const std::string& orders_text, long long k) {
          return check_certificate(load(inst_text), parse_orders(orders_text), k);
        },
        py::arg("instance"), py::arg("orders"), py::arg("k"));

  m.def("oracle", [](const std::string& text, long long budget) {
    OracleOptions opt;
    opt.budget = budget;
    GeomOracleResult r = oracle(load(text), opt);
    return py::make_tuple(r.min, serialize_orders(r.argmin));
  }, py::arg("instance"), py::arg("budget") = 1000000,
     "Exact minimum over all pipe order sets, with a witness orders text.");

  m.def("normalize", [](const std::string& raw_text) {
    return serialize_instance(normalize(parse_raw_drawing(raw_text)));
  }, py::arg("drawing"), "Raw drawing text -> admissible instance text.");

  m.def("detect_spurs", [](const std::string& text) { return detect_spurs(load(text)); },
        py::arg("instance"));

  m.def("reduce", [](const std::string& cnf_text, bool cycle) {
    Cnf cnf = parse_dimacs(cnf_text);
    ReductionOutput out = cycle ? build_cycle_instance(cnf) : build_paths_instance(cnf);
    py::dict d;
    d["instance"] = serialize_instance(out.instance);
    d["K"] = out.K;
    d["cr2"] = out.cr2;
    d["provenance"] = provenance_json(out);
    return d;
  }, py::arg("cnf"), py::arg("cycle") = false,
     "3CNF (DIMACS text) -> hardness instance with threshold K = cr2 + 13m.");

  m.def("witness", [](const std::string& cnf_text, const std::string& assignment_text,
                      bool cycle) {
    Cnf cnf = parse_dimacs(cnf_text);
    ReductionOutput out = cycle ? build_cycle_instance(cnf) : build_paths_instance(cnf);
    Assignment tau = parse_assignment(assignment_text, cnf.num_vars);
    if (!satisfies(cnf, tau)) throw DataError("assignment does not satisfy the formula");
    PipeOrderSet orders = build_witness(out, tau);
    long long total = evaluate(out.instance, orders).total;
    return py::make_tuple(serialize_orders(orders), total, out.K);
  }, py::arg("cnf"), py::arg("assignment"), py::arg("cycle") = false,
     "Witness orders for a satisfying assignment; returns (orders, total, K).");

  m.def("render_svg", [](const std::string& inst_text, const py::object& orders_text) {
    Instance inst = load(inst_text);
    std::optional<PipeOrderSet> orders;
    if (!orders_text.is_none()) orders = parse_orders(orders_text.cast<std::string>());
    return render_svg(inst, orders);
  }, py::arg("instance"), py::arg("orders") = py::none());

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
