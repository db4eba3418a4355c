#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qfalab/analysis.hpp"
#include "qfalab/constructions.hpp"
#include "qfalab/io.hpp"
#include "qfalab/report.hpp"

namespace py = pybind11;
using namespace qfalab;

namespace {

Word to_word(const std::vector<std::string>& alphabet, const std::string& text) {
  return parse_word(alphabet, text);
}

py::dict t12_to_dict(const T12Report& report) {
  py::dict d;
  d["conditions_1_to_4"] = report.conditions_1_to_4;
  d["condition_5"] = report.condition_5;
  if (report.conditions_1_to_4) {
    d["q1"] = report.q1;
    d["q2"] = report.q2;
    d["x"] = format_word(report.minimized.alphabet, report.x);
    if (report.y) d["y"] = format_word(report.minimized.alphabet, *report.y);
  }
  d["minimized_states"] = report.minimized.states;
  return d;
}

}  // namespace

PYBIND11_MODULE(qfalab, m) {
  m.doc() = "measure-many quantum finite automata laboratory";

  py::class_<Qfa>(m, "Qfa")
      .def_readonly("states", &Qfa::states)
      .def_readonly("alphabet", &Qfa::alphabet)
      .def_readonly("start", &Qfa::start)
      .def_readonly("accept", &Qfa::accept)
      .def_readonly("reject", &Qfa::reject)
      .def_readonly("kappa_op", &Qfa::kappa_op)
      .def_readonly("dollar_op", &Qfa::dollar_op)
      .def_readonly("letter_ops", &Qfa::letter_ops)
      .def("__repr__", [](const Qfa& q) {
        return "<Qfa " + std::to_string(q.n_states()) + " states, start '" +
               q.states[q.start] + "'>";
      });

  py::class_<Dfa>(m, "Dfa")
      .def_readonly("states", &Dfa::states)
      .def_readonly("alphabet", &Dfa::alphabet)
      .def_readonly("start", &Dfa::start)
      .def("accepts",
           [](const Dfa& d, const std::string& w) { return dfa_accepts(d, to_word(d.alphabet, w)); })
      .def("__repr__", [](const Dfa& d) {
        return "<Dfa " + std::to_string(d.n_states()) + " states>";
      });

  py::class_<RunTrace>(m, "RunTrace")
      .def_readonly("p_acc", &RunTrace::p_acc)
      .def_readonly("p_rej", &RunTrace::p_rej)
      .def_readonly("p_undecided", &RunTrace::p_undecided)
      .def_property_readonly("outcome",
                             [](const RunTrace& t) { return outcome_name(t.outcome); });

  py::class_<UnionWeights>(m, "UnionWeights")
      .def_readonly("alpha1", &UnionWeights::alpha1)
      .def_readonly("alpha2", &UnionWeights::alpha2)
      .def_readonly("alpha3", &UnionWeights::alpha3)
      .def_readonly("guaranteed_p", &UnionWeights::guaranteed_p)
      .def_readonly("hypothesis_holds", &UnionWeights::hypothesis_holds);

  py::class_<DecompositionReport>(m, "DecompositionReport")
      .def_readonly("dims", &DecompositionReport::dims)
      .def_readonly("iterations_used", &DecompositionReport::iterations_used)
      .def_property_readonly("e1", [](const DecompositionReport& r) { return r.e1.columns; })
      .def_property_readonly("e2", [](const DecompositionReport& r) { return r.e2.columns; });

  m.def("build_k2", &build_k2);
  m.def("build_k3", &build_k3);
  m.def("build_even_a_qfa", &build_even_a_qfa);
  m.def("build_g1", &build_g1);
  m.def("build_g2", &build_g2);
  m.def("build_g3", &build_g3);
  m.def("build_ln", &build_ln, py::arg("n"));
  m.def("build_even_a_dfa", &build_even_a_dfa);
  m.def("complement_qfa", &complement_qfa);

  m.def("validate_qfa", [](const Qfa& qfa) {
    ValidationReport report = validate_qfa(qfa);
    py::dict d;
    d["violations"] = report.violations;
    d["warnings"] = report.warnings;
    d["ok"] = report.ok();
    return d;
  });

  m.def(
      "run_word",
      [](const Qfa& qfa, const std::string& word) {
        return run_word(qfa, to_word(qfa.alphabet, word));
      },
      py::arg("qfa"), py::arg("word"));

  m.def(
      "recognition_margin",
      [](const Qfa& qfa, const Dfa& oracle, int max_len) {
        MarginResult r = recognition_margin(qfa, oracle, max_len);
        return py::make_tuple(r.p, format_word(qfa.alphabet, r.worst_word));
      },
      py::arg("qfa"), py::arg("oracle"), py::arg("max_len"));

  m.def("dfa_minimize", &dfa_minimize);
  m.def("dfa_equivalent", [](const Dfa& a, const Dfa& b) {
    EquivalenceResult r = dfa_equivalent(a, b);
    return py::make_tuple(r.equivalent,
                          r.counterexample ? py::cast(format_word(a.alphabet, *r.counterexample))
                                           : py::none());
  });
  m.def("dfa_union", [](const Dfa& a, const Dfa& b) { return dfa_combine(a, b, BoolOp::Union); });
  m.def("dfa_intersection",
        [](const Dfa& a, const Dfa& b) { return dfa_combine(a, b, BoolOp::Intersection); });
  m.def("dfa_symmetric_difference", [](const Dfa& a, const Dfa& b) {
    return dfa_combine(a, b, BoolOp::SymmetricDifference);
  });

  m.def("check_t12", [](const Dfa& dfa) { return t12_to_dict(check_t12(dfa)); });

  m.def("union_weights", &union_weights, py::arg("p1"), py::arg("p2"));
  m.def("probabilistic_union", &probabilistic_union, py::arg("k1"), py::arg("p1"),
        py::arg("k2"), py::arg("p2"));

  m.def("decompose_nonhalting", &decompose_nonhalting);
  m.def("tv_distance", &tv_distance);

  m.def("load_qfa", [](const std::string& path) { return load_qfa(path); });
  m.def("load_dfa", &load_dfa);
  m.def("save_qfa", &save_qfa);
  m.def("save_dfa", &save_dfa);

  m.def(
      "reproduce_paper",
      [](const std::string& fixtures_dir, double tol) {
        ReproduceOptions options;
        options.fixtures_dir = fixtures_dir;
        options.tol = tol;
        std::vector<ReportRow> rows = reproduce_paper(options);
        py::list out;
        for (const ReportRow& row : rows) {
          py::dict d;
          d["criterion"] = row.criterion;
          d["claim"] = row.claim;
          d["expected"] = row.expected;
          d["computed"] = row.computed;
          d["pass"] = row.pass;
          out.append(std::move(d));
        }
        return out;
      },
      py::arg("fixtures_dir") = "fixtures", py::arg("tol") = 1e-9);
}
