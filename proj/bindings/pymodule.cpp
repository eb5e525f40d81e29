#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "clopenlab/monoid.hpp"
#include "clopenlab/states.hpp"
#include "clopenlab/unit_systems.hpp"
#include "clopenlab/zsubset.hpp"

namespace py = pybind11;
using namespace clopen;

namespace {

struct PyAction {
  ActionPtr ptr;
};

Depth depth_for(const ActionPtr& a, int n) {
  if (n < 1) throw std::invalid_argument("depth must be >= 1");
  if (a->as_odometer()) return Depth::odometer_level(n);
  if (a->is_shift_kind())
    return a->shift_dim() == 2 ? Depth::box(0, n - 1, 0, n - 1) : Depth::window(0, n - 1);
  if (auto* pr = a->as_product()) {
    std::vector<Depth> fs;
    for (auto& f : pr->factors) fs.push_back(depth_for(std::make_shared<ActionSpec>(*f), n));
    return Depth::product(std::move(fs));
  }
  return Depth::trivial();
}

SearchBudget make_budget(int wordlen, int depth) {
  SearchBudget b;
  b.max_word_len = wordlen;
  b.max_depth = depth;
  return b;
}

std::string rat_str(const Rat& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) s += "/" + denominator(r).str();
  return s;
}

py::dict witness_dict(const EquidecompositionWitness& w) {
  py::dict d;
  d["equi"] = w.equi;
  py::list pieces;
  for (auto& pc : w.pieces) {
    py::dict p;
    p["copy"] = pc.copy;
    p["copy_to"] = pc.copy_to;
    p["clopen"] = print_clopen(pc.clopen);
    p["word"] = pc.word.str();
    pieces.append(p);
  }
  d["pieces"] = pieces;
  d["json"] = witness_to_json(w);
  return d;
}

py::dict eq_result_dict(const EqResult& res) {
  py::dict d;
  if (auto* w = std::get_if<EquidecompositionWitness>(&res)) {
    d["found"] = true;
    d["verdict"] = w->equi ? "equidecomposable" : "subequidecomposable";
    d["witness"] = witness_dict(*w);
  } else {
    d["found"] = false;
    d["verdict"] = "unknown";
    d["reason"] = std::get<Exhausted>(res).reason;
  }
  return d;
}

py::dict state_report_dict(const StateReport& r) {
  py::dict d;
  d["value"] = rat_str(r.value);
  d["exact"] = r.exact;
  d["conclusive"] = r.conclusive;
  d["note"] = r.note;
  return d;
}

const char* verdict_str(Verdict v) {
  switch (v) {
    case Verdict::HoldsWithinBound: return "holds-within-bound";
    case Verdict::Fails: return "fails";
    default: return "unknown";
  }
}

}  // namespace

PYBIND11_MODULE(clopenlab, m) {
  m.doc() = "equidecomposition laboratory for clopen type semigroups";

  py::class_<PyAction>(m, "Action")
      .def(py::init([](const std::string& text) { return PyAction{parse_action_spec(text)}; }),
           py::arg("spec_text"))
      .def_static(
          "load", [](const std::string& path) { return PyAction{load_action_spec(path)}; },
          py::arg("path"))
      .def_property_readonly("kind", [](const PyAction& a) { return a.ptr->kind_name(); });

  m.def(
      "canonical",
      [](const PyAction& a, const std::string& e) {
        return print_clopen(canonical_form(a.ptr, parse_clopen(e)));
      },
      py::arg("action"), py::arg("expr"));
  m.def(
      "is_empty",
      [](const PyAction& a, const std::string& e) { return is_empty(a.ptr, parse_clopen(e)); },
      py::arg("action"), py::arg("expr"));
  m.def(
      "sets_equal",
      [](const PyAction& a, const std::string& x, const std::string& y) {
        return sets_equal(a.ptr, parse_clopen(x), parse_clopen(y));
      },
      py::arg("action"), py::arg("lhs"), py::arg("rhs"));
  m.def(
      "apply_word",
      [](const PyAction& a, const std::string& e, const std::string& w) {
        return print_clopen(apply_word(a.ptr, parse_clopen(e), GroupWord::parse(w)));
      },
      py::arg("action"), py::arg("expr"), py::arg("word"));

  m.def(
      "subequidecompose",
      [](const PyAction& a, const std::string& A, const std::string& B, int wordlen, int depth) {
        return eq_result_dict(
            subequidecompose(a.ptr, parse_clopen(A), parse_clopen(B), make_budget(wordlen, depth)));
      },
      py::arg("action"), py::arg("A"), py::arg("B"), py::arg("wordlen") = 3, py::arg("depth") = 4);
  m.def(
      "type_leq",
      [](const PyAction& a, const std::string& A, const std::string& B, int wordlen, int depth) {
        return eq_result_dict(
            type_leq(a.ptr, parse_type_expr(A), parse_type_expr(B), make_budget(wordlen, depth)));
      },
      py::arg("action"), py::arg("A"), py::arg("B"), py::arg("wordlen") = 3, py::arg("depth") = 4);
  m.def(
      "verify_witness",
      [](const PyAction& a, const std::string& A, const std::string& B,
         const std::string& witness_json) {
        std::string why;
        bool ok = verify_witness(a.ptr, parse_type_expr(A), parse_type_expr(B),
                                 witness_from_json(witness_json), &why);
        return py::make_tuple(ok, why);
      },
      py::arg("action"), py::arg("A"), py::arg("B"), py::arg("witness_json"));

  m.def(
      "comparison_gap",
      [](const PyAction& a, const std::string& A, const std::string& B, int depth) {
        return state_report_dict(
            comparison_gap(a.ptr, parse_clopen(A), parse_clopen(B), depth_for(a.ptr, depth)));
      },
      py::arg("action"), py::arg("A"), py::arg("B"), py::arg("depth") = 2);
  m.def(
      "measure_bounds",
      [](const PyAction& a, const std::string& A, int depth) {
        auto [lo, hi] = unique_ergodicity_gap(a.ptr, parse_clopen(A), depth_for(a.ptr, depth));
        py::dict d;
        d["min"] = state_report_dict(lo);
        d["max"] = state_report_dict(hi);
        return d;
      },
      py::arg("action"), py::arg("A"), py::arg("depth") = 2);
  m.def(
      "paradox_search",
      [](const PyAction& a, const std::string& b, int max_n, int wordlen, int depth) {
        auto res =
            paradox_search(a.ptr, parse_type_expr(b), max_n, make_budget(wordlen, depth));
        py::dict d;
        if (auto* w = std::get_if<ParadoxWitness>(&res)) {
          d["found"] = true;
          d["n"] = w->n;
          d["witness"] = witness_dict(w->witness);
        } else {
          d["found"] = false;
          d["max_n"] = std::get<NoneFound>(res).max_n;
        }
        return d;
      },
      py::arg("action"), py::arg("B"), py::arg("max_n") = 4, py::arg("wordlen") = 3,
      py::arg("depth") = 4);

  py::class_<MonoidPresentation>(m, "MonoidPresentation")
      .def_static("parse", &MonoidPresentation::parse, py::arg("text"))
      .def_readonly("gens", &MonoidPresentation::gens)
      .def("__str__", &MonoidPresentation::str);
  m.def("property_catalog", &property_catalog);
  m.def(
      "check_property",
      [](const MonoidPresentation& p, const std::string& property, long long bound,
         std::optional<Vec> param) {
        PropertyVerdict v = check_property(p, property, bound, param ? &*param : nullptr);
        py::dict d;
        d["property"] = v.property;
        d["verdict"] = verdict_str(v.verdict);
        d["certificate"] = v.certificate;
        d["witnesses"] = v.witness_vectors;
        d["bound"] = v.bound;
        return d;
      },
      py::arg("presentation"), py::arg("property"), py::arg("bound") = 4,
      py::arg("param") = std::nullopt);
  m.def(
      "grothendieck",
      [](const MonoidPresentation& p) {
        GroupInvariants g = grothendieck(p);
        py::dict d;
        d["rank"] = g.rank;
        py::list tor;
        for (auto& t : g.torsion) tor.append(t.str());
        d["torsion"] = tor;
        d["group"] = g.str();
        return d;
      },
      py::arg("presentation"));
  m.def(
      "coinvariants",
      [](const PyAction& a, int depth) {
        auto res = coinvariants(a.ptr, depth_for(a.ptr, depth));
        py::dict d;
        if (auto* g = std::get_if<CoinvariantsGroup>(&res)) {
          d["computed"] = true;
          d["group"] = g->invariants.str();
          d["atoms"] = g->atoms;
        } else {
          d["computed"] = false;
          d["reason"] = std::get<std::string>(res);
        }
        return d;
      },
      py::arg("action"), py::arg("depth") = 2);

  m.def(
      "z_density",
      [](const std::string& spec, std::int64_t window) {
        auto s = ZSubsetSpec::parse(spec);
        auto [lo, hi] = density_bounds(s, window);
        return py::make_tuple(lo.str(), hi.str());
      },
      py::arg("spec"), py::arg("window") = 4096);
  m.def(
      "z_equidecompose",
      [](const std::string& A, const std::string& B, const std::vector<std::int64_t>& shifts,
         std::int64_t window) {
        auto res = zsubset_equidecompose(ZSubsetSpec::parse(A), ZSubsetSpec::parse(B), shifts,
                                         window);
        py::dict d;
        if (auto* w = std::get_if<ZWitness>(&res)) {
          d["verdict"] = "witness";
          py::list fibers;
          for (auto& [s, piece] : w->fibers) fibers.append(py::make_tuple(s, piece.str()));
          d["fibers"] = fibers;
          d["period"] = w->period;
        } else if (auto* h = std::get_if<HallViolation>(&res)) {
          d["verdict"] = "hall-violation";
          d["F"] = h->F;
          d["neighborhood_count"] = h->neighborhood_count;
        } else {
          d["verdict"] = "unknown";
          d["reason"] = std::get<ZUnknown>(res).reason;
        }
        return d;
      },
      py::arg("A"), py::arg("B"), py::arg("shifts"), py::arg("window") = 4096);

  m.def(
      "krieger_ladder",
      [](const PyAction& a, int depth, int wordlen) {
        SearchBudget budget = make_budget(wordlen, depth);
        if (a.ptr->schema().rank == 1)
          budget.max_word_len = std::max(budget.max_word_len, (1 << depth) - 1);
        CompatibilityOracle oracle(a.ptr, budget);
        std::vector<UnitSystem> ladder;
        for (int n = 1; n <= depth; ++n) {
          Partition p = level_partition(a.ptr, depth_for(a.ptr, n));
          FiniteAlgebra alg{a.ptr, {}};
          for (std::size_t k = 0; k < p.size(); ++k) alg.atoms.push_back(p.atom_expr(k));
          ladder.push_back(young_system(alg, oracle));
        }
        auto rep = conjugate_construct(oracle, ladder, depth - 1);
        py::dict d;
        d["steps_completed"] = rep.steps_completed;
        d["verified"] = rep.verified;
        d["error"] = rep.error;
        d["audit"] = rep.audit;
        d["oracle_queries"] = oracle.queries;
        return d;
      },
      py::arg("action"), py::arg("depth") = 2, py::arg("wordlen") = 3);
}
