#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "smullyan/arith/codec.hpp"
#include "smullyan/arith/eval.hpp"
#include "smullyan/arith/frame.hpp"
#include "smullyan/arith/models.hpp"
#include "smullyan/cli.hpp"
#include "smullyan/error.hpp"
#include "smullyan/gallery.hpp"
#include "smullyan/properties.hpp"

namespace py = pybind11;
using namespace smullyan;
using nlohmann::json;

namespace {

py::object to_py(const json& j) {
  switch (j.type()) {
    case json::value_t::null: return py::none();
    case json::value_t::boolean: return py::bool_(j.get<bool>());
    case json::value_t::number_integer: return py::int_(j.get<std::int64_t>());
    case json::value_t::number_unsigned: return py::int_(j.get<std::uint64_t>());
    case json::value_t::number_float: return py::float_(j.get<double>());
    case json::value_t::string: return py::str(j.get<std::string>());
    case json::value_t::array: {
      py::list out;
      for (const auto& x : j) out.append(to_py(x));
      return std::move(out);
    }
    default: {
      py::dict out;
      for (auto it = j.begin(); it != j.end(); ++it) out[py::str(it.key())] = to_py(it.value());
      return std::move(out);
    }
  }
}

py::int_ to_pyint(const BigInt& n) {
  std::string s = n.str();
  return py::reinterpret_steal<py::int_>(PyLong_FromString(s.c_str(), nullptr, 10));
}

BigInt from_pyint(const py::int_& n) {
  std::string s = py::str(n);
  if (!s.empty() && s[0] == '-') throw Error(Errc::BadInput, "codes are natural numbers");
  return BigInt(s);
}

std::vector<PropertyId> parse_props(const std::vector<std::string>& names) {
  std::vector<PropertyId> out;
  for (const auto& n : names) out.push_back(parse_property(n));
  return out;
}

class PyModel {
 public:
  explicit PyModel(std::shared_ptr<const SmullyanModel> m) : m_(std::move(m)) {}

  std::string name() const { return m_->name(); }
  std::string closure() const { return closure_name(m_->closure()); }
  SmStr str(const std::string& text) const { return parse_smstr(text, m_->alphabet()); }
  bool is_predicate(const std::string& h) const { return m_->is_predicate(str(h)); }
  bool phi_contains(const std::string& h, const std::string& x) const { return m_->phi_contains(str(h), str(x)); }
  bool holds_(const std::string& s) const { return holds(*m_, str(s)); }
  std::string sentence_class_(const std::string& s) const { return sentence_class_name(sentence_class(*m_, str(s))); }
  py::dict fixed_point_(const std::string& h) const {
    auto c = fixed_point(*m_, str(h));
    py::dict d;
    d["sentence"] = c.sentence.to_dsl();
    d["holds_sentence"] = c.holds_sentence;
    d["holds_prefixed"] = c.holds_prefixed;
    return d;
  }
  py::dict diag_witness_(const std::string& h) const {
    auto w = diag_witness(*m_, str(h));
    py::dict d;
    d["sentence"] = w.sentence.to_dsl();
    d["holds_sentence"] = w.holds_sentence;
    d["in_phi"] = w.in_phi;
    d["discriminates"] = w.discriminates;
    return d;
  }
  py::object check_(const std::string& prop, std::size_t pred_len, std::size_t str_len) const {
    return to_py(verdict_to_json(check(*m_, parse_property(prop), Budget{pred_len, str_len})));
  }

 private:
  std::shared_ptr<const SmullyanModel> m_;
};

arith::IndexUniverse universe_from(const std::optional<std::vector<std::string>>& formulas) {
  if (!formulas) return arith::IndexUniverse::builtin();
  arith::IndexUniverse u;
  for (const auto& f : *formulas) u.add("", arith::parse_formula(f));
  return u;
}

std::vector<arith::Formula> theory_from(const std::vector<std::string>& members) {
  std::vector<arith::Formula> out;
  for (const auto& m : members) out.push_back(arith::parse_formula(m));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Smullyan models, their properties, and arithmetic diagonal constructions";

  static PyObject* error_type = PyErr_NewException("smullyan._core.SmullyanError", PyExc_RuntimeError, nullptr);
  m.add_object("SmullyanError", py::handle(error_type));
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object inst = py::handle(error_type)(e.what());
      inst.attr("code") = std::string(errc_name(e.code()));
      PyErr_SetObject(error_type, inst.ptr());
    }
  });

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("name", &PyModel::name)
      .def_property_readonly("closure", &PyModel::closure)
      .def("is_predicate", &PyModel::is_predicate, py::arg("h"))
      .def("phi_contains", &PyModel::phi_contains, py::arg("h"), py::arg("x"))
      .def("holds", &PyModel::holds_, py::arg("s"))
      .def("sentence_class", &PyModel::sentence_class_, py::arg("s"))
      .def("fixed_point", &PyModel::fixed_point_, py::arg("h"))
      .def("diag_witness", &PyModel::diag_witness_, py::arg("h"))
      .def("check", &PyModel::check_, py::arg("prop"), py::arg("pred_len") = 4, py::arg("str_len") = 12);

  m.def("gallery_names", &gallery_names);
  m.def("load", [](const std::string& name) { return PyModel(std::make_shared<Model>(load(name))); }, py::arg("name"));
  m.def("load_model_json", [](const std::string& text) {
    return PyModel(std::make_shared<Model>(Model::build(spec_from_json(json::parse(text)))));
  }, py::arg("text"));
  m.def("verdict_matrix", [](std::size_t pred_len, std::size_t str_len, const std::vector<std::string>& props,
                             const std::vector<std::string>& entries) {
    return to_py(verdict_matrix(Budget{pred_len, str_len}, parse_props(props), entries).to_json());
  }, py::arg("pred_len") = 4, py::arg("str_len") = 12, py::arg("props") = std::vector<std::string>{},
     py::arg("entries") = std::vector<std::string>{});
  m.def("verify_closed_forms", [](const std::string& name, std::size_t pred_len, std::size_t str_len) {
    return to_py(verify_closed_forms(gallery_entry(name), pred_len, str_len).to_json());
  }, py::arg("name"), py::arg("pred_len") = 4, py::arg("str_len") = 12);
  m.def("decide_unary", [](const std::vector<bool>& prefix, const std::vector<bool>& cycle, const std::string& prop) {
    return to_py(verdict_to_json(decide_unary(EvPeriodicSet(prefix, cycle), parse_property(prop))));
  }, py::arg("prefix"), py::arg("cycle"), py::arg("prop"));

  m.def("encode", [](const std::string& sexpr) {
    try {
      return to_pyint(arith::encode(arith::parse_formula(sexpr)));
    } catch (const Error& e) {
      if (e.code() != Errc::SyntaxError) throw;
      return to_pyint(arith::encode(arith::parse_term(sexpr)));
    }
  }, py::arg("sexpr"));
  m.def("decode", [](const py::int_& code) -> std::optional<std::string> {
    auto e = arith::decode(from_pyint(code));
    if (!e) return std::nullopt;
    return arith::to_sexpr(*e);
  }, py::arg("code"));
  m.def("is_v_formula", [](const py::int_& code) { return arith::is_v_formula(from_pyint(code)); }, py::arg("code"));
  m.def("diag", [](const py::int_& i) { return to_pyint(arith::diag(from_pyint(i))); }, py::arg("i"));
  m.def("eval", [](const std::string& sexpr) { return arith::eval(arith::parse_formula(sexpr)); }, py::arg("sexpr"));
  m.def("d_normalize", [](const std::string& sexpr) {
    return arith::to_sexpr(arith::d_normalize(arith::parse_formula(sexpr)));
  }, py::arg("sexpr"));
  m.def("predicate_formula", [](const std::string& frame, const std::string& h) {
    auto fr = arith::parse_frame(frame);
    return arith::to_sexpr(arith::predicate_formula(fr, parse_smstr(h, arith::frame_alphabet(fr))));
  }, py::arg("frame"), py::arg("h"));
  m.def("sentence_formula", [](const std::string& frame, const std::string& s) {
    auto fr = arith::parse_frame(frame);
    return arith::to_sexpr(arith::sentence_formula(fr, parse_smstr(s, arith::frame_alphabet(fr))));
  }, py::arg("frame"), py::arg("s"));
  m.def("universe", [](const std::optional<std::vector<std::string>>& formulas) {
    return to_py(universe_from(formulas).to_json());
  }, py::arg("formulas") = py::none());
  m.def("model_n", [](const std::optional<std::vector<std::string>>& formulas) {
    return PyModel(std::make_shared<arith::ArithModel>(arith::ArithModel::model_n(universe_from(formulas))));
  }, py::arg("formulas") = py::none());
  m.def("model_t", [](const std::string& oracle, const std::vector<std::string>& theory,
                      const std::optional<std::vector<std::string>>& formulas) {
    auto o = arith::make_oracle(oracle, theory_from(theory));
    return PyModel(std::make_shared<arith::ArithModel>(arith::ArithModel::model_t(o, universe_from(formulas))));
  }, py::arg("oracle") = "true-in-n", py::arg("theory") = std::vector<std::string>{},
     py::arg("formulas") = py::none());
  m.def("fixed_point", [](const py::int_& i) { return to_py(arith::arith_fixed_point(from_pyint(i)).to_json()); },
        py::arg("i"));
  m.def("tarski_refuter", [](const py::int_& i) { return to_py(arith::tarski_refuter(from_pyint(i)).to_json()); },
        py::arg("i"));
  m.def("weak_fixed_point", [](const std::string& oracle, const std::vector<std::string>& theory, const py::int_& i) {
    auto o = arith::make_oracle(oracle, theory_from(theory));
    return to_py(arith::weak_fixed_point(*o, from_pyint(i)).to_json());
  }, py::arg("oracle"), py::arg("theory"), py::arg("i"));
  m.def("g1_demo", [](const std::vector<std::string>& theory) {
    return to_py(arith::g1_demo(theory_from(theory)).to_json());
  }, py::arg("theory"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"));
}
