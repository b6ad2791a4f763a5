#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sesq/report.hpp"

namespace py = pybind11;
using namespace sesq;

namespace {

py::object json_to_py(const nlohmann::json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

LinPoly parse_poly(const Field& f, const std::string& text) {
  return LinPoly::parse(f, text);
}

SuiteResult run_suite(const Field& f, const std::string& suite, int samples,
                      uint64_t seed, unsigned workers, int m) {
  SuiteOptions so;
  so.samples = samples;
  so.seed = seed;
  so.workers = workers;
  if (suite == "rep") return verify_rep(f, so);
  if (suite == "adjoint") return verify_adjoint(f, so);
  if (suite == "equiv") return verify_equiv(f, so);
  if (suite == "ssum") return verify_ssum(f, so);
  if (suite == "count") return verify_count(f, so);
  if (suite == "hermitian") return verify_hermitian(f, so);
  if (suite == "bound") return verify_bound(f, so);
  if (suite == "monomial") return verify_monomial(f, m, so);
  throw DomainError("unknown suite " + suite);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "sesquilinear forms over finite fields";

  py::register_exception<CapError>(m, "CapError");
  py::register_exception<UnclassifiedError>(m, "UnclassifiedError");
  py::register_exception<HypothesisError>(m, "HypothesisError");

  py::class_<Field>(m, "Field")
      .def(py::init<const std::string&, uint64_t>(), py::arg("spec"),
           py::arg("cap") = Field::default_cap())
      .def_property_readonly("p", &Field::p)
      .def_property_readonly("e", &Field::e)
      .def_property_readonly("n", &Field::n)
      .def_property_readonly("q", &Field::q)
      .def_property_readonly("size", &Field::size)
      .def("spec_string", &Field::spec_string)
      .def("generator",
           [](const Field& f) { return f.to_string(f.generator()); })
      .def("element",
           [](const Field& f, uint64_t index) {
             return f.to_string(f.from_index(index));
           })
      .def("add", [](const Field& f, const std::string& a, const std::string& b) {
        return f.to_string(f.add(f.parse_elem(a), f.parse_elem(b)));
      })
      .def("mul", [](const Field& f, const std::string& a, const std::string& b) {
        return f.to_string(f.mul(f.parse_elem(a), f.parse_elem(b)));
      })
      .def("pow", [](const Field& f, const std::string& a, uint64_t k) {
        return f.to_string(f.pow(f.parse_elem(a), k));
      })
      .def("__repr__", [](const Field& f) {
        return "<Field " + std::to_string(f.p()) + "^" + std::to_string(f.e()) +
               "^" + std::to_string(f.n()) + ">";
      });

  m.def("lp_eval", [](const Field& f, const std::string& l, const std::string& v) {
    return f.to_string(parse_poly(f, l).eval(f.parse_elem(v)));
  });
  m.def("adjoint", [](const Field& f, const std::string& l) {
    return parse_poly(f, l).adjoint().to_string();
  });
  m.def("kernel_dim", [](const Field& f, const std::string& l) {
    return kernel(parse_poly(f, l)).dim;
  });
  m.def("sesq_eval", [](const Field& f, const std::string& l, const std::string& u,
                        const std::string& v) {
    return f.to_string(
        SesquiForm{parse_poly(f, l)}.eval(f.parse_elem(u), f.parse_elem(v)));
  });

  m.def("classify", [](const Field& f, const std::string& l) {
    return json_to_py(form_class_json(f, classify(SesquiForm{parse_poly(f, l)})));
  });
  m.def("equivalent", [](const Field& f, const std::string& l0, const std::string& l1) {
    return equivalent(SesquiForm{parse_poly(f, l0)}, SesquiForm{parse_poly(f, l1)});
  });
  m.def("hermitian", [](const Field& f, const std::string& l) {
    return json_to_py(hermitian_json(f, hermitian_lambda(SesquiForm{parse_poly(f, l)})));
  });
  m.def("diagonalize", [](const Field& f, const std::string& l) {
    return json_to_py(diagonalization_json(f, diagonalize(SesquiForm{parse_poly(f, l)})));
  });

  m.def("s_formula",
        [](const Field& f, const std::string& l) { return s_formula(parse_poly(f, l)); });
  m.def(
      "s_bruteforce",
      [](const Field& f, const std::string& l, unsigned workers) {
        return s_bruteforce(SesquiForm{parse_poly(f, l)}, workers);
      },
      py::arg("field"), py::arg("L"), py::arg("workers") = 1);

  m.def("nc_formula", [](const Field& f, const std::string& l, const std::string& c) {
    return nc_formula(parse_poly(f, l), f.parse_elem(c));
  });
  m.def(
      "nc_bruteforce",
      [](const Field& f, const std::string& l, const std::string& c, unsigned workers) {
        return nc_bruteforce(parse_poly(f, l), f.parse_elem(c), workers);
      },
      py::arg("field"), py::arg("L"), py::arg("c"), py::arg("workers") = 1);
  m.def(
      "count_report",
      [](const Field& f, const std::string& l, const std::string& mode,
         unsigned workers) {
        CountMode cm = mode == "formula" ? CountMode::kFormula
                       : mode == "brute" ? CountMode::kBrute
                                         : CountMode::kBoth;
        return json_to_py(count_report_json(f, count_report(parse_poly(f, l), cm, workers)));
      },
      py::arg("field"), py::arg("L"), py::arg("mode") = "both", py::arg("workers") = 1);

  m.def("genus", &genus, py::arg("q"), py::arg("m"));
  m.def(
      "curve_report",
      [](const Field& f, const std::string& l, bool brute, unsigned workers) {
        return json_to_py(
            curve_report_json(curve_report(make_curve(parse_poly(f, l)), brute, workers)));
      },
      py::arg("field"), py::arg("L"), py::arg("brute") = false, py::arg("workers") = 1);
  m.def("monomial_counts", [](const Field& f, const std::string& a, int m) {
    return json_to_py(count_report_json(f, monomial_counts(f, f.parse_elem(a), m)));
  });
  m.def("monomial_extremal", [](const Field& f, const std::string& a, int m) {
    return monomial_extremal(f, f.parse_elem(a), m);
  });
  m.def("binomial_derive", [](uint64_t q, int m, int l, unsigned k) {
    BinomialDerived d = binomial_derive(q, m, l, k);
    py::dict out;
    out["n"] = d.n;
    out["d"] = d.d;
    out["s"] = d.s;
    return out;
  });
  m.def("binomial_construct", [](const Field& f, const std::string& gamma,
                                 const std::string& delta, int m, int l, unsigned k) {
    BinomialResult r =
        binomial_construct(f, f.parse_elem(gamma), f.parse_elem(delta), m, l, k);
    py::dict out;
    out["L"] = r.poly.to_string();
    out["predicted_deviation"] = r.predicted_deviation;
    out["status"] = extremality_name(r.status);
    out["n"] = r.derived.n;
    return out;
  });

  m.def("verify", [](const Field& f, const std::string& suite, int samples,
                     uint64_t seed, unsigned workers, int m) {
    return json_to_py(suite_json(run_suite(f, suite, samples, seed, workers, m)));
  },
        py::arg("field"), py::arg("suite"), py::arg("samples") = 0,
        py::arg("seed") = 12345, py::arg("workers") = 1, py::arg("m") = 0);
  m.def("verify_binomial", [](uint64_t p, unsigned e, int m, int l,
                              std::vector<unsigned> ks, bool enumerate,
                              unsigned workers) {
    BinomialSuiteOptions bo;
    bo.m = m;
    bo.l = l;
    bo.ks = std::move(ks);
    bo.enumerate = enumerate;
    bo.workers = workers;
    return json_to_py(suite_json(verify_binomial(p, e, bo)));
  },
        py::arg("p"), py::arg("e"), py::arg("m"), py::arg("l"), py::arg("ks"),
        py::arg("enumerate") = false, py::arg("workers") = 1);
}
