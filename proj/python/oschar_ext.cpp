#include "oschar/characterization.hpp"
#include "oschar/combinatorics.hpp"
#include "oschar/densities.hpp"
#include "oschar/identity_suite.hpp"
#include "oschar/jet.hpp"
#include "oschar/models.hpp"
#include "oschar/montecarlo.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>

namespace py = pybind11;

// ExactScalar <-> fractions.Fraction (ints and "p/q" strings are accepted
// on the way in).
namespace pybind11::detail {
template <>
struct type_caster<mpq_class> {
  PYBIND11_TYPE_CASTER(mpq_class, const_name("fractions.Fraction"));

  bool load(handle src, bool) {
    if (py::isinstance<py::str>(src)) {
      try {
        value = oschar::parse_rational(src.cast<std::string>());
        return true;
      } catch (const std::invalid_argument&) {
        return false;
      }
    }
    const py::object rational = py::module_::import("numbers").attr("Rational");
    if (!py::isinstance(src, rational) || py::isinstance<py::bool_>(src)) return false;
    const auto num = py::str(src.attr("numerator")).cast<std::string>();
    const auto den = py::str(src.attr("denominator")).cast<std::string>();
    value = mpq_class(num + "/" + den);
    value.canonicalize();
    return true;
  }

  static handle cast(const mpq_class& v, return_value_policy, handle) {
    auto to_int = [](const mpz_class& z) {
      return py::reinterpret_steal<py::object>(
          PyLong_FromString(z.get_str().c_str(), nullptr, 10));
    };
    return py::module_::import("fractions")
        .attr("Fraction")(to_int(v.get_num()), to_int(v.get_den()))
        .release();
  }
};
}  // namespace pybind11::detail

namespace {

using oschar::ExactScalar;
using oschar::Jet;

Jet to_jet(std::vector<ExactScalar> derivs) { return Jet(std::move(derivs)); }

std::vector<ExactScalar> from_jet(const Jet& f) {
  return {f.derivs().begin(), f.derivs().end()};
}

py::object report_dict(const oschar::TestReport& r) {
  return py::module_::import("json").attr("loads")(oschar::to_json(r).dump());
}

py::array_t<double> to_array(const std::vector<double>& v) {
  return py::array_t<double>(static_cast<py::ssize_t>(v.size()), v.data());
}

}  // namespace

PYBIND11_MODULE(_oschar, m) {
  m.doc() = "Exact and numerical checks of the exponential characterization "
            "by two-sided random shifts of order statistics";

  py::class_<oschar::ShiftEquationSpec>(m, "ShiftEquationSpec")
      .def(py::init([](long n, long k, const std::string& variant) {
             return oschar::ShiftEquationSpec(n, k, oschar::parse_variant(variant));
           }),
           py::arg("n"), py::arg("k"), py::arg("variant") = "two_sided")
      .def_property_readonly("n", &oschar::ShiftEquationSpec::n)
      .def_property_readonly("k", &oschar::ShiftEquationSpec::k)
      .def_property_readonly("t", &oschar::ShiftEquationSpec::t)
      .def_property_readonly("variant", [](const oschar::ShiftEquationSpec& s) {
        return std::string(oschar::variant_name(s.variant()));
      })
      .def("__repr__", [](const oschar::ShiftEquationSpec& s) {
        return "ShiftEquationSpec(n=" + std::to_string(s.n()) +
               ", k=" + std::to_string(s.k()) + ", variant='" +
               std::string(oschar::variant_name(s.variant())) + "')";
      });

  // combinatorics
  m.def("h_number", py::overload_cast<long, long, const ExactScalar&>(&oschar::h_number),
        py::arg("n"), py::arg("i"), py::arg("x"));
  m.def("check_pascal_step", &oschar::check_pascal_step, py::arg("s"), py::arg("r"));
  m.def("check_lemma2", &oschar::check_lemma2, py::arg("n"), py::arg("k"),
        py::arg("m"), py::arg("i"));
  m.def("check_lemma3_k", &oschar::check_lemma3_k, py::arg("n"), py::arg("k"), py::arg("r"));
  m.def("check_lemma3_n", &oschar::check_lemma3_n, py::arg("n"), py::arg("k"), py::arg("r"));
  m.def("check_binsum", &oschar::check_binsum, py::arg("k"), py::arg("d"));

  // jets: passed as lists of Fractions
  m.def("jet_mul", [](std::vector<ExactScalar> a, std::vector<ExactScalar> b) {
    return from_jet(oschar::jet_mul(to_jet(std::move(a)), to_jet(std::move(b))));
  });
  m.def("jet_antiderivative", [](std::vector<ExactScalar> f) {
    return from_jet(oschar::jet_antiderivative(to_jet(std::move(f))));
  });
  m.def("jet_scale_arg", [](std::vector<ExactScalar> f, const ExactScalar& c) {
    return from_jet(oschar::jet_scale_arg(to_jet(std::move(f)), c));
  });
  m.def("exp_jet", [](const ExactScalar& lambda, std::size_t order) {
    return from_jet(oschar::exp_jet(lambda, order));
  }, py::arg("lam"), py::arg("order"));
  m.def("g_jet", [](std::vector<ExactScalar> f, long j) {
    return from_jet(oschar::g_jet(to_jet(std::move(f)), j));
  }, py::arg("f"), py::arg("j"));
  m.def("lemma4_closed_form", &oschar::lemma4_closed_form, py::arg("f0"),
        py::arg("f1"), py::arg("j"), py::arg("d"));
  m.def("reconstruct_pdf", [](std::vector<ExactScalar> f, const ExactScalar& x,
                              std::size_t terms) {
    return oschar::reconstruct_pdf(to_jet(std::move(f)), x, terms);
  }, py::arg("f"), py::arg("x"), py::arg("terms"));

  // characterization engine
  m.def("residual_eq23", [](std::vector<ExactScalar> f,
                            const oschar::ShiftEquationSpec& spec, long r) {
    return oschar::residual_eq23(to_jet(std::move(f)), spec, r);
  }, py::arg("f"), py::arg("spec"), py::arg("r"));
  m.def("base_case_residual", [](std::vector<ExactScalar> f,
                                 const oschar::ShiftEquationSpec& spec) {
    return oschar::base_case_residual(to_jet(std::move(f)), spec);
  }, py::arg("f"), py::arg("spec"));
  m.def("solve_next_derivative", [](std::vector<ExactScalar> f,
                                    const oschar::ShiftEquationSpec& spec, long r) {
    return oschar::solve_next_derivative(to_jet(std::move(f)), spec, r);
  }, py::arg("f_partial"), py::arg("spec"), py::arg("r"));
  m.def("characterize", [](const ExactScalar& lambda,
                           const oschar::ShiftEquationSpec& spec, long R) {
    return from_jet(oschar::characterize(lambda, spec, R));
  }, py::arg("lam"), py::arg("spec"), py::arg("R"));
  m.def("check_final_identity", &oschar::check_final_identity, py::arg("spec"), py::arg("r"));
  m.def("verify_identities", [](long nmax, long rmax) {
    oschar::SuiteBounds b;
    b.nmax = nmax;
    b.rmax = rmax;
    const auto result = oschar::run_identity_suite(b);
    return py::make_tuple(result.checks, result.failures.size());
  }, py::arg("nmax") = 8, py::arg("rmax") = 6,
     "Runs the exact suite; returns (checks, failures).");

  // models and densities
  py::class_<oschar::ParentModel, std::shared_ptr<oschar::ParentModel>>(m, "ParentModel")
      .def_property_readonly("name", &oschar::ParentModel::name)
      .def("pdf", &oschar::ParentModel::pdf)
      .def("cdf", &oschar::ParentModel::cdf)
      .def("mean", &oschar::ParentModel::mean)
      .def("__repr__", [](const oschar::ParentModel& p) {
        return "ParentModel('" + p.name() + "')";
      });
  m.def("parse_model", [](const std::string& text) {
    return std::const_pointer_cast<oschar::ParentModel>(oschar::parse_model(text));
  }, py::arg("text"));

  m.def("os_pdf", &oschar::os_pdf, py::arg("model"), py::arg("j"), py::arg("n"), py::arg("x"));
  m.def("lhs_pdf", &oschar::lhs_pdf, py::arg("model"), py::arg("spec"), py::arg("x"),
        py::arg("quad_tol") = 1e-10);
  m.def("rhs_pdf", &oschar::rhs_pdf, py::arg("model"), py::arg("spec"), py::arg("x"),
        py::arg("quad_tol") = 1e-10);
  m.def("compare_densities", [](const oschar::ParentModel& model,
                                const oschar::ShiftEquationSpec& spec,
                                const std::vector<double>& points, double quad_tol,
                                unsigned threads) {
    oschar::DensityGrid g;
    {
      py::gil_scoped_release release;
      g = oschar::compare_densities(model, spec, points, quad_tol, threads);
    }
    py::dict out;
    out["points"] = to_array(g.points);
    out["lhs"] = to_array(g.lhs_values);
    out["rhs"] = to_array(g.rhs_values);
    out["quad_tol"] = g.quad_tol;
    out["max_abs_diff"] = g.max_abs_diff;
    return out;
  }, py::arg("model"), py::arg("spec"), py::arg("points"),
     py::arg("quad_tol") = 1e-10, py::arg("threads") = 1);

  // Monte Carlo
  m.def("sample_sides", [](const oschar::ParentModel& model,
                           const oschar::ShiftEquationSpec& spec, std::size_t count,
                           std::uint64_t seed, unsigned threads) {
    oschar::SidesSample s;
    {
      py::gil_scoped_release release;
      s = oschar::sample_sides(model, spec, count, seed, threads);
    }
    return py::make_tuple(to_array(s.lhs), to_array(s.rhs));
  }, py::arg("model"), py::arg("spec"), py::arg("count"), py::arg("seed"),
     py::arg("threads") = 1);
  m.def("ks_two_sample", [](const std::vector<double>& a, const std::vector<double>& b) {
    const auto r = oschar::ks_two_sample(a, b);
    return py::make_tuple(r.statistic, r.p_value);
  }, py::arg("a"), py::arg("b"));
  m.def("equation_test", [](const oschar::ParentModel& model,
                            const oschar::ShiftEquationSpec& spec, std::size_t count,
                            std::uint64_t seed, double alpha, unsigned threads) {
    return report_dict(oschar::equation_test(model, spec, count, seed, alpha, threads));
  }, py::arg("model"), py::arg("spec"), py::arg("count"), py::arg("seed"),
     py::arg("alpha") = 0.01, py::arg("threads") = 1);
  m.def("gof_exponentiality", [](const std::vector<double>& data,
                                 const oschar::ShiftEquationSpec& spec,
                                 std::size_t permutations, std::uint64_t seed,
                                 double alpha) {
    return report_dict(oschar::gof_exponentiality(data, spec, permutations, seed, alpha));
  }, py::arg("data"), py::arg("spec"), py::arg("permutations") = 999,
     py::arg("seed") = 1, py::arg("alpha") = 0.01);
}
