#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "affsing/dioph.hpp"
#include "affsing/lattice.hpp"
#include "affsing/singlab.hpp"
#include "runner.hpp"

namespace py = pybind11;
using namespace affsing;

namespace {

std::vector<ParsedScalar> parse_all(const std::vector<std::string>& text, unsigned precision) {
  std::vector<ParsedScalar> out;
  for (const auto& s : text) out.push_back(parse_scalar(s, precision));
  return out;
}

py::dict omega(const std::vector<std::string>& A, int n, int d, long long Q_max, unsigned precision) {
  Dims dims(n, d);
  dioph::OmegaOptions opt;
  opt.precision_bits = precision;
  dioph::AffineParam param(dims, parse_all(A, precision));
  dioph::OmegaResult r;
  {
    py::gil_scoped_release unlocked;
    r = dioph::omega_estimate(param, Q_max, opt);
  }
  py::dict out;
  out["omega"] = r.omega.is_infinite() ? std::numeric_limits<double>::infinity() : r.omega.value();
  out["record_slope"] = r.record_slope;
  out["records"] = r.records.size();
  if (r.exact_relation) {
    out["witness"] = py::make_tuple(r.exact_relation->first, r.exact_relation->second);
  } else {
    out["witness"] = py::none();
  }
  return out;
}

py::tuple systole(const std::vector<std::string>& x, double t, unsigned precision) {
  Dims dims(static_cast<int>(x.size()), 1);
  std::vector<Number> xs;
  for (const auto& s : parse_all(x, precision)) xs.push_back(s.number());
  auto r = lattice::systole(lattice::LatticePoint::from_x(xs, dims).flowed(algebra::FlowKind::G, t));
  return py::make_tuple(r.log_value, r.witness);
}

bool plucker(const std::vector<long long>& coeffs, int dim, int grade) {
  std::vector<Integer> c;
  for (long long x : coeffs) c.emplace_back(static_cast<signed long>(x));
  return algebra::plucker_check(c, dim, grade);
}

py::dict dplus(const std::vector<double>& coeffs, int d, int i, double r, long long samples, std::uint64_t seed) {
  algebra::ExtVector<double> v(d + 1, i);
  if (coeffs.size() != v.size()) throw DomainError("dplus_measure: expected " + std::to_string(v.size()) + " coefficients");
  for (std::size_t p = 0; p < v.size(); ++p) v[p] = coeffs[p];
  auto m = singlab::dplus_measure(v, r, samples, seed);
  py::dict out;
  out["estimate"] = m.estimate;
  out["ci"] = py::make_tuple(m.ci_lo, m.ci_hi);
  out["hits"] = m.hits;
  out["samples"] = m.samples;
  return out;
}

std::string run(const std::string& command, const std::map<std::string, std::string>& settings) {
  std::ostringstream text;
  for (const auto& [k, v] : settings) text << k << " = " << v << "\n";
  auto ctx = tools::make_context(config::Config::parse_string(text.str()));
  return tools::run_command(command, ctx).summary.dump();
}

}  // namespace

PYBIND11_MODULE(_affsing, m) {
  m.doc() = "Diophantine exponents, lattice heights and bounds for affine subspaces.";

  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<PrecisionError>(m, "PrecisionError", PyExc_ArithmeticError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  m.def("dim_bound", [](double omega, int n, int d) {
    return dioph::dim_bound(std::isinf(omega) ? ExtendedReal::infinity() : ExtendedReal::from_value(omega), Dims(n, d));
  }, py::arg("omega"), py::arg("n"), py::arg("d"));
  m.def("dim_bound_exact", [](const std::string& omega, int n, int d) {
    auto s = parse_scalar(omega);
    if (!s.exact) throw ConfigError("dim_bound_exact: omega must be rational");
    return dioph::dim_bound_exact(*s.exact, Dims(n, d)).get_str();
  }, py::arg("omega"), py::arg("n"), py::arg("d"));
  m.def("rho_bound", [](double omega, double theta, int n, int d) { return dioph::rho_bound(omega, theta, Dims(n, d)); },
        py::arg("omega"), py::arg("theta"), py::arg("n"), py::arg("d"));
  m.def("omega_lower_from_rho", [](double rho, double theta, int n, int d) {
    return dioph::omega_lower_from_rho(rho, theta, Dims(n, d));
  }, py::arg("rho"), py::arg("theta"), py::arg("n"), py::arg("d"));
  m.def("omega_estimate", &omega, py::arg("A"), py::arg("n"), py::arg("d"), py::arg("Q_max"),
        py::arg("precision") = 256u);
  m.def("systole", &systole, "log of the shortest sup-norm vector of g_t u(x) Z^{n+1}, and its coefficients",
        py::arg("x"), py::arg("t"), py::arg("precision") = 256u);
  m.def("plucker_check", &plucker, py::arg("coeffs"), py::arg("dim"), py::arg("grade"));
  m.def("dplus_measure", &dplus, py::arg("coeffs"), py::arg("d"), py::arg("i"), py::arg("r"), py::arg("samples"),
        py::arg("seed") = 1);
  m.def("_run", &run, py::arg("command"), py::arg("settings"), py::call_guard<py::gil_scoped_release>());
}
