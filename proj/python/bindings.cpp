#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <sstream>

#include "lpbound/certificate.hpp"
#include "lpbound/cli.hpp"
#include "lpbound/delsarte.hpp"
#include "lpbound/improved.hpp"
#include "lpbound/io.hpp"

namespace py = pybind11;
using namespace lpbound;

namespace {

using Elements = std::vector<std::vector<int>>;

std::vector<std::size_t> indices(const FiniteAbelianGroup& g, const Elements& elements) {
  std::vector<std::size_t> out;
  for (const auto& e : elements) out.push_back(g.index_of(e));
  return out;
}

ForbiddenSet forbidden(const FiniteAbelianGroup& g, const Elements& members) {
  auto A = ForbiddenSet::with_zero(g, indices(g, members));
  if (!validate_forbidden_set(A).valid()) throw std::invalid_argument("forbidden set must be symmetric");
  return A;
}

std::string bound_report(const std::vector<int>& orders, const Elements& members, double tol) {
  FiniteAbelianGroup g(orders);
  const auto A = forbidden(g, members);
  const auto opt = optimal_witness(A, tol);
  auto j = io::to_json(BoundReport{opt.bound, opt.witness, std::nullopt});
  j["lp"] = io::to_json(opt.lp);
  return j.dump();
}

std::string max_set(const std::vector<int>& orders, const Elements& members, const Elements& pinned) {
  FiniteAbelianGroup g(orders);
  const auto A = forbidden(g, members);
  const auto r = pinned.empty() ? brute_force_max(A) : brute_force_max_containing(A, indices(g, pinned));
  return io::to_json(r, g).dump();
}

std::string verify(const std::vector<int>& orders, const Elements& members, const std::vector<Complex>& h, double tol) {
  FiniteAbelianGroup g(orders);
  return io::to_json(verify_witness(forbidden(g, members), GroupFunction(g, h), tol), g).dump();
}

std::string improve(const std::vector<int>& orders, const Elements& members, const Elements& locations, double tol) {
  FiniteAbelianGroup g(orders);
  const auto A = forbidden(g, members);
  const auto w = optimal_witness(A, tol).witness;
  const auto sw = synthesize_second_witness(w, indices(g, locations), tol);
  auto j = io::to_json(improved_bound(w, sw));
  j["witness"] = io::to_json(sw);
  return j.dump();
}

std::string corollary(const std::vector<int>& orders, const Elements& members, const Elements& pinned_elements,
                      std::optional<std::size_t> m, double tol) {
  FiniteAbelianGroup g(orders);
  const auto A = forbidden(g, members);
  const auto w = optimal_witness(A, tol).witness;
  const auto pinned = indices(g, pinned_elements);
  const auto K = synthesize_corollary_witness(w, A, pinned, tol);
  const auto target = m ? *m : static_cast<std::size_t>(std::llround(delsarte_bound(w)));
  return io::to_json(corollary_check(w, A, pinned, K, target, CorollaryOptions{tol, 1e-9}), g).dump();
}

std::vector<Complex> transform(const std::vector<int>& orders, const std::vector<Complex>& values) {
  return fourier_transform(GroupFunction(FiniteAbelianGroup(orders), values)).values();
}

std::vector<Complex> inverse(const std::vector<int>& orders, const std::vector<Complex>& values) {
  return inverse_transform(DualFunction(FiniteAbelianGroup(orders), values)).values();
}

std::string certify(double a_phase, double b_phase, int samples, std::uint64_t seed) {
  CertificateOptions o;
  o.n_samples = samples;
  o.seed = seed;
  return io::to_json(build_certificate(a_phase, b_phase, o)).dump();
}

std::string sweep(int grid, int samples, std::uint64_t seed, int jobs) {
  CertificateOptions o;
  o.n_samples = samples;
  o.seed = seed;
  io::json rows = io::json::array();
  for (const auto& r : sweep_certificates(grid, o, jobs)) {
    rows.push_back({{"a_phase", r.a_phase},
                    {"b_phase", r.b_phase},
                    {"verdict", r.verdict},
                    {"margin", r.margin},
                    {"n_samples", r.n_samples},
                    {"worst_sample_K", std::isfinite(r.worst_sample_K) ? io::json(r.worst_sample_K) : io::json()}});
  }
  return rows.dump();
}

py::tuple run_cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::main_entry(args, out, err);
  return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linear-programming bounds over finite abelian groups";

  py::register_exception<UndefinedBound>(m, "UndefinedBound", PyExc_ValueError);
  py::register_exception<InfeasibleWitness>(m, "InfeasibleWitness", PyExc_RuntimeError);

  m.def("fourier_transform", &transform, py::arg("orders"), py::arg("values"));
  m.def("inverse_transform", &inverse, py::arg("orders"), py::arg("values"));
  m.def("bound_json", &bound_report, py::arg("orders"), py::arg("forbidden"), py::arg("tol") = kDefaultTol);
  m.def("max_set_json", &max_set, py::arg("orders"), py::arg("forbidden"), py::arg("pinned") = Elements{});
  m.def("verify_witness_json", &verify, py::arg("orders"), py::arg("forbidden"), py::arg("h"),
        py::arg("tol") = kDefaultTol);
  m.def("improve_json", &improve, py::arg("orders"), py::arg("forbidden"), py::arg("locations"),
        py::arg("tol") = kDefaultTol);
  m.def("corollary_json", &corollary, py::arg("orders"), py::arg("forbidden"), py::arg("pinned"),
        py::arg("m") = py::none(), py::arg("tol") = kDefaultTol);

  m.def("torus_witness_ratio_json", [](int n) { return io::to_json(torus_witness_ratio(n)).dump(); }, py::arg("n"));
  m.def("closed_form_c", &closed_form_c);
  m.def("optimize_c_json", []() { return io::to_json(prove_s_bounds()).dump(); });
  m.def("certify_fab_json", &certify, py::arg("a_phase"), py::arg("b_phase"), py::arg("samples") = 10,
        py::arg("seed") = 1);
  m.def("sweep_json", &sweep, py::arg("grid"), py::arg("samples") = 10, py::arg("seed") = 1, py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("run_cli", &run_cli, py::arg("args"));
}
