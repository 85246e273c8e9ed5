// Python bindings. Scalars cross the boundary as floats on the f64 backend
// and as "p/q" strings on the rational one; the package wraps the latter
// into fractions.Fraction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "w1fl/w1fl.hpp"

namespace py = pybind11;
using namespace w1fl;

namespace {

template <Scalar T>
T scalar_from(const py::handle& v) {
  if (py::isinstance<py::str>(v)) return ScalarTraits<T>::parse(v.cast<std::string>());
  if (py::isinstance<py::int_>(v)) return ScalarTraits<T>::parse(py::str(v).cast<std::string>());
  return ScalarTraits<T>::parse(ScalarTraits<double>::to_string(v.cast<double>()));
}

template <Scalar T>
std::vector<T> vector_from(const py::sequence& seq) {
  std::vector<T> out;
  for (const auto& v : seq) out.push_back(scalar_from<T>(v));
  return out;
}

template <Scalar T>
py::object to_py(const T& v) {
  if constexpr (ScalarTraits<T>::exact) {
    return py::str(to_string(v));
  } else {
    return py::float_(v);
  }
}

template <Scalar T>
py::list list_of(const std::vector<T>& xs) {
  py::list out;
  for (const auto& v : xs) out.append(to_py(v));
  return out;
}

template <Scalar T>
Instance<T> instance_from(const py::sequence& y, const py::sequence& alpha) {
  Instance<T> inst{vector_from<T>(y), vector_from<T>(alpha)};
  inst.validate();
  return inst;
}

bool rational(const std::string& backend) {
  if (backend == "rational") return true;
  if (backend == "f64") return false;
  throw InvalidInput("backend must be 'f64' or 'rational'");
}

template <Scalar T>
py::dict path_impl(const py::sequence& y, const py::sequence& alpha) {
  const auto path = solve_path(to_dual(instance_from<T>(y, alpha)));
  py::list events;
  for (const auto& e : path.events) {
    events.append(py::make_tuple(to_py(e.gamma), e.index, event_kind_name(e.kind), e.sign));
  }
  const auto c = event_counts(path);
  py::dict d;
  d["events"] = events;
  d["fuse"] = c.fuse;
  d["unfuse"] = c.unfuse;
  d["segments"] = segment_count(path, true);
  return d;
}

template <Scalar T>
py::list solve_impl(const py::sequence& y, const py::sequence& alpha, const py::handle& gamma,
                    const std::string& method) {
  const auto inst = instance_from<T>(y, alpha);
  const T g = scalar_from<T>(gamma);
  if (method == "dp") return list_of(solve_fixed_gamma_dp(inst, g));
  if (method == "qp") return list_of(x_from_w(solve_fixed_gamma_qp(to_dual(inst), g)));
  if (method == "path") return list_of(eval_x(solve_path(to_dual(inst)), g));
  throw InvalidInput("method must be 'path', 'dp' or 'qp'");
}

template <Scalar T>
py::dict verify_impl(const py::sequence& y, const py::sequence& alpha, std::size_t samples) {
  const auto inst = instance_from<T>(y, alpha);
  const auto dual = to_dual(inst);
  const auto path = solve_path(dual);
  const auto rep = verify_path<T>(dual, path, samples,
                                  {[&](const T& g) { return solve_fixed_gamma_dp(inst, g); },
                                   [&](const T& g) { return x_from_w(solve_fixed_gamma_qp(dual, g)); }});
  py::dict d;
  d["pass"] = rep.pass;
  d["continuity"] = rep.continuity;
  d["feasibility"] = rep.feasibility;
  d["alignment"] = rep.alignment;
  d["optimality"] = rep.optimality;
  d["oracle"] = rep.oracle;
  d["violation"] = rep.worst();
  return d;
}

template <Scalar T>
py::object convert_impl(const py::sequence& y, const py::sequence& alpha, const py::handle& value,
                        const std::string& to) {
  const auto path = solve_path(to_dual(instance_from<T>(y, alpha)));
  const T v = scalar_from<T>(value);
  if (to == "penalized") return to_py(constrained_to_penalized(path, v));
  if (to == "constrained") return to_py(penalized_to_constrained(path, v));
  throw InvalidInput("to must be 'penalized' or 'constrained'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Solution paths of the weighted 1-D fused lasso";
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  m.def(
      "solve_path",
      [](const py::sequence& y, const py::sequence& alpha, const std::string& backend) {
        return rational(backend) ? path_impl<Rational>(y, alpha) : path_impl<double>(y, alpha);
      },
      py::arg("y"), py::arg("alpha"), py::arg("backend") = "f64",
      "Trace the whole path; returns the event log and counts.");
  m.def(
      "solve",
      [](const py::sequence& y, const py::sequence& alpha, const py::handle& gamma, const std::string& method,
         const std::string& backend) {
        return rational(backend) ? solve_impl<Rational>(y, alpha, gamma, method)
                                 : solve_impl<double>(y, alpha, gamma, method);
      },
      py::arg("y"), py::arg("alpha"), py::arg("gamma"), py::arg("method") = "path", py::arg("backend") = "f64",
      "x*(gamma) from the path or from one of the fixed-gamma solvers.");
  m.def(
      "verify",
      [](const py::sequence& y, const py::sequence& alpha, std::size_t samples, const std::string& backend) {
        return rational(backend) ? verify_impl<Rational>(y, alpha, samples) : verify_impl<double>(y, alpha, samples);
      },
      py::arg("y"), py::arg("alpha"), py::arg("samples") = 4, py::arg("backend") = "f64");
  m.def(
      "convert",
      [](const py::sequence& y, const py::sequence& alpha, const py::handle& value, const std::string& to,
         const std::string& backend) {
        return rational(backend) ? convert_impl<Rational>(y, alpha, value, to)
                                 : convert_impl<double>(y, alpha, value, to);
      },
      py::arg("y"), py::arg("alpha"), py::arg("value"), py::arg("to"), py::arg("backend") = "f64",
      "Map gamma to the equivalent constraint level or back.");
  m.def(
      "gen_worst_case",
      [](std::size_t n) {
        const auto inst = from_dual(gen_worst_case<Rational>(n));
        return py::make_tuple(list_of(inst.y), list_of(inst.alpha));
      },
      py::arg("n"));
  m.def(
      "gen_random",
      [](std::size_t n, std::uint64_t seed) {
        const auto inst = gen_random<double>(n, seed);
        return py::make_tuple(list_of(inst.y), list_of(inst.alpha));
      },
      py::arg("n"), py::arg("seed") = 0);
  m.def(
      "gen_1fl",
      [](std::size_t n, std::uint64_t seed) {
        if (n == 0) throw InvalidInput("n must be at least 1");
        const auto inst = gen_1fl(draw_normals(n, seed));
        return py::make_tuple(list_of(inst.y), list_of(inst.alpha));
      },
      py::arg("n"), py::arg("seed") = 0);
}
