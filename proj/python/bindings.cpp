#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "sixv/asymptotics.hpp"
#include "sixv/determinant.hpp"
#include "sixv/enumerate.hpp"
#include "sixv/montecarlo.hpp"
#include "sixv/verify.hpp"

namespace py = pybind11;
using namespace sixv;

namespace {

/// Angles may be given as floats or as strings such as "pi/4".
Real angle(const py::object& v) {
  if (py::isinstance<py::str>(v)) return parse_angle(v.cast<std::string>());
  return Real(v.cast<double>());
}

double f(const Real& x) { return static_cast<double>(x); }

std::vector<double> fs(const std::vector<Real>& xs) {
  std::vector<double> out;
  for (const auto& x : xs) out.push_back(f(x));
  return out;
}

SpectralParams params(const py::object& lambda, const py::object& mu, const py::object& eta, const py::object& xi,
                      const py::object& omega) {
  return {angle(lambda), angle(mu), angle(eta), angle(xi), angle(omega)};
}

py::dict exact(const Real& x) {
  py::dict d;
  d["value"] = f(x);
  d["text"] = format_real(x);
  return d;
}

py::list curve_list(std::span<const CurveSample> pts) {
  py::list out;
  for (const auto& p : pts) out.append(py::make_tuple(p.x, p.y, p.param));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Reflecting-end six-vertex model: exact enumeration, determinants, asymptotics and Monte Carlo";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);

  const auto pi4 = py::str("pi/4"), pi2 = py::str("pi/2");
  const auto zero = py::cast(0.0);

  m.def(
      "build_weights",
      [](py::object lambda, py::object mu, py::object eta, py::object xi, py::object omega, bool odd, int column,
         int n, unsigned digits) {
        PrecisionScope scope(digits);
        const WeightSet w =
            build_weights(params(lambda, mu, eta, xi, omega), odd ? RowParity::odd : RowParity::even, column, n);
        py::dict d;
        d["a_plus"] = f(w.a_plus);
        d["a_minus"] = f(w.a_minus);
        d["b_plus"] = f(w.b_plus);
        d["b_minus"] = f(w.b_minus);
        d["c"] = f(w.c);
        d["kappa_plus"] = f(w.kappa_plus);
        d["kappa_minus"] = f(w.kappa_minus);
        d["delta"] = f(w.delta);
        d["w"] = py::make_tuple(f(w.w[0]), f(w.w[1]), f(w.w[2]));
        return d;
      },
      py::arg("lambda_"), py::arg("mu") = zero, py::arg("eta") = pi4, py::arg("xi") = pi2, py::arg("omega") = zero,
      py::arg("odd") = true, py::arg("column") = 1, py::arg("n") = 1, py::arg("digits") = kDefaultDigits);

  m.def(
      "enumerate_Z",
      [](int n, py::object lambda, py::object mu, py::object eta, py::object xi, const std::string& mode,
         unsigned digits) {
        PrecisionScope scope(digits);
        const EnumResult r = enumerate_Z(n, params(lambda, mu, eta, xi, py::cast(0.0)),
                                         mode == "brute" ? EnumMode::brute : EnumMode::transfer);
        py::dict d = exact(r.Z);
        d["config_count"] = py::int_(py::str(r.config_count.str()));
        return d;
      },
      py::arg("n"), py::arg("lambda_") = pi4, py::arg("mu") = zero, py::arg("eta") = pi4, py::arg("xi") = pi2,
      py::arg("mode") = "transfer", py::arg("digits") = kDefaultDigits);

  m.def(
      "enumerate_correlations",
      [](int n, py::object lambda, py::object mu, py::object eta, py::object xi, unsigned digits) {
        PrecisionScope scope(digits);
        const CorrelationTable t = enumerate_correlations(n, params(lambda, mu, eta, xi, py::cast(0.0)));
        py::dict d;
        d["Z"] = f(t.Z);
        d["H"] = fs(t.H);
        d["G"] = fs(t.G);
        d["A"] = fs(t.A);
        d["D"] = fs(t.D);
        d["h_coeffs"] = fs(t.h_coeffs);
        return d;
      },
      py::arg("n"), py::arg("lambda_") = pi4, py::arg("mu") = zero, py::arg("eta") = pi4, py::arg("xi") = pi2,
      py::arg("digits") = kDefaultDigits);

  m.def(
      "enumerate_extended",
      [](int n, int L, py::object lambda, unsigned digits) {
        PrecisionScope scope(digits);
        const ExtendedLattice e = enumerate_extended(n, L, SpectralParams::free_fermion(angle(lambda)));
        py::dict d;
        d["Z_left"] = fs(e.Z_left);
        d["Z_right"] = fs(e.Z_right);
        d["Z_NL"] = f(e.Z_NL);
        d["Z_direct"] = f(e.Z_direct);
        return d;
      },
      py::arg("n"), py::arg("L"), py::arg("lambda_") = pi4, py::arg("digits") = kDefaultDigits);

  m.def("default_digits", &default_digits, py::arg("n"));

  m.def(
      "homogeneous_Z",
      [](int n, py::object lambda, py::object mu, py::object eta, py::object xi, unsigned digits) {
        PrecisionScope scope(digits ? digits : default_digits(n));
        return exact(homogeneous_Z(n, params(lambda, mu, eta, xi, py::cast(0.0))));
      },
      py::arg("n"), py::arg("lambda_") = pi4, py::arg("mu") = zero, py::arg("eta") = pi4, py::arg("xi") = pi2,
      py::arg("digits") = 0);

  m.def(
      "partial_inhom_Z",
      [](int n, py::object lambda, py::object mu, py::object eta, py::object xi, py::object omega, unsigned digits) {
        PrecisionScope scope(digits ? digits : default_digits(n));
        return exact(partial_inhom_Z(n, params(lambda, mu, eta, xi, omega)));
      },
      py::arg("n"), py::arg("lambda_") = pi4, py::arg("mu") = zero, py::arg("eta") = pi4, py::arg("xi") = pi2,
      py::arg("omega") = zero, py::arg("digits") = 0);

  m.def(
      "tsuchiya_Z",
      [](const std::vector<py::object>& lambdas, const std::vector<py::object>& mus, py::object eta, py::object xi,
         unsigned digits) {
        PrecisionScope scope(digits);
        std::vector<Real> l, u;
        for (const auto& x : lambdas) l.push_back(angle(x));
        for (const auto& x : mus) u.push_back(angle(x));
        return exact(tsuchiya_Z(l, u, angle(eta), angle(xi)));
      },
      py::arg("lambdas"), py::arg("mus"), py::arg("eta") = pi4, py::arg("xi") = pi2,
      py::arg("digits") = kDefaultDigits);

  m.def(
      "tau_sequence",
      [](int n_max, py::object lambda, py::object mu, py::object eta, py::object omega, unsigned digits) {
        PrecisionScope scope(digits ? digits : default_digits(n_max));
        const TauSequence seq = tau_sequence(n_max, params(lambda, mu, eta, py::str("pi/2"), omega));
        py::list residuals;
        for (const auto& r : toda_residuals(seq)) residuals.append(py::make_tuple(r.N, f(r.toda), f(r.toda_tilde)));
        py::dict d;
        d["tau"] = fs(seq.tau);
        d["tau_tilde"] = fs(seq.tau_tilde);
        d["toda"] = residuals;
        return d;
      },
      py::arg("n_max"), py::arg("lambda_") = pi4, py::arg("mu") = zero, py::arg("eta") = pi4,
      py::arg("omega") = zero, py::arg("digits") = 0);

  m.def(
      "hN_determinant",
      [](int n, py::object lambda, py::object omega, unsigned digits) {
        PrecisionScope scope(digits ? digits : default_digits(n));
        return exact(hN_determinant(n, angle(lambda), angle(omega)));
      },
      py::arg("n"), py::arg("lambda_") = pi4, py::arg("omega") = zero, py::arg("digits") = 0);

  m.def("gamma_map", &gamma_map, py::arg("omega"), py::arg("lambda_") = kQuarterPi);
  m.def("gamma_inverse", &gamma_inverse, py::arg("z"), py::arg("lambda_") = kQuarterPi);
  m.def("h_rate", &h_rate, py::arg("omega"), py::arg("lambda_") = kQuarterPi);
  m.def("v_numeric", &v_numeric, py::arg("z"), py::arg("lambda_") = kQuarterPi, py::arg("step") = 1e-4);
  m.def("v_closed", &v_closed, py::arg("z"));
  m.def("contact_point", [](double lambda) { return contact_point(lambda).kappa; }, py::arg("lambda_"));
  m.def(
      "saddle_pair",
      [](double z, double u) {
        const SaddleState s = saddle_pair(z, u);
        return py::make_tuple(s.chi0, s.zeta0);
      },
      py::arg("z"), py::arg("u"));
  m.def(
      "tangent_line",
      [](double z, double lambda) {
        const TangentLine t = tangent_line(z, lambda);
        py::dict d;
        d["u"] = t.u;
        d["chi"] = t.chi;
        d["slope"] = t.slope;
        d["intercept"] = 2 * t.chi;
        return d;
      },
      py::arg("z"), py::arg("lambda_") = kQuarterPi);
  m.def(
      "arc_nw",
      [](double omega) {
        const CurveSample p = arc_nw(omega);
        return py::make_tuple(p.x, p.y);
      },
      py::arg("omega"));
  m.def(
      "arctic_curve",
      [](int points, double lambda) {
        std::vector<double> zs;
        for (double w : default_omega_grid(points, lambda)) zs.push_back(gamma_map(w, lambda));
        return curve_list(arctic_curve(zs, lambda).samples);
      },
      py::arg("points") = 200, py::arg("lambda_") = kQuarterPi);
  m.def("path_count", &path_count<double>, py::arg("x"), py::arg("y"), py::arg("a"));
  m.def(
      "free_energy_rate",
      [](double lambda, double mu, double eta) {
        const FreeEnergy e = free_energy_rate(lambda, mu, eta);
        py::dict d;
        d["alpha"] = e.alpha;
        d["e4f"] = e.e4f;
        d["sign"] = e.sign;
        d["F"] = e.F;
        return d;
      },
      py::arg("lambda_"), py::arg("mu"), py::arg("eta") = kQuarterPi);

  m.def(
      "monte_carlo",
      [](int n, std::uint64_t seed, std::uint64_t sweeps, std::uint64_t burn_in, std::uint64_t thinning,
         int batch, const std::string& init, double epsilon) {
        const auto w = special_point_weights(n);
        MCState st = mc_init(n, seed, parse_init_mode(init), w);
        DensityField field;
        {
          py::gil_scoped_release release;
          field = mc_measure(st, w, {sweeps, burn_in, thinning, batch});
        }
        const auto contour = extract_contour(field, epsilon);
        const SemicircleComparison cmp = compare_semicircle(contour);
        py::list density, err;
        for (int i = 0; i < field.levels; ++i) {
          py::list row, erow;
          for (int c = 0; c < field.columns; ++c) {
            row.append(field.density(i, c));
            erow.append(field.stderr_of(i, c));
          }
          density.append(row);
          err.append(erow);
        }
        py::dict d;
        d["density"] = density;
        d["stderr"] = err;
        d["contour"] = curve_list(contour);
        d["distance"] = cmp.distance;
        d["contact_gaps"] = py::make_tuple(cmp.left_gap, cmp.top_gap, cmp.bottom_gap);
        d["acceptance"] = py::make_tuple(st.plaquette.acceptance(), st.turn.acceptance());
        return d;
      },
      py::arg("n"), py::arg("seed") = 1, py::arg("sweeps") = 1000, py::arg("burn_in") = 100,
      py::arg("thinning") = 1, py::arg("batch") = 50, py::arg("init") = "reference", py::arg("epsilon") = 0.05);

  m.def(
      "verify",
      [](bool quick, std::uint64_t seed) {
        VerifyOptions opt;
        opt.quick = quick;
        opt.seed = seed;
        std::vector<CriterionResult> results;
        {
          py::gil_scoped_release release;
          results = run_verify(opt);
        }
        py::list out;
        for (const auto& r : results) {
          py::dict d;
          d["id"] = r.id;
          d["title"] = r.title;
          d["pass"] = r.pass;
          d["detail"] = r.detail;
          out.append(d);
        }
        return out;
      },
      py::arg("quick") = true, py::arg("seed") = VerifyOptions{}.seed);
}
