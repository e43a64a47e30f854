#include "anisofem/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace anisofem {

double r_paper(int M, int N) {
  return static_cast<double>(N) / (2.0 * M * M) + 1.0 / (2.0 * N);
}

ConvergenceRow run_case(Method method, int M, int N, double tol, int quad_degree) {
  const Mesh m = generate_aniso(M, N);
  const MeshStats st = stats(m);
  const PoissonProblem prob = make_bubble_problem();

  ConvergenceRow row;
  row.M = M;
  row.N = N;
  row.h = st.h;
  row.R_mesh = st.max_circumradius;
  row.R_paper = r_paper(M, N);

  switch (method) {
    case Method::P1: {
      const FeFunction u = solve_p1(m, prob, tol, quad_degree);
      row.error = error_norms(m, u, prob.exact_u, prob.exact_grad, quad_degree).h1_broken;
      break;
    }
    case Method::CR: {
      const FeFunction u = solve_cr(m, prob, tol, quad_degree);
      row.error = error_norms(m, u, prob.exact_u, prob.exact_grad, quad_degree).h1_broken;
      break;
    }
    case Method::RT: {
      const RtSolution sol = solve_rt(m, prob, tol, quad_degree);
      row.error = flux_error_norms(m, sol.flux, prob.exact_grad, quad_degree).l2;
      row.error_u = error_norms(m, sol.scalar, prob.exact_u, {}, quad_degree).l2;
      break;
    }
  }
  row.err_per_h = row.error / row.h;
  row.err_per_Rmesh = row.error / row.R_mesh;
  row.err_per_Rpaper = row.error / row.R_paper;
  return row;
}

std::vector<ConvergenceRow> run_sweep(const RunConfig& cfg) {
  if (cfg.m_list.empty()) throw std::invalid_argument("run_sweep: empty M list");
  if (!std::is_sorted(cfg.m_list.begin(), cfg.m_list.end()))
    throw std::invalid_argument("run_sweep: M list must be ascending");

  std::vector<ConvergenceRow> rows;
  rows.reserve(cfg.m_list.size());
  for (const int M : cfg.m_list) {
    const int N = even_n_for(M, cfg.alpha);
    try {
      rows.push_back(run_case(cfg.method, M, N, cfg.tol, cfg.quad_degree));
    } catch (const SolveFailure& e) {
      std::cerr << "row M=" << M << " N=" << N << " dropped: " << e.what() << "\n";
    }
  }
  return rows;
}

namespace {

std::string cell(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.7f", v);
  return buf;
}

}  // namespace

std::string to_csv(const std::vector<ConvergenceRow>& rows, Method method) {
  std::string s = "M,N,h,R_mesh,R_paper,error,err_per_h,err_per_Rpaper";
  if (method == Method::RT) s += ",error_u";
  s += "\n";
  for (const auto& r : rows) {
    s += std::to_string(r.M) + "," + std::to_string(r.N) + "," + cell(r.h) + "," +
         cell(r.R_mesh) + "," + cell(r.R_paper) + "," + cell(r.error) + "," +
         cell(r.err_per_h) + "," + cell(r.err_per_Rpaper);
    if (method == Method::RT) s += "," + cell(r.error_u);
    s += "\n";
  }
  return s;
}

std::string to_markdown(const std::vector<ConvergenceRow>& rows, Method method) {
  std::string s = "| M | N | h | R_mesh | R_paper | error | error/h | error/R_paper |";
  if (method == Method::RT) s += " error_u |";
  s += "\n|--:|--:|--:|--:|--:|--:|--:|--:|";
  if (method == Method::RT) s += "--:|";
  s += "\n";
  for (const auto& r : rows) {
    s += "| " + std::to_string(r.M) + " | " + std::to_string(r.N) + " | " + cell(r.h) + " | " +
         cell(r.R_mesh) + " | " + cell(r.R_paper) + " | " + cell(r.error) + " | " +
         cell(r.err_per_h) + " | " + cell(r.err_per_Rpaper) + " |";
    if (method == Method::RT) s += " " + cell(r.error_u) + " |";
    s += "\n";
  }
  return s;
}

namespace {

void check_leq(std::vector<CheckResult>& out, const std::string& name, double measured,
               double allowed) {
  out.push_back({name, measured, allowed, measured <= allowed});
}

std::vector<CheckResult> verify_mesh() {
  std::vector<CheckResult> out;
  for (const auto [M, N] : {std::pair{4, 20}, std::pair{10, 32}}) {
    const Mesh m = generate_aniso(M, N);
    const MeshStats st = stats(m);
    const std::string tag = "(" + std::to_string(M) + "," + std::to_string(N) + ")";
    out.push_back({"elements" + tag, double(st.triangles), double((2 * M + 1) * N),
                   st.triangles == (2 * M + 1) * N});
    out.push_back({"vertices" + tag, double(st.vertices), double(M * N + M + 3 * N / 2 + 1),
                   st.vertices == M * N + M + 3 * N / 2 + 1});
    out.push_back({"edges" + tag, double(st.edges), double(3 * M * N + M + 5 * N / 2),
                   st.edges == 3 * M * N + M + 5 * N / 2});
    out.push_back({"violations" + tag, double(validate(m).size()), 0.0, validate(m).empty()});
    check_leq(out, "h" + tag + " = 1/M", std::abs(st.h - 1.0 / M), 1e-12);
    const double r_formula = N / (8.0 * M * M) + 1.0 / (2.0 * N);
    check_leq(out, "R_mesh" + tag + " formula", std::abs(st.max_circumradius - r_formula), 1e-12);
  }
  return out;
}

double factorial(int n) { return n <= 1 ? 1.0 : n * factorial(n - 1); }

std::vector<CheckResult> verify_quadrature() {
  const TriangleGeom ref{{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  std::vector<CheckResult> out;
  for (int deg = 1; deg <= 6; ++deg) {
    double worst = 0.0;
    for (int a = 0; a <= deg; ++a) {
      for (int b = 0; a + b <= deg; ++b) {
        const double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
        const double got = integrate(ref, quad_rule(deg), [a, b](const Point2& p) {
          return std::pow(p.x(), a) * std::pow(p.y(), b);
        });
        worst = std::max(worst, std::abs(got - exact) / exact);
      }
    }
    check_leq(out, "monomials degree " + std::to_string(deg), worst, 1e-13);
  }
  return out;
}

std::vector<CheckResult> verify_reconstruction() {
  const Mesh m = generate_aniso(4, 8);
  const PoissonProblem prob = make_bubble_problem();
  const RtSolution sol = solve_rt(m, prob, 1e-12);
  const FeFunction fbar = pi0_project(m, prob.f);

  double div_mismatch = 0.0;
  for (int t = 0; t < m.triangle_count(); ++t) {
    const double f = fbar.coeffs[t];
    div_mismatch = std::max(div_mismatch,
                            std::abs(divergence(sol.flux, t) + f) / (1.0 + std::abs(f)));
  }

  std::vector<CheckResult> out;
  check_leq(out, "div p + pi0 f = 0", div_mismatch, 1e-11);
  check_leq(out, "mixed system residual", mixed_residual(m, prob.f, sol), 1e-9);
  check_leq(out, "flux normal continuity", max_normal_jump(m, sol.flux), 1e-10);
  return out;
}

std::vector<CheckResult> verify_interpolation() {
  const Mesh m = generate_aniso(8, 32);
  const Constants c = babuska_aziz();
  std::vector<CheckResult> out;
  for (const auto& [name, field] : standard_vector_fields()) {
    const InterpBoundRatios r = interp_bound_check(m, field);
    check_leq(out, "|q-Iq|0/(R|q|1) " + name, r.l2_over_R, c.C2_2);
    check_leq(out, "|div(q-Iq)|0/(h|div q|1) " + name, r.div_over_h, 1.0);
  }
  // Commutation div(Iq) = pi0(div q): exact for polynomial fields, where both
  // quadratures are exact.
  for (const std::size_t idx : {std::size_t{2}, std::size_t{4}}) {
    const auto& [name, field] = standard_vector_fields()[idx];
    const FeFunction iq = rt_interpolate(m, field.value);
    const FeFunction divq = pi0_project(m, [&field](const Point2& p) {
      const Eigen::Matrix2d j = field.jacobian(p);
      return j(0, 0) + j(1, 1);
    });
    double worst = 0.0;
    for (int t = 0; t < m.triangle_count(); ++t) {
      worst = std::max(worst, std::abs(divergence(iq, t) - divq.coeffs[t]) /
                                  (1.0 + std::abs(divq.coeffs[t])));
    }
    check_leq(out, "div(Iq) = pi0(div q) " + name, worst, 1e-11);
  }
  return out;
}

std::vector<CheckResult> verify_sharpness() {
  std::vector<CheckResult> out;
  for (const double h : {0.05, 0.1, 0.5, 1.0}) {
    const SharpnessCase sc = sharpness_case(h);
    const double e0_exact = (3.0 + h * h) * (1.0 + h * h) / (12.0 * h);
    const double e1_exact = 2.0 * h;
    const std::string tag = " at h=" + cell(h);
    check_leq(out, "e0 closed form" + tag, std::abs(sc.e0_sq - e0_exact) / e0_exact, 1e-10);
    check_leq(out, "e1 closed form" + tag, std::abs(sc.e1_sq - e1_exact) / e1_exact, 1e-10);
    check_leq(out, "interpolant vanishes" + tag, sc.iq_max_abs_dof, 1e-13);
    const double lower = sc.circumradius / (2.0 * std::sqrt(6.0));
    out.push_back({"ratio >= R/(2 sqrt 6)" + tag, sc.ratio, lower, sc.ratio >= lower});
  }
  return out;
}

std::vector<CheckResult> verify_constants() {
  const Constants c = babuska_aziz();
  std::vector<CheckResult> out;
  check_leq(out, "A2 near 0.49291", std::abs(c.A2 - 0.49291), 1e-5);
  check_leq(out, "C2_2 near 2.7883", std::abs(c.C2_2 - 2.7883), 1e-4);
  check_leq(out, "root residual", std::abs(std::tan(1.0 / c.A2) + 1.0 / c.A2), 1e-10);
  return out;
}

std::vector<CheckResult> verify_infsup() {
  std::vector<double> betas;
  std::vector<CheckResult> out;
  for (const auto [M, N] : {std::pair{2, 4}, std::pair{4, 8}, std::pair{8, 16}}) {
    const Mesh m = generate_aniso(M, N);
    const MixedSystem sys = assemble_mixed(m, [](const Point2&) { return 0.0; }, 2);
    Eigen::VectorXd areas(m.triangle_count());
    for (int t = 0; t < m.triangle_count(); ++t) areas[t] = area(m.triangle_geom(t));
    const double beta = dense_min_singular_generalized(sys.div_op, sys.mass, areas);
    betas.push_back(beta);
    out.push_back({"beta(" + std::to_string(M) + "," + std::to_string(N) + ") positive", beta,
                   0.0, beta > 0.0});
  }
  const double ratio = *std::max_element(betas.begin(), betas.end()) /
                       *std::min_element(betas.begin(), betas.end());
  check_leq(out, "beta spread (max/min)", ratio, 2.0);
  return out;
}

}  // namespace

std::vector<CheckResult> run_verify_suite(const std::string& suite) {
  if (suite == "mesh") return verify_mesh();
  if (suite == "quadrature") return verify_quadrature();
  if (suite == "reconstruction") return verify_reconstruction();
  if (suite == "interpolation") return verify_interpolation();
  if (suite == "sharpness") return verify_sharpness();
  if (suite == "constants") return verify_constants();
  if (suite == "infsup") return verify_infsup();
  throw std::invalid_argument("unknown verify suite: " + suite);
}

int cmd_table(const RunConfig& cfg) {
  const std::vector<ConvergenceRow> rows = run_sweep(cfg);
  const std::string text =
      cfg.format == TableFormat::Csv ? to_csv(rows, cfg.method) : to_markdown(rows, cfg.method);
  if (cfg.out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out_path);
    if (!out) {
      std::cerr << "cannot open " << cfg.out_path << "\n";
      return 1;
    }
    out << text;
  }
  return rows.size() == cfg.m_list.size() ? 0 : 1;
}

int cmd_verify(const std::string& suite, std::ostream& os) {
  std::vector<CheckResult> checks;
  try {
    checks = run_verify_suite(suite);
  } catch (const std::invalid_argument& e) {
    os << e.what() << "\n";
    return 2;
  }
  int failures = 0;
  for (const auto& c : checks) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g (allowed %.6g)", c.measured, c.allowed);
    os << (c.pass ? "[pass] " : "[FAIL] ") << c.name << ": " << buf << "\n";
    if (!c.pass) ++failures;
  }
  os << suite << ": " << (checks.size() - static_cast<std::size_t>(failures)) << "/"
     << checks.size() << " checks passed\n";
  return failures == 0 ? 0 : 1;
}

int cmd_mesh(int M, int N, const std::string& out_path, std::ostream& os) {
  const Mesh m = generate_aniso(M, N);
  if (!out_path.empty()) write_mesh(m, out_path);
  const MeshStats st = stats(m);
  const Constants c = babuska_aziz();
  char buf[256];
  os << "elements: " << st.triangles << "\n";
  os << "vertices: " << st.vertices << "\n";
  os << "edges: " << st.edges << "\n";
  std::snprintf(buf, sizeof(buf), "h: %.7g\nR_mesh: %.7g\nR_paper: %.7g\n", st.h,
                st.max_circumradius, r_paper(M, N));
  os << buf;
  std::snprintf(buf, sizeof(buf), "circumradius condition R_mesh <= %.4f: %s\n", c.R_threshold,
                st.max_circumradius <= c.R_threshold ? "satisfied" : "violated");
  os << buf;
  return 0;
}

int cmd_interp_bounds(int M, int N, std::ostream& os) {
  const Mesh m = generate_aniso(M, N);
  const Constants c = babuska_aziz();
  int failures = 0;
  os << "mesh (" << M << "," << N << "), bounds: |q-Iq|0/(R|q|1) <= " << cell(c.C2_2)
     << ", |div(q-Iq)|0/(h|div q|1) <= 1\n";
  for (const auto& [name, field] : standard_vector_fields()) {
    const InterpBoundRatios r = interp_bound_check(m, field);
    const bool ok = r.l2_over_R <= c.C2_2 && r.div_over_h <= 1.0;
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%-28s l2 ratio %.6f   div ratio %.6f   %s\n", name.c_str(),
                  r.l2_over_R, r.div_over_h, ok ? "ok" : "EXCEEDED");
    os << buf;
    if (!ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}

int cmd_ba_constant(std::ostream& os) {
  const Constants c = babuska_aziz();
  char buf[192];
  std::snprintf(buf, sizeof(buf),
                "A2 = %.12g\nC2_2 = %.12g\nR_threshold = %.12g\nroot residual = %.3g\n", c.A2,
                c.C2_2, c.R_threshold, std::abs(std::tan(1.0 / c.A2) + 1.0 / c.A2));
  os << buf;
  return 0;
}

}  // namespace anisofem
