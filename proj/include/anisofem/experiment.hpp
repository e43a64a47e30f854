#pragma once

#include "anisofem/analysis.hpp"

#include <iosfwd>
#include <string>

namespace anisofem {

enum class Method { P1, CR, RT };
enum class TableFormat { Csv, Md };

/// One record of a convergence sweep. `error` is the table error of the
/// method (H1 seminorm for P1, broken H1 norm for CR, flux L2 for RT);
/// `error_u` is the scalar L2 error and only populated for RT.
struct ConvergenceRow {
  int M = 0, N = 0;
  double h = 0.0, R_mesh = 0.0, R_paper = 0.0;
  double error = 0.0;
  double error_u = 0.0;
  double err_per_h = 0.0, err_per_Rmesh = 0.0, err_per_Rpaper = 0.0;
};

struct RunConfig {
  Method method = Method::P1;
  std::vector<int> m_list = {10, 20, 30, 40};
  double alpha = 1.5;
  double tol = 1e-12;
  int quad_degree = 6;
  TableFormat format = TableFormat::Csv;
  std::string out_path;  // empty: stdout
};

/// R column as the reference tables report it: N/(2 M^2) + 1/(2N).
double r_paper(int M, int N);

ConvergenceRow run_case(Method method, int M, int N, double tol, int quad_degree);

/// Rows for every M in the config, N = even_n_for(M, alpha). Rows whose
/// solve fails are dropped after a diagnostic on stderr.
std::vector<ConvergenceRow> run_sweep(const RunConfig& cfg);

/// Fixed layout, 7 decimal places, '\n' newlines; deterministic byte for byte.
std::string to_csv(const std::vector<ConvergenceRow>& rows, Method method);
std::string to_markdown(const std::vector<ConvergenceRow>& rows, Method method);

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double allowed = 0.0;
  bool pass = false;
};

/// Named invariant suite: one of mesh, quadrature, reconstruction,
/// interpolation, sharpness, constants, infsup. Throws std::invalid_argument
/// for an unknown name.
std::vector<CheckResult> run_verify_suite(const std::string& suite);

int cmd_table(const RunConfig& cfg);
int cmd_verify(const std::string& suite, std::ostream& os);
int cmd_mesh(int M, int N, const std::string& out_path, std::ostream& os);
int cmd_interp_bounds(int M, int N, std::ostream& os);
int cmd_ba_constant(std::ostream& os);

}  // namespace anisofem
