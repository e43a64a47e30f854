#include "anisofem/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

anisofem::Method parse_method(const std::string& s) {
  if (s == "p1") return anisofem::Method::P1;
  if (s == "cr") return anisofem::Method::CR;
  if (s == "rt") return anisofem::Method::RT;
  throw CLI::ValidationError("--method", "expected one of p1, cr, rt");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Anisotropic triangular FEM laboratory for the Poisson problem"};
  app.require_subcommand(1);

  int M = 10, N = 0;
  std::string method = "p1", format = "csv", out_path, suite;
  anisofem::RunConfig cfg;

  auto* mesh_cmd = app.add_subcommand("mesh", "Generate a mesh, print stats");
  mesh_cmd->add_option("--M", M, "Horizontal intervals")->required();
  mesh_cmd->add_option("--N", N, "Strips (even)")->required();
  mesh_cmd->add_option("--out", out_path, "Mesh file to write");

  auto* table_cmd = app.add_subcommand("table", "Convergence sweep table");
  table_cmd->add_option("--method", method, "p1 | cr | rt")->check(CLI::IsMember({"p1", "cr", "rt"}));
  table_cmd->add_option("--m-list", cfg.m_list, "M values, ascending");
  table_cmd->add_option("--alpha", cfg.alpha, "N = closest even integer to M^alpha");
  table_cmd->add_option("--tol", cfg.tol, "CG relative tolerance");
  table_cmd->add_option("--quad-degree", cfg.quad_degree, "Quadrature degree for loads and errors")
      ->check(CLI::Range(1, 6));
  table_cmd->add_option("--format", format, "csv | md")->check(CLI::IsMember({"csv", "md"}));
  table_cmd->add_option("--out", cfg.out_path, "Output file (stdout if omitted)");

  auto* verify_cmd = app.add_subcommand("verify", "Run a named invariant suite");
  verify_cmd->add_option("suite", suite,
                         "mesh | quadrature | reconstruction | interpolation | sharpness | "
                         "constants | infsup")
      ->required();

  int ib_M = 8, ib_N = 32;
  auto* interp_cmd = app.add_subcommand("interp-bounds", "Interpolation bound ratios");
  interp_cmd->add_option("--M", ib_M, "Horizontal intervals");
  interp_cmd->add_option("--N", ib_N, "Strips (even)");

  auto* ba_cmd = app.add_subcommand("ba-constant", "Print the interpolation constants");

  CLI11_PARSE(app, argc, argv);

  try {
    if (mesh_cmd->parsed()) return anisofem::cmd_mesh(M, N, out_path, std::cout);
    if (table_cmd->parsed()) {
      cfg.method = parse_method(method);
      cfg.format = format == "md" ? anisofem::TableFormat::Md : anisofem::TableFormat::Csv;
      return anisofem::cmd_table(cfg);
    }
    if (verify_cmd->parsed()) return anisofem::cmd_verify(suite, std::cout);
    if (interp_cmd->parsed()) return anisofem::cmd_interp_bounds(ib_M, ib_N, std::cout);
    if (ba_cmd->parsed()) return anisofem::cmd_ba_constant(std::cout);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
