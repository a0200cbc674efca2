// matroot: decide, construct, verify, search and factor from the command line.
//
// Exit status: 0 holds, 2 usage error, 3 refuted by a verified witness,
// 4 quarantined cell whose closed form and empirical verdict disagree.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "matroot/commands.hpp"

namespace {

using matroot::json;
namespace cmd = matroot::commands;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw matroot::ParseError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw matroot::ParseError(path + ": " + e.what());
  }
}

struct ToleranceFlags {
  std::optional<double> absolute;
  std::optional<double> relative;

  void add_to(CLI::App* app) {
    app->add_option("--tol", absolute, "absolute tolerance (default 1e-9, or MATROOT_TOL)");
    app->add_option("--rtol", relative, "relative tolerance (default 1e-9)");
  }

  matroot::Tolerance resolve() const {
    matroot::Tolerance tol = cmd::default_tolerance();
    return matroot::make_tolerance(absolute.value_or(tol.absolute), relative.value_or(tol.relative));
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roots of X^n = aI and the factor implications they satisfy or refute"};
  app.require_subcommand(1);
  std::string output_path;
  app.add_option("-o,--output", output_path, "write JSON here instead of standard output");

  int k = 0;
  int n = 0;
  std::string a;
  std::string matrix_path;
  std::optional<std::string> variant;
  ToleranceFlags tol_flags;

  auto* decide = app.add_subcommand("decide", "closed-form verdict with a verified witness");
  decide->add_option("--k", k, "matrix order")->required();
  decide->add_option("--n", n, "exponent")->required();
  decide->add_option("--a", a, "scalar a as p/q or decimal")->required();
  tol_flags.add_to(decide);

  cmd::ConstructRequest construct_req;
  auto* construct = app.add_subcommand("construct", "emit a witness matrix");
  construct->add_option("--tag", construct_req.tag,
                        "case-i..case-vi, nilpotent-shift, theorem2-ce, complex-ce")
      ->required();
  construct->add_option("--k", construct_req.k)->required();
  construct->add_option("--n", construct_req.n)->required();
  construct->add_option("--a", construct_req.a, "rescale to this a (complex-ce: real part)");
  construct->add_option("--a-imag", construct_req.a_imag, "imaginary part of a for complex-ce");
  construct->add_option("--conjugate-seed", construct_req.conjugate_seed,
                        "conjugate by a seeded random unimodular matrix");

  auto* verify = app.add_subcommand("verify", "evaluate the applicable implication at one matrix");
  verify->add_option("--matrix", matrix_path, "Matrix or Witness JSON file")->required();
  verify->add_option("--k", k)->required();
  verify->add_option("--n", n)->required();
  verify->add_option("--a", a)->required();
  verify->add_option("--variant", variant, "minus-two-cos (default) or plus-cos");
  tol_flags.add_to(verify);

  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  auto* search = app.add_subcommand("search", "randomized block search for a violator");
  search->add_option("--k", k)->required();
  search->add_option("--n", n)->required();
  search->add_option("--a", a)->required();
  search->add_option("--budget", budget)->required()->check(CLI::PositiveNumber);
  search->add_option("--seed", seed, "64-bit seed")->default_val(0);
  tol_flags.add_to(search);

  auto* factor = app.add_subcommand("factor", "evaluate the factor polynomials at a matrix");
  factor->add_option("--matrix", matrix_path, "Matrix or Witness JSON file")->required();
  factor->add_option("--n", n)->required();
  factor->add_option("--a", a)->required();
  factor->add_option("--variant", variant, "minus-two-cos (default) or plus-cos");
  tol_flags.add_to(factor);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cmd::kExitUsage;
  }

  cmd::Result result;
  try {
    if (*decide) {
      result = cmd::decide(k, n, a, tol_flags.resolve());
    } else if (*construct) {
      result = cmd::construct(construct_req);
    } else if (*verify) {
      result = cmd::verify(read_json_file(matrix_path), k, n, a, tol_flags.resolve(), variant);
    } else if (*search) {
      result = cmd::search(k, n, a, budget, seed, tol_flags.resolve());
    } else {
      result = cmd::factor(read_json_file(matrix_path), n, a, variant, tol_flags.resolve());
    }
  } catch (const matroot::Error& e) {
    std::cerr << "matroot: " << e.what() << "\n";
    return cmd::kExitUsage;
  }

  const std::string text = result.output.dump(2) + "\n";
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output_path);
    if (!out) {
      std::cerr << "matroot: cannot write " << output_path << "\n";
      return cmd::kExitUsage;
    }
    out << text;
  }
  return result.exit_code;
}
