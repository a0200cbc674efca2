// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "matroot/commands.hpp"
#include "oracles.hpp"

using namespace matroot;
namespace cmd = matroot::commands;

namespace {

const double kPi = std::numbers::pi;

struct Outcome {
  bool pass = true;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

std::string cell(int k, int n, const Rational& a) {
  return "k=" + std::to_string(k) + " n=" + std::to_string(n) + " a=" + a.get_str();
}

bool reverify_refutes(const Witness& w, const ProblemInstance& inst) {
  const Tolerance tol = w.matrix.backend() == Backend::Rational ? Tolerance::exact() : Tolerance{1e-9, 1e-9};
  return !sentence_holds_for(w.matrix, inst, tol);
}

Outcome theorem1_grid() {
  Outcome out;
  std::vector<ProblemInstance> cells;
  for (int k = 2; k <= 8; ++k) {
    for (int n = 2; n <= 9; ++n) {
      cells.push_back(ProblemInstance::make(k, n, Rational(1)));
      if (n % 2 == 1) cells.push_back(ProblemInstance::make(k, n, Rational(-1)));
      cells.push_back(ProblemInstance::make(k, n, Rational(0)));
    }
  }
  int true_cells = 0;
  int false_cells = 0;
  for (const auto& inst : cells) {
    const bool expected = theorem1_holds(inst);
    const Verdict v = decide(inst);
    if (v.holds != expected) {
      out.fail("decide disagrees at " + cell(inst.k, inst.n, inst.a));
      continue;
    }
    if (!expected) {
      ++false_cells;
      if (!v.witness || !reverify_refutes(*v.witness, inst)) {
        out.fail("witness does not re-verify at " + cell(inst.k, inst.n, inst.a));
      }
    } else {
      ++true_cells;
      const Verdict s = search_counterexample(inst, 2000, 42, Tolerance{});
      if (!s.holds) out.fail("search refuted a true cell at " + cell(inst.k, inst.n, inst.a));
    }
  }
  out.detail = out.pass ? std::to_string(cells.size()) + " cells, " + std::to_string(false_cells) +
                              " refuted, " + std::to_string(true_cells) + " survived 2000 trials"
                        : out.detail;
  return out;
}

Outcome theorem2_grid() {
  Outcome out;
  const double threshold = 0.1;
  double weakest = INFINITY;
  double weakest_bound = INFINITY;
  for (int n : {2, 4, 6, 8}) {
    for (int k = 2; k <= 9; ++k) {
      const auto inst = ProblemInstance::make(k, n, Rational(-1));
      const auto result = cmd::decide(k, n, "-1", Tolerance{});
      if (inst.quarantined()) {
        if (result.exit_code != cmd::kExitQuarantined || result.output["quarantined"] != true) {
          out.fail("quarantined cell not flagged at " + cell(k, n, inst.a));
        }
        continue;
      }
      const Verdict v = decide(inst);
      if (v.holds != theorem2_holds(inst)) out.fail("decide disagrees at " + cell(k, n, inst.a));
      if (k % 2 == 1) {
        if (v.mode != VerdictMode::Vacuous || minus_identity_root_exists(k, n)) {
          out.fail("vacuity path not taken at " + cell(k, n, inst.a));
        }
        continue;
      }
      if (k < 4 || n < 4) continue;
      const Witness w = theorem2_counterexample(k, n);
      const Matrix minus_i = scale_by(Matrix::identity(Backend::Real, static_cast<std::size_t>(k)), -1.0);
      if (!mat_eq(mat_pow(w.matrix, n), minus_i, {1e-9, 1e-9})) out.fail("A^n != -I at " + cell(k, n, inst.a));
      for (int i = 1; i <= n / 2; ++i) {
        const double theta = (2 * i - 1) * kPi / n;
        // On a rotation block with angle phi the factor equals 2(cos phi - cos theta) R_phi,
        // whose largest entry is at least |cos phi - cos theta| * sqrt(2).
        double bound = 0.0;
        for (double phi : {kPi / n, 3 * kPi / n}) {
          bound = std::max(bound, std::sqrt(2.0) * std::abs(std::cos(phi) - std::cos(theta)));
        }
        const double measured = max_abs_entry(quadratic_factor_eval(w.matrix, n, -1.0, i));
        weakest = std::min(weakest, measured);
        weakest_bound = std::min(weakest_bound, bound);
        if (bound < threshold) out.fail("analytic bound below threshold at " + cell(k, n, inst.a));
        if (measured < threshold || measured < bound - 1e-12) {
          out.fail("factor " + std::to_string(i) + " too small at " + cell(k, n, inst.a));
        }
      }
    }
  }
  if (out.pass) {
    std::ostringstream s;
    s << "smallest factor entry " << weakest << ", smallest analytic bound " << weakest_bound;
    out.detail = s.str();
  }
  return out;
}

Outcome triangular_oracle() {
  Outcome out;
  std::mt19937_64 rng(3);
  double worst = 0.0;
  for (int t = 0; t < 500; ++t) {
    const TriangularParams params{oracle::random_complex(rng, 2.0), oracle::random_complex(rng, 2.0),
                                  oracle::random_complex(rng, 2.0), 2 + static_cast<int>(rng() % 19)};
    const ComplexMatrix f = triangular_power_formula(params);
    const ComplexMatrix g = oracle::naive_power(triangular_matrix(params), params.n);
    for (std::size_t i = 0; i < 4; ++i) {
      const double scale = std::max(std::abs(f.entries()[i]), std::abs(g.entries()[i]));
      if (scale > 0) worst = std::max(worst, std::abs(f.entries()[i] - g.entries()[i]) / scale);
    }
    if (!oracle::relative_close(f, g, 1e-8)) out.fail("sample " + std::to_string(t) + " differs");
  }
  if (out.pass) {
    std::ostringstream s;
    s << "500 samples, worst entry relative error " << worst;
    out.detail = s.str();
  }
  return out;
}

Outcome factorization_identity() {
  Outcome out;
  std::mt19937_64 rng(4);
  const int ns[] = {3, 5, 7, 9};
  for (int t = 0; t < 200; ++t) {
    const int n = ns[t % 4];
    const Matrix x = oracle::random_real(rng, 2, -2.0, 2.0);
    const Matrix lhs = odd_factorization_product(x, n);
    const Matrix rhs = geometric_factor_sum(x, RootConvention(n, Rational(1)));
    if (!mat_eq(lhs, rhs, {1e-7, 1e-7})) out.fail("sample " + std::to_string(t) + " n=" + std::to_string(n));
  }
  if (out.pass) out.detail = "200 samples";
  return out;
}

Outcome nilpotent_exactness() {
  Outcome out;
  int count = 0;
  for (int k = 2; k <= 12; ++k) {
    for (int n = 2; n <= k; ++n) {
      const RationalMatrix a = shift_nilpotent(k, n);
      const RationalMatrix zero(static_cast<std::size_t>(k));
      if (!(power(a, n) == zero) || power(a, n - 1) == zero) {
        out.fail("index is not " + std::to_string(n) + " at k=" + std::to_string(k));
      }
      ++count;
    }
  }
  if (out.pass) out.detail = std::to_string(count) + " (k, n) pairs, exact";
  return out;
}

Outcome scaling_reductions() {
  Outcome out;
  std::mt19937_64 rng(6);
  const Rational choices[] = {Rational(2), Rational(-2), Rational(3), Rational(-3), Rational(1, 2), Rational(-1, 2)};
  const Tolerance tol{1e-8, 1e-8};
  int done = 0;
  int refuting = 0;
  while (done < 100) {
    const Rational a = choices[rng() % 6];
    const int k = 2 + static_cast<int>(rng() % 5);
    const int n = 2 + static_cast<int>(rng() % 8);
    if (sgn(a) < 0 && n % 2 == 0 && k % 2 == 1) continue;
    const auto unit = ProblemInstance::make(k, n, Rational(sgn(a)));
    const auto scaled_inst = ProblemInstance::make(k, n, a);
    const Candidate c = generate_candidate(unit, 6, static_cast<std::uint64_t>(done));
    if (!c.root_by_construction) continue;
    const Matrix x = promote(c.matrix, Backend::Real);
    const Matrix scaled = scale_from_unit(x, n, a);
    const Matrix back = scale_to_unit(scaled, n, a);
    const std::string where = "sample " + std::to_string(done) + " " + cell(k, n, a);
    if (!mat_eq(back, x, tol)) out.fail("scale_to_unit does not invert at " + where);
    const bool before = sentence_holds_for(x, unit, tol);
    const bool after = sentence_holds_for(scaled, scaled_inst, tol);
    if (before != after) out.fail("verdict changes under scaling at " + where);
    if (!before) ++refuting;
    ++done;
  }
  if (out.pass) out.detail = "100 samples, " + std::to_string(refuting) + " refuting";
  return out;
}

Outcome determinant_obstruction() {
  Outcome out;
  int candidates = 0;
  for (int k : {3, 5, 7}) {
    for (int n : {2, 4, 6}) {
      const auto inst = ProblemInstance::make(k, n, Rational(-1));
      if (minus_identity_root_exists(k, n)) out.fail("predicate claims a root at " + cell(k, n, inst.a));
      const Matrix minus_i = scale_by(Matrix::identity(Backend::Real, static_cast<std::size_t>(k)), -1.0);
      for (std::uint64_t t = 0; t < 200; ++t) {
        const Matrix c = promote(generate_candidate(inst, 42, t).matrix, Backend::Real);
        if (mat_eq(mat_pow(c, n), minus_i, Tolerance{})) out.fail("candidate is a root at " + cell(k, n, inst.a));
        const double det = std::get<double>(determinant(c));
        if (!(std::pow(det, n) >= 0.0)) out.fail("det^n < 0 at " + cell(k, n, inst.a));
        ++candidates;
      }
    }
  }
  if (out.pass) out.detail = std::to_string(candidates) + " candidates";
  return out;
}

struct Run {
  int exit_code = -1;
  std::string out;
};

Run run_cli(const std::string& args) {
  const std::string command = std::string(MATROOT_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(command.c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t got;
  while ((got = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = ::pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

Outcome cli_round_trip() {
  Outcome out;
  const auto dir = std::filesystem::temp_directory_path() / ("matroot_accept_" + std::to_string(::getpid()));
  std::filesystem::create_directories(dir);
  const std::vector<std::string> constructs = {
      "--tag case-i --k 4 --n 4",
      "--tag case-ii --k 5 --n 6 --a 64",
      "--tag nilpotent-shift --k 6 --n 4 --a 0",
      "--tag case-i --k 6 --n 2 --conjugate-seed 17",
  };
  const std::vector<std::string> verifies = {"--k 4 --n 4 --a 1", "--k 5 --n 6 --a 64", "--k 6 --n 4 --a 0",
                                             "--k 6 --n 2 --a 1"};
  for (std::size_t i = 0; i < constructs.size(); ++i) {
    const auto path = (dir / ("w" + std::to_string(i) + ".json")).string();
    const Run c = run_cli("-o " + path + " construct " + constructs[i]);
    if (c.exit_code != 0) {
      out.fail("construct failed: " + constructs[i]);
      continue;
    }
    std::ifstream in(path);
    const json witness = json::parse(in);
    if (witness["matrix"]["backend"] != "rational") out.fail("not a rational witness: " + constructs[i]);
    const Run v = run_cli("verify --matrix " + path + " " + verifies[i]);
    if (v.exit_code != cmd::kExitRefuted) {
      out.fail("verify did not refute: " + constructs[i]);
      continue;
    }
    if (json::parse(v.out)["matrix"].dump() != witness["matrix"].dump()) {
      out.fail("matrix not byte-identical after round trip: " + constructs[i]);
    }
  }
  std::filesystem::remove_all(dir);

  const struct {
    std::string args;
    int expected;
  } codes[] = {
      {"decide --k 2 --n 3 --a 1", cmd::kExitHolds},
      {"decide --k 2 --n 2 --a 1.5x", cmd::kExitUsage},
      {"decide --k 4 --n 4 --a -1", cmd::kExitRefuted},
      {"decide --k 2 --n 4 --a -1", cmd::kExitQuarantined},
      {"search --k 4 --n 3 --a 1 --budget 100 --seed 7", cmd::kExitRefuted},
      {"frobnicate", cmd::kExitUsage},
  };
  for (const auto& c : codes) {
    const int got = run_cli(c.args).exit_code;
    if (got != c.expected) {
      out.fail("'" + c.args + "' exited " + std::to_string(got) + ", expected " + std::to_string(c.expected));
    }
  }
  if (out.pass) out.detail = "4 rational witnesses byte-identical; exit codes 0/2/3/4 exercised";
  return out;
}

}  // namespace

// With no arguments every criterion runs; a single 1-based index runs just that one.
int main(int argc, char** argv) {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"theorem-1 grid", theorem1_grid},
      {"theorem-2 grid", theorem2_grid},
      {"triangular power oracle", triangular_oracle},
      {"odd factorization identity", factorization_identity},
      {"nilpotent exactness", nilpotent_exactness},
      {"scaling reductions", scaling_reductions},
      {"determinant obstruction", determinant_obstruction},
      {"cli round-trip and exit codes", cli_round_trip},
  };
  int only = 0;
  if (argc > 1) {
    only = std::atoi(argv[1]);
    if (only < 1 || only > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [1-%zu]\n", argv[0], criteria.size());
      return 2;
    }
  }
  int failed = 0;
  int ran = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    if (only != 0 && index != only) continue;
    ++ran;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("[%s] %d. %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", index, name.c_str(), secs, o.detail.c_str());
  }
  if (only == 0) std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
