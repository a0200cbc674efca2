#include "matroot/theorems.hpp"

#include <numbers>
#include <random>
#include <stdexcept>

namespace matroot {

namespace {

constexpr std::string_view kNoRootNote =
    "no real matrix satisfies X^n = aI for odd k, even n and a < 0";
constexpr std::string_view kQuarantineNote =
    "closed form says false but no order-2 counterexample exists; empirical verdict reported";

void require_order(const Matrix& x, const ProblemInstance& inst) {
  if (x.order() != static_cast<std::size_t>(inst.k)) {
    throw DimensionError("matrix order " + std::to_string(x.order()) + " does not match k = " +
                         std::to_string(inst.k));
  }
}

Matrix scalar_identity(Backend backend, std::size_t order, const Rational& value) {
  const Matrix id = Matrix::identity(backend, order);
  if (backend == Backend::Rational) return scale_by(id, value);
  return scale_by(id, value.get_d());
}

bool closed_form_holds(const ProblemInstance& inst) {
  return inst.regime() == Regime::NegativeEvenN ? theorem2_holds(inst) : theorem1_holds(inst);
}

// Rational matrices are only kept exact when a^(1/n) is rational too.
Matrix working_copy(const Matrix& x, const RootConvention& conv) {
  if (x.backend() == Backend::Rational && !conv.exact_root()) return promote(x, Backend::Real);
  return x;
}

Matrix root_identity(const Matrix& x, const RootConvention& conv) {
  if (x.backend() == Backend::Rational) return scalar_identity(x.backend(), x.order(), *conv.exact_root());
  return scale_by(Matrix::identity(x.backend(), x.order()), conv.root());
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::PositiveA:
      return "positive-a";
    case Regime::ZeroA:
      return "zero-a";
    case Regime::NegativeOddN:
      return "negative-odd-n";
    case Regime::NegativeEvenN:
      return "negative-even-n";
  }
  return "unknown";
}

std::string_view to_string(VerdictMode mode) {
  switch (mode) {
    case VerdictMode::ClosedForm:
      return "closed-form";
    case VerdictMode::Vacuous:
      return "vacuous";
    case VerdictMode::WitnessFound:
      return "witness-found";
    case VerdictMode::SearchExhausted:
      return "search-exhausted";
  }
  return "unknown";
}

ProblemInstance ProblemInstance::make(int k, int n, Rational a) {
  if (k < 2 || n < 2) throw ArgumentError("k and n must both be at least 2");
  a.canonicalize();
  return ProblemInstance{k, n, std::move(a)};
}

Regime ProblemInstance::regime() const {
  const int s = sgn(a);
  if (s > 0) return Regime::PositiveA;
  if (s == 0) return Regime::ZeroA;
  return n % 2 == 1 ? Regime::NegativeOddN : Regime::NegativeEvenN;
}

bool ProblemInstance::quarantined() const {
  return regime() == Regime::NegativeEvenN && k == 2 && n >= 4;
}

bool theorem1_holds(const ProblemInstance& inst) {
  if (inst.regime() == Regime::NegativeEvenN) {
    throw ApplicabilityError("the geometric factor is undefined for a < 0 with even n");
  }
  if (sgn(inst.a) == 0) return inst.n >= inst.k + 1;
  return inst.k == 2 && inst.n % 2 == 1;
}

bool theorem2_holds(const ProblemInstance& inst) {
  if (inst.regime() != Regime::NegativeEvenN) {
    throw ApplicabilityError("the quadratic-factor sentence needs a < 0 with even n");
  }
  return inst.k % 2 == 1 || inst.n == 2;
}

bool minus_identity_root_exists(int k, int n) {
  if (n < 2 || n % 2 != 0) throw ApplicabilityError("minus_identity_root_exists needs even n");
  if (k < 1) throw ArgumentError("k must be positive");
  return k % 2 == 0;
}

Sentence1Report evaluate_sentence1(const Matrix& x_in, const ProblemInstance& inst,
                                   const Tolerance& tol) {
  require_order(x_in, inst);
  if (inst.regime() == Regime::NegativeEvenN) {
    throw ApplicabilityError("sentence 1 is not meaningful for a < 0 with even n");
  }
  const RootConvention conv(inst.n, inst.a);
  const Matrix x = working_copy(x_in, conv);
  Sentence1Report r;
  r.equation_satisfied =
      mat_eq(mat_pow(x, inst.n), scalar_identity(x.backend(), x.order(), inst.a), tol);
  r.is_simple_root = mat_eq(x, root_identity(x, conv), tol);
  r.factor_sum_zero = mat_is_zero(geometric_factor_sum(x, conv), tol);
  r.sentence_value = !r.equation_satisfied || r.is_simple_root || r.factor_sum_zero;
  return r;
}

bool sentence1_holds_for(const Matrix& x_in, const ProblemInstance& inst, const Tolerance& tol) {
  require_order(x_in, inst);
  if (inst.regime() == Regime::NegativeEvenN) {
    throw ApplicabilityError("sentence 1 is not meaningful for a < 0 with even n");
  }
  const RootConvention conv(inst.n, inst.a);
  const Matrix x = working_copy(x_in, conv);
  if (!mat_eq(mat_pow(x, inst.n), scalar_identity(x.backend(), x.order(), inst.a), tol)) return true;
  if (mat_eq(x, root_identity(x, conv), tol)) return true;
  return mat_is_zero(geometric_factor_sum(x, conv), tol);
}

Sentence2Report evaluate_sentence2(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol,
                                   QuadraticVariant variant) {
  require_order(x, inst);
  if (inst.regime() != Regime::NegativeEvenN) {
    throw ApplicabilityError("sentence 2 needs a < 0 with even n");
  }
  Sentence2Report r;
  r.equation_satisfied =
      mat_eq(mat_pow(x, inst.n), scalar_identity(x.backend(), x.order(), inst.a), tol);
  const double a = inst.a.get_d();
  for (int i = 1; i <= inst.n / 2; ++i) {
    if (mat_is_zero(quadratic_factor_eval(x, inst.n, a, i, variant), tol)) {
      r.quadratic_zero_indices.push_back(i);
    }
  }
  r.sentence_value = !r.equation_satisfied || !r.quadratic_zero_indices.empty();
  return r;
}

bool sentence2_holds_for(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol,
                         QuadraticVariant variant) {
  require_order(x, inst);
  if (inst.regime() != Regime::NegativeEvenN) {
    throw ApplicabilityError("sentence 2 needs a < 0 with even n");
  }
  if (!mat_eq(mat_pow(x, inst.n), scalar_identity(x.backend(), x.order(), inst.a), tol)) return true;
  const double a = inst.a.get_d();
  for (int i = 1; i <= inst.n / 2; ++i) {
    if (mat_is_zero(quadratic_factor_eval(x, inst.n, a, i, variant), tol)) return true;
  }
  return false;
}

bool sentence_holds_for(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol) {
  return inst.applicable_sentence() == 2 ? sentence2_holds_for(x, inst, tol)
                                         : sentence1_holds_for(x, inst, tol);
}

Witness canonical_witness(const ProblemInstance& inst) {
  if (closed_form_holds(inst)) {
    throw ArgumentError("the instance satisfies its sentence; there is no witness");
  }
  const int k = inst.k;
  const int n = inst.n;
  if (inst.regime() == Regime::ZeroA) {
    return Witness{shift_nilpotent(k, n), CaseTag::NilpotentShift, k, n, Scalar(Rational(0)), 1};
  }
  Witness w = [&] {
    if (inst.regime() == Regime::NegativeEvenN) {
      if (k < 4) throw ArgumentError("no fixed witness fits order 2 for even n >= 4 and a < 0");
      return theorem2_counterexample(k, n);
    }
    const bool n_even = n % 2 == 0;
    const bool k_even = k % 2 == 0;
    CaseTag tag;
    if (sgn(inst.a) > 0) {
      if (n_even) {
        tag = k_even ? CaseTag::CaseI : CaseTag::CaseII;
      } else {
        tag = k_even ? CaseTag::CaseIII : CaseTag::CaseIV;
      }
    } else {
      tag = k_even ? CaseTag::CaseV : CaseTag::CaseVI;
    }
    return case_counterexample(tag, k, n);
  }();
  if (abs(inst.a) != 1) w.matrix = scale_from_unit(w.matrix, n, inst.a);
  w.a = inst.a;
  return w;
}

Verdict decide(const ProblemInstance& inst, const SearchOptions& quarantine_search) {
  Verdict v;
  v.closed_form = closed_form_holds(inst);
  if (inst.regime() == Regime::NegativeEvenN && inst.k % 2 == 1) {
    v.holds = true;
    v.mode = VerdictMode::Vacuous;
    v.note = std::string(kNoRootNote);
    return v;
  }
  if (inst.quarantined()) {
    Verdict empirical = search_counterexample(inst, quarantine_search.budget, quarantine_search.seed,
                                              quarantine_search.tol);
    empirical.closed_form = v.closed_form;
    empirical.quarantined = true;
    empirical.note = std::string(kQuarantineNote);
    return empirical;
  }
  if (v.closed_form) {
    v.holds = true;
    v.mode = VerdictMode::ClosedForm;
    return v;
  }
  Witness w = canonical_witness(inst);
  if (sentence_holds_for(w.matrix, inst, Tolerance{})) {
    throw std::logic_error("canonical witness failed re-verification for k=" + std::to_string(inst.k) +
                           ", n=" + std::to_string(inst.n) + ", a=" + inst.a.get_str());
  }
  v.holds = false;
  v.mode = VerdictMode::ClosedForm;
  v.witness = std::move(w);
  return v;
}

Candidate generate_candidate(const ProblemInstance& inst, std::uint64_t seed, std::uint64_t trial) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial), static_cast<std::uint32_t>(trial >> 32)};
  std::mt19937_64 rng(seq);

  const int n = inst.n;
  std::vector<Matrix> choices;
  switch (inst.regime()) {
    case Regime::ZeroA:
      choices.emplace_back(RationalMatrix(1));
      for (int s = 2; s <= std::min(n, inst.k); ++s) choices.emplace_back(shift_nilpotent(s, s));
      break;
    case Regime::PositiveA:
      choices.emplace_back(RationalMatrix(1, {1}));
      if (n % 2 == 0) {
        choices.emplace_back(RationalMatrix(1, {-1}));
        choices.emplace_back(swap_block());
      }
      for (int w = 1; 2 * w < n; ++w) choices.emplace_back(rotation(2.0 * std::numbers::pi * w / n));
      break;
    case Regime::NegativeOddN:
      choices.emplace_back(RationalMatrix(1, {-1}));
      for (int w = 1; 2 * w < n; ++w) {
        choices.emplace_back(scale(rotation(2.0 * std::numbers::pi * w / n), -1.0));
      }
      break;
    case Regime::NegativeEvenN:
      for (int j = 1; j <= n / 2; ++j) {
        choices.emplace_back(rotation((2.0 * j - 1.0) * std::numbers::pi / n));
      }
      break;
  }

  Candidate c{Matrix(RationalMatrix(1)), true};
  std::vector<Matrix> blocks;
  std::vector<std::size_t> fitting;
  std::size_t remaining = static_cast<std::size_t>(inst.k);
  while (remaining > 0) {
    fitting.clear();
    for (std::size_t i = 0; i < choices.size(); ++i) {
      if (choices[i].order() <= remaining) fitting.push_back(i);
    }
    if (fitting.empty()) {
      blocks.emplace_back(RationalMatrix(1, {-1}));
      c.root_by_construction = false;
      remaining -= 1;
      continue;
    }
    const Matrix& pick = choices[fitting[rng() % fitting.size()]];
    blocks.push_back(pick);
    remaining -= pick.order();
  }

  bool any_real = false;
  for (const auto& b : blocks) any_real = any_real || b.backend() != Backend::Rational;
  if (any_real) {
    for (auto& b : blocks) b = promote(b, Backend::Real);
  }
  Matrix m = block_diag(std::span<const Matrix>(blocks));
  m = conjugate(m, unimodular_conjugator(m.order(), rng()));
  if (sgn(inst.a) != 0 && abs(inst.a) != 1) m = scale_from_unit(m, n, inst.a);
  c.matrix = std::move(m);
  return c;
}

Verdict search_counterexample(const ProblemInstance& inst, std::uint64_t budget, std::uint64_t seed,
                              const Tolerance& tol) {
  if (budget == 0) throw ArgumentError("search budget must be positive");
  Verdict v;
  v.closed_form = closed_form_holds(inst);
  v.quarantined = inst.quarantined();
  if (inst.regime() == Regime::NegativeEvenN && !minus_identity_root_exists(inst.k, inst.n)) {
    v.note = std::string(kNoRootNote);
  }
  for (std::uint64_t t = 0; t < budget; ++t) {
    Candidate c = generate_candidate(inst, seed, t);
    if (!sentence_holds_for(c.matrix, inst, tol)) {
      v.holds = false;
      v.mode = VerdictMode::WitnessFound;
      v.trials = t + 1;
      v.witness = Witness{std::move(c.matrix), CaseTag::BlockSearch, inst.k, inst.n, Scalar(inst.a),
                          inst.applicable_sentence()};
      return v;
    }
  }
  v.holds = true;
  v.mode = VerdictMode::SearchExhausted;
  v.trials = budget;
  return v;
}

}  // namespace matroot
