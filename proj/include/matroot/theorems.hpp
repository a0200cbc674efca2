#pragma once

// Closed-form decision procedures for when every root of X^n = aI must
// annihilate one of the factor polynomials, per-matrix evaluation of the two
// implications, and a randomized block search that cross-checks them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "matroot/constructions.hpp"
#include "matroot/factor.hpp"
#include "matroot/matrix.hpp"

namespace matroot {

class ApplicabilityError : public Error {
 public:
  using Error::Error;
};

enum class Regime { PositiveA, ZeroA, NegativeOddN, NegativeEvenN };

std::string_view to_string(Regime regime);

/// (k, n, a) with k, n >= 2.
struct ProblemInstance {
  int k = 2;
  int n = 2;
  Rational a;

  static ProblemInstance make(int k, int n, Rational a);

  Regime regime() const;
  /// Sentence 1 (geometric factor) for every regime except NegativeEvenN,
  /// sentence 2 (quadratic factors) for NegativeEvenN.
  int applicable_sentence() const { return regime() == Regime::NegativeEvenN ? 2 : 1; }
  /// k == 2, n >= 4, a < 0 with n even: the closed form says false but no
  /// order-2 counterexample exists; see decide().
  bool quarantined() const;
};

/// (a != 0, k = 2, n odd) or (a = 0, n >= k + 1). Throws ApplicabilityError for NegativeEvenN.
bool theorem1_holds(const ProblemInstance& inst);

/// k odd, or k even and n = 2. Throws ApplicabilityError unless NegativeEvenN.
bool theorem2_holds(const ProblemInstance& inst);

/// Whether some real k x k matrix has A^n = -I, for even n. Odd k is ruled out
/// by det(A)^n = (-1)^k < 0.
bool minus_identity_root_exists(int k, int n);

struct Sentence1Report {
  bool equation_satisfied = false;
  bool is_simple_root = false;
  bool factor_sum_zero = false;
  bool sentence_value = true;
};

struct Sentence2Report {
  bool equation_satisfied = false;
  std::vector<int> quadratic_zero_indices;
  bool sentence_value = true;
};

/// Full evaluation of the sentence-1 implication at one matrix (no short circuit).
Sentence1Report evaluate_sentence1(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol);
Sentence2Report evaluate_sentence2(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol,
                                   QuadraticVariant variant = QuadraticVariant::MinusTwoCos);

/// X^n != aI, or X == a^(1/n) I, or the geometric factor vanishes.
bool sentence1_holds_for(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol);
/// X^n != aI, or some quadratic factor i in [1, n/2] vanishes.
bool sentence2_holds_for(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol,
                         QuadraticVariant variant = QuadraticVariant::MinusTwoCos);

/// Dispatches to the applicable sentence.
bool sentence_holds_for(const Matrix& x, const ProblemInstance& inst, const Tolerance& tol);

enum class VerdictMode { ClosedForm, Vacuous, WitnessFound, SearchExhausted };

std::string_view to_string(VerdictMode mode);

/// holds == false implies a witness is attached. Vacuous implies holds and no witness.
struct Verdict {
  bool holds = true;
  VerdictMode mode = VerdictMode::ClosedForm;
  std::optional<Witness> witness;
  std::uint64_t trials = 0;
  /// The closed-form theorem predicate for the instance.
  bool closed_form = true;
  /// Set for the k = 2, even n >= 4, a < 0 cells where the closed form and the
  /// empirical verdict are reported side by side.
  bool quarantined = false;
  std::optional<std::string> note;
};

struct SearchOptions {
  std::uint64_t budget = 2000;
  std::uint64_t seed = 0;
  Tolerance tol{};
};

/// Closed-form verdict with a re-verified deterministic witness for false
/// cells. Quarantined cells report the empirical search result instead
/// (holds from the search, closed_form from the predicate).
Verdict decide(const ProblemInstance& inst, const SearchOptions& quarantine_search = {});

/// The fixed witness decide() attaches to a false cell, scaled to a.
Witness canonical_witness(const ProblemInstance& inst);

/// One randomized candidate: a direct sum of blocks that are n-th roots of
/// sign(a) I (or nilpotents for a = 0), conjugated by a unimodular matrix and
/// scaled by |a|^(1/n). When the order cannot be filled with root blocks
/// (odd k, even n, a < 0) a -1 scalar pads it and root_by_construction is false.
struct Candidate {
  Matrix matrix;
  bool root_by_construction = true;
};

Candidate generate_candidate(const ProblemInstance& inst, std::uint64_t seed, std::uint64_t trial);

/// Evaluates the applicable sentence on up to budget candidates in trial
/// order; the first violator wins.
Verdict search_counterexample(const ProblemInstance& inst, std::uint64_t budget, std::uint64_t seed,
                              const Tolerance& tol);

}  // namespace matroot
