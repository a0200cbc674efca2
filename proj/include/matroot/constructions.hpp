#pragma once

// Witness matrices: roots of aI that refute (or illustrate) the factor
// implications, plus the unimodular conjugation used to randomize them.

#include <cstdint>
#include <optional>
#include <string_view>

#include "matroot/matrix.hpp"

namespace matroot {

enum class CaseTag {
  CaseI,    // n even, k even, a = 1: diag(T, ..., T)
  CaseII,   // n even, k odd, a = 1: diag(1, T, ..., T)
  CaseIII,  // n odd, k even >= 4, a = 1: diag(I2, R, ..., R)
  CaseIV,   // n odd, k odd >= 3, a = 1: diag(1, R, ..., R)
  CaseV,    // n odd, k even >= 4, a = -1: diag(-I2, -R, ..., -R)
  CaseVI,   // n odd, k odd >= 3, a = -1: diag(-1, -R, ..., -R)
  NilpotentShift,
  Theorem2CE,
  ComplexCE,
  BlockSearch,  // produced by the randomized search, not a fixed family
};

std::string_view to_string(CaseTag tag);
std::optional<CaseTag> parse_case_tag(std::string_view name);

/// A constructed matrix with the instance (k, n, a) it is a root for.
/// Invariant: matrix.order() == k and matrix^n == a I.
struct Witness {
  Matrix matrix;
  CaseTag tag;
  int k = 0;
  int n = 0;
  Scalar a;
  std::optional<int> refutes_sentence;
};

/// Ones on the superdiagonal j = i + k - n + 1 (1-based); A^n = O, A^(n-1) != O.
/// Requires 2 <= n <= k.
RationalMatrix shift_nilpotent(int k, int n);

/// The [[0, 1], [1, 0]] swap block.
RationalMatrix swap_block();

/// The fixed block matrices for the six a = +-1 families. Throws ArgumentError
/// when (k, n) do not fit the tag.
Witness case_counterexample(CaseTag tag, int k, int n);

/// diag(rotation(pi/n), rotation(3pi/n), ..., rotation(3pi/n)), an n-th root of -I
/// satisfying none of the quadratic factors. Requires k even >= 4, n even >= 4.
Witness theorem2_counterexample(int k, int n);

/// diag(w, w z, ..., w z) with w the principal n-th root of a and z = exp(2 pi i / n).
Witness complex_counterexample(int k, int n, Complex a);

/// Integer matrix with determinant +-1 and its exact inverse.
struct Conjugator {
  RationalMatrix forward;
  RationalMatrix inverse;
};

/// Product of at most 3k random elementary shears I + c e_ij, c in {-2..2} \ {0},
/// deterministic in seed. Shears that would push ||P||_inf * ||P^-1||_inf past
/// kMaxConjugatorConditioning are skipped.
inline constexpr double kMaxConjugatorConditioning = 32.0;
Conjugator unimodular_conjugator(std::size_t order, std::uint64_t seed);

/// P A P^-1, exact on the rational backend.
Matrix conjugate(const Matrix& a, const Conjugator& p);

Witness conjugate_random(const Witness& w, std::uint64_t seed);

/// |a|^(-1/n) X, exact when |a|^(1/n) is rational and X is rational.
/// Maps an n-th root of aI to an n-th root of sign(a) I. Throws for a == 0.
Matrix scale_to_unit(const Matrix& x, int n, const Rational& a);

/// Inverse of scale_to_unit: |a|^(1/n) X.
Matrix scale_from_unit(const Matrix& x, int n, const Rational& a);

}  // namespace matroot
