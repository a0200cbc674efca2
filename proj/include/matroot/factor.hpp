#pragma once

// Factor polynomials of X^n - aI: the geometric cofactor of (X - a^(1/n) I),
// the real quadratic factors for even n and negative a, the odd-n product of
// quadratics, and the closed-form power of a 2x2 upper-triangular matrix.

#include <optional>
#include <utility>

#include "matroot/matrix.hpp"

namespace matroot {

class ConventionError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// Exact real n-th root of a rational, if it is itself rational.
/// Negative x has a real root only for odd n.
std::optional<Rational> exact_nth_root(const Rational& x, int n);

/// The real n-th root of a used by the geometric factor. For a < 0 this is
/// -|a|^(1/n) and n must be odd.
class RootConvention {
 public:
  RootConvention(int n, Rational a);

  int n() const { return n_; }
  const Rational& a() const { return a_; }
  double root() const { return root_; }
  /// Present when a^(1/n) is rational.
  const std::optional<Rational>& exact_root() const { return exact_root_; }

 private:
  int n_;
  Rational a_;
  double root_;
  std::optional<Rational> exact_root_;
};

/// X^(n-1) + r X^(n-2) + ... + r^(n-1) I with r = conv.root(), by Horner's
/// scheme. Rational input stays exact when the root is rational and is
/// promoted to the real backend otherwise.
Matrix geometric_factor_sum(const Matrix& x, const RootConvention& conv);

/// Which linear coefficient the quadratic factor carries.
///   MinusTwoCos: X^2 - 2 s cos((2i-1)pi/n) X + s^2 I   (annihilates rotation((2i-1)pi/n) when s = 1)
///   PlusCos:     X^2 + s cos((2i-1)pi/n) X + s^2 I
/// with s = (-a)^(1/n). Only MinusTwoCos is an actual factor of X^n - aI.
enum class QuadraticVariant { MinusTwoCos, PlusCos };

std::string_view to_string(QuadraticVariant v);
std::optional<QuadraticVariant> parse_quadratic_variant(std::string_view s);

/// Requires n even, a < 0 (DomainError) and 1 <= i <= n/2 (ArgumentError).
Matrix quadratic_factor_eval(const Matrix& x, int n, double a, int i,
                             QuadraticVariant variant = QuadraticVariant::MinusTwoCos);

/// prod_{w=1}^{(n-1)/2} (X^2 - 2 cos(2 pi w / n) X + I), factors applied in
/// increasing w. Requires n odd >= 3.
Matrix odd_factorization_product(const Matrix& x, int n);

/// [[p, q], [0, r]] together with the exponent n >= 2.
struct TriangularParams {
  Complex p;
  Complex q;
  Complex r;
  int n = 2;
};

ComplexMatrix triangular_matrix(const TriangularParams& params);

/// A^n = (sum_{j<n} p^(n-1-j) r^j) A - p r (sum_{j<n-1} p^(n-2-j) r^j) I.
/// Both sums are expanded term by term so p == r needs no special case.
ComplexMatrix triangular_power_formula(const TriangularParams& params);

struct RootExponents {
  int u = 0;
  int v = 0;
  friend bool operator==(const RootExponents&, const RootExponents&) = default;
};

/// For a non-identity A = [[p, q], [0, r]] with A^n = I, returns (u, v) with
/// p = zeta^u, r = zeta^v, zeta = exp(2 pi i / n). Returns nothing when A^n != I,
/// A == I, a diagonal entry is not an n-th root of unity, or u == v with q != 0.
std::optional<RootExponents> root_of_unity_exponents(const TriangularParams& params,
                                                     const Tolerance& tol = {1e-8, 1e-8});

}  // namespace matroot
