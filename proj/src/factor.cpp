#include "matroot/factor.hpp"

#include <numbers>
#include <string>
#include <vector>

namespace matroot {

namespace {

struct ExactComplex {
  Rational re, im;

  ExactComplex() = default;
  explicit ExactComplex(Complex z) : re(z.real()), im(z.imag()) {}
  ExactComplex(Rational a, Rational b) : re(std::move(a)), im(std::move(b)) {}

  friend ExactComplex operator+(const ExactComplex& x, const ExactComplex& y) {
    return {x.re + y.re, x.im + y.im};
  }
  friend ExactComplex operator-(const ExactComplex& x, const ExactComplex& y) {
    return {x.re - y.re, x.im - y.im};
  }
  friend ExactComplex operator*(const ExactComplex& x, const ExactComplex& y) {
    return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
  }
  Complex to_complex() const { return {re.get_d(), im.get_d()}; }
};

std::optional<mpz_class> exact_integer_root(const mpz_class& x, int n) {
  mpz_class r;
  if (mpz_root(r.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(n)) == 0) {
    return std::nullopt;
  }
  return r;
}

template <class T>
DenseMatrix<T> horner_geometric(const DenseMatrix<T>& x, int n, const T& root) {
  if (root == T(0)) return power(x, static_cast<unsigned long long>(n - 1));
  DenseMatrix<T> acc = add_identity(x, root);
  T coeff = root;
  for (int m = n - 3; m >= 0; --m) {
    coeff *= root;
    acc = add_identity(multiply(acc, x), coeff);
  }
  return acc;
}

template <class T>
DenseMatrix<T> quadratic(const DenseMatrix<T>& x, double linear, double constant) {
  DenseMatrix<T> out = add(multiply(x, x), scale(x, T(linear)));
  return add_identity(out, T(constant));
}

Matrix non_rational(const Matrix& x) {
  return x.backend() == Backend::Rational ? promote(x, Backend::Real) : x;
}

}  // namespace

std::optional<Rational> exact_nth_root(const Rational& x, int n) {
  if (n < 1) throw ArgumentError("root degree must be positive");
  if (sgn(x) < 0 && n % 2 == 0) return std::nullopt;
  const mpz_class num = abs(x.get_num());
  const auto rn = exact_integer_root(num, n);
  if (!rn) return std::nullopt;
  const auto rd = exact_integer_root(x.get_den(), n);
  if (!rd) return std::nullopt;
  Rational root(*rn, *rd);
  root.canonicalize();
  if (sgn(x) < 0) root = -root;
  return root;
}

RootConvention::RootConvention(int n, Rational a) : n_(n), a_(std::move(a)) {
  if (n_ < 2) throw ArgumentError("n must be at least 2");
  if (sgn(a_) < 0 && n_ % 2 == 0) {
    throw ConventionError("a < 0 with even n has no real n-th root");
  }
  exact_root_ = exact_nth_root(a_, n_);
  if (exact_root_) {
    root_ = exact_root_->get_d();
  } else {
    const double mag = std::pow(std::abs(a_.get_d()), 1.0 / n_);
    root_ = sgn(a_) < 0 ? -mag : mag;
  }
}

Matrix geometric_factor_sum(const Matrix& x, const RootConvention& conv) {
  const int n = conv.n();
  if (x.backend() == Backend::Rational && conv.exact_root()) {
    return horner_geometric(x.as<Rational>(), n, *conv.exact_root());
  }
  const Matrix base = non_rational(x);
  return base.visit([&](const auto& m) -> Matrix {
    using T = typename std::decay_t<decltype(m)>::value_type;
    if constexpr (std::is_same_v<T, Rational>) {
      return m;  // unreachable
    } else {
      return horner_geometric(m, n, T(conv.root()));
    }
  });
}

std::string_view to_string(QuadraticVariant v) {
  return v == QuadraticVariant::MinusTwoCos ? "minus-two-cos" : "plus-cos";
}

std::optional<QuadraticVariant> parse_quadratic_variant(std::string_view s) {
  if (s == "minus-two-cos") return QuadraticVariant::MinusTwoCos;
  if (s == "plus-cos") return QuadraticVariant::PlusCos;
  return std::nullopt;
}

Matrix quadratic_factor_eval(const Matrix& x, int n, double a, int i, QuadraticVariant variant) {
  if (n < 2 || n % 2 != 0) throw DomainError("quadratic factors need even n >= 2");
  if (!(a < 0.0) || !std::isfinite(a)) throw DomainError("quadratic factors need finite a < 0");
  if (i < 1 || i > n / 2) {
    throw ArgumentError("factor index must lie in [1, " + std::to_string(n / 2) + "]");
  }
  const double s = std::pow(-a, 1.0 / n);
  const double c = std::cos((2.0 * i - 1.0) * std::numbers::pi / n);
  const double linear = variant == QuadraticVariant::MinusTwoCos ? -2.0 * s * c : s * c;
  const double constant = s * s;
  const Matrix base = non_rational(x);
  return base.visit([&](const auto& m) -> Matrix {
    using T = typename std::decay_t<decltype(m)>::value_type;
    if constexpr (std::is_same_v<T, Rational>) {
      return m;  // unreachable
    } else {
      return quadratic(m, linear, constant);
    }
  });
}

Matrix odd_factorization_product(const Matrix& x, int n) {
  if (n < 3 || n % 2 == 0) throw DomainError("odd factorization needs odd n >= 3");
  const Matrix base = non_rational(x);
  return base.visit([&](const auto& m) -> Matrix {
    using T = typename std::decay_t<decltype(m)>::value_type;
    if constexpr (std::is_same_v<T, Rational>) {
      return m;  // unreachable
    } else {
      DenseMatrix<T> acc = DenseMatrix<T>::identity(m.order());
      for (int w = 1; w <= (n - 1) / 2; ++w) {
        const double c = std::cos(2.0 * std::numbers::pi * w / n);
        acc = multiply(acc, quadratic(m, -2.0 * c, 1.0));
      }
      return acc;
    }
  });
}

ComplexMatrix triangular_matrix(const TriangularParams& params) {
  return ComplexMatrix(2, {params.p, params.q, Complex(0.0), params.r});
}

ComplexMatrix triangular_power_formula(const TriangularParams& params) {
  const int n = params.n;
  if (n < 2) throw ArgumentError("n must be at least 2");
  if (!is_finite(params.p) || !is_finite(params.q) || !is_finite(params.r)) {
    throw NumericError("triangular parameters must be finite");
  }
  // Every double is a dyadic rational, so the closed form is evaluated exactly and rounded once.
  // In plain floating point the diagonal suffers cancellation whenever |p| and |r| differ a lot.
  const ExactComplex p(params.p);
  const ExactComplex q(params.q);
  const ExactComplex r(params.r);
  std::vector<ExactComplex> p_pow(static_cast<std::size_t>(n));
  std::vector<ExactComplex> r_pow(static_cast<std::size_t>(n));
  p_pow[0] = r_pow[0] = ExactComplex(Complex(1.0));
  for (int j = 1; j < n; ++j) {
    p_pow[j] = p_pow[j - 1] * p;
    r_pow[j] = r_pow[j - 1] * r;
  }
  ExactComplex full;
  for (int j = 0; j <= n - 1; ++j) full = full + p_pow[n - 1 - j] * r_pow[j];
  ExactComplex shorter;
  for (int j = 0; j <= n - 2; ++j) shorter = shorter + p_pow[n - 2 - j] * r_pow[j];
  const ExactComplex shift = p * r * shorter;
  const ComplexMatrix out(2, {(full * p - shift).to_complex(), (full * q).to_complex(), Complex(0.0),
                              (full * r - shift).to_complex()});
  return out;
}

std::optional<RootExponents> root_of_unity_exponents(const TriangularParams& params,
                                                     const Tolerance& tol) {
  const int n = params.n;
  if (n < 2) return std::nullopt;
  const ComplexMatrix a = triangular_matrix(params);
  const ComplexMatrix id = ComplexMatrix::identity(2);
  if (!approx_equal(power(a, static_cast<unsigned long long>(n)), id, tol)) return std::nullopt;
  if (approx_equal(a, id, tol)) return std::nullopt;

  const auto nearest = [&](Complex z) -> std::optional<int> {
    const double turns = std::arg(z) * n / (2.0 * std::numbers::pi);
    int e = static_cast<int>(std::lround(turns)) % n;
    if (e < 0) e += n;
    const Complex unit = std::polar(1.0, 2.0 * std::numbers::pi * e / n);
    if (!scalar_close(z, unit, tol)) return std::nullopt;
    return e;
  };
  const auto u = nearest(params.p);
  const auto v = nearest(params.r);
  if (!u || !v) return std::nullopt;
  // Equal diagonal with nonzero q is a defective block whose n-th power is never I.
  if (*u == *v && std::abs(params.q) > tol.absolute) return std::nullopt;
  return RootExponents{*u, *v};
}

}  // namespace matroot
