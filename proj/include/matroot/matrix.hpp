#pragma once

// Dense square matrices over three scalar backends: exact rationals (GMP),
// binary64 reals and complex pairs of binary64.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace matroot {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class BackendError : public Error {
 public:
  using Error::Error;
};

class ArgumentError : public Error {
 public:
  using Error::Error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NumericError : public Error {
 public:
  using Error::Error;
};

using Rational = mpq_class;
using Complex = std::complex<double>;
using Scalar = std::variant<Rational, double, Complex>;

enum class Backend { Rational, Real, Complex };

std::string_view to_string(Backend backend);

template <class T>
inline constexpr bool is_backend_scalar_v =
    std::is_same_v<T, Rational> || std::is_same_v<T, double> ||
    std::is_same_v<T, Complex>;

template <class T>
constexpr Backend backend_of() {
  static_assert(is_backend_scalar_v<T>);
  if constexpr (std::is_same_v<T, Rational>) {
    return Backend::Rational;
  } else if constexpr (std::is_same_v<T, double>) {
    return Backend::Real;
  } else {
    return Backend::Complex;
  }
}

Backend backend_of(const Scalar& s);

/// Entrywise comparison contract: |x - y| <= absolute + relative * max(|x|, |y|).
/// Rational comparisons are exact and ignore the tolerance.
struct Tolerance {
  double absolute = 1e-9;
  double relative = 1e-9;

  static Tolerance exact() { return {0.0, 0.0}; }
};

/// Validates nonnegativity; throws ArgumentError otherwise.
Tolerance make_tolerance(double absolute, double relative);

inline double magnitude(const Rational& x) { return std::abs(x.get_d()); }
inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(const Complex& x) { return std::abs(x); }

inline bool is_finite(const Rational&) { return true; }
inline bool is_finite(double x) { return std::isfinite(x); }
inline bool is_finite(const Complex& x) {
  return std::isfinite(x.real()) && std::isfinite(x.imag());
}

template <class T>
bool scalar_close(const T& x, const T& y, const Tolerance& tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    return x == y;
  } else {
    const double diff = std::abs(x - y);
    return diff <= tol.absolute + tol.relative * std::max(std::abs(x), std::abs(y));
  }
}

/// Row-major k x k matrix, k >= 1. Float entries are always finite.
template <class T>
class DenseMatrix {
  static_assert(is_backend_scalar_v<T>);

 public:
  using value_type = T;

  explicit DenseMatrix(std::size_t order) : order_(order), entries_(order * order, T(0)) {
    if (order == 0) throw DimensionError("matrix order must be at least 1");
  }

  DenseMatrix(std::size_t order, std::vector<T> entries)
      : order_(order), entries_(std::move(entries)) {
    if (order == 0) throw DimensionError("matrix order must be at least 1");
    if (entries_.size() != order * order) {
      throw DimensionError("expected " + std::to_string(order * order) +
                           " entries, got " + std::to_string(entries_.size()));
    }
    if constexpr (std::is_same_v<T, Rational>) {
      for (auto& e : entries_) e.canonicalize();
    } else {
      for (const auto& e : entries_) {
        if (!is_finite(e)) throw NumericError("non-finite matrix entry");
      }
    }
  }

  static DenseMatrix identity(std::size_t order) {
    DenseMatrix m(order);
    for (std::size_t i = 0; i < order; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t order() const { return order_; }

  const T& operator()(std::size_t row, std::size_t col) const {
    return entries_[row * order_ + col];
  }
  T& operator()(std::size_t row, std::size_t col) { return entries_[row * order_ + col]; }

  std::span<const T> entries() const { return entries_; }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.order_ == b.order_ && a.entries_ == b.entries_;
  }

 private:
  std::size_t order_;
  std::vector<T> entries_;
};

using RationalMatrix = DenseMatrix<Rational>;
using RealMatrix = DenseMatrix<double>;
using ComplexMatrix = DenseMatrix<Complex>;

namespace detail {

inline void require_same_order(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("order mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
}

template <class T>
void require_finite(const DenseMatrix<T>& m) {
  if constexpr (!std::is_same_v<T, Rational>) {
    for (const auto& e : m.entries()) {
      if (!is_finite(e)) throw NumericError("arithmetic overflow produced a non-finite entry");
    }
  }
}

inline bool is_integral(const DenseMatrix<Rational>& m) {
  for (const auto& e : m.entries()) {
    if (mpz_cmp_ui(e.get_den_mpz_t(), 1) != 0) return false;
  }
  return true;
}

}  // namespace detail

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  detail::require_same_order(a.order(), b.order());
  const std::size_t k = a.order();
  DenseMatrix<T> out(k);
  if constexpr (std::is_same_v<T, Rational>) {
    // Integer matrices (the common case after unimodular conjugation) stay in mpz.
    if (detail::is_integral(a) && detail::is_integral(b)) {
      mpz_class acc;
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
          acc = 0;
          for (std::size_t l = 0; l < k; ++l) {
            const mpz_srcptr x = mpq_numref(a(i, l).get_mpq_t());
            if (mpz_sgn(x) == 0) continue;
            mpz_addmul(acc.get_mpz_t(), x, mpq_numref(b(l, j).get_mpq_t()));
          }
          out(i, j) = Rational(acc);
        }
      }
      return out;
    }
    Rational acc;
    Rational term;
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        acc = 0;
        for (std::size_t l = 0; l < k; ++l) {
          if (sgn(a(i, l)) == 0 || sgn(b(l, j)) == 0) continue;
          mpq_mul(term.get_mpq_t(), a(i, l).get_mpq_t(), b(l, j).get_mpq_t());
          mpq_add(acc.get_mpq_t(), acc.get_mpq_t(), term.get_mpq_t());
        }
        out(i, j) = acc;
      }
    }
  } else {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t l = 0; l < k; ++l) {
        const T x = a(i, l);
        for (std::size_t j = 0; j < k; ++j) out(i, j) += x * b(l, j);
      }
    }
    detail::require_finite(out);
  }
  return out;
}

template <class T>
DenseMatrix<T> add(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  detail::require_same_order(a.order(), b.order());
  DenseMatrix<T> out = a;
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) out(i, j) += b(i, j);
  }
  detail::require_finite(out);
  return out;
}

template <class T>
DenseMatrix<T> subtract(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  detail::require_same_order(a.order(), b.order());
  DenseMatrix<T> out = a;
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) out(i, j) -= b(i, j);
  }
  detail::require_finite(out);
  return out;
}

template <class T>
DenseMatrix<T> scale(const DenseMatrix<T>& a, const T& factor) {
  DenseMatrix<T> out = a;
  for (std::size_t i = 0; i < a.order(); ++i) {
    for (std::size_t j = 0; j < a.order(); ++j) out(i, j) *= factor;
  }
  detail::require_finite(out);
  return out;
}

/// a + c*I
template <class T>
DenseMatrix<T> add_identity(const DenseMatrix<T>& a, const T& c) {
  DenseMatrix<T> out = a;
  for (std::size_t i = 0; i < a.order(); ++i) out(i, i) += c;
  detail::require_finite(out);
  return out;
}

/// Binary exponentiation; power(a, 0) is the identity.
template <class T>
DenseMatrix<T> power(const DenseMatrix<T>& a, unsigned long long n) {
  DenseMatrix<T> result = DenseMatrix<T>::identity(a.order());
  DenseMatrix<T> base = a;
  bool first = true;
  while (n > 0) {
    if (n & 1ULL) {
      result = first ? base : multiply(result, base);
      first = false;
    }
    n >>= 1;
    if (n > 0) base = multiply(base, base);
  }
  return result;
}

template <class T>
bool approx_equal(const DenseMatrix<T>& a, const DenseMatrix<T>& b, const Tolerance& tol) {
  detail::require_same_order(a.order(), b.order());
  const auto ea = a.entries();
  const auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) {
    if (!scalar_close(ea[i], eb[i], tol)) return false;
  }
  return true;
}

template <class T>
bool is_zero(const DenseMatrix<T>& a, const Tolerance& tol) {
  return approx_equal(a, DenseMatrix<T>(a.order()), tol);
}

template <class T>
double max_abs_entry(const DenseMatrix<T>& a) {
  double m = 0.0;
  for (const auto& e : a.entries()) m = std::max(m, magnitude(e));
  return m;
}

template <class T>
DenseMatrix<T> block_diag(std::span<const DenseMatrix<T>> blocks) {
  if (blocks.empty()) throw ArgumentError("block_diag needs at least one block");
  std::size_t order = 0;
  for (const auto& b : blocks) order += b.order();
  DenseMatrix<T> out(order);
  std::size_t offset = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.order(); ++i) {
      for (std::size_t j = 0; j < b.order(); ++j) out(offset + i, offset + j) = b(i, j);
    }
    offset += b.order();
  }
  return out;
}

/// Fraction-free (Bareiss) elimination for rationals, partial pivoting for floats.
template <class T>
T determinant(const DenseMatrix<T>& a) {
  const std::size_t k = a.order();
  DenseMatrix<T> w = a;
  T sign(1);
  if constexpr (std::is_same_v<T, Rational>) {
    Rational prev(1);
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t pivot = c;
      while (pivot < k && sgn(w(pivot, c)) == 0) ++pivot;
      if (pivot == k) return Rational(0);
      if (pivot != c) {
        for (std::size_t j = 0; j < k; ++j) std::swap(w(c, j), w(pivot, j));
        sign = -sign;
      }
      for (std::size_t i = c + 1; i < k; ++i) {
        for (std::size_t j = c + 1; j < k; ++j) {
          w(i, j) = (w(i, j) * w(c, c) - w(i, c) * w(c, j)) / prev;
        }
        w(i, c) = 0;
      }
      prev = w(c, c);
    }
    return sign * w(k - 1, k - 1);
  } else {
    T det = sign;
    for (std::size_t c = 0; c < k; ++c) {
      std::size_t pivot = c;
      for (std::size_t i = c + 1; i < k; ++i) {
        if (std::abs(w(i, c)) > std::abs(w(pivot, c))) pivot = i;
      }
      if (w(pivot, c) == T(0)) return T(0);
      if (pivot != c) {
        for (std::size_t j = 0; j < k; ++j) std::swap(w(c, j), w(pivot, j));
        det = -det;
      }
      det *= w(c, c);
      for (std::size_t i = c + 1; i < k; ++i) {
        const T f = w(i, c) / w(c, c);
        for (std::size_t j = c; j < k; ++j) w(i, j) -= f * w(c, j);
      }
    }
    return det;
  }
}

RealMatrix to_real(const RationalMatrix& m);
ComplexMatrix to_complex(const RealMatrix& m);
ComplexMatrix to_complex(const RationalMatrix& m);

/// [[cos t, -sin t], [sin t, cos t]]; throws ArgumentError for non-finite t.
RealMatrix rotation(double theta);

/// A matrix over exactly one backend.
class Matrix {
 public:
  using Storage = std::variant<RationalMatrix, RealMatrix, ComplexMatrix>;

  template <class T>
  Matrix(DenseMatrix<T> m) : storage_(std::move(m)) {}  // NOLINT(google-explicit-constructor)

  static Matrix identity(Backend backend, std::size_t order);
  static Matrix zero(Backend backend, std::size_t order);

  Backend backend() const { return static_cast<Backend>(storage_.index()); }
  std::size_t order() const {
    return std::visit([](const auto& m) { return m.order(); }, storage_);
  }

  template <class T>
  const DenseMatrix<T>& as() const {
    if (const auto* m = std::get_if<DenseMatrix<T>>(&storage_)) return *m;
    throw BackendError(std::string("matrix backend is ") + std::string(to_string(backend())) +
                       ", expected " + std::string(to_string(backend_of<T>())));
  }

  template <class F>
  decltype(auto) visit(F&& f) const {
    return std::visit(std::forward<F>(f), storage_);
  }

  const Storage& storage() const { return storage_; }

  friend bool operator==(const Matrix& a, const Matrix& b) { return a.storage_ == b.storage_; }

 private:
  Storage storage_;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);
Matrix mat_add(const Matrix& a, const Matrix& b);
Matrix mat_sub(const Matrix& a, const Matrix& b);
Matrix mat_pow(const Matrix& a, unsigned long long n);
bool mat_eq(const Matrix& a, const Matrix& b, const Tolerance& tol);
bool mat_is_zero(const Matrix& a, const Tolerance& tol);
Matrix block_diag(std::span<const Matrix> blocks);
Scalar determinant(const Matrix& a);
double max_abs_entry(const Matrix& a);

/// Converts to a backend at least as general (Rational -> Real -> Complex).
Matrix promote(const Matrix& m, Backend target);

/// Multiplies by a real scalar; rationals stay exact when factor is given exactly.
Matrix scale_by(const Matrix& m, const Rational& factor);
Matrix scale_by(const Matrix& m, double factor);

}  // namespace matroot
