#include "matroot/matrix.hpp"

namespace matroot {

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::Rational:
      return "rational";
    case Backend::Real:
      return "real";
    case Backend::Complex:
      return "complex";
  }
  return "unknown";
}

Backend backend_of(const Scalar& s) { return static_cast<Backend>(s.index()); }

Tolerance make_tolerance(double absolute, double relative) {
  if (!(absolute >= 0.0) || !(relative >= 0.0) || !std::isfinite(absolute) ||
      !std::isfinite(relative)) {
    throw ArgumentError("tolerance components must be finite and nonnegative");
  }
  return {absolute, relative};
}

RealMatrix to_real(const RationalMatrix& m) {
  std::vector<double> entries;
  entries.reserve(m.entries().size());
  for (const auto& e : m.entries()) entries.push_back(e.get_d());
  return RealMatrix(m.order(), std::move(entries));
}

ComplexMatrix to_complex(const RealMatrix& m) {
  std::vector<Complex> entries(m.entries().begin(), m.entries().end());
  return ComplexMatrix(m.order(), std::move(entries));
}

ComplexMatrix to_complex(const RationalMatrix& m) { return to_complex(to_real(m)); }

RealMatrix rotation(double theta) {
  if (!std::isfinite(theta)) throw ArgumentError("rotation angle must be finite");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return RealMatrix(2, {c, -s, s, c});
}

Matrix Matrix::identity(Backend backend, std::size_t order) {
  switch (backend) {
    case Backend::Rational:
      return RationalMatrix::identity(order);
    case Backend::Real:
      return RealMatrix::identity(order);
    case Backend::Complex:
      break;
  }
  return ComplexMatrix::identity(order);
}

Matrix Matrix::zero(Backend backend, std::size_t order) {
  switch (backend) {
    case Backend::Rational:
      return RationalMatrix(order);
    case Backend::Real:
      return RealMatrix(order);
    case Backend::Complex:
      break;
  }
  return ComplexMatrix(order);
}

namespace {

void require_same_backend(const Matrix& a, const Matrix& b) {
  if (a.backend() != b.backend()) {
    throw BackendError(std::string("backend mismatch: ") + std::string(to_string(a.backend())) +
                       " vs " + std::string(to_string(b.backend())));
  }
}

template <class F>
Matrix binary_op(const Matrix& a, const Matrix& b, F&& f) {
  require_same_backend(a, b);
  return a.visit([&](const auto& lhs) -> Matrix {
    using M = std::decay_t<decltype(lhs)>;
    return f(lhs, std::get<M>(b.storage()));
  });
}

}  // namespace

Matrix mat_mul(const Matrix& a, const Matrix& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return multiply(x, y); });
}

Matrix mat_add(const Matrix& a, const Matrix& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return add(x, y); });
}

Matrix mat_sub(const Matrix& a, const Matrix& b) {
  return binary_op(a, b, [](const auto& x, const auto& y) { return subtract(x, y); });
}

Matrix mat_pow(const Matrix& a, unsigned long long n) {
  return a.visit([n](const auto& m) -> Matrix { return power(m, n); });
}

bool mat_eq(const Matrix& a, const Matrix& b, const Tolerance& tol) {
  require_same_backend(a, b);
  return a.visit([&](const auto& lhs) {
    using M = std::decay_t<decltype(lhs)>;
    return approx_equal(lhs, std::get<M>(b.storage()), tol);
  });
}

bool mat_is_zero(const Matrix& a, const Tolerance& tol) {
  return a.visit([&](const auto& m) { return is_zero(m, tol); });
}

Matrix block_diag(std::span<const Matrix> blocks) {
  if (blocks.empty()) throw ArgumentError("block_diag needs at least one block");
  const Backend backend = blocks.front().backend();
  for (const auto& b : blocks) {
    if (b.backend() != backend) throw BackendError("block_diag blocks must share one backend");
  }
  return blocks.front().visit([&](const auto& first) -> Matrix {
    using M = std::decay_t<decltype(first)>;
    std::vector<M> typed;
    typed.reserve(blocks.size());
    for (const auto& b : blocks) typed.push_back(std::get<M>(b.storage()));
    return block_diag(std::span<const M>(typed));
  });
}

Scalar determinant(const Matrix& a) {
  return a.visit([](const auto& m) -> Scalar { return determinant(m); });
}

double max_abs_entry(const Matrix& a) {
  return a.visit([](const auto& m) { return max_abs_entry(m); });
}

Matrix promote(const Matrix& m, Backend target) {
  if (static_cast<int>(target) < static_cast<int>(m.backend())) {
    throw BackendError(std::string("cannot demote ") + std::string(to_string(m.backend())) +
                       " matrix to " + std::string(to_string(target)));
  }
  if (m.backend() == target) return m;
  if (m.backend() == Backend::Rational) {
    if (target == Backend::Real) return to_real(m.as<Rational>());
    return to_complex(m.as<Rational>());
  }
  return to_complex(m.as<double>());
}

Matrix scale_by(const Matrix& m, const Rational& factor) {
  return m.visit([&](const auto& x) -> Matrix {
    using T = typename std::decay_t<decltype(x)>::value_type;
    if constexpr (std::is_same_v<T, Rational>) {
      return scale(x, factor);
    } else {
      return scale(x, T(factor.get_d()));
    }
  });
}

Matrix scale_by(const Matrix& m, double factor) {
  if (!std::isfinite(factor)) throw NumericError("non-finite scale factor");
  const Matrix base = m.backend() == Backend::Rational ? promote(m, Backend::Real) : m;
  return base.visit([&](const auto& x) -> Matrix {
    using T = typename std::decay_t<decltype(x)>::value_type;
    if constexpr (std::is_same_v<T, Rational>) {
      return x;  // unreachable: promoted above
    } else {
      return scale(x, T(factor));
    }
  });
}

}  // namespace matroot
