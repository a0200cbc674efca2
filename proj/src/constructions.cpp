#include "matroot/constructions.hpp"

#include <array>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "matroot/factor.hpp"

namespace matroot {

namespace {

struct TagName {
  CaseTag tag;
  std::string_view name;
};

constexpr std::array<TagName, 10> kTagNames{{
    {CaseTag::CaseI, "case-i"},
    {CaseTag::CaseII, "case-ii"},
    {CaseTag::CaseIII, "case-iii"},
    {CaseTag::CaseIV, "case-iv"},
    {CaseTag::CaseV, "case-v"},
    {CaseTag::CaseVI, "case-vi"},
    {CaseTag::NilpotentShift, "nilpotent-shift"},
    {CaseTag::Theorem2CE, "theorem2-ce"},
    {CaseTag::ComplexCE, "complex-ce"},
    {CaseTag::BlockSearch, "block-search"},
}};

[[noreturn]] void bad_args(CaseTag tag, int k, int n, std::string_view need) {
  throw ArgumentError(std::string(to_string(tag)) + " with k=" + std::to_string(k) +
                      ", n=" + std::to_string(n) + ": requires " + std::string(need));
}

RationalMatrix scalar_block(long value) { return RationalMatrix(1, {Rational(value)}); }

Matrix assemble(std::vector<Matrix> blocks) {
  bool any_real = false;
  for (const auto& b : blocks) any_real = any_real || b.backend() != Backend::Rational;
  if (any_real) {
    for (auto& b : blocks) b = promote(b, Backend::Real);
  }
  return block_diag(std::span<const Matrix>(blocks));
}

std::int64_t row_sum_norm(const std::vector<std::int64_t>& m, std::size_t k) {
  std::int64_t best = 0;
  for (std::size_t i = 0; i < k; ++i) {
    std::int64_t s = 0;
    for (std::size_t j = 0; j < k; ++j) s += std::abs(m[i * k + j]);
    best = std::max(best, s);
  }
  return best;
}

RationalMatrix to_rational(const std::vector<std::int64_t>& m, std::size_t k) {
  std::vector<Rational> entries;
  entries.reserve(m.size());
  for (const auto v : m) entries.emplace_back(static_cast<long>(v));
  return RationalMatrix(k, std::move(entries));
}

}  // namespace

std::string_view to_string(CaseTag tag) {
  for (const auto& t : kTagNames) {
    if (t.tag == tag) return t.name;
  }
  return "unknown";
}

std::optional<CaseTag> parse_case_tag(std::string_view name) {
  for (const auto& t : kTagNames) {
    if (t.name == name) return t.tag;
  }
  return std::nullopt;
}

RationalMatrix shift_nilpotent(int k, int n) {
  if (k < 2 || n < 2 || n > k) {
    throw ArgumentError("shift_nilpotent requires 2 <= n <= k (got k=" + std::to_string(k) +
                        ", n=" + std::to_string(n) + ")");
  }
  const auto order = static_cast<std::size_t>(k);
  // A single chain e_{k-1} -> e_{n-2} -> ... -> e_0. The last link sits on the
  // (k-n+1)-th superdiagonal; a full band there has the wrong index unless n-1 divides k-1
  // or n = k.
  const auto len = static_cast<std::size_t>(n);
  RationalMatrix a(order);
  for (std::size_t i = 0; i + 2 < len; ++i) a(i, i + 1) = 1;
  a(len - 2, order - 1) = 1;
  return a;
}

RationalMatrix swap_block() { return RationalMatrix(2, {0, 1, 1, 0}); }

Witness case_counterexample(CaseTag tag, int k, int n) {
  const bool n_even = n % 2 == 0;
  const bool k_even = k % 2 == 0;
  std::vector<Matrix> blocks;
  long a = 1;
  switch (tag) {
    case CaseTag::CaseI:
    case CaseTag::CaseII: {
      if (n < 2 || !n_even) bad_args(tag, k, n, "even n >= 2");
      if (tag == CaseTag::CaseI && (k < 2 || !k_even)) bad_args(tag, k, n, "even k >= 2");
      if (tag == CaseTag::CaseII && (k < 3 || k_even)) bad_args(tag, k, n, "odd k >= 3");
      if (!k_even) blocks.emplace_back(scalar_block(1));
      for (int i = 0; i < k / 2; ++i) blocks.emplace_back(swap_block());
      break;
    }
    case CaseTag::CaseIII:
    case CaseTag::CaseIV:
    case CaseTag::CaseV:
    case CaseTag::CaseVI: {
      if (n < 3 || n_even) bad_args(tag, k, n, "odd n >= 3");
      const bool even_family = tag == CaseTag::CaseIII || tag == CaseTag::CaseV;
      if (even_family && (k < 4 || !k_even)) bad_args(tag, k, n, "even k >= 4");
      if (!even_family && (k < 3 || k_even)) bad_args(tag, k, n, "odd k >= 3");
      const bool negative = tag == CaseTag::CaseV || tag == CaseTag::CaseVI;
      a = negative ? -1 : 1;
      RealMatrix r = rotation(2.0 * std::numbers::pi / n);
      if (negative) r = scale(r, -1.0);
      if (even_family) {
        blocks.emplace_back(scale(RationalMatrix::identity(2), Rational(a)));
      } else {
        blocks.emplace_back(scalar_block(a));
      }
      const int rotations = even_family ? (k - 2) / 2 : (k - 1) / 2;
      for (int i = 0; i < rotations; ++i) blocks.emplace_back(r);
      break;
    }
    default:
      throw ArgumentError(std::string(to_string(tag)) + " is not one of the six case families");
  }
  return Witness{assemble(std::move(blocks)), tag, k, n, Scalar(Rational(a)), 1};
}

Witness theorem2_counterexample(int k, int n) {
  if (n < 4 || n % 2 != 0) bad_args(CaseTag::Theorem2CE, k, n, "even n >= 4");
  if (k < 4 || k % 2 != 0) bad_args(CaseTag::Theorem2CE, k, n, "even k >= 4");
  std::vector<RealMatrix> blocks;
  blocks.push_back(rotation(std::numbers::pi / n));
  for (int i = 1; i < k / 2; ++i) blocks.push_back(rotation(3.0 * std::numbers::pi / n));
  return Witness{block_diag(std::span<const RealMatrix>(blocks)), CaseTag::Theorem2CE, k, n,
                 Scalar(Rational(-1)), 2};
}

Witness complex_counterexample(int k, int n, Complex a) {
  if (k < 2 || n < 2) bad_args(CaseTag::ComplexCE, k, n, "k, n >= 2");
  if (a == Complex(0.0) || !is_finite(a)) {
    throw ArgumentError("complex counterexample needs finite nonzero a");
  }
  const Complex root = std::pow(a, 1.0 / n);
  const Complex zeta = std::polar(1.0, 2.0 * std::numbers::pi / n);
  ComplexMatrix m(static_cast<std::size_t>(k));
  m(0, 0) = root;
  for (std::size_t i = 1; i < m.order(); ++i) m(i, i) = root * zeta;
  return Witness{m, CaseTag::ComplexCE, k, n, Scalar(a), 1};
}

Conjugator unimodular_conjugator(std::size_t order, std::uint64_t seed) {
  const std::size_t k = order;
  std::vector<std::int64_t> p(k * k, 0);
  std::vector<std::int64_t> inv(k * k, 0);
  for (std::size_t i = 0; i < k; ++i) p[i * k + i] = inv[i * k + i] = 1;
  if (k >= 2) {
    constexpr std::array<std::int64_t, 4> kShears{-2, -1, 1, 2};
    std::mt19937_64 rng(seed);
    const std::uint64_t count = 1 + rng() % (3 * k);
    for (std::uint64_t s = 0; s < count; ++s) {
      const std::size_t i = rng() % k;
      std::size_t j = rng() % (k - 1);
      if (j >= i) ++j;
      const std::int64_t c = kShears[rng() % kShears.size()];
      // P <- (I + c e_ij) P adds c * row j to row i; P^-1 <- P^-1 (I - c e_ij)
      // subtracts c * column i from column j.
      auto next_p = p;
      auto next_inv = inv;
      for (std::size_t col = 0; col < k; ++col) next_p[i * k + col] += c * p[j * k + col];
      for (std::size_t row = 0; row < k; ++row) next_inv[row * k + j] -= c * inv[row * k + i];
      const double cond =
          static_cast<double>(row_sum_norm(next_p, k)) * static_cast<double>(row_sum_norm(next_inv, k));
      if (cond > kMaxConjugatorConditioning) continue;
      p = std::move(next_p);
      inv = std::move(next_inv);
    }
  }
  return Conjugator{to_rational(p, k), to_rational(inv, k)};
}

Matrix conjugate(const Matrix& a, const Conjugator& p) {
  if (a.order() != p.forward.order()) {
    throw DimensionError("conjugator order does not match matrix order");
  }
  const Matrix fwd = promote(Matrix(p.forward), a.backend());
  const Matrix inv = promote(Matrix(p.inverse), a.backend());
  return mat_mul(mat_mul(fwd, a), inv);
}

Witness conjugate_random(const Witness& w, std::uint64_t seed) {
  Witness out = w;
  out.matrix = conjugate(w.matrix, unimodular_conjugator(w.matrix.order(), seed));
  return out;
}

Matrix scale_to_unit(const Matrix& x, int n, const Rational& a) {
  if (sgn(a) == 0) throw ArgumentError("scale_to_unit needs a != 0");
  if (n < 1) throw ArgumentError("n must be positive");
  const Rational mag = abs(a);
  if (const auto root = exact_nth_root(mag, n)) return scale_by(x, Rational(1 / *root));
  return scale_by(x, std::pow(mag.get_d(), -1.0 / n));
}

Matrix scale_from_unit(const Matrix& x, int n, const Rational& a) {
  if (sgn(a) == 0) throw ArgumentError("scale_from_unit needs a != 0");
  if (n < 1) throw ArgumentError("n must be positive");
  const Rational mag = abs(a);
  if (const auto root = exact_nth_root(mag, n)) return scale_by(x, *root);
  return scale_by(x, std::pow(mag.get_d(), 1.0 / n));
}

}  // namespace matroot
