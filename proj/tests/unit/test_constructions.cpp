#include <numbers>

#include "doctest.h"
#include "matroot/constructions.hpp"
#include "matroot/factor.hpp"
#include "oracles.hpp"

using namespace matroot;

namespace {

const double kPi = std::numbers::pi;
const Tolerance kTol{1e-9, 1e-9};

Matrix scalar_identity(const Matrix& like, double a) {
  if (like.backend() == Backend::Rational) {
    return scale_by(Matrix::identity(Backend::Rational, like.order()), Rational(static_cast<long>(a)));
  }
  return scale_by(Matrix::identity(like.backend(), like.order()), a);
}

double unit_a(const Witness& w) { return std::get<Rational>(w.a).get_d(); }

}  // namespace

TEST_CASE("shift_nilpotent") {
  const RationalMatrix full = shift_nilpotent(4, 4);
  CHECK(full == RationalMatrix(4, {0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0}));

  const RationalMatrix corner = shift_nilpotent(4, 2);
  CHECK(corner == RationalMatrix(4, {0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0}));
  CHECK(oracle::naive_multiply(corner, corner) == RationalMatrix(4));

  const RationalMatrix smallest = shift_nilpotent(2, 2);
  CHECK(smallest == RationalMatrix(2, {0, 1, 0, 0}));
  CHECK(oracle::naive_multiply(smallest, smallest) == RationalMatrix(2));

  CHECK_THROWS_AS(shift_nilpotent(3, 4), ArgumentError);
  CHECK_THROWS_AS(shift_nilpotent(3, 1), ArgumentError);
}

TEST_CASE("case I: diag(T, T) for k = n = 4") {
  const Witness w = case_counterexample(CaseTag::CaseI, 4, 4);
  CHECK(w.matrix.backend() == Backend::Rational);
  CHECK(w.refutes_sentence == 1);
  CHECK(mat_pow(w.matrix, 4) == Matrix::identity(Backend::Rational, 4));
  CHECK_FALSE(w.matrix == Matrix::identity(Backend::Rational, 4));
  const Matrix sum = geometric_factor_sum(w.matrix, RootConvention(4, Rational(1)));
  CHECK(sum == scale_by(mat_add(w.matrix, Matrix::identity(Backend::Rational, 4)), Rational(2)));
  CHECK_FALSE(mat_is_zero(sum, Tolerance::exact()));
}

TEST_CASE("case II and IV lead with a 1x1 block") {
  const Witness two = case_counterexample(CaseTag::CaseII, 5, 2);
  CHECK(two.matrix.as<Rational>()(0, 0) == 1);
  CHECK(two.matrix.as<Rational>()(1, 2) == 1);
  const Witness four = case_counterexample(CaseTag::CaseIV, 3, 5);
  CHECK(four.matrix.as<double>()(0, 0) == 1.0);
  CHECK(four.matrix.as<double>()(1, 1) == doctest::Approx(std::cos(2 * kPi / 5)));
}

TEST_CASE("case III: (1,1) entry of the factor sum is n") {
  const Witness w = case_counterexample(CaseTag::CaseIII, 4, 3);
  CHECK(w.matrix.backend() == Backend::Real);
  const Matrix sum = geometric_factor_sum(w.matrix, RootConvention(3, Rational(1)));
  CHECK(sum.as<double>()(0, 0) == doctest::Approx(3.0));
}

TEST_CASE("case V: (1,1) entry of the alternating sum is n") {
  const Witness w = case_counterexample(CaseTag::CaseV, 4, 3);
  CHECK(std::get<Rational>(w.a) == -1);
  CHECK(mat_eq(mat_pow(w.matrix, 3), scalar_identity(w.matrix, -1.0), kTol));
  const Matrix sum = geometric_factor_sum(w.matrix, RootConvention(3, Rational(-1)));
  CHECK(sum.as<double>()(0, 0) == doctest::Approx(3.0));
}

TEST_CASE("case_counterexample rejects mismatched parameters") {
  CHECK_THROWS_AS(case_counterexample(CaseTag::CaseI, 3, 4), ArgumentError);
  CHECK_THROWS_AS(case_counterexample(CaseTag::CaseI, 4, 3), ArgumentError);
  CHECK_THROWS_AS(case_counterexample(CaseTag::CaseII, 4, 4), ArgumentError);
  CHECK_THROWS_AS(case_counterexample(CaseTag::CaseIII, 2, 3), ArgumentError);
  CHECK_THROWS_AS(case_counterexample(CaseTag::CaseV, 2, 5), ArgumentError);
  CHECK_THROWS_AS(case_counterexample(CaseTag::CaseIV, 4, 3), ArgumentError);
  CHECK_THROWS_AS(case_counterexample(CaseTag::CaseVI, 3, 4), ArgumentError);
  CHECK_THROWS_AS(case_counterexample(CaseTag::NilpotentShift, 3, 3), ArgumentError);
}

TEST_CASE("theorem2_counterexample") {
  SUBCASE("k = 4, n = 4") {
    const Witness w = theorem2_counterexample(4, 4);
    CHECK(w.refutes_sentence == 2);
    CHECK(mat_eq(mat_pow(w.matrix, 4), scalar_identity(w.matrix, -1.0), {1e-10, 0}));
    for (int i = 1; i <= 2; ++i) CHECK_FALSE(mat_is_zero(quadratic_factor_eval(w.matrix, 4, -1.0, i), kTol));
  }
  SUBCASE("k = 6, n = 4") {
    const Witness w = theorem2_counterexample(6, 4);
    const RealMatrix& m = w.matrix.as<double>();
    CHECK(m(4, 4) == doctest::Approx(std::cos(3 * kPi / 4)));
    for (int i = 1; i <= 2; ++i) CHECK_FALSE(mat_is_zero(quadratic_factor_eval(w.matrix, 4, -1.0, i), kTol));
  }
  SUBCASE("k = 4, n = 6") {
    const Witness w = theorem2_counterexample(4, 6);
    const std::vector<Matrix> expected_blocks{rotation(kPi / 6), rotation(kPi / 2)};
    CHECK(w.matrix == block_diag(std::span<const Matrix>(expected_blocks)));
    // Angle oracle: 6 * (pi/6) = pi and 6 * (pi/2) = 3 pi are both half turns.
    CHECK(mat_eq(mat_pow(w.matrix, 6), scalar_identity(w.matrix, -1.0), {1e-10, 0}));
  }
  CHECK_THROWS_AS(theorem2_counterexample(2, 4), ArgumentError);
  CHECK_THROWS_AS(theorem2_counterexample(4, 2), ArgumentError);
  CHECK_THROWS_AS(theorem2_counterexample(5, 4), ArgumentError);
  CHECK_THROWS_AS(theorem2_counterexample(4, 5), ArgumentError);
}

TEST_CASE("complex_counterexample") {
  const Witness two = complex_counterexample(2, 2, 1.0);
  const ComplexMatrix& m = two.matrix.as<Complex>();
  CHECK(std::abs(m(0, 0) - Complex(1.0)) < 1e-15);
  CHECK(std::abs(m(1, 1) - Complex(-1.0)) < 1e-15);
  const Matrix plus_i = mat_add(two.matrix, Matrix::identity(Backend::Complex, 2));
  CHECK(std::abs(plus_i.as<Complex>()(0, 0) - Complex(2.0)) < 1e-15);
  CHECK_FALSE(mat_is_zero(plus_i, kTol));

  const Witness three = complex_counterexample(3, 3, 1.0);
  const Matrix sum = geometric_factor_sum(three.matrix, RootConvention(3, Rational(1)));
  CHECK(std::abs(sum.as<Complex>()(0, 0) - Complex(3.0)) < 1e-12);
  CHECK(std::abs(sum.as<Complex>()(1, 1)) < 1e-12);

  const Witness sixteen = complex_counterexample(2, 4, 16.0);
  const ComplexMatrix& s = sixteen.matrix.as<Complex>();
  CHECK(std::abs(s(0, 0) - Complex(2.0)) < 1e-12);
  CHECK(std::abs(s(1, 1) - Complex(0.0, 2.0)) < 1e-12);
  CHECK(approx_equal(power(s, 4), scale(ComplexMatrix::identity(2), Complex(16.0)), {1e-10, 0}));

  // Genuinely complex a: every diagonal entry is an n-th root of a.
  const Complex a(3.0, -4.0);
  const Witness c = complex_counterexample(4, 5, a);
  CHECK(approx_equal(power(c.matrix.as<Complex>(), 5), scale(ComplexMatrix::identity(4), a), {1e-10, 1e-10}));

  CHECK_THROWS_AS(complex_counterexample(2, 2, 0.0), ArgumentError);
}

TEST_CASE("conjugate_random") {
  const Witness w = case_counterexample(CaseTag::CaseI, 4, 4);
  const Witness c = conjugate_random(w, 0);
  CHECK(c.tag == w.tag);
  CHECK(c.refutes_sentence == w.refutes_sentence);
  CHECK(mat_pow(c.matrix, 4) == Matrix::identity(Backend::Rational, 4));
  CHECK_FALSE(mat_is_zero(geometric_factor_sum(c.matrix, RootConvention(4, Rational(1))), Tolerance::exact()));

  CHECK(conjugate_random(w, 1).matrix == conjugate_random(w, 1).matrix);

  const Matrix a = shift_nilpotent(5, 3);
  const Witness nil{a, CaseTag::NilpotentShift, 5, 3, Scalar(Rational(0)), 1};
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Matrix m = conjugate_random(nil, seed).matrix;
    CHECK(mat_pow(m, 3) == Matrix::zero(Backend::Rational, 5));
    CHECK_FALSE(mat_pow(m, 2) == Matrix::zero(Backend::Rational, 5));
  }
}

TEST_CASE("unimodular_conjugator") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t k = 2 + seed % 7;
    const Conjugator p = unimodular_conjugator(k, seed);
    CHECK(multiply(p.forward, p.inverse) == RationalMatrix::identity(k));
    CHECK(abs(determinant(p.forward)) == 1);
    double fwd = 0;
    double inv = 0;
    for (std::size_t i = 0; i < k; ++i) {
      double rf = 0;
      double ri = 0;
      for (std::size_t j = 0; j < k; ++j) {
        rf += std::abs(p.forward(i, j).get_d());
        ri += std::abs(p.inverse(i, j).get_d());
      }
      fwd = std::max(fwd, rf);
      inv = std::max(inv, ri);
    }
    CHECK(fwd * inv <= kMaxConjugatorConditioning);
  }
  CHECK(unimodular_conjugator(1, 9).forward == RationalMatrix::identity(1));
}

TEST_CASE("scale_to_unit") {
  const Matrix two_t = scale_by(Matrix(swap_block()), Rational(2));
  CHECK(scale_to_unit(two_t, 2, Rational(4)) == Matrix(swap_block()));

  const Matrix id = Matrix::identity(Backend::Rational, 3);
  CHECK(scale_to_unit(id, 3, Rational(1)) == id);

  const Matrix r = rotation(kPi / 4);
  const Matrix three_r = scale_by(r, 3.0);
  // (3R)^4 = 81 R^4 = -81 I.
  CHECK(mat_eq(mat_pow(three_r, 4), scale_by(Matrix::identity(Backend::Real, 2), -81.0), {1e-10, 1e-12}));
  CHECK(mat_eq(scale_to_unit(three_r, 4, Rational(-81)), r, {1e-15, 1e-15}));

  const Matrix irrational = scale_to_unit(two_t, 2, Rational(2));
  CHECK(irrational.backend() == Backend::Real);
  CHECK(mat_eq(scale_from_unit(irrational, 2, Rational(2)), promote(two_t, Backend::Real), {1e-15, 1e-15}));

  CHECK_THROWS_AS(scale_to_unit(id, 3, Rational(0)), ArgumentError);
}

TEST_CASE("tag names round-trip") {
  for (const CaseTag tag : {CaseTag::CaseI, CaseTag::CaseII, CaseTag::CaseIII, CaseTag::CaseIV, CaseTag::CaseV,
                            CaseTag::CaseVI, CaseTag::NilpotentShift, CaseTag::Theorem2CE, CaseTag::ComplexCE,
                            CaseTag::BlockSearch}) {
    CHECK(parse_case_tag(to_string(tag)) == tag);
  }
  CHECK_FALSE(parse_case_tag("case-vii"));
}

// ---- properties ----

TEST_CASE("property: every case witness refutes the geometric-factor implication") {
  const std::array tags{CaseTag::CaseI, CaseTag::CaseII, CaseTag::CaseIII,
                        CaseTag::CaseIV, CaseTag::CaseV, CaseTag::CaseVI};
  int built = 0;
  for (const CaseTag tag : tags) {
    for (int k = 2; k <= 9; ++k) {
      for (int n = 2; n <= 9; ++n) {
        Witness w{Matrix(RationalMatrix(1)), tag, 0, 0, Scalar(Rational(0)), std::nullopt};
        try {
          w = case_counterexample(tag, k, n);
        } catch (const ArgumentError&) {
          continue;
        }
        ++built;
        CAPTURE(k);
        CAPTURE(n);
        CHECK(w.matrix.order() == static_cast<std::size_t>(k));
        const double a = unit_a(w);
        const Tolerance tol = w.matrix.backend() == Backend::Rational ? Tolerance::exact() : kTol;
        CHECK(mat_eq(mat_pow(w.matrix, n), scalar_identity(w.matrix, a), tol));
        CHECK_FALSE(mat_eq(w.matrix, scalar_identity(w.matrix, a), tol));
        const Matrix sum = geometric_factor_sum(w.matrix, RootConvention(n, std::get<Rational>(w.a)));
        CHECK_FALSE(mat_is_zero(sum, tol));
      }
    }
  }
  CHECK(built > 60);
}

TEST_CASE("property: theorem2 witnesses vanish on no quadratic factor") {
  for (int k = 4; k <= 10; k += 2) {
    for (int n = 4; n <= 12; n += 2) {
      const Witness w = theorem2_counterexample(k, n);
      CHECK(mat_eq(mat_pow(w.matrix, n), scalar_identity(w.matrix, -1.0), kTol));
      for (int i = 1; i <= n / 2; ++i) {
        CAPTURE(i);
        CHECK_FALSE(mat_is_zero(quadratic_factor_eval(w.matrix, n, -1.0, i), kTol));
      }
    }
  }
}

TEST_CASE("property: shift nilpotent index is exactly n") {
  for (int k = 2; k <= 12; ++k) {
    for (int n = 2; n <= k; ++n) {
      const Matrix a = shift_nilpotent(k, n);
      CHECK(mat_pow(a, n) == Matrix::zero(Backend::Rational, k));
      CHECK_FALSE(mat_pow(a, n - 1) == Matrix::zero(Backend::Rational, k));
    }
  }
}

TEST_CASE("property: conjugation preserves the equation and refutation status") {
  std::vector<Witness> witnesses{case_counterexample(CaseTag::CaseI, 6, 4),
                                 case_counterexample(CaseTag::CaseII, 5, 6),
                                 case_counterexample(CaseTag::CaseIII, 6, 5),
                                 case_counterexample(CaseTag::CaseVI, 7, 7),
                                 theorem2_counterexample(6, 6)};
  for (const auto& w : witnesses) {
    const double a = unit_a(w);
    const Tolerance tol = w.matrix.backend() == Backend::Rational ? Tolerance::exact() : Tolerance{1e-7, 1e-7};
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
      const Matrix c = conjugate_random(w, seed).matrix;
      CHECK(mat_eq(mat_pow(c, w.n), scalar_identity(c, a), tol));
      if (w.refutes_sentence == 1) {
        CHECK_FALSE(mat_is_zero(geometric_factor_sum(c, RootConvention(w.n, std::get<Rational>(w.a))), tol));
      } else {
        for (int i = 1; i <= w.n / 2; ++i) CHECK_FALSE(mat_is_zero(quadratic_factor_eval(c, w.n, a, i), tol));
      }
    }
  }
}
