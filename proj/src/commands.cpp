#include "matroot/commands.hpp"

#include <cstdlib>

namespace matroot::commands {

namespace {

Matrix matrix_argument(const json& j) {
  if (j.is_object() && j.contains("matrix")) return matrix_from_json(j.at("matrix"));
  return matrix_from_json(j);
}

QuadraticVariant variant_argument(const std::optional<std::string>& variant) {
  if (!variant) return QuadraticVariant::MinusTwoCos;
  const auto v = parse_quadratic_variant(*variant);
  if (!v) throw ArgumentError("unknown variant \"" + *variant + "\" (expected minus-two-cos or plus-cos)");
  return *v;
}

// Scales a unit-family witness to the requested a, whose sign must match the family.
void rescale(Witness& w, const std::optional<std::string>& a_text) {
  if (!a_text) return;
  const Rational a = parse_rational_literal(*a_text);
  const Rational unit = std::get<Rational>(w.a);
  if (sgn(a) != sgn(unit)) {
    throw ArgumentError(std::string(to_string(w.tag)) + " builds roots of " + format_rational(unit) +
                        " I; a must have the same sign");
  }
  if (sgn(a) != 0 && abs(a) != 1) w.matrix = scale_from_unit(w.matrix, w.n, a);
  w.a = a;
}

}  // namespace

Tolerance default_tolerance() {
  Tolerance tol;
  if (const char* env = std::getenv("MATROOT_TOL"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const double value = std::strtod(env, &end);
    if (end == env || *end != '\0') throw ArgumentError("MATROOT_TOL is not a number");
    tol = make_tolerance(value, tol.relative);
  }
  return tol;
}

int verdict_exit_code(const Verdict& v) {
  if (v.quarantined && v.holds != v.closed_form) return kExitQuarantined;
  return v.holds ? kExitHolds : kExitRefuted;
}

Result decide(int k, int n, const std::string& a, const Tolerance& tol) {
  const auto inst = ProblemInstance::make(k, n, parse_rational_literal(a));
  SearchOptions opts;
  opts.tol = tol;
  const Verdict v = decide(inst, opts);
  return {verdict_to_json(v), verdict_exit_code(v)};
}

Result construct(const ConstructRequest& req) {
  const auto tag = parse_case_tag(req.tag);
  if (!tag || *tag == CaseTag::BlockSearch) throw ArgumentError("unknown construction tag \"" + req.tag + "\"");
  Witness w = [&] {
    switch (*tag) {
      case CaseTag::NilpotentShift:
        return Witness{shift_nilpotent(req.k, req.n), CaseTag::NilpotentShift, req.k, req.n,
                       Scalar(Rational(0)), 1};
      case CaseTag::Theorem2CE:
        return theorem2_counterexample(req.k, req.n);
      case CaseTag::ComplexCE: {
        const double re = req.a ? parse_rational_literal(*req.a).get_d() : 1.0;
        const double im = req.a_imag ? parse_rational_literal(*req.a_imag).get_d() : 0.0;
        return complex_counterexample(req.k, req.n, Complex(re, im));
      }
      default:
        return case_counterexample(*tag, req.k, req.n);
    }
  }();
  if (*tag == CaseTag::NilpotentShift && req.a && sgn(parse_rational_literal(*req.a)) != 0) {
    throw ArgumentError("nilpotent-shift builds roots of the zero matrix; a must be 0");
  }
  if (*tag != CaseTag::ComplexCE && *tag != CaseTag::NilpotentShift) rescale(w, req.a);
  if (req.conjugate_seed) w = conjugate_random(w, *req.conjugate_seed);
  return {witness_to_json(w), kExitHolds};
}

Result verify(const json& matrix, int k, int n, const std::string& a, const Tolerance& tol,
              std::optional<std::string> variant) {
  const Matrix x = matrix_argument(matrix);
  const auto inst = ProblemInstance::make(k, n, parse_rational_literal(a));
  if (x.order() != static_cast<std::size_t>(k)) {
    throw DimensionError("matrix order " + std::to_string(x.order()) + " does not match k = " +
                         std::to_string(k));
  }
  json report;
  bool value = true;
  if (inst.applicable_sentence() == 1) {
    if (variant) throw ArgumentError("--variant only applies to the quadratic-factor regime");
    const auto r = evaluate_sentence1(x, inst, tol);
    report = sentence_report_to_json(r);
    value = r.sentence_value;
  } else {
    const auto r = evaluate_sentence2(x, inst, tol, variant_argument(variant));
    report = sentence_report_to_json(r);
    report["variant"] = std::string(to_string(variant_argument(variant)));
    value = r.sentence_value;
  }
  report["matrix"] = matrix_to_json(x);
  report["k"] = k;
  report["n"] = n;
  report["a"] = format_rational(inst.a);
  report["regime"] = std::string(to_string(inst.regime()));
  return {report, value ? kExitHolds : kExitRefuted};
}

Result search(int k, int n, const std::string& a, std::uint64_t budget, std::uint64_t seed,
              const Tolerance& tol) {
  if (budget < 1) throw ArgumentError("budget must be at least 1");
  const auto inst = ProblemInstance::make(k, n, parse_rational_literal(a));
  const Verdict v = search_counterexample(inst, budget, seed, tol);
  return {verdict_to_json(v), verdict_exit_code(v)};
}

Result factor(const json& matrix, int n, const std::string& a, std::optional<std::string> variant,
              const Tolerance& tol) {
  const Matrix x = matrix_argument(matrix);
  if (n < 2) throw ArgumentError("n must be at least 2");
  const ProblemInstance inst{static_cast<int>(x.order()), n, parse_rational_literal(a)};
  json report{{"n", n}, {"a", format_rational(inst.a)}, {"regime", std::string(to_string(inst.regime()))}};
  if (inst.applicable_sentence() == 1) {
    if (variant) throw ArgumentError("--variant only applies to the quadratic-factor regime");
    const Matrix sum = geometric_factor_sum(x, RootConvention(n, inst.a));
    report["factor_sum"] = matrix_to_json(sum);
    report["zero"] = mat_is_zero(sum, tol);
  } else {
    const QuadraticVariant v = variant_argument(variant);
    report["variant"] = std::string(to_string(v));
    json factors = json::array();
    json zero_indices = json::array();
    for (int i = 1; i <= n / 2; ++i) {
      const Matrix value = quadratic_factor_eval(x, n, inst.a.get_d(), i, v);
      const bool zero = mat_is_zero(value, tol);
      factors.push_back({{"i", i}, {"value", matrix_to_json(value)}, {"zero", zero}});
      if (zero) zero_indices.push_back(i);
    }
    report["factors"] = factors;
    report["zero_indices"] = zero_indices;
  }
  return {report, kExitHolds};
}

}  // namespace matroot::commands
