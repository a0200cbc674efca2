#include "matroot/json_io.hpp"

#include <regex>

namespace matroot {

namespace {

const json& require_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) {
    throw ParseError(std::string("missing field \"") + key + "\"");
  }
  return j.at(key);
}

int require_int(const json& j, const char* key) {
  const json& v = require_field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

Rational rational_entry(const json& e) {
  if (!e.is_string()) throw ParseError("rational entries must be \"num/den\" strings");
  return parse_rational_literal(e.get<std::string>());
}

double real_entry(const json& e) {
  if (!e.is_number()) throw ParseError("real entries must be JSON numbers");
  return e.get<double>();
}

Complex complex_entry(const json& e) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    throw ParseError("complex entries must be [re, im] number pairs");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

template <class T, class F>
Matrix typed_matrix(std::size_t order, const json& entries, F&& convert) {
  std::vector<T> values;
  values.reserve(entries.size());
  for (const auto& e : entries) values.push_back(convert(e));
  return DenseMatrix<T>(order, std::move(values));
}

}  // namespace

Rational parse_rational_literal(std::string_view text) {
  static const std::regex kFraction(R"(^\s*([+-]?\d+)\s*/\s*(\d+)\s*$)");
  static const std::regex kDecimal(R"(^\s*([+-]?)(\d*)(?:\.(\d*))?(?:[eE]([+-]?\d{1,4}))?\s*$)");
  const std::string s(text);
  std::smatch m;
  if (std::regex_match(s, m, kFraction)) {
    const mpz_class den(m[2].str(), 10);
    if (den == 0) throw ParseError("zero denominator in \"" + s + "\"");
    std::string num = m[1].str();
    if (!num.empty() && num.front() == '+') num.erase(0, 1);
    Rational q{mpz_class(num, 10), den};
    q.canonicalize();
    return q;
  }
  if (std::regex_match(s, m, kDecimal)) {
    const std::string whole = m[2].str();
    const std::string frac = m[3].matched ? m[3].str() : "";
    if (whole.empty() && frac.empty()) throw ParseError("not a number: \"" + s + "\"");
    const std::string digits = whole + frac;
    long exponent = m[4].matched ? std::stol(m[4].str()) : 0;
    exponent -= static_cast<long>(frac.size());
    mpz_class num(digits.empty() ? "0" : digits, 10);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(exponent)));
    Rational q = exponent >= 0 ? Rational(num * scale) : Rational(num, scale);
    q.canonicalize();
    if (m[1].str() == "-") q = -q;
    return q;
  }
  throw ParseError("malformed rational or decimal literal: \"" + s + "\"");
}

std::string format_rational(const Rational& q) {
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

json scalar_to_json(const Scalar& s) {
  return std::visit(
      [](const auto& v) -> json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, Rational>) {
          return format_rational(v);
        } else if constexpr (std::is_same_v<T, double>) {
          return v;
        } else {
          return json::array({v.real(), v.imag()});
        }
      },
      s);
}

Scalar scalar_from_json(const json& j) {
  if (j.is_string()) return parse_rational_literal(j.get<std::string>());
  if (j.is_number()) return j.get<double>();
  return complex_entry(j);
}

json matrix_to_json(const Matrix& m) {
  json entries = json::array();
  m.visit([&](const auto& dense) {
    for (const auto& e : dense.entries()) entries.push_back(scalar_to_json(Scalar(e)));
  });
  return json{{"backend", std::string(to_string(m.backend()))}, {"order", m.order()}, {"entries", entries}};
}

Matrix matrix_from_json(const json& j) {
  const json& backend = require_field(j, "backend");
  if (!backend.is_string()) throw ParseError("field \"backend\" must be a string");
  const int order = require_int(j, "order");
  if (order < 1) throw ParseError("matrix order must be at least 1");
  const json& entries = require_field(j, "entries");
  const auto k = static_cast<std::size_t>(order);
  if (!entries.is_array() || entries.size() != k * k) {
    throw ParseError("\"entries\" must be an array of order^2 = " + std::to_string(k * k) + " scalars");
  }
  try {
    const std::string b = backend.get<std::string>();
    if (b == "rational") return typed_matrix<Rational>(k, entries, rational_entry);
    if (b == "real") return typed_matrix<double>(k, entries, real_entry);
    if (b == "complex") return typed_matrix<Complex>(k, entries, complex_entry);
    throw ParseError("unknown backend \"" + b + "\"");
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

json witness_to_json(const Witness& w) {
  return json{{"matrix", matrix_to_json(w.matrix)},
              {"tag", std::string(to_string(w.tag))},
              {"k", w.k},
              {"n", w.n},
              {"a", scalar_to_json(w.a)},
              {"refutes_sentence", w.refutes_sentence ? json(*w.refutes_sentence) : json(nullptr)}};
}

Witness witness_from_json(const json& j) {
  const json& tag = require_field(j, "tag");
  if (!tag.is_string()) throw ParseError("field \"tag\" must be a string");
  const auto parsed = parse_case_tag(tag.get<std::string>());
  if (!parsed) throw ParseError("unknown tag \"" + tag.get<std::string>() + "\"");
  std::optional<int> refutes;
  if (j.contains("refutes_sentence") && !j.at("refutes_sentence").is_null()) {
    refutes = require_int(j, "refutes_sentence");
  }
  Witness w{matrix_from_json(require_field(j, "matrix")), *parsed, require_int(j, "k"),
            require_int(j, "n"), scalar_from_json(require_field(j, "a")), refutes};
  if (w.matrix.order() != static_cast<std::size_t>(w.k)) throw ParseError("witness order does not match k");
  return w;
}

json verdict_to_json(const Verdict& v) {
  return json{{"holds", v.holds},
              {"mode", std::string(to_string(v.mode))},
              {"witness", v.witness ? witness_to_json(*v.witness) : json(nullptr)},
              {"trials", v.trials},
              {"closed_form", v.closed_form},
              {"quarantined", v.quarantined},
              {"note", v.note ? json(*v.note) : json(nullptr)}};
}

json sentence_report_to_json(const Sentence1Report& r) {
  return json{{"sentence", 1},
              {"equation_satisfied", r.equation_satisfied},
              {"is_simple_root", r.is_simple_root},
              {"factor_sum_zero", r.factor_sum_zero},
              {"sentence_value", r.sentence_value}};
}

json sentence_report_to_json(const Sentence2Report& r) {
  return json{{"sentence", 2},
              {"equation_satisfied", r.equation_satisfied},
              {"quadratic_zero_indices", r.quadratic_zero_indices},
              {"sentence_value", r.sentence_value}};
}

}  // namespace matroot
