#pragma once

// JSON forms shared by the CLI and the Python module.
//
//   Matrix:  {"backend": "rational"|"real"|"complex", "order": k, "entries": [...]}
//            rational entries are "num/den" strings, real entries numbers,
//            complex entries [re, im].
//   Witness: {"matrix": M, "tag": s, "k": i, "n": i, "a": scalar, "refutes_sentence": 1|2|null}
//   Verdict: {"holds": b, "mode": s, "witness": W|null, "trials": i,
//             "closed_form": b, "quarantined": b, "note": s|null}

#include <string>
#include <string_view>

#include "json.hpp"
#include "matroot/theorems.hpp"

namespace matroot {

class ParseError : public Error {
 public:
  using Error::Error;
};

using json = nlohmann::json;

/// Accepts "p/q", integers and decimals with optional exponent ("-0.25", "3e-2").
/// Decimals convert exactly. Throws ParseError on anything else.
Rational parse_rational_literal(std::string_view text);

/// "num/den" in lowest terms.
std::string format_rational(const Rational& q);

json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const json& j);

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json witness_to_json(const Witness& w);
Witness witness_from_json(const json& j);

json verdict_to_json(const Verdict& v);

json sentence_report_to_json(const Sentence1Report& r);
json sentence_report_to_json(const Sentence2Report& r);

}  // namespace matroot
