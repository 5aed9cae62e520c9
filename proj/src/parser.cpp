#include "diffgal/parser.hpp"

#include <cctype>
#include <json.hpp>
#include <set>

#include "diffgal/errors.hpp"

namespace diffgal {

namespace {

using Kind = ParseError::Kind;
using json = nlohmann::json;

constexpr long kMaxExponent = 10000;

RationalFunction rf_pow(RationalFunction base, unsigned long e) {
  RationalFunction r(1);
  while (e > 0) {
    if (e & 1UL) r *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return r;
}

class Parser {
 public:
  explicit Parser(std::string_view s) : s_(s) {}

  RationalFunction parse_all() {
    RationalFunction v = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected '" + std::string(1, s_[i_]) + "'");
    return v;
  }

 private:
  std::string_view s_;
  std::size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg, Kind k = Kind::Syntax) const { throw ParseError(k, i_, msg); }
  [[noreturn]] void fail_at(std::size_t pos, const std::string& msg, Kind k = Kind::Syntax) const {
    throw ParseError(k, pos, msg);
  }

  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  RationalFunction expr() {
    RationalFunction v = term();
    for (;;) {
      if (eat('+')) {
        v += term();
      } else if (eat('-')) {
        v -= term();
      } else {
        return v;
      }
    }
  }

  RationalFunction term() {
    RationalFunction v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else {
        skip();
        const std::size_t at = i_;
        if (!eat('/')) return v;
        const RationalFunction d = unary();
        if (d.is_zero()) fail_at(at, "division by zero", Kind::DivisionByZeroConstant);
        v /= d;
      }
    }
  }

  // ^ binds tighter than a leading sign: -x^2 = -(x^2)
  RationalFunction unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  RationalFunction power() {
    skip();
    const std::size_t base_at = i_;
    RationalFunction b = primary();
    if (!eat('^')) return b;
    const long e = exponent();
    if (e >= 0) return rf_pow(b, static_cast<unsigned long>(e));
    if (b.is_zero()) fail_at(base_at, "zero raised to a negative power", Kind::DivisionByZeroConstant);
    return rf_pow(b.inverse(), static_cast<unsigned long>(-e));
  }

  long exponent() {
    const bool paren = eat('(');
    bool neg = false;
    if (eat('-')) {
      neg = true;
    } else {
      eat('+');
    }
    skip();
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start) fail("exponent must be an integer");
    if (i_ < s_.size() && s_[i_] == '.') fail("exponent must be an integer");
    const std::string digits(s_.substr(start, i_ - start));
    if (digits.size() > 6 || std::stol(digits) > kMaxExponent) fail_at(start, "exponent too large");
    if (paren && !eat(')')) fail("exponent must be an integer");
    const long e = std::stol(digits);
    return neg ? -e : e;
  }

  RationalFunction primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[i_];
    if (c == '(') {
      ++i_;
      RationalFunction v = expr();
      if (!eat(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return RationalFunction(number());
    if (std::isalpha(static_cast<unsigned char>(c))) {
      const std::size_t start = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
      const std::string id(s_.substr(start, i_ - start));
      if (id == "x") return RationalFunction::x();
      static const std::set<std::string> irrational{"sqrt", "exp", "log", "ln", "sin", "cos", "tan", "pi", "e", "I", "i"};
      if (irrational.count(id))
        fail_at(start, "'" + id + "' is unsupported: only rational constants are allowed", Kind::IrrationalConstant);
      fail_at(start, "unknown symbol '" + id + "'");
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  Rational number() {
    const std::size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::string whole(s_.substr(start, i_ - start));
    std::string frac;
    if (i_ < s_.size() && s_[i_] == '.') {
      ++i_;
      const std::size_t fs = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      frac = std::string(s_.substr(fs, i_ - fs));
      if (frac.empty()) fail("digits expected after '.'");
    }
    if (whole.empty()) whole = "0";
    Integer num(whole + frac, 10);
    Integer den = 1;
    for (std::size_t k = 0; k < frac.size(); ++k) den *= 10;
    Rational r(num, den);
    r.canonicalize();
    return r;
  }
};

[[noreturn]] void schema(const std::string& what) { throw SchemaError(what); }

int bound_option(const json& opts, const char* key, int fallback) {
  if (!opts.contains(key)) return fallback;
  const json& v = opts.at(key);
  if (!v.is_number_integer() || v.get<long>() < 0 || v.get<long>() > 100000)
    schema(std::string("options.") + key + " must be a nonnegative integer");
  return static_cast<int>(v.get<long>());
}

MatrixRF matrix_from_json(const json& m) {
  if (!m.is_array() || m.empty()) schema("matrix must be a nonempty array of rows");
  const std::size_t n = m.size();
  MatrixRF A(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const json& row = m[i];
    if (!row.is_array()) schema("matrix row " + std::to_string(i) + " is not an array");
    if (row.size() != n) throw DimensionMismatch("matrix must be square: row " + std::to_string(i) + " has " +
                                                 std::to_string(row.size()) + " entries, expected " +
                                                 std::to_string(n));
    for (std::size_t j = 0; j < n; ++j) {
      const json& e = row[j];
      if (e.is_string()) {
        A(i, j) = parse_expression(e.get<std::string>());
      } else if (e.is_number_integer()) {
        A(i, j) = RationalFunction(Rational(Integer(e.dump(), 10)));
      } else {
        schema("matrix entries must be expression strings");
      }
    }
  }
  return A;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    schema(std::string("not valid JSON: ") + e.what());
  }
}

}  // namespace

RationalFunction parse_expression(std::string_view text) { return Parser(text).parse_all(); }

Rational parse_rational(std::string_view text) {
  const RationalFunction v = parse_expression(text);
  if (!v.is_constant()) throw ParseError(ParseError::Kind::Syntax, 0, "expected a rational constant");
  return v.is_zero() ? Rational(0) : v.constant_value();
}

OperatorCase parse_operator(const std::string& case_text, const std::string& q_text) {
  const Case c = parse_case(case_text);
  if (c == Case::S) {
    if (!q_text.empty()) throw BadOperatorParameter("case S takes no q");
    return OperatorCase::shift();
  }
  if (q_text.empty()) throw BadOperatorParameter("case " + case_text + " needs q");
  const Rational q = parse_rational(q_text);
  return c == Case::Q ? OperatorCase::qdilation(q) : OperatorCase::mahler(q);
}

std::string format_expression(const RationalFunction& f) { return f.to_string(); }

std::string format_rational(const Rational& r) { return r.get_str(); }

SystemDocument parse_system_document(const std::string& text) {
  const json doc = parse_json(text);
  if (!doc.is_object()) schema("document must be a JSON object");
  static const std::set<std::string> known{"case", "q", "matrix", "options", "name", "description"};
  for (const auto& [k, v] : doc.items())
    if (!known.count(k)) schema("unknown field '" + k + "'");
  if (!doc.contains("case") || !doc["case"].is_string()) schema("field 'case' (\"S\", \"Q\" or \"M\") is required");
  if (!doc.contains("matrix")) schema("field 'matrix' is required");

  Case c;
  try {
    c = parse_case(doc["case"].get<std::string>());
  } catch (const Error&) {
    schema("case must be one of S, Q, M");
  }
  OperatorCase op = OperatorCase::shift();
  if (c == Case::S) {
    if (doc.contains("q")) schema("case S takes no q");
  } else {
    if (!doc.contains("q")) schema("field 'q' is required for case " + case_name(c));
    const json& qj = doc["q"];
    Rational q;
    if (qj.is_string()) {
      q = parse_rational(qj.get<std::string>());
    } else if (qj.is_number_integer()) {
      q = Rational(Integer(qj.dump(), 10));
    } else {
      schema("q must be a string holding a rational number");
    }
    op = c == Case::Q ? OperatorCase::qdilation(q) : OperatorCase::mahler(q);
  }

  SystemDocument out;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) schema("name must be a string");
    out.name = doc["name"].get<std::string>();
  }
  if (doc.contains("options")) {
    const json& o = doc["options"];
    if (!o.is_object()) schema("options must be an object");
    static const std::set<std::string> opts{"degree_bound", "denominator_bound", "orbit_bound"};
    for (const auto& [k, v] : o.items())
      if (!opts.count(k)) schema("unknown option '" + k + "'");
    out.bounds.max_numerator_degree = bound_option(o, "degree_bound", out.bounds.max_numerator_degree);
    out.bounds.max_denominator_degree = bound_option(o, "denominator_bound", out.bounds.max_denominator_degree);
    out.bounds.orbit_bound = bound_option(o, "orbit_bound", out.bounds.orbit_bound);
  }
  out.system = DifferenceSystem{op, matrix_from_json(doc["matrix"])};
  out.system.validate();
  return out;
}

DifferenceSystem parse_system(const std::string& text) { return parse_system_document(text).system; }

MatrixRF parse_matrix_json(const std::string& text) { return matrix_from_json(parse_json(text)); }

}  // namespace diffgal
