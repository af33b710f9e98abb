#include "nevan/model_text.hpp"

#include <numbers>
#include <optional>

#include "lexer.hpp"
#include "nevan/errors.hpp"

namespace nevan {

namespace {

using detail::Token;
using detail::TokenStream;

// Either a rational function of z or a non-rational model of the family.
struct Value {
  RationalFunction rat;
  std::optional<FunctionModel> model;

  bool is_rat() const { return !model; }
  bool is_exp() const { return model && model->kind() == ModelKind::RationalExp; }
};

[[noreturn]] void outside_family(const std::string& what) {
  throw Error(ErrorCode::Unsupported, "expression leaves the supported model family: " + what);
}

cplx as_constant(const Value& v, const char* ctx) {
  if (!v.is_rat() || !v.rat.is_constant()) outside_family(std::string(ctx) + " needs a constant operand");
  return v.rat.numerator()[0];
}

Value from_model(FunctionModel m) { return {RationalFunction(), std::move(m)}; }

Value scale(const Value& v, cplx c) {
  if (v.is_rat()) return {v.rat * RationalFunction(c), std::nullopt};
  const FunctionModel& m = *v.model;
  if (m.kind() == ModelKind::RationalExp)
    return from_model(FunctionModel::rational_exp(m.rational_part() * RationalFunction(c), m.exponent()));
  if (m.kind() == ModelKind::Scaled) {
    const cplx k = m.constant() * c;
    if (k == cplx(1.0, 0.0)) return from_model(m.inner());
    return from_model(FunctionModel::scaled(m.inner(), k));
  }
  if (c == cplx(1.0, 0.0)) return v;
  return from_model(FunctionModel::scaled(m, c));
}

Value add(const Value& a, const Value& b) {
  if (a.is_rat() && b.is_rat()) return {a.rat + b.rat, std::nullopt};
  if (!a.is_rat() && !b.is_rat()) outside_family("sum of two non-rational models");
  const Value& m = a.is_rat() ? b : a;
  const Value& c = a.is_rat() ? a : b;
  const cplx k = as_constant(c, "adding to a non-rational model");
  if (k == cplx(0.0, 0.0)) return m;
  if (m.model->kind() == ModelKind::Shifted) {
    const cplx shift = m.model->constant() - k;
    if (shift == cplx(0.0, 0.0)) return from_model(m.model->inner());
    return from_model(FunctionModel::shifted(m.model->inner(), shift));
  }
  return from_model(FunctionModel::shifted(*m.model, -k));
}

Value negate(const Value& v) { return scale(v, -1.0); }

Value multiply(const Value& a, const Value& b) {
  if (a.is_rat() && b.is_rat()) return {a.rat * b.rat, std::nullopt};
  if (a.is_exp() && b.is_exp())
    return from_model(FunctionModel::rational_exp(a.model->rational_part() * b.model->rational_part(),
                                                   a.model->exponent() + b.model->exponent()));
  if (a.is_rat() || b.is_rat()) {
    const Value& m = a.is_rat() ? b : a;
    const Value& r = a.is_rat() ? a : b;
    if (m.is_exp())
      return from_model(FunctionModel::rational_exp(m.model->rational_part() * r.rat, m.model->exponent()));
    return scale(m, as_constant(r, "multiplying a non-rational model"));
  }
  outside_family("product of two non-rational models");
}

Value divide(const Value& a, const Value& b) {
  if (a.is_rat() && b.is_rat()) return {a.rat / b.rat, std::nullopt};
  if (a.is_exp() && b.is_exp())
    return from_model(FunctionModel::rational_exp(a.model->rational_part() / b.model->rational_part(),
                                                  a.model->exponent() - b.model->exponent()));
  if (b.is_rat()) {
    if (a.is_exp())
      return from_model(FunctionModel::rational_exp(a.model->rational_part() / b.rat, a.model->exponent()));
    return scale(a, 1.0 / as_constant(b, "dividing a non-rational model"));
  }
  if (a.is_rat()) {
    if (b.is_exp())
      return from_model(FunctionModel::rational_exp(a.rat / b.model->rational_part(), -b.model->exponent()));
    const cplx k = as_constant(a, "dividing by a non-rational model");
    if (b.model->kind() == ModelKind::Reciprocal) return scale(from_model(b.model->inner()), k);
    return scale(from_model(FunctionModel::reciprocal(*b.model)), k);
  }
  outside_family("quotient of two non-rational models");
}

Value power(const Value& v, int e) {
  if (v.is_rat()) {
    if (e >= 0) {
      RationalFunction out(1.0);
      for (int i = 0; i < e; ++i) out = out * v.rat;
      return {out, std::nullopt};
    }
    RationalFunction out(1.0);
    for (int i = 0; i < -e; ++i) out = out / v.rat;
    return {out, std::nullopt};
  }
  if (e == 1) return v;
  if (v.is_exp() && e >= 0) {
    const auto r = power({v.model->rational_part(), std::nullopt}, e).rat;
    return from_model(FunctionModel::rational_exp(r, v.model->exponent() * cplx(e, 0.0)));
  }
  outside_family("power of a non-rational model");
}

const Polynomial& require_polynomial(const Value& v, const char* ctx) {
  if (!v.is_rat() || !v.rat.is_polynomial())
    throw Error(ErrorCode::Unsupported, std::string(ctx) + " needs a polynomial argument");
  return v.rat.numerator();
}

class ModelParser {
 public:
  explicit ModelParser(std::string_view text) : ts_(text) {}

  Value parse_all() {
    Value v = expr();
    if (!ts_.at_end()) ts_.fail("unexpected trailing input");
    return v;
  }

 private:
  Value expr() {
    Value v = term();
    for (;;) {
      if (ts_.accept('+')) {
        v = add(v, term());
      } else if (ts_.accept('-')) {
        v = add(v, negate(term()));
      } else {
        return v;
      }
    }
  }

  Value term() {
    Value v = unary();
    for (;;) {
      if (ts_.accept('*')) {
        v = multiply(v, unary());
      } else if (ts_.accept('/')) {
        v = divide(v, unary());
      } else if (implicit_product()) {
        v = multiply(v, power_expr());
      } else {
        return v;
      }
    }
  }

  // "2z", "3i", "2(z+1)" written without '*'.
  bool implicit_product() const {
    const Token& t = ts_.peek();
    return t.adjacent && (t.kind == Token::Ident || (t.kind == Token::Op && t.text[0] == '(')) &&
           last_was_number_;
  }

  Value unary() {
    if (ts_.accept('-')) return negate(unary());
    if (ts_.accept('+')) return unary();
    return power_expr();
  }

  Value power_expr() {
    Value base = atom();
    if (ts_.accept('^')) {
      last_was_number_ = false;
      return power(base, ts_.parse_int());
    }
    return base;
  }

  Value atom() {
    const Token t = ts_.next();
    last_was_number_ = false;
    if (t.kind == Token::Number) {
      last_was_number_ = true;
      return {RationalFunction(t.number), std::nullopt};
    }
    if (t.kind == Token::Ident) {
      if (t.text == "z") return {RationalFunction(Polynomial::identity()), std::nullopt};
      if (t.text == "i") return {RationalFunction(cplx(0.0, 1.0)), std::nullopt};
      if (t.text == "pi") return {RationalFunction(std::numbers::pi), std::nullopt};
      if (t.text == "exp" || t.text == "tan") {
        ts_.expect('(');
        Value arg = expr();
        ts_.expect(')');
        const Polynomial& p = require_polynomial(arg, t.text.c_str());
        if (t.text == "exp") return from_model(FunctionModel::rational_exp(RationalFunction(1.0), p));
        if (p.degree() != 1) throw Error(ErrorCode::Unsupported, "tan() needs a linear argument a*z+b");
        return from_model(FunctionModel::tan_linear(p[1], p[0]));
      }
      throw Error(ErrorCode::SyntaxError,
                  "unknown identifier '" + t.text + "' at position " + std::to_string(t.pos));
    }
    if (t.kind == Token::Op && t.text[0] == '(') {
      Value v = expr();
      ts_.expect(')');
      return v;
    }
    throw Error(ErrorCode::SyntaxError,
                "unexpected " + (t.kind == Token::End ? std::string("end of input") : "'" + t.text + "'") +
                    " at position " + std::to_string(t.pos));
  }

  TokenStream ts_;
  bool last_was_number_ = false;
};

}  // namespace

FunctionModel parse_model(std::string_view text) {
  Value v = ModelParser(text).parse_all();
  if (v.is_rat()) return FunctionModel::rational(v.rat);
  return *v.model;
}

RationalFunction parse_rational(std::string_view text) {
  Value v = ModelParser(text).parse_all();
  if (!v.is_rat()) throw Error(ErrorCode::Unsupported, "expected a rational function of z");
  return v.rat;
}

std::string to_text(const FunctionModel& m) {
  switch (m.kind()) {
    case ModelKind::Rational:
      return format_rational(m.rational_part());
    case ModelKind::RationalExp: {
      std::string e = "exp(" + format_polynomial(m.exponent()) + ")";
      if (m.rational_part() == RationalFunction(1.0)) return e;
      return format_rational(m.rational_part()) + "*" + e;
    }
    case ModelKind::TanLinear:
      return "tan(" + format_polynomial(Polynomial({m.tan_b(), m.tan_a()})) + ")";
    case ModelKind::Reciprocal:
      return "1/(" + to_text(m.inner()) + ")";
    case ModelKind::Shifted:
      return "(" + to_text(m.inner()) + ") - (" + format_complex(m.constant()) + ")";
    case ModelKind::Scaled:
      return "(" + format_complex(m.constant()) + ")*(" + to_text(m.inner()) + ")";
  }
  return {};
}

}  // namespace nevan
