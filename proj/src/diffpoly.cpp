#include "nevan/diffpoly.hpp"

#include <algorithm>
#include <numbers>

#include "lexer.hpp"
#include "nevan/errors.hpp"

namespace nevan {

MultiIndex::MultiIndex(std::vector<int> exponents) : j_(std::move(exponents)) {
  for (int e : j_)
    if (e < 0) throw Error(ErrorCode::DomainError, "negative exponent in a multi-index");
  while (j_.size() > 1 && j_.back() == 0) j_.pop_back();
  if (j_.empty()) j_.push_back(0);
}

int MultiIndex::degree() const {
  int d = 0;
  for (int e : j_) d += e;
  return d;
}

int MultiIndex::weight() const {
  int w = 0;
  for (size_t i = 0; i < j_.size(); ++i) w += static_cast<int>(i) * j_[i];
  return w;
}

MultiIndex MultiIndex::operator+(const MultiIndex& o) const {
  std::vector<int> s(std::max(j_.size(), o.j_.size()), 0);
  for (size_t i = 0; i < j_.size(); ++i) s[i] += j_[i];
  for (size_t i = 0; i < o.j_.size(); ++i) s[i] += o.j_[i];
  return MultiIndex(std::move(s));
}

int term_degree(const MultiIndex& idx) { return idx.degree(); }
int term_weight(const MultiIndex& idx) { return idx.weight(); }
int term_abs(const MultiIndex& idx) {
  int s = 0;
  for (int e : idx.exponents()) s += e;
  return s;
}

bool IndexOrder::operator()(const MultiIndex& a, const MultiIndex& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  if (a.weight() != b.weight()) return a.weight() > b.weight();
  return a.exponents() > b.exponents();
}

DiffPolynomial DiffPolynomial::constant(RationalFunction c) {
  DiffPolynomial p;
  p.add_term(c, MultiIndex());
  return p;
}

DiffPolynomial DiffPolynomial::derivative(int order) {
  if (order < 0) throw Error(ErrorCode::DomainError, "negative derivative order");
  std::vector<int> j(static_cast<size_t>(order) + 1, 0);
  j.back() = 1;
  DiffPolynomial p;
  p.add_term(1.0, MultiIndex(std::move(j)));
  return p;
}

bool DiffPolynomial::add_term(const RationalFunction& c, const MultiIndex& index) {
  if (c.is_zero()) return true;
  auto it = terms_.find(index);
  if (it == terms_.end()) {
    terms_.emplace(index, c);
    return true;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) {
    terms_.erase(it);
    return false;
  }
  return true;
}

std::vector<DiffTerm> DiffPolynomial::terms() const {
  std::vector<DiffTerm> out;
  out.reserve(terms_.size());
  for (const auto& [idx, c] : terms_) out.push_back({c, idx});
  return out;
}

RationalFunction DiffPolynomial::constant_term() const {
  auto it = terms_.find(MultiIndex());
  return it == terms_.end() ? RationalFunction() : it->second;
}

int DiffPolynomial::max_order() const {
  int m = 0;
  for (const auto& [idx, c] : terms_) m = std::max(m, idx.degree() > 0 ? idx.order() : 0);
  return m;
}

DiffPolynomial DiffPolynomial::operator+(const DiffPolynomial& o) const {
  DiffPolynomial out = *this;
  for (const auto& [idx, c] : o.terms_) out.add_term(c, idx);
  return out;
}

DiffPolynomial DiffPolynomial::operator-(const DiffPolynomial& o) const { return *this + o.scaled(-1.0); }

DiffPolynomial DiffPolynomial::operator*(const DiffPolynomial& o) const {
  DiffPolynomial out;
  for (const auto& [i1, c1] : terms_)
    for (const auto& [i2, c2] : o.terms_) out.add_term(c1 * c2, i1 + i2);
  return out;
}

DiffPolynomial DiffPolynomial::scaled(const RationalFunction& c) const {
  DiffPolynomial out;
  if (c.is_zero()) return out;
  for (const auto& [idx, a] : terms_) out.terms_.emplace(idx, a * c);
  return out;
}

namespace {
void require_nonempty(const DiffPolynomial& p) {
  if (p.empty()) throw Error(ErrorCode::EmptyPolynomial, "differential polynomial has no terms");
}

template <class F>
int fold_terms(const DiffPolynomial& p, F f, bool take_max) {
  require_nonempty(p);
  int acc = take_max ? std::numeric_limits<int>::min() : 0;
  for (const auto& t : p.terms()) acc = take_max ? std::max(acc, f(t)) : acc + f(t);
  return acc;
}
}  // namespace

int poly_degree(const DiffPolynomial& p) {
  return fold_terms(p, [](const DiffTerm& t) { return t.index.degree(); }, true);
}
int poly_weight(const DiffPolynomial& p) {
  return fold_terms(p, [](const DiffTerm& t) { return t.index.weight(); }, true);
}
int sum_degrees(const DiffPolynomial& p) {
  return fold_terms(p, [](const DiffTerm& t) { return t.index.degree(); }, false);
}
int sum_weights(const DiffPolynomial& p) {
  return fold_terms(p, [](const DiffTerm& t) { return t.index.weight(); }, false);
}
int coefficient_degree_sum(const DiffPolynomial& p) {
  return fold_terms(p, [](const DiffTerm& t) { return t.coeff.degree_at_infinity_plus(); }, false);
}
int coefficient_degree_max(const DiffPolynomial& p) {
  return fold_terms(p, [](const DiffTerm& t) { return t.coeff.degree_at_infinity_plus(); }, true);
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

using detail::Token;
using detail::TokenStream;

bool is_coefficient(const DiffPolynomial& p) {
  const auto t = p.terms();
  return t.empty() || (t.size() == 1 && t[0].index.is_constant());
}

class DiffPolyParser {
 public:
  DiffPolyParser(std::string_view text, const ConstantBindings& b) : ts_(text), bindings_(b) {}

  ParsedDiffPoly parse_all() {
    if (ts_.at_end()) ts_.fail("expected a differential polynomial");
    DiffPolynomial p = expr();
    if (!ts_.at_end()) ts_.fail("unexpected trailing input");
    return {std::move(p), std::move(warnings_)};
  }

 private:
  DiffPolynomial expr() {
    DiffPolynomial v = term();
    for (;;) {
      if (ts_.accept('+')) {
        v = sum(v, term(), 1.0);
      } else if (ts_.accept('-')) {
        v = sum(v, term(), -1.0);
      } else {
        return v;
      }
    }
  }

  DiffPolynomial sum(const DiffPolynomial& a, const DiffPolynomial& b, double sign) {
    DiffPolynomial out = a;
    for (const auto& t : b.terms()) {
      if (!out.add_term(t.coeff * RationalFunction(sign), t.index))
        warnings_.push_back("ZeroTerm: term " + format_multi_index(t.index) + " cancels");
    }
    return out;
  }

  DiffPolynomial term() {
    DiffPolynomial v = unary();
    for (;;) {
      if (ts_.accept('*')) {
        v = v * unary();
      } else if (ts_.is_op('/')) {
        const size_t pos = ts_.peek().pos;
        ts_.next();
        const DiffPolynomial d = unary();
        if (!is_coefficient(d) || d.empty())
          throw Error(ErrorCode::SyntaxError,
                      "division by a w-dependent or zero expression at position " + std::to_string(pos));
        v = v.scaled(RationalFunction(1.0) / d.constant_term());
      } else if (implicit_product()) {
        v = v * power_expr();
      } else {
        return v;
      }
    }
  }

  bool implicit_product() const {
    const Token& t = ts_.peek();
    return last_was_number_ && t.adjacent &&
           (t.kind == Token::Ident || (t.kind == Token::Op && t.text[0] == '('));
  }

  DiffPolynomial unary() {
    if (ts_.accept('-')) return unary().scaled(-1.0);
    if (ts_.accept('+')) return unary();
    return power_expr();
  }

  DiffPolynomial power_expr() {
    DiffPolynomial base = atom();
    if (ts_.accept('^')) {
      last_was_number_ = false;
      const size_t pos = ts_.peek().pos;
      const int e = ts_.parse_int();
      if (e < 0) {
        if (!is_coefficient(base) || base.empty())
          throw Error(ErrorCode::SyntaxError,
                      "negative power of a w-dependent expression at position " + std::to_string(pos));
        RationalFunction c = base.constant_term(), out(1.0);
        for (int i = 0; i < -e; ++i) out = out / c;
        return DiffPolynomial::constant(out);
      }
      DiffPolynomial out = DiffPolynomial::constant(1.0);
      for (int i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  DiffPolynomial atom() {
    const Token t = ts_.next();
    last_was_number_ = false;
    if (t.kind == Token::Number) {
      last_was_number_ = true;
      return DiffPolynomial::constant(t.number);
    }
    if (t.kind == Token::Ident) {
      if (t.text == "w") return derivative_factor();
      if (t.text == "z") return DiffPolynomial::constant(Polynomial::identity());
      if (t.text == "i") return DiffPolynomial::constant(cplx(0.0, 1.0));
      if (t.text == "pi") return DiffPolynomial::constant(std::numbers::pi);
      auto it = bindings_.find(t.text);
      if (it == bindings_.end())
        throw Error(ErrorCode::SyntaxError,
                    "unbound constant '" + t.text + "' at position " + std::to_string(t.pos));
      return DiffPolynomial::constant(it->second);
    }
    if (t.kind == Token::Op && t.text[0] == '(') {
      DiffPolynomial v = expr();
      ts_.expect(')');
      return v;
    }
    throw Error(ErrorCode::SyntaxError,
                "unexpected " + (t.kind == Token::End ? std::string("end of input") : "'" + t.text + "'") +
                    " at position " + std::to_string(t.pos));
  }

  // After "w": primes, or "^(k)" for the k-th derivative.
  DiffPolynomial derivative_factor() {
    int order = 0;
    while (ts_.is_op('\'') && ts_.peek().adjacent) {
      ts_.next();
      ++order;
    }
    if (order == 0 && ts_.is_op('^') && ts_.is_op('(', 1)) {
      ts_.next();
      ts_.next();
      order = ts_.parse_int();
      if (order < 0) ts_.fail("derivative order must be nonnegative");
      ts_.expect(')');
    }
    return DiffPolynomial::derivative(order);
  }

  TokenStream ts_;
  const ConstantBindings& bindings_;
  std::vector<std::string> warnings_;
  bool last_was_number_ = false;
};

std::string derivative_text(int k) {
  if (k <= 3) return "w" + std::string(static_cast<size_t>(k), '\'');
  return "w^(" + std::to_string(k) + ")";
}

}  // namespace

ParsedDiffPoly parse_diffpoly_ex(std::string_view text, const ConstantBindings& bindings) {
  return DiffPolyParser(text, bindings).parse_all();
}

DiffPolynomial parse_diffpoly(std::string_view text, const ConstantBindings& bindings) {
  return parse_diffpoly_ex(text, bindings).poly;
}

std::string format_multi_index(const MultiIndex& idx) {
  if (idx.is_constant()) return "1";
  std::string out;
  const auto& j = idx.exponents();
  for (size_t k = 0; k < j.size(); ++k) {
    if (j[k] == 0) continue;
    if (!out.empty()) out += "*";
    out += derivative_text(static_cast<int>(k));
    if (j[k] > 1) out += "^" + std::to_string(j[k]);
  }
  return out;
}

std::string format_diffpoly(const DiffPolynomial& p) {
  if (p.empty()) return "0";
  std::string out;
  for (const auto& t : p.terms()) {
    if (!out.empty()) out += " + ";
    out += format_rational(t.coeff);
    if (!t.index.is_constant()) out += "*" + format_multi_index(t.index);
  }
  return out;
}

ClunieForm validate_clunie_split(int n, DiffPolynomial P, DiffPolynomial Q) {
  if (n < 1) throw Error(ErrorCode::DomainError, "Clunie split needs n >= 1");
  require_nonempty(P);
  require_nonempty(Q);
  std::string bad;
  for (const auto& t : Q.terms()) {
    if (t.index.degree() > n) {
      if (!bad.empty()) bad += ", ";
      bad += format_multi_index(t.index) + " (degree " + std::to_string(t.index.degree()) + ")";
    }
  }
  if (!bad.empty())
    throw Error(ErrorCode::DegreeViolation, "terms of Q above degree " + std::to_string(n) + ": " + bad);
  return {n, std::move(P), std::move(Q)};
}

ScaledComplex evaluate_diffpoly_scaled(const DiffPolynomial& p, const FunctionModel& model, cplx z,
                                       double* log_largest_term) {
  const int order = p.max_order();
  const EvalOptions opts;
  if (order > opts.max_order)
    throw Error(ErrorCode::OrderTooLarge, "derivative order " + std::to_string(order) + " exceeds the maximum");
  check_pole_distance(model, z, opts);
  const auto d = jet(model, z, order);
  ScaledComplex total;
  double largest = -std::numeric_limits<double>::infinity();
  for (const auto& t : p.terms()) {
    const ScaledComplex den = t.coeff.denominator().eval_scaled(z);
    if (den.is_zero()) throw Error(ErrorCode::PoleProximity, "coefficient pole at " + format_complex(z));
    ScaledComplex v = t.coeff.numerator().eval_scaled(z) / den;
    const auto& j = t.index.exponents();
    for (size_t k = 0; k < j.size(); ++k)
      if (j[k] > 0) v = v * pow(d[k], j[k]);
    largest = std::max(largest, v.log_abs());
    total = total + v;
  }
  if (log_largest_term) *log_largest_term = largest;
  return total;
}

cplx evaluate_diffpoly(const DiffPolynomial& p, const FunctionModel& model, cplx z) {
  const ScaledComplex v = evaluate_diffpoly_scaled(p, model, z);
  if (!v.fits_double()) throw Error(ErrorCode::Overflow, "P(z, f) exceeds the double range");
  return v.value();
}

}  // namespace nevan
