#pragma once

#include <charconv>
#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "nevan/errors.hpp"

namespace nevan::detail {

struct Token {
  enum Kind { Number, Ident, Op, End } kind = End;
  double number = 0.0;
  std::string text;
  size_t pos = 0;
  bool adjacent = false;  // no whitespace since the previous token
};

inline std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  size_t i = 0;
  bool space_before = true;
  while (i < src.size()) {
    const char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      space_before = true;
      continue;
    }
    Token t;
    t.pos = i;
    t.adjacent = !space_before && !out.empty();
    if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && i + 1 < src.size() &&
                                                        std::isdigit(static_cast<unsigned char>(src[i + 1])))) {
      size_t j = i;
      while (j < src.size() && (std::isdigit(static_cast<unsigned char>(src[j])) || src[j] == '.')) ++j;
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      t.kind = Token::Number;
      t.text = std::string(src.substr(i, j - i));
      auto res = std::from_chars(src.data() + i, src.data() + j, t.number);
      if (res.ec != std::errc() || res.ptr != src.data() + j)
        throw Error(ErrorCode::SyntaxError, "bad number '" + t.text + "' at position " + std::to_string(i));
      i = j;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Token::Ident;
      t.text = std::string(src.substr(i, j - i));
      i = j;
    } else if (std::string_view("+-*/^()',=;").find(c) != std::string_view::npos) {
      t.kind = Token::Op;
      t.text = std::string(1, c);
      ++i;
    } else {
      throw Error(ErrorCode::SyntaxError,
                  std::string("unexpected character '") + c + "' at position " + std::to_string(i));
    }
    space_before = false;
    out.push_back(std::move(t));
  }
  Token end;
  end.pos = src.size();
  out.push_back(end);
  return out;
}

class TokenStream {
 public:
  explicit TokenStream(std::string_view src) : toks_(tokenize(src)) {}

  const Token& peek(size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (pos_ + 1 < toks_.size()) ++pos_;
    return t;
  }
  bool is_op(char c, size_t ahead = 0) const {
    const Token& t = peek(ahead);
    return t.kind == Token::Op && t.text[0] == c;
  }
  bool accept(char c) {
    if (!is_op(c)) return false;
    next();
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  bool at_end() const { return peek().kind == Token::End; }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    std::string got = t.kind == Token::End ? "end of input" : "'" + t.text + "'";
    throw Error(ErrorCode::SyntaxError, what + " at position " + std::to_string(t.pos) + ", got " + got);
  }
  int parse_int() {
    bool neg = accept('-');
    const Token& t = peek();
    if (t.kind != Token::Number || t.text.find_first_of(".eE") != std::string::npos) fail("expected an integer");
    next();
    return neg ? -static_cast<int>(t.number) : static_cast<int>(t.number);
  }

 private:
  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace nevan::detail
