#pragma once

// Tokenizer shared by the .pt and .at term grammars.

#include <cctype>
#include <string>
#include <string_view>

#include "atmine/errors.hpp"
#include "atmine/traces.hpp"

namespace atmine::detail {

enum class Tok { Ident, Quoted, Arrow, Plus, Star, LParen, RParen, Comma, Semi, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  std::size_t line = 1;
  std::size_t column = 1;
};

inline bool is_bare_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' ||
         c == '@' || c == '#' || c == '$' || c == '%' || c == '!' || c == '?' || c == '/' ||
         c == '[' || c == ']' || c == '&' || c == '|' || c == '^' || c == '~' || c == '=' ||
         c == '<' || c == '>' || (static_cast<unsigned char>(c) >= 0x80);
}

/// "tau" and "tau<digits>" spell silent actions when unquoted.
inline bool is_tau_spelling(std::string_view s) {
  if (s.substr(0, 3) != "tau") return false;
  for (char c : s.substr(3))
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { advance(); }

  [[nodiscard]] const Token& peek() const { return cur_; }

  Token take() {
    Token t = cur_;
    advance();
    return t;
  }

  /// True when the token after the current one is '('. Used to tell an
  /// operator keyword from an activity that happens to share its spelling.
  [[nodiscard]] bool next_is_lparen() const {
    std::size_t p = pos_;
    while (p < src_.size() && std::isspace(static_cast<unsigned char>(src_[p]))) ++p;
    return p < src_.size() && src_[p] == '(';
  }

  Token expect(Tok kind, const char* what) {
    if (cur_.kind != kind) fail(std::string("expected ") + what);
    return take();
  }

  [[noreturn]] void fail(const std::string& what) const {
    const std::string got = cur_.kind == Tok::End ? "end of input" : "'" + cur_.text + "'";
    throw ParseError(what + ", got " + got, cur_.line, cur_.column);
  }

 private:
  void bump() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void advance() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) bump();
    cur_ = Token{};
    cur_.line = line_;
    cur_.column = col_;
    if (pos_ >= src_.size()) return;
    const char c = src_[pos_];
    auto single = [&](Tok k) {
      cur_.kind = k;
      cur_.text = std::string(1, c);
      bump();
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case ',': return single(Tok::Comma);
      case ';': return single(Tok::Semi);
      case '+': return single(Tok::Plus);
      case '*': return single(Tok::Star);
      default: break;
    }
    if (c == '-' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '>') {
      cur_.kind = Tok::Arrow;
      cur_.text = "->";
      bump();
      bump();
      return;
    }
    if (c == '"' || c == '\'') {
      const char quote = c;
      bump();
      std::string text;
      while (true) {
        if (pos_ >= src_.size()) throw ParseError("unterminated quoted name", cur_.line, cur_.column);
        char d = src_[pos_];
        if (d == quote) {
          bump();
          break;
        }
        if (d == '\\') {
          bump();
          if (pos_ >= src_.size())
            throw ParseError("unterminated quoted name", cur_.line, cur_.column);
          d = src_[pos_];
        }
        text.push_back(d);
        bump();
      }
      if (text.empty()) throw ParseError("empty quoted name", cur_.line, cur_.column);
      cur_.kind = Tok::Quoted;
      cur_.text = std::move(text);
      return;
    }
    if (is_bare_char(c) || c == '-') {
      std::string text;
      while (pos_ < src_.size() && (is_bare_char(src_[pos_]) ||
                                    (src_[pos_] == '-' && !(pos_ + 1 < src_.size() &&
                                                            src_[pos_ + 1] == '>')))) {
        text.push_back(src_[pos_]);
        bump();
      }
      cur_.kind = Tok::Ident;
      cur_.text = std::move(text);
      return;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line_, col_);
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token cur_;
};

/// Bare form when it lexes back to the same identifier, quoted otherwise.
inline std::string render_name(const std::string& name) {
  bool bare = !name.empty() && !is_tau_spelling(name) && name[0] != '-';
  for (std::size_t i = 0; bare && i < name.size(); ++i) {
    const char c = name[i];
    if (c == '-') {
      if (i + 1 < name.size() && name[i + 1] == '>') bare = false;
    } else if (!is_bare_char(c)) {
      bare = false;
    }
  }
  if (bare) return name;
  std::string out = "\"";
  for (char c : name) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

inline std::string render_action(const Action& a) {
  if (a.silent) return is_tau_spelling(a.name) ? a.name : std::string("tau");
  return render_name(a.name);
}

/// Converts a name token into an action: unquoted tau spellings are silent.
inline Action action_from_token(const Token& t) {
  if (t.kind == Tok::Ident && is_tau_spelling(t.text)) return Action::tau(t.text);
  return Action::observable(t.text);
}

}  // namespace atmine::detail
