#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "spl/errors.hpp"

namespace spl::detail {

enum class Tok {
  Ident, True, False, KwU, KwN,
  LParen, RParen, LBrack, RBrack, Langle, Rangle,
  Tilde, Amp, Pipe, Arrow, DArrow, SharpLe,
  Star, Backslash, Bang, Question, Dot, Comma,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourceSpan span;
};

inline const char* tok_name(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::KwU: return "'u'";
    case Tok::KwN: return "'n'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::LBrack: return "'['";
    case Tok::RBrack: return "']'";
    case Tok::Langle: return "'<'";
    case Tok::Rangle: return "'>'";
    case Tok::Tilde: return "'~'";
    case Tok::Amp: return "'&'";
    case Tok::Pipe: return "'|'";
    case Tok::Arrow: return "'->'";
    case Tok::DArrow: return "'<->'";
    case Tok::SharpLe: return "'<='";
    case Tok::Star: return "'*'";
    case Tok::Backslash: return "'\\'";
    case Tok::Bang: return "'!'";
    case Tok::Question: return "'?'";
    case Tok::Dot: return "'.'";
    case Tok::Comma: return "','";
    case Tok::End: return "end of input";
  }
  return "?";
}

inline std::vector<Token> lex(const std::string& text) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = text.size();
  auto push = [&](Tok k, std::size_t start, std::size_t end) {
    out.push_back({k, text.substr(start, end - start), {start, end}});
  };
  while (i < n) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      ++i;
      while (i < n && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
      std::string word = text.substr(start, i - start);
      Tok k = Tok::Ident;
      if (word == "true") k = Tok::True;
      else if (word == "false") k = Tok::False;
      else if (word == "u") k = Tok::KwU;
      else if (word == "n") k = Tok::KwN;
      out.push_back({k, word, {start, i}});
      continue;
    }
    switch (c) {
      case '(': push(Tok::LParen, start, ++i); break;
      case ')': push(Tok::RParen, start, ++i); break;
      case '[': push(Tok::LBrack, start, ++i); break;
      case ']': push(Tok::RBrack, start, ++i); break;
      case '>': push(Tok::Rangle, start, ++i); break;
      case '~': push(Tok::Tilde, start, ++i); break;
      case '&': push(Tok::Amp, start, ++i); break;
      case '|': push(Tok::Pipe, start, ++i); break;
      case '*': push(Tok::Star, start, ++i); break;
      case '\\': push(Tok::Backslash, start, ++i); break;
      case '!': push(Tok::Bang, start, ++i); break;
      case '?': push(Tok::Question, start, ++i); break;
      case '.': push(Tok::Dot, start, ++i); break;
      case ',': push(Tok::Comma, start, ++i); break;
      case '<':
        if (i + 2 < n && text[i + 1] == '-' && text[i + 2] == '>') {
          i += 3;
          push(Tok::DArrow, start, i);
        } else if (i + 1 < n && text[i + 1] == '=') {
          i += 2;
          push(Tok::SharpLe, start, i);
        } else {
          push(Tok::Langle, start, ++i);
        }
        break;
      case '-':
        if (i + 1 < n && text[i + 1] == '>') {
          i += 2;
          push(Tok::Arrow, start, i);
        } else {
          throw ParseError("unexpected character '-' (did you mean '->'?)", {start, start + 1});
        }
        break;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", {start, start + 1});
    }
  }
  out.push_back({Tok::End, "", {n, n}});
  return out;
}

// Shared token-stream cursor for the formula parsers.
class Cursor {
public:
  explicit Cursor(std::vector<Token> toks) : toks_(std::move(toks)) {}

  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ == toks_.size() - 1 ? pos_ : pos_++]; }
  bool at(Tok k) const { return toks_[pos_].kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok k, const char* where) {
    if (!at(k))
      throw ParseError(std::string("expected ") + tok_name(k) + " " + where + ", found " +
                           tok_name(peek().kind),
                       peek().span);
    return toks_[pos_++];
  }
  std::size_t save() const { return pos_; }
  void restore(std::size_t p) { pos_ = p; }

private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

}  // namespace spl::detail
