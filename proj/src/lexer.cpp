#include "slv/lexer.hpp"

#include <array>
#include <cctype>
#include <string_view>

namespace slv {

namespace {

// Longest operators first.
constexpr std::array<std::string_view, 34> kPuncts = {
    "==>", "|->", "{|", "|}", "|-", "||", "&&", "->", ":=", "::", "!=", "<=", ">=",
    "(",   ")",   "{",  "}",  "[",  "]",  ",",  ";",  ":",  ".",  "?",  "=",  "<",
    ">",   "+",   "-",  "*",  "/",  "%",  "&",  "!"};

}  // namespace

std::vector<Token> tokenize(const std::string& src, const std::string& file) {
  std::vector<Token> out;
  int line = 1;
  int col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k, ++i) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
  };

  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok;
    tok.pos = Pos{file, line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      tok.kind = Token::Kind::Ident;
      tok.text = src.substr(i, j - i);
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      tok.kind = Token::Kind::Int;
      tok.text = src.substr(i, j - i);
      try {
        tok.value = std::stoll(tok.text);
      } catch (const std::out_of_range&) {
        throw SyntaxError(tok.pos, "integer literal out of range");
      }
      advance(j - i);
      out.push_back(std::move(tok));
      continue;
    }
    if (c == '"') {
      std::size_t j = i + 1;
      while (j < src.size() && src[j] != '"' && src[j] != '\n') ++j;
      if (j >= src.size() || src[j] != '"') throw SyntaxError(tok.pos, "unterminated string literal");
      tok.kind = Token::Kind::String;
      tok.text = src.substr(i + 1, j - i - 1);
      advance(j - i + 1);
      out.push_back(std::move(tok));
      continue;
    }
    bool matched = false;
    for (auto p : kPuncts) {
      if (src.compare(i, p.size(), p) == 0) {
        tok.kind = Token::Kind::Punct;
        tok.text = std::string(p);
        advance(p.size());
        out.push_back(std::move(tok));
        matched = true;
        break;
      }
    }
    if (!matched) throw SyntaxError(tok.pos, std::string("unexpected character '") + c + "'");
  }
  Token end;
  end.kind = Token::Kind::End;
  end.pos = Pos{file, line, col};
  out.push_back(end);
  return out;
}

}  // namespace slv
