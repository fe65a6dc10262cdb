#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "slv/ast.hpp"

namespace slv {

/// Error carrying a source position; `what()` is `file:line:col: message`.
class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const Pos& pos, const std::string& msg)
      : std::runtime_error(to_string(pos) + ": " + msg), pos_(pos), msg_(msg) {}
  const Pos& pos() const { return pos_; }
  const std::string& message() const { return msg_; }

 private:
  Pos pos_;
  std::string msg_;
};

struct Token {
  enum class Kind { Ident, Int, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t value = 0;
  Pos pos;
};

std::vector<Token> tokenize(const std::string& source, const std::string& file);

}  // namespace slv
