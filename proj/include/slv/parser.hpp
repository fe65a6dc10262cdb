#pragma once

#include <memory>
#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/lexer.hpp"

namespace slv {

/// Untyped expression syntax. A single grammar covers terms and formulae;
/// the context that consumes an expression decides which one it becomes.
struct Syn;
using SynPtr = std::shared_ptr<const Syn>;

/// Recursive-descent parser shared by the program, spec and outline readers.
class Parser {
 public:
  Parser(const std::string& source, const std::string& file);

  // Expression level.
  TermPtr parse_term();
  FormulaPtr parse_formula();
  Type parse_type();

  // Statement level.
  StmtPtr parse_statement();
  StmtPtr parse_block_or_statement();

  /// Parses one `type`/`var`/`const` declaration if the next token starts one.
  bool parse_declaration(Declarations& decls);

  // Token helpers.
  const Token& peek(std::size_t ahead = 0) const;
  bool at_end() const { return peek().kind == Token::Kind::End; }
  bool is(const std::string& text, std::size_t ahead = 0) const;
  bool accept(const std::string& text);
  const Token& expect(const std::string& text);
  std::string expect_ident();
  std::string expect_string();
  const Token& next();
  [[noreturn]] void fail(const std::string& msg) const;

  SynPtr parse_expr();
  TermPtr to_term(const SynPtr& s) const;
  FormulaPtr to_formula(const SynPtr& s) const;

  /// Parses `place := rhs;` / `place := alloc(T);` once the place is known.
  StmtPtr finish_assignment(const TermPtr& place, const Pos& pos);

 private:
  SynPtr parse_quant();
  SynPtr parse_implies();
  SynPtr parse_ternary();
  SynPtr parse_or();
  SynPtr parse_and();
  SynPtr parse_cmp();
  SynPtr parse_setop();
  SynPtr parse_add();
  SynPtr parse_mul();
  SynPtr parse_unary();
  SynPtr parse_postfix();
  SynPtr parse_primary();
  TermPtr place_addr(const SynPtr& s) const;

  std::vector<Token> toks_;
  std::size_t idx_ = 0;
};

ProgramUnit parse_program(const std::string& source, const std::string& file = "<input>");
SpecUnit parse_spec(const std::string& source, const std::string& file = "<input>");
TermPtr parse_term(const std::string& source, const std::string& file = "<input>");
FormulaPtr parse_formula(const std::string& source, const std::string& file = "<input>");
StmtPtr parse_statements(const std::string& source, const std::string& file = "<input>");

std::string read_file(const std::string& path);

}  // namespace slv
