#pragma once

#include <string>
#include <vector>

#include "slv/ast.hpp"
#include "slv/context.hpp"

namespace slv {

struct OutlineItem;

/// An assertion followed by annotated steps, each step ending in the
/// assertion that holds after it.
struct OutlineSeq {
  FormulaPtr pre;
  Pos pre_pos;
  std::vector<OutlineItem> items;
};

struct OutlineItem {
  enum class Kind { Assign, Alloc, Skip, If, While, Conseq };
  Kind kind = Kind::Skip;
  Pos pos;

  StmtPtr stmt;                  // Assign / Alloc / Skip
  std::string tvar;              // Assign: template variable
  Type ttype;
  FormulaPtr templ;              // Assign: template formula
  TermPtr cond;                  // If / While
  FormulaPtr invariant;          // While
  std::vector<OutlineSeq> blocks;  // If: then, else; While: body
  std::vector<std::string> cites;  // Conseq

  FormulaPtr post;
  Pos post_pos;
};

struct Outline {
  std::string file;
  std::string spec_path;     // as written, relative to the outline
  std::string program_path;
  OutlineSeq body;
};

/// Parses `.slo` syntax. Formulas and statements are left unexpanded.
Outline parse_outline(const std::string& source, const std::string& file = "<input>");

/// Rebuilds the bare program from the outline, dropping annotations.
StmtPtr outline_program(const OutlineSeq& seq);

/// A parsed outline together with its linked context (MSFs installed).
/// All formulas and statements are expanded against that context.
struct LoadedOutline {
  Outline outline;
  Context ctx;
};

/// Reads the outline, its spec and program (paths relative to the outline
/// file), expands everything and checks that the annotated statements are
/// exactly the program's. Throws SyntaxError / std::runtime_error.
LoadedOutline load_outline(const std::string& path);

/// Same, for an outline given as text with already-resolved context.
void prepare_outline(Outline& o, const Context& ctx);

}  // namespace slv
