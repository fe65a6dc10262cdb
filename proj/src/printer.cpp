#include "slv/printer.hpp"

#include <map>
#include <sstream>

namespace slv {

namespace {

// Binding strength, matching the parser's levels.
enum Prec {
  kQuant = 0,
  kImplies = 1,
  kTernary = 2,
  kOr = 3,
  kAnd = 4,
  kCmp = 5,
  kSetOp = 6,
  kAdd = 7,
  kMul = 8,
  kUnary = 9,
  kPostfix = 10,
  kPrimary = 11,
};

struct BinOp {
  const char* text;
  int prec;
};

const std::map<std::string, BinOp>& binops() {
  static const std::map<std::string, BinOp> ops = {
      {"or", {"||", kOr}},        {"cor", {"cor", kOr}},       {"and", {"&&", kAnd}},
      {"cand", {"cand", kAnd}},   {"=", {"=", kCmp}},          {"!=", {"!=", kCmp}},
      {"<", {"<", kCmp}},         {"<=", {"<=", kCmp}},        {">", {">", kCmp}},
      {">=", {">=", kCmp}},       {"in", {"in", kCmp}},        {"notin", {"notin", kCmp}},
      {"subset", {"subset", kCmp}}, {"union", {"union", kSetOp}}, {"inter", {"inter", kSetOp}},
      {"diff", {"diff", kSetOp}}, {"dagger", {"dagger", kSetOp}}, {"conc", {"conc", kSetOp}},
      {"+", {"+", kAdd}},         {"-", {"-", kAdd}},          {"*", {"*", kMul}},
      {"/", {"/", kMul}},         {"%", {"%", kMul}},
  };
  return ops;
}

class Printer {
 public:
  explicit Printer(PrintMode mode) : sugar_(mode == PrintMode::Sugared) {}

  std::string term(const Term& t, int ctx) {
    int p = prec(t);
    std::string s = term_raw(t);
    return p < ctx ? "(" + s + ")" : s;
  }

  std::string formula(const Formula& f, int ctx) {
    int p = kPrimary;
    std::string s = formula_raw(f, p);
    return p < ctx ? "(" + s + ")" : s;
  }

  void stmt(const Statement& s, int indent, std::ostringstream& os) {
    std::string pad(indent, ' ');
    switch (s.kind) {
      case Statement::Kind::Skip: os << pad << "skip;\n"; break;
      case Statement::Kind::Assign:
        os << pad << term(*s.target, kUnary) << " := " << term(*s.rhs, kQuant) << ";\n";
        break;
      case Statement::Kind::Alloc:
        os << pad << term(*s.target, kUnary) << " := alloc(" << to_string(s.alloc_type) << ");\n";
        break;
      case Statement::Kind::Seq:
        for (const auto& b : s.body) stmt(*b, indent, os);
        break;
      case Statement::Kind::If:
        os << pad << "if (" << term(*s.cond, kQuant) << ") {\n";
        stmt(*s.body[0], indent + 2, os);
        os << pad << "} else {\n";
        stmt(*s.body[1], indent + 2, os);
        os << pad << "}\n";
        break;
      case Statement::Kind::While:
        os << pad << "while (" << term(*s.cond, kQuant) << ") {\n";
        stmt(*s.body[0], indent + 2, os);
        os << pad << "}\n";
        break;
    }
  }

 private:
  bool sugar_;

  // Address `a` written as a place X such that `&X...` parses back to `a`.
  std::string place(const Term& a) {
    switch (a.kind) {
      case Term::Kind::AddrOfVar: return a.name;
      case Term::Kind::FieldAddr:
        if (sugar_ && is_address(a.arg(0))) return place(a.arg(0)) + "." + a.name;
        return base_of_arrow(a.arg(0)) + "->" + a.name;
      case Term::Kind::IndexAddr: return place(a.arg(0)) + "[" + term(a.arg(1), kQuant) + "]";
      default: return "(*" + term(a, kUnary) + ")";
    }
  }

  // Operand of `->`; in sugared mode `*&v` prints as `v`.
  std::string base_of_arrow(const Term& e) { return term(e, kPostfix); }

  static bool is_address(const Term& t) {
    return t.kind == Term::Kind::AddrOfVar || t.kind == Term::Kind::FieldAddr || t.kind == Term::Kind::IndexAddr;
  }

  bool sugarable(const Term& t) const { return sugar_ && t.kind == Term::Kind::Deref && is_address(t.arg(0)); }

  int prec(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::IntLit: return t.value < 0 ? kUnary : kPrimary;
      case Term::Kind::Deref: return sugarable(t) ? (t.arg(0).kind == Term::Kind::AddrOfVar ? kPrimary : kPostfix) : kUnary;
      case Term::Kind::AddrOfVar:
      case Term::Kind::FieldAddr:
      case Term::Kind::IndexAddr: return kUnary;
      case Term::Kind::Arrow:
      case Term::Kind::Dot:
      case Term::Kind::Index: return kPostfix;
      case Term::Kind::Cond: return kTernary;
      case Term::Kind::Apply: {
        if (t.args.size() == 2) {
          auto it = binops().find(t.name);
          if (it != binops().end()) return it->second.prec;
        }
        if (t.args.size() == 1 && (t.name == "neg" || t.name == "not")) return kUnary;
        return kPrimary;
      }
      default: return kPrimary;
    }
  }

  std::string list(const std::vector<TermPtr>& args) {
    std::string s;
    for (std::size_t i = 0; i < args.size(); ++i) s += (i ? ", " : "") + term(*args[i], kQuant);
    return s;
  }

  std::string term_raw(const Term& t) {
    switch (t.kind) {
      case Term::Kind::IntLit: return std::to_string(t.value);
      case Term::Kind::BoolLit: return t.value ? "true" : "false";
      case Term::Kind::Nil: return "nil";
      case Term::Kind::EmptyColl: return "{}";
      case Term::Kind::EmptySeq: return "[]";
      case Term::Kind::Var: return t.name;
      case Term::Kind::AddrOfVar: return "&" + t.name;
      case Term::Kind::FieldAddr: return "&" + base_of_arrow(t.arg(0)) + "->" + t.name;
      case Term::Kind::IndexAddr: return "&" + place(t.arg(0)) + "[" + term(t.arg(1), kQuant) + "]";
      case Term::Kind::Deref:
        if (sugarable(t)) return place(t.arg(0));
        return "*" + term(t.arg(0), kUnary);
      case Term::Kind::Arrow: return term(t.arg(0), kPostfix) + "->" + t.name;
      case Term::Kind::Dot: return term(t.arg(0), kPostfix) + "." + t.name;
      case Term::Kind::Index: return term(t.arg(0), kPostfix) + "[" + term(t.arg(1), kQuant) + "]";
      case Term::Kind::Cond:
        return term(t.arg(0), kOr) + " ? " + term(t.arg(1), kTernary) + " : " + term(t.arg(2), kTernary);
      case Term::Kind::SetLit: return "{" + list(t.args) + "}";
      case Term::Kind::SeqLit: return "[" + list(t.args) + "]";
      case Term::Kind::MapLit: {
        std::string s = "{";
        for (std::size_t i = 0; i + 1 < t.args.size(); i += 2)
          s += (i ? ", " : "") + term(*t.args[i], kQuant) + " |-> " + term(*t.args[i + 1], kQuant);
        return s + "}";
      }
      case Term::Kind::Apply: {
        if (t.args.size() == 2) {
          auto it = binops().find(t.name);
          if (it != binops().end()) {
            int p = it->second.prec;
            // Comparisons do not chain; the others associate to the left.
            int lhs = p == kCmp ? p + 1 : p;
            return term(t.arg(0), lhs) + " " + it->second.text + " " + term(t.arg(1), p + 1);
          }
        }
        if (t.args.size() == 1 && t.name == "neg") return "-" + term(t.arg(0), kUnary);
        if (t.args.size() == 1 && t.name == "not") return "!" + term(t.arg(0), kUnary);
        return t.name + "(" + list(t.args) + ")";
      }
    }
    return "?";
  }

  std::string formula_raw(const Formula& f, int& p) {
    FormulaPtr a, b;
    switch (f.kind) {
      case Formula::Kind::BoolTerm: {
        const Term& t = f.term(0);
        // At formula level these would parse back as connectives.
        if (t.kind == Term::Kind::Apply && (t.name == "and" || t.name == "or" || t.name == "not")) {
          p = kPrimary;
          return t.name + "(" + list(t.args) + ")";
        }
        p = prec(t);
        return term_raw(t);
      }
      case Formula::Kind::Undef: return "undef";
      case Formula::Kind::Eq:
        p = kCmp;
        return term(f.term(0), kSetOp) + " = " + term(f.term(1), kSetOp);
      case Formula::Kind::HasType:
        p = kCmp;
        return term(f.term(0), kSetOp) + " :: " + to_string(f.type);
      case Formula::Kind::Delta: return "Delta(" + formula(f.sub(0), kQuant) + ")";
      case Formula::Kind::Forall:
        p = kQuant;
        return "forall " + f.binder + ": " + to_string(f.type) + " . " + formula(f.sub(0), kQuant);
      case Formula::Kind::And:
        p = kAnd;
        return formula(f.sub(0), kAnd) + " && " + formula(f.sub(1), kCmp);
      case Formula::Kind::Not:
        if (match_or(f, a, b)) {
          p = kOr;
          return formula(*a, kOr) + " || " + formula(*b, kAnd);
        }
        if (match_implies(f, a, b)) {
          p = kImplies;
          return formula(*a, kTernary) + " ==> " + formula(*b, kQuant);
        }
        if (f.sub(0).kind == Formula::Kind::Eq) {
          p = kCmp;
          return term(f.sub(0).term(0), kSetOp) + " != " + term(f.sub(0).term(1), kSetOp);
        }
        p = kUnary;
        return "!" + formula(f.sub(0), kUnary);
    }
    return "?";
  }
};

}  // namespace

std::string print(const Term& t, PrintMode mode) { return Printer(mode).term(t, kQuant); }

std::string print(const Formula& f, PrintMode mode) { return Printer(mode).formula(f, kQuant); }

std::string print(const Statement& s, PrintMode mode, int indent) {
  std::ostringstream os;
  Printer(mode).stmt(s, indent, os);
  return os.str();
}

}  // namespace slv
