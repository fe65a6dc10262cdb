#include "slv/context.hpp"

#include <filesystem>
#include <stdexcept>

#include "slv/expand.hpp"
#include "slv/lexer.hpp"
#include "slv/parser.hpp"

namespace slv {

namespace {

const char* kPrelude = R"(
inline fun not(x: bool): bool = x ? false : true;
inline fun cand(x: bool, y: bool): bool = not(x) ? false : y;
inline fun cor(x: bool, y: bool): bool = x ? true : y;
)";

std::set<std::string> without(std::set<std::string> s, const std::vector<Param>& ps) {
  for (const auto& p : ps) s.erase(p.name);
  return s;
}

}  // namespace

bool is_prelude_function(const std::string& name) { return name == "not" || name == "cand" || name == "cor"; }

std::set<std::string> Context::progvars() const {
  std::set<std::string> out;
  for (const auto& [n, t] : vars) out.insert(n);
  return out;
}

const FuncDef* Context::func(const std::string& name) const {
  auto it = funcs.find(name);
  return it == funcs.end() ? nullptr : &it->second;
}

const Lemma* Context::lemma(const std::string& name) const {
  for (const auto& l : lemmas)
    if (l.name == name) return &l;
  return nullptr;
}

void Context::add_type(const TypeDecl& d) {
  try {
    types.define(d.name, d.type);
  } catch (const std::invalid_argument& e) {
    throw SyntaxError(d.pos, e.what());
  }
}

void Context::add_var(const VarDecl& d) {
  if (consts.count(d.name)) throw SyntaxError(d.pos, "'" + d.name + "' is already declared as a constant");
  auto [it, inserted] = vars.emplace(d.name, d.type);
  if (inserted) {
    var_order.push_back(d.name);
  } else if (!(it->second == d.type)) {
    throw SyntaxError(d.pos, "conflicting declarations of variable '" + d.name + "'");
  }
}

void Context::add_const(const VarDecl& d) {
  if (vars.count(d.name)) throw SyntaxError(d.pos, "'" + d.name + "' is already declared as a variable");
  auto [it, inserted] = consts.emplace(d.name, d.type);
  if (!inserted && !(it->second == d.type))
    throw SyntaxError(d.pos, "conflicting declarations of constant '" + d.name + "'");
}

void Context::add_declarations(const Declarations& d) {
  for (const auto& t : d.types) add_type(t);
  for (const auto& v : d.vars) add_var(v);
  for (const auto& c : d.consts) add_const(c);
}

void Context::add_func(FuncDef f) {
  f.body = expand(f.body, without(progvars(), f.params));
  if (!funcs.count(f.name) && !is_prelude_function(f.name)) func_order.push_back(f.name);
  funcs[f.name] = std::move(f);
}

void Context::add_lemma(Lemma l) {
  if (lemma(l.name)) throw SyntaxError(l.pos, "duplicate lemma '" + l.name + "'");
  auto pv = without(progvars(), l.binders);
  for (auto& h : l.hyps) h = expand_macros_in(expand(h, pv), *this);
  l.concl = expand_macros_in(expand(l.concl, pv), *this);
  lemmas.push_back(std::move(l));
}

void Context::add_assertion(AssertionDef d) {
  std::set<std::string> pv = progvars();
  for (const auto& p : d.params) pv.erase(p);
  d.body = expand_macros_in(expand(d.body, pv), *this);
  if (assertions.count(d.name)) throw SyntaxError(d.pos, "duplicate assertion '" + d.name + "'");
  assertions[d.name] = std::move(d);
}

FormulaPtr expand_macros_in(const FormulaPtr& f, const Context& ctx) {
  if (ctx.assertions.empty()) return f;
  if (f->kind == Formula::Kind::BoolTerm) {
    const Term& t = f->term(0);
    if (t.kind == Term::Kind::Apply || t.kind == Term::Kind::Var) {
      auto it = ctx.assertions.find(t.name);
      if (it != ctx.assertions.end()) {
        const AssertionDef& d = it->second;
        std::size_t nargs = t.kind == Term::Kind::Var ? 0 : t.args.size();
        if (nargs != d.params.size())
          throw SyntaxError(f->pos, "assertion '" + d.name + "' expects " + std::to_string(d.params.size()) +
                                        " argument(s)");
        Subst s;
        for (std::size_t i = 0; i < nargs; ++i) s[d.params[i]] = t.args[i];
        return substitute(d.body, s);
      }
    }
    return f;
  }
  auto n = std::make_shared<Formula>(*f);
  for (auto& g : n->subs) g = expand_macros_in(g, ctx);
  return n;
}

TermPtr Context::prepare(const TermPtr& t) const { return expand(t, progvars()); }

FormulaPtr Context::prepare(const FormulaPtr& f) const { return expand_macros_in(expand(f, progvars()), *this); }

StmtPtr Context::prepare(const StmtPtr& s) const { return expand(s, progvars()); }

std::vector<SpecUnit> load_spec_files(const std::string& path) {
  namespace fs = std::filesystem;
  std::vector<SpecUnit> out;
  std::set<std::string> seen;
  std::vector<std::string> active;
  auto visit = [&](auto&& self, const fs::path& p) -> void {
    std::string key = fs::weakly_canonical(p).string();
    for (const auto& a : active)
      if (a == key) throw std::runtime_error("include cycle through " + p.string());
    if (seen.count(key)) return;
    active.push_back(key);
    SpecUnit u = parse_spec(read_file(p.string()), p.string());
    for (const auto& inc : u.includes) self(self, p.parent_path() / inc);
    active.pop_back();
    seen.insert(key);
    out.push_back(std::move(u));
  };
  visit(visit, fs::path(path));
  return out;
}

Context build_context(const std::vector<SpecUnit>& specs, const ProgramUnit* program) {
  Context ctx;
  SpecUnit prelude = parse_spec(kPrelude, "<prelude>");
  for (const auto& f : prelude.funcs) ctx.add_func(f);
  // Declarations first so that every body sees the full set of program variables.
  for (const auto& u : specs) ctx.add_declarations(u.decls);
  if (program) ctx.add_declarations(program->decls);
  for (const auto& u : specs) {
    for (const auto& f : u.funcs) {
      if (ctx.func(f.name)) throw SyntaxError(f.pos, "duplicate function '" + f.name + "'");
      ctx.add_func(f);
    }
  }
  for (const auto& u : specs)
    for (const auto& d : u.assertions) ctx.add_assertion(d);
  for (const auto& u : specs)
    for (const auto& l : u.lemmas) ctx.add_lemma(l);
  if (program) ctx.program = ctx.prepare(program->body);
  return ctx;
}

Context load_context(const std::string& spec_path, const std::string& program_path) {
  std::vector<SpecUnit> specs;
  if (!spec_path.empty()) specs = load_spec_files(spec_path);
  if (program_path.empty()) return build_context(specs, nullptr);
  ProgramUnit prog = parse_program(read_file(program_path), program_path);
  return build_context(specs, &prog);
}

}  // namespace slv
