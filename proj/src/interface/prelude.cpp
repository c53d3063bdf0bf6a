#include "lbr/prelude.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "lbr/error.hpp"
#include "lbr/library.hpp"
#include "lbr/sexp.hpp"
#include "lbr/syntax.hpp"
#include "lbr/typecheck.hpp"

namespace lbr {
namespace {

[[noreturn]] void fail(ErrorCode code, const Sexp& e, const std::string& msg) {
  throw Error(code, describe(e.pos) + ": " + msg);
}

const std::string& name_of(const Sexp& e) {
  if (!e.is_symbol() || e.symbol.empty() || (e.symbol[0] >= '0' && e.symbol[0] <= '9')) {
    fail(ErrorCode::Parse, e, "expected a name");
  }
  return e.symbol;
}

Numeral numeral_of(const Sexp& e, const Env& env) {
  Term t = term_from_sexp(e, env);
  if (!t.is_numeral()) fail(ErrorCode::Type, e, "expected a numeral");
  return t.value();
}

void expect_size(const Sexp& e, std::size_t n) {
  if (e.items.size() != n) fail(ErrorCode::Parse, e, "malformed '" + e.items[0].symbol + "' form");
}

void register_predicate(Env& env, const Predicate& p) {
  if (!env.defines(p.name())) env.define_predicate(p.name(), p);
}

Term function_of(const Sexp& e, const Env& env) {
  Term f = term_from_sexp(e, env);
  try {
    check_function(f);
  } catch (const Error& err) {
    fail(ErrorCode::Type, e, err.what());
  }
  return f;
}

void define_realizer(const Sexp& form, Env& env) {
  expect_size(form, 3);
  const std::string& name = name_of(form.items[1]);
  const Sexp& spec = form.items[2];
  if (!spec.is_list || spec.items.size() != 2 || !spec.items[0].is_symbol()) {
    fail(ErrorCode::Parse, spec, "expected (em1 pred), (minimum f) or (coquand f)");
  }
  const std::string& builder = spec.items[0].symbol;
  const Sexp& arg = spec.items[1];
  std::string label = arg.is_symbol() ? arg.symbol : "f";
  std::optional<Formula> formula;
  Term term;
  if (builder == "em1") {
    Predicate p = predicate_from_sexp(arg, env);
    if (p.arity() != 2) fail(ErrorCode::Type, arg, "em1 needs a binary predicate");
    formula = em1_formula(p);
    term = em1_realizer(p);
  } else if (builder == "minimum") {
    MinimumPrinciple m = minimum_principle(function_of(arg, env), label);
    register_predicate(env, m.below);
    register_predicate(env, m.atmost);
    formula = m.formula;
    term = m.realizer;
  } else if (builder == "coquand") {
    CoquandExample c = coquand_example(function_of(arg, env), label);
    register_predicate(env, c.minimum.below);
    register_predicate(env, c.minimum.atmost);
    register_predicate(env, c.q);
    formula = c.formula;
    term = c.realizer;
  } else {
    fail(ErrorCode::Parse, spec.items[0], "unknown realizer builder '" + builder + "'");
  }
  std::string desc = "(" + builder + " " + (arg.is_symbol() ? arg.symbol : "...") + ")";
  env.define_realizer(NamedRealizer{name, desc, *formula, term});
}

void load_form(const Sexp& form, Env& env) {
  if (!form.is_list || form.items.empty() || !form.items[0].is_symbol()) {
    fail(ErrorCode::Parse, form, "expected a definition");
  }
  const std::string& head = form.items[0].symbol;
  if (head == "defterm") {
    expect_size(form, 3);
    const std::string& name = name_of(form.items[1]);
    Term t = term_from_sexp(form.items[2], env);
    typecheck(t);
    env.define_term(name, t);
  } else if (head == "defpred") {
    expect_size(form, 4);
    const std::string& name = name_of(form.items[1]);
    Numeral arity = numeral_of(form.items[2], env);
    Term body = term_from_sexp(form.items[3], env);
    env.define_predicate(name, Predicate::make(name, static_cast<unsigned>(arity), body));
  } else if (head == "deftable") {
    expect_size(form, 4);
    const std::string& name = name_of(form.items[1]);
    const Sexp& values = form.items[2];
    if (!values.is_list) fail(ErrorCode::Parse, values, "expected a list of numerals");
    std::vector<Numeral> ns;
    for (const Sexp& v : values.items) ns.push_back(numeral_of(v, env));
    env.define_term(name, table_term(ns, numeral_of(form.items[3], env)));
  } else if (head == "defrealizer") {
    define_realizer(form, env);
  } else {
    fail(ErrorCode::Parse, form.items[0], "unknown definition '" + head + "'");
  }
}

}  // namespace

void load_prelude(std::string_view text, Env& env) {
  for (const Sexp& form : read_sexps(text)) {
    try {
      load_form(form, env);
    } catch (const Error& e) {
      std::string msg = e.what();
      if (!msg.empty() && msg[0] >= '0' && msg[0] <= '9') throw;
      throw Error(e.code(), describe(form.pos) + ": " + msg);
    }
  }
}

Env builtin_env() {
  Env env;
  load_prelude(builtin_prelude_text(), env);
  return env;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Env load_env(const std::string& path) {
  Env env = builtin_env();
  if (!path.empty()) load_prelude(read_file(path), env);
  return env;
}

std::string file_or_literal(const std::string& arg) {
  std::error_code ec;
  if (!arg.empty() && arg.front() != '(' && std::filesystem::is_regular_file(arg, ec)) {
    return read_file(arg);
  }
  return arg;
}

}  // namespace lbr
