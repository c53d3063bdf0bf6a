#include "lbr/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "lbr/error.hpp"

namespace lbr {

namespace {

[[noreturn]] void parse_error(const Sexp& e, const std::string& msg) {
  throw Error(ErrorCode::Parse, describe(e.pos) + ": " + msg);
}

bool is_decimal(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

const std::set<std::string>& reserved_words() {
  static const std::set<std::string> words = {
      "0", "true", "false", "cup", "S", "lam", "app", "pair", "fst", "snd", "if", "rec",
      "state", "X", "Phi", "AddP", "chi", "phi", "add", "not",
      "atom", "and", "or", "imp", "forall", "exists",
      "nat", "bool", "prod", "arrow"};
  return words;
}

bool valid_binder(const std::string& s) {
  return !s.empty() && !is_decimal(s) && !reserved_words().count(s);
}

std::string binder_name(const Sexp& e) {
  if (!e.is_symbol() || !valid_binder(e.symbol)) parse_error(e, "invalid variable name");
  return e.symbol;
}

void expect_arity(const Sexp& e, std::size_t n) {
  if (e.items.size() != n + 1) {
    parse_error(e, "'" + e.items[0].symbol + "' expects " + std::to_string(n) + " argument(s)");
  }
}

Numeral parse_decimal(const Sexp& e) {
  Numeral v = 0;
  const std::string& s = e.symbol;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) parse_error(e, "numeral out of range");
  return v;
}

class TermParser {
 public:
  TermParser(const Env& env, const std::set<std::string>& free_vars) : env_(env), free_(free_vars) {}

  Term parse(const Sexp& e) {
    if (e.is_symbol()) return symbol(e);
    if (e.items.empty()) parse_error(e, "empty list is not a term");
    const Sexp& head = e.items[0];
    if (!head.is_symbol()) parse_error(head, "expected a term constructor");
    const std::string& h = head.symbol;
    if (h == "S") {
      expect_arity(e, 1);
      return Term::succ(parse(e.items[1]));
    }
    if (h == "lam") {
      expect_arity(e, 2);
      const Sexp& binder = e.items[1];
      if (!binder.is_list || binder.items.size() != 2) parse_error(binder, "expected (name type)");
      std::string name = binder_name(binder.items[0]);
      Ty ty = type_from_sexp(binder.items[1]);
      scope_.push_back(name);
      Term body = parse(e.items[2]);
      scope_.pop_back();
      return Term::lam(name, ty, body);
    }
    if (h == "app") {
      if (e.items.size() < 3) parse_error(e, "'app' expects at least 2 arguments");
      Term t = parse(e.items[1]);
      for (std::size_t i = 2; i < e.items.size(); ++i) t = Term::app(t, parse(e.items[i]));
      return t;
    }
    if (h == "pair") {
      expect_arity(e, 2);
      return Term::pair(parse(e.items[1]), parse(e.items[2]));
    }
    if (h == "fst" || h == "snd") {
      expect_arity(e, 1);
      return Term::proj(h == "fst" ? 0 : 1, parse(e.items[1]));
    }
    if (h == "if") {
      expect_arity(e, 3);
      return Term::ite(parse(e.items[1]), parse(e.items[2]), parse(e.items[3]));
    }
    if (h == "rec") {
      expect_arity(e, 4);
      Ty ty = type_from_sexp(e.items[1]);
      return Term::rec(ty, parse(e.items[2]), parse(e.items[3]), parse(e.items[4]));
    }
    if (h == "state") return Term::state(state_from_sexp(e, env_));
    if (h == "X" || h == "Phi" || h == "AddP") {
      expect_arity(e, 1);
      OracleKind k = h == "X" ? OracleKind::X : h == "Phi" ? OracleKind::Phi : OracleKind::Add;
      return Term::oracle(k, predicate_from_sexp(e.items[1], env_));
    }
    if (h == "chi" || h == "phi" || h == "add") {
      expect_arity(e, 1);
      LearnKind k = h == "chi" ? LearnKind::Chi : h == "phi" ? LearnKind::Phi : LearnKind::Add;
      return Term::learn(k, predicate_from_sexp(e.items[1], env_));
    }
    parse_error(head, "unknown term constructor '" + h + "'");
  }

 private:
  Term symbol(const Sexp& e) {
    const std::string& s = e.symbol;
    if (is_decimal(s)) return Term::num(parse_decimal(e));
    if (s == "true") return Term::tt();
    if (s == "false") return Term::ff();
    if (s == "cup") return Term::cup();
    for (std::size_t i = scope_.size(); i-- > 0;) {
      if (scope_[i] == s) return Term::bound(static_cast<std::uint32_t>(scope_.size() - 1 - i));
    }
    if (free_.count(s)) return Term::free(s);
    if (const Term* t = env_.find_term(s)) return *t;
    if (auto p = env_.find_predicate(s)) return p->body();
    throw Error(ErrorCode::UnknownName, describe(e.pos) + ": unknown identifier '" + s + "'");
  }

  const Env& env_;
  const std::set<std::string>& free_;
  std::vector<std::string> scope_;
};

// ---------------------------------------------------------------------------
// Printing

void print_numeral_to(std::ostream& os, Numeral n) {
  for (Numeral i = 0; i < n; ++i) os << "(S ";
  os << '0';
  for (Numeral i = 0; i < n; ++i) os << ')';
}

void collect_free(const Term& t, std::set<std::string>& out) {
  if (!t.has_free()) return;
  if (t.kind() == TermKind::Free) {
    out.insert(t.name());
    return;
  }
  for (std::size_t i = 0; i < 4; ++i) {
    if (!t.child(i).valid()) break;
    collect_free(t.child(i), out);
  }
}

void print_state_to(std::ostream& os, const KnowledgeState& s);

class TermPrinter {
 public:
  TermPrinter(std::ostream& os, bool canonical, std::set<std::string> avoid)
      : os_(os), canonical_(canonical), avoid_(std::move(avoid)) {}

  void print(const Term& t) {
    switch (t.kind()) {
      case TermKind::Bound: {
        std::uint32_t i = t.index();
        if (i >= scope_.size()) {
          os_ << "#" << i;  // loose index; never produced for well-scoped terms
        } else {
          os_ << scope_[scope_.size() - 1 - i];
        }
        return;
      }
      case TermKind::Free: os_ << t.name(); return;
      case TermKind::Num: print_numeral_to(os_, t.value()); return;
      case TermKind::Succ: os_ << "(S "; print(t.operand()); os_ << ')'; return;
      case TermKind::True: os_ << "true"; return;
      case TermKind::False: os_ << "false"; return;
      case TermKind::Cup: os_ << "cup"; return;
      case TermKind::Pair:
        os_ << "(pair "; print(t.child(0)); os_ << ' '; print(t.child(1)); os_ << ')';
        return;
      case TermKind::Proj:
        os_ << (t.proj_index() == 0 ? "(fst " : "(snd "); print(t.operand()); os_ << ')';
        return;
      case TermKind::If:
        os_ << "(if "; print(t.child(0)); os_ << ' '; print(t.child(1)); os_ << ' ';
        print(t.child(2)); os_ << ')';
        return;
      case TermKind::Rec:
        os_ << "(rec " << to_string(t.ty()) << ' '; print(t.child(0)); os_ << ' ';
        print(t.child(1)); os_ << ' '; print(t.child(2)); os_ << ')';
        return;
      case TermKind::Lam: {
        std::string name = fresh(t.name());
        os_ << "(lam (" << name << ' ' << to_string(t.ty()) << ") ";
        scope_.push_back(name);
        print(t.body());
        scope_.pop_back();
        os_ << ')';
        return;
      }
      case TermKind::App:
        os_ << "(app "; print(t.fn()); os_ << ' '; print(t.arg()); os_ << ')';
        return;
      case TermKind::StateConst: print_state_to(os_, t.state()); return;
      case TermKind::Oracle: {
        static const char* names[] = {"X", "Phi", "AddP"};
        os_ << '(' << names[static_cast<int>(t.oracle_kind())] << ' ' << t.pred().name() << ')';
        return;
      }
      case TermKind::Learn: {
        static const char* names[] = {"chi", "phi", "add"};
        os_ << '(' << names[static_cast<int>(t.learn_kind())] << ' ' << t.pred().name() << ')';
        return;
      }
    }
  }

 private:
  std::string fresh(const std::string& hint) {
    if (canonical_) return "v" + std::to_string(scope_.size());
    std::string base = valid_binder(hint) ? hint : "x";
    auto taken = [&](const std::string& n) {
      return avoid_.count(n) || std::find(scope_.begin(), scope_.end(), n) != scope_.end();
    };
    if (!taken(base)) return base;
    for (int i = 1;; ++i) {
      std::string n = base + "_" + std::to_string(i);
      if (!taken(n)) return n;
    }
  }

  std::ostream& os_;
  bool canonical_;
  std::set<std::string> avoid_;
  std::vector<std::string> scope_;
};

void print_state_to(std::ostream& os, const KnowledgeState& s) {
  os << "(state (";
  bool first = true;
  for (const Atom& a : s.atoms()) {
    if (!first) os << ' ';
    first = false;
    os << '(' << a.pred.name() << " (";
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      if (i) os << ' ';
      print_numeral_to(os, a.args[i]);
    }
    os << ") ";
    print_numeral_to(os, a.witness);
    os << ')';
  }
  os << "))";
}

void print_formula_to(std::ostream& os, const Formula& f) {
  switch (f.kind()) {
    case FormulaKind::Atom: {
      os << "(atom " << f.pred().name();
      for (const Term& a : f.args()) {
        os << ' ';
        std::set<std::string> avoid;
        collect_free(a, avoid);
        TermPrinter(os, false, std::move(avoid)).print(a);
      }
      os << ')';
      return;
    }
    case FormulaKind::And:
    case FormulaKind::Or:
    case FormulaKind::Imp: {
      const char* op = f.kind() == FormulaKind::And ? "and" : f.kind() == FormulaKind::Or ? "or" : "imp";
      os << '(' << op << ' ';
      print_formula_to(os, f.left());
      os << ' ';
      print_formula_to(os, f.right());
      os << ')';
      return;
    }
    case FormulaKind::Forall:
    case FormulaKind::Exists:
      os << (f.kind() == FormulaKind::Forall ? "(forall " : "(exists ") << f.var() << ' ';
      print_formula_to(os, f.body());
      os << ')';
      return;
  }
}

}  // namespace

Term term_from_sexp(const Sexp& e, const Env& env, const std::set<std::string>& free_vars) {
  return TermParser(env, free_vars).parse(e);
}

Term parse_term(std::string_view text, const Env& env, const std::set<std::string>& free_vars) {
  return term_from_sexp(read_sexp(text), env, free_vars);
}

Ty type_from_sexp(const Sexp& e) {
  if (e.is_symbol()) {
    if (e.symbol == "nat") return Ty::nat();
    if (e.symbol == "bool") return Ty::boolean();
    if (e.symbol == "state") return Ty::state();
    parse_error(e, "unknown type '" + e.symbol + "'");
  }
  if (e.is_form("prod") || e.is_form("arrow")) {
    expect_arity(e, 2);
    Ty a = type_from_sexp(e.items[1]);
    Ty b = type_from_sexp(e.items[2]);
    return e.is_form("prod") ? Ty::prod(a, b) : Ty::arrow(a, b);
  }
  parse_error(e, "malformed type");
}

Ty parse_type(std::string_view text) { return type_from_sexp(read_sexp(text)); }

Predicate predicate_from_sexp(const Sexp& e, const Env& env) {
  if (e.is_symbol()) {
    if (auto p = env.find_predicate(e.symbol)) return *p;
    throw Error(ErrorCode::UnknownName, describe(e.pos) + ": unknown predicate '" + e.symbol + "'");
  }
  if (e.is_form("not")) {
    expect_arity(e, 1);
    return predicate_from_sexp(e.items[1], env).negated();
  }
  parse_error(e, "expected a predicate name or (not pred)");
}

Formula formula_from_sexp(const Sexp& e, const Env& env, const std::set<std::string>& free_vars) {
  if (!e.is_list || e.items.empty() || !e.items[0].is_symbol()) parse_error(e, "expected a formula");
  const std::string& h = e.items[0].symbol;
  if (h == "atom") {
    if (e.items.size() < 2) parse_error(e, "'atom' expects a predicate");
    Predicate p = predicate_from_sexp(e.items[1], env);
    std::vector<Term> args;
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      args.push_back(term_from_sexp(e.items[i], env, free_vars));
    }
    if (args.size() != p.arity()) {
      throw Error(ErrorCode::Type, describe(e.pos) + ": predicate '" + p.name() + "' has arity " +
                                       std::to_string(p.arity()) + ", got " + std::to_string(args.size()) +
                                       " argument(s)");
    }
    return Formula::atom(p, std::move(args));
  }
  if (h == "and" || h == "or" || h == "imp") {
    expect_arity(e, 2);
    Formula a = formula_from_sexp(e.items[1], env, free_vars);
    Formula b = formula_from_sexp(e.items[2], env, free_vars);
    if (h == "and") return Formula::conj(a, b);
    if (h == "or") return Formula::disj(a, b);
    return Formula::imp(a, b);
  }
  if (h == "forall" || h == "exists") {
    expect_arity(e, 2);
    std::string var = binder_name(e.items[1]);
    std::set<std::string> inner = free_vars;
    inner.insert(var);
    Formula body = formula_from_sexp(e.items[2], env, inner);
    return h == "forall" ? Formula::forall(var, body) : Formula::exists(var, body);
  }
  parse_error(e, "unknown formula constructor '" + h + "'");
}

Formula parse_formula(std::string_view text, const Env& env) {
  Formula f = formula_from_sexp(read_sexp(text), env);
  check_formula(f);
  return f;
}

KnowledgeState state_from_sexp(const Sexp& e, const Env& env) {
  if (!e.is_form("state")) parse_error(e, "expected (state (...))");
  expect_arity(e, 1);
  const Sexp& list = e.items[1];
  if (!list.is_list) parse_error(list, "expected a list of atoms");
  std::vector<Atom> atoms;
  static const std::set<std::string> no_free;
  for (const Sexp& a : list.items) {
    if (!a.is_list || a.items.size() != 3 || !a.items[1].is_list) {
      parse_error(a, "expected (pred (n ...) m)");
    }
    Predicate p = predicate_from_sexp(a.items[0], env);
    std::vector<Numeral> args;
    for (const Sexp& n : a.items[1].items) {
      Term t = term_from_sexp(n, env, no_free);
      if (!t.is_numeral()) parse_error(n, "expected a numeral");
      args.push_back(t.value());
    }
    Term w = term_from_sexp(a.items[2], env, no_free);
    if (!w.is_numeral()) parse_error(a.items[2], "expected a numeral");
    try {
      atoms.push_back(atom_new(p, std::move(args), w.value()));
    } catch (const Error& err) {
      throw Error(err.code(), describe(a.pos) + ": " + err.what());
    }
  }
  return KnowledgeState::from_atoms(std::move(atoms));
}

KnowledgeState parse_state(std::string_view text, const Env& env) {
  return state_from_sexp(read_sexp(text), env);
}

std::string print_numeral(Numeral n) {
  std::ostringstream os;
  print_numeral_to(os, n);
  return os.str();
}

std::string print_term(const Term& t) {
  std::ostringstream os;
  std::set<std::string> avoid;
  collect_free(t, avoid);
  TermPrinter(os, false, std::move(avoid)).print(t);
  return os.str();
}

std::string canonical_print(const Term& t) {
  std::ostringstream os;
  TermPrinter(os, true, {}).print(t);
  return os.str();
}

std::string print_formula(const Formula& f) {
  std::ostringstream os;
  print_formula_to(os, f);
  return os.str();
}

std::string print_state(const KnowledgeState& s) {
  std::ostringstream os;
  print_state_to(os, s);
  return os.str();
}

std::string print_type(const Ty& ty) { return to_string(ty); }

}  // namespace lbr
