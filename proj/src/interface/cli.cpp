#include "lbr/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include <CLI11.hpp>

#include "lbr/error.hpp"
#include "lbr/prelude.hpp"
#include "lbr/realizability.hpp"
#include "lbr/server.hpp"
#include "lbr/session.hpp"
#include "lbr/syntax.hpp"
#include "lbr/trace.hpp"
#include "lbr/typecheck.hpp"

namespace lbr {
namespace {

struct Options {
  std::string prelude;
  std::string term;
  std::string formula;
  std::string realizer;
  std::string state;
  std::string strategy = "normal";
  std::string abelard;
  std::vector<std::string> candidates;
  std::uint64_t fuel = 0;
  std::size_t bound = 10;
  std::size_t monitor = 0;
  std::size_t max_iterations = 100000;
  std::size_t game_fuel = 10000;
  int port = 8080;
  bool normalize = false;
  bool strict = false;
};

struct Resolved {
  Formula formula;
  Term realizer;
};

Resolved resolve(const Options& o, const Env& env) {
  const NamedRealizer* named = env.find_realizer(o.realizer);
  Term realizer = named ? named->term : parse_term(file_or_literal(o.realizer), env);
  if (!o.formula.empty()) return {parse_formula(file_or_literal(o.formula), env), realizer};
  if (!named) throw Error(ErrorCode::Usage, "--formula is required unless --realizer names a prelude realizer");
  return {named->formula, realizer};
}

KnowledgeState state_arg(const Options& o, const Env& env) {
  return o.state.empty() ? KnowledgeState{} : parse_state(file_or_literal(o.state), env);
}

EvalOptions eval_options(const Options& o) {
  EvalOptions e;
  if (o.fuel) e.fuel = o.fuel;
  e.strategy = o.strategy == "innermost" ? Strategy::Innermost : Strategy::NormalOrder;
  return e;
}

int run(const std::string& cmd, const Options& o, std::ostream& out) {
  Env env = load_env(o.prelude);
  if (cmd == "normalize") {
    out << print_term(normalize(parse_term(file_or_literal(o.term), env), eval_options(o))) << '\n';
    return 0;
  }
  if (cmd == "typecheck") {
    out << print_type(typecheck(parse_term(file_or_literal(o.term), env))) << '\n';
    return 0;
  }
  if (cmd == "approx") {
    Term t = approximate(parse_term(file_or_literal(o.term), env), state_arg(o, env));
    out << print_term(o.normalize ? normalize(t, eval_options(o)) : t) << '\n';
    return 0;
  }
  if (cmd == "check") {
    Resolved r = resolve(o, env);
    RealizeOptions ro;
    ro.bound = o.bound;
    ro.strict = o.strict;
    ro.eval = eval_options(o);
    for (const std::string& c : o.candidates) ro.candidates.push_back(parse_term(file_or_literal(c), env));
    Verdict v = realizes(r.realizer, state_arg(o, env), r.formula, ro);
    out << to_string(v) << '\n';
    return v.is_fails() ? 1 : 0;
  }
  if (cmd == "fixpoint") {
    FixpointOptions fo;
    fo.max_iterations = o.max_iterations;
    fo.eval = eval_options(o);
    FixpointResult r = fixpoint_learn(parse_term(file_or_literal(o.term), env), state_arg(o, env), fo);
    for (const FixpointStep& s : r.trajectory) {
      Json line{{"v", kProtocolVersion}, {"iter", s.iter}, {"tau", print_state(s.tau)}, {"state", print_state(s.state)}};
      out << line.dump() << '\n';
    }
    return 0;
  }
  if (cmd == "play") {
    Resolved r = resolve(o, env);
    std::unique_ptr<AbelardStrategy> abelard = parse_abelard(o.abelard);
    GameOptions go;
    go.fuel = o.game_fuel;
    go.arena.eval = eval_options(o);
    go.arena.monitor_bound = o.monitor;
    GameResult res = run_game(r.formula, r.realizer, *abelard, go);
    out << trace_lines(res.trace);
    if (res.winner == "timeout") throw Error(ErrorCode::Fuel, res.error);
    return 0;
  }
  if (cmd == "serve") {
    SessionService service(std::move(env));
    HttpServer server(service);
    std::string host = default_bind_address();
    int port = server.bind(host, o.port);
    out << "listening on http://" << host << ":" << port << std::endl;
    server.run();
    return 0;
  }
  throw Error(ErrorCode::Usage, "unknown command '" + cmd + "'");
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Learning-based realizability engine", "lbr"};
  app.require_subcommand(1);
  app.add_option("--prelude", o.prelude, "Extra definitions loaded after the built-in prelude");

  auto strategy = [&](CLI::App* c) {
    c->add_option("--strategy", o.strategy, "Reduction strategy")
        ->check(CLI::IsMember({"normal", "innermost"}));
    c->add_option("--fuel", o.fuel, "Reduction step budget");
  };

  CLI::App* normalize_cmd = app.add_subcommand("normalize", "Print the normal form of a term");
  normalize_cmd->add_option("term", o.term)->required();
  strategy(normalize_cmd);

  CLI::App* typecheck_cmd = app.add_subcommand("typecheck", "Print the type of a term");
  typecheck_cmd->add_option("term", o.term)->required();

  CLI::App* approx_cmd = app.add_subcommand("approx", "Print the approximation of a term at a state");
  approx_cmd->add_option("term", o.term)->required();
  approx_cmd->add_option("--state", o.state)->required();
  approx_cmd->add_flag("--normalize", o.normalize);
  strategy(approx_cmd);

  CLI::App* check_cmd = app.add_subcommand("check", "Check that a term realizes a formula at a state");
  check_cmd->add_option("--realizer", o.realizer)->required();
  check_cmd->add_option("--formula", o.formula);
  check_cmd->add_option("--state", o.state);
  check_cmd->add_option("--bound", o.bound)->check(CLI::PositiveNumber);
  check_cmd->add_flag("--strict", o.strict);
  check_cmd->add_option("--candidate", o.candidates);
  strategy(check_cmd);

  CLI::App* fixpoint_cmd = app.add_subcommand("fixpoint", "Run the learning loop to a fixed point");
  fixpoint_cmd->add_option("--term", o.term)->required();
  fixpoint_cmd->add_option("--state", o.state);
  fixpoint_cmd->add_option("--max-iterations", o.max_iterations);
  strategy(fixpoint_cmd);

  CLI::App* play_cmd = app.add_subcommand("play", "Play a backtracking game and print its trace");
  play_cmd->add_option("--formula", o.formula);
  play_cmd->add_option("--realizer", o.realizer)->required();
  play_cmd->add_option("--abelard", o.abelard, "random:SEED[:RANGE], scripted:C,C,... or refuter[:RANGE]")
      ->required();
  play_cmd->add_option("--moves", o.game_fuel, "Move budget");
  play_cmd->add_option("--monitor", o.monitor, "Check rho against Sigma at every Eloise turn with this bound");
  strategy(play_cmd);

  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve game sessions over HTTP (bind address from LBR_BIND)");
  serve_cmd->add_option("--port", o.port)->check(CLI::Range(0, 65535));

  for (CLI::App* c : app.get_subcommands({})) c->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::string cmd = app.get_subcommands().front()->get_name();
  try {
    return run(cmd, o, out);
  } catch (const Error& e) {
    err << "error[" << error_code_name(e.code()) << "]: " << e.what() << '\n';
    return e.code() == ErrorCode::Usage ? 2 : 1;
  }
}

}  // namespace lbr
