#include "lbr/session.hpp"

#include <cstdio>

#include "lbr/error.hpp"
#include "lbr/syntax.hpp"

namespace lbr {
namespace {

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::Usage, msg); }

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) usage(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const Json& v = member(j, key);
  if (!v.is_string()) usage(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::uint64_t count_field(const Json& j, const char* key) {
  const Json& v = j.at(key);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) usage(std::string("field '") + key + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

void check_version(const Json& j) {
  if (j.contains("v") && j["v"] != kProtocolVersion) {
    usage("unsupported protocol version " + j["v"].dump());
  }
}

}  // namespace

SessionConfig SessionConfig::from_json(const Json& j) {
  if (!j.is_object()) usage("config must be a JSON object");
  check_version(j);
  SessionConfig c;
  for (const auto& [key, value] : j.items()) {
    if (key == "v") continue;
    if (key == "formula") {
      c.formula = string_field(j, "formula");
    } else if (key == "realizer") {
      c.realizer = string_field(j, "realizer");
    } else if (key == "fuel") {
      c.fuel = count_field(j, "fuel");
    } else if (key == "display_range") {
      c.display_range = count_field(j, "display_range");
    } else if (key == "monitor_bound") {
      c.monitor_bound = count_field(j, "monitor_bound");
    } else {
      usage("unknown config field '" + key + "'");
    }
  }
  if (c.realizer.empty()) usage("config.realizer is required");
  return c;
}

Json SessionConfig::to_json() const {
  return Json{{"v", kProtocolVersion},
              {"formula", formula},
              {"realizer", realizer},
              {"fuel", fuel},
              {"display_range", display_range},
              {"monitor_bound", monitor_bound}};
}

std::string to_string(SessionStatus s) {
  switch (s) {
    case SessionStatus::AwaitingAbelard: return "AwaitingAbelard";
    case SessionStatus::AwaitingAdvance: return "AwaitingAdvance";
    case SessionStatus::Finished: return "Finished";
  }
  return "?";
}

SessionService::SessionService(Env env, std::uint64_t seed) : env_(std::move(env)), ids_(seed) {}

Json SessionService::error_json(ErrorCode code, const std::string& message) {
  return Json{{"v", kProtocolVersion},
              {"error", Json{{"code", std::string(error_code_name(code))}, {"message", message}}}};
}

Json SessionService::handle(const Json& request) {
  try {
    if (!request.is_object()) usage("request must be a JSON object");
    check_version(request);
    std::string op = string_field(request, "op");
    if (op == "create") return create(SessionConfig::from_json(member(request, "config")));
    if (op == "move") return move(string_field(request, "id"), choice_from_json(member(request, "choice")));
    if (op == "view") return view(string_field(request, "id"));
    if (op == "export") return export_trace(string_field(request, "id"));
    if (op == "import") return import_trace(member(request, "export"));
    usage("unknown op '" + op + "'");
  } catch (const Error& e) {
    return error_json(e.code(), e.what());
  } catch (const nlohmann::json::exception& e) {
    return error_json(ErrorCode::Usage, e.what());
  }
}

std::shared_ptr<SessionService::Session> SessionService::open(const SessionConfig& config) const {
  const NamedRealizer* named = env_.find_realizer(config.realizer);
  Term realizer = named ? named->term : parse_term(config.realizer, env_);
  std::optional<Formula> formula;
  if (!config.formula.empty()) {
    formula = parse_formula(config.formula, env_);
  } else if (named) {
    formula = named->formula;
  } else {
    usage("config.formula is required unless config.realizer names a prelude realizer");
  }
  ArenaOptions opts;
  opts.monitor_bound = config.monitor_bound;
  auto s = std::make_shared<Session>();
  s->config = config;
  s->arena = std::make_unique<Arena>(*formula, realizer, opts);
  advance(*s);
  return s;
}

void SessionService::advance(Session& s) const {
  Arena& a = *s.arena;
  s.status = SessionStatus::AwaitingAdvance;
  while (a.status() != ArenaStatus::Finished) {
    if (a.moves() >= s.config.fuel) {
      a.time_out();
      break;
    }
    if (a.status() == ArenaStatus::AbelardToMove) break;
    try {
      a.eloise_step();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Fuel) throw;
      a.time_out();
    }
  }
  s.status = a.status() == ArenaStatus::Finished ? SessionStatus::Finished : SessionStatus::AwaitingAbelard;
}

std::string SessionService::fresh_id() {
  for (;;) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(ids_()));
    if (!sessions_.count(buf)) return buf;
  }
}

std::shared_ptr<SessionService::Session> SessionService::find(const std::string& id) const {
  std::lock_guard<std::mutex> lock(registry_mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error(ErrorCode::NotFound, "no session '" + id + "'");
  return it->second;
}

std::size_t SessionService::session_count() const {
  std::lock_guard<std::mutex> lock(registry_mutex_);
  return sessions_.size();
}

Json SessionService::view_of(const Session& s, std::size_t events_from, bool with_events) const {
  const Arena& a = *s.arena;
  Json play = Json::array();
  for (const Formula& f : a.play().positions()) play.push_back(print_formula(f));
  Json choices = Json::array();
  for (const Choice& c : a.play().choices()) choices.push_back(choice_json(c));

  Json turn = nullptr;
  if (s.status == SessionStatus::AwaitingAbelard) {
    const Formula& pos = a.play().last();
    turn = Json{{"pos", print_formula(pos)}};
    if (pos.kind() == FormulaKind::Forall) {
      turn["kind"] = "numeral";
      turn["var"] = pos.var();
      Json options = Json::array();
      for (Numeral n = 0; n < s.config.display_range; ++n) options.push_back(n);
      turn["options"] = std::move(options);
    } else {
      turn["kind"] = "branch";
      turn["options"] = Json::array({"L", "R"});
    }
  }

  Json v{{"v", kProtocolVersion},
         {"id", s.id},
         {"status", to_string(s.status)},
         {"winner", a.winner().empty() ? Json(nullptr) : Json(a.winner())},
         {"formula", print_formula(a.root())},
         {"play", std::move(play)},
         {"choices", std::move(choices)},
         {"turn", std::move(turn)},
         {"state", print_state(a.state())},
         {"atoms", atoms_json(a.state())},
         {"backtracks", a.backtracks()},
         {"moves", a.moves()}};
  if (with_events) {
    Json events = Json::array();
    for (std::size_t i = events_from; i < a.events().size(); ++i) events.push_back(event_json(a.events()[i]));
    v["events"] = std::move(events);
  }
  return v;
}

Json SessionService::create(const SessionConfig& config) {
  std::shared_ptr<Session> s = open(config);
  std::lock_guard<std::mutex> lock(registry_mutex_);
  s->id = fresh_id();
  sessions_[s->id] = s;
  return view_of(*s, 0, true);
}

Json SessionService::move(const std::string& id, const Choice& choice) {
  std::shared_ptr<Session> s = find(id);
  std::lock_guard<std::mutex> lock(s->mutex);
  if (s->status == SessionStatus::Finished) throw Error(ErrorCode::Finished, "the game is over");
  std::size_t mark = s->arena->events().size();
  s->arena->abelard_move(choice);
  advance(*s);
  return view_of(*s, mark, true);
}

Json SessionService::view(const std::string& id) {
  std::shared_ptr<Session> s = find(id);
  std::lock_guard<std::mutex> lock(s->mutex);
  return view_of(*s, 0, false);
}

Json SessionService::export_trace(const std::string& id) {
  std::shared_ptr<Session> s = find(id);
  std::lock_guard<std::mutex> lock(s->mutex);
  return Json{{"v", kProtocolVersion},
              {"id", s->id},
              {"config", s->config.to_json()},
              {"trace", trace_json(s->arena->events())}};
}

Json SessionService::import_trace(const Json& exported) {
  if (!exported.is_object()) usage("export must be a JSON object");
  check_version(exported);
  SessionConfig config = SessionConfig::from_json(member(exported, "config"));
  const Json& trace = member(exported, "trace");
  std::vector<Choice> choices = abelard_choices(trace);
  std::shared_ptr<Session> s = open(config);
  for (const Choice& c : choices) {
    if (s->status == SessionStatus::Finished) break;
    s->arena->abelard_move(c);
    advance(*s);
  }
  if (trace_json(s->arena->events()) != trace) {
    throw Error(ErrorCode::Parse, "the trace does not replay under its configuration");
  }
  std::lock_guard<std::mutex> lock(registry_mutex_);
  s->id = fresh_id();
  sessions_[s->id] = s;
  return view_of(*s, 0, true);
}

}  // namespace lbr
