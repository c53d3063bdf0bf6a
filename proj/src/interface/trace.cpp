#include "lbr/trace.hpp"

#include <sstream>

#include "lbr/error.hpp"
#include "lbr/syntax.hpp"

namespace lbr {

Json choice_json(const Choice& c) {
  if (c.kind == Choice::Kind::Numeral) return c.n;
  return to_string(c);
}

Choice choice_from_json(const Json& j) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned() || j.get<std::int64_t>() >= 0) return Choice::numeral(j.get<Numeral>());
    throw Error(ErrorCode::IllegalChoice, "numeral choices must be non-negative");
  }
  if (j.is_string()) return parse_choice(j.get<std::string>());
  throw Error(ErrorCode::IllegalChoice, "a choice is a non-negative integer, \"L\" or \"R\"");
}

Json event_json(const Event& e) {
  Json j;
  j["v"] = kProtocolVersion;
  switch (e.kind) {
    case Event::Kind::Extend:
      j["ev"] = "extend";
      j["by"] = std::string(1, e.by);
      j["choice"] = choice_json(e.choice);
      j["pos"] = e.pos;
      break;
    case Event::Kind::Backtrack:
      j["ev"] = "backtrack";
      j["to"] = e.to;
      j["state"] = print_state(e.state);
      break;
    case Event::Kind::Sigma:
      j["ev"] = "sigma";
      j["state"] = print_state(e.state);
      break;
    case Event::Kind::OmegaClause:
      j["ev"] = "omega_clause";
      j["clause"] = e.clause;
      if (e.j) j["j"] = *e.j;
      break;
    case Event::Kind::Result:
      j["ev"] = "result";
      j["winner"] = e.winner;
      j["backtracks"] = e.backtracks;
      j["forfeit"] = e.forfeit;
      j["state"] = print_state(e.state);
      break;
  }
  return j;
}

Json trace_json(const std::vector<Event>& events) {
  Json arr = Json::array();
  for (const Event& e : events) arr.push_back(event_json(e));
  return arr;
}

std::string trace_lines(const std::vector<Event>& events) {
  std::ostringstream os;
  for (const Event& e : events) os << event_json(e).dump() << '\n';
  return os.str();
}

Json atoms_json(const KnowledgeState& s) {
  Json arr = Json::array();
  for (const Atom& a : s.atoms()) {
    arr.push_back(Json{{"pred", a.pred.name()}, {"args", a.args}, {"witness", a.witness}});
  }
  return arr;
}

std::vector<Choice> abelard_choices(const Json& trace) {
  if (!trace.is_array()) throw Error(ErrorCode::Parse, "a trace is a JSON array of events");
  std::vector<Choice> out;
  for (const Json& e : trace) {
    if (!e.is_object()) throw Error(ErrorCode::Parse, "a trace event is a JSON object");
    if (e.value("ev", "") == "extend" && e.value("by", "") == "A") {
      if (!e.contains("choice")) throw Error(ErrorCode::Parse, "extend event without a choice");
      out.push_back(choice_from_json(e["choice"]));
    }
  }
  return out;
}

}  // namespace lbr
