#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lbr/games.hpp"
#include "lbr/state.hpp"
#include "lbr/strategy.hpp"

namespace lbr {

using Json = nlohmann::ordered_json;

inline constexpr int kProtocolVersion = 1;

// {"v":1,"ev":"extend","by":"E|A","choice":n|"L"|"R","pos":"<formula>"}
// {"v":1,"ev":"backtrack","to":k,"state":"<state>"}
// {"v":1,"ev":"sigma","state":"<state>"}
// {"v":1,"ev":"omega_clause","clause":1..4[,"j":k]}
// {"v":1,"ev":"result","winner":"E|A|timeout","backtracks":n,"forfeit":b,"state":"<state>"}
Json event_json(const Event& e);
Json trace_json(const std::vector<Event>& events);
// One compact JSON object per line.
std::string trace_lines(const std::vector<Event>& events);

Json choice_json(const Choice& c);
// A non-negative integer, or a string accepted by parse_choice. Throws Error(IllegalChoice).
Choice choice_from_json(const Json& j);

// [{"pred":name,"args":[n...],"witness":m}, ...]
Json atoms_json(const KnowledgeState& s);

// The choices Abelard made in a trace, in order.
std::vector<Choice> abelard_choices(const Json& trace);

}  // namespace lbr
