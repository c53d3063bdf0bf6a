#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>

#include "lbr/env.hpp"
#include "lbr/error.hpp"
#include "lbr/strategy.hpp"
#include "lbr/trace.hpp"

namespace lbr {

struct SessionConfig {
  std::string formula;   // formula source; may be empty when `realizer` names a prelude realizer
  std::string realizer;  // term source or the name of a prelude realizer
  std::size_t fuel = 10000;
  Numeral display_range = 100;
  std::size_t monitor_bound = 0;

  // Throws Error(Usage) on unknown keys or ill-typed values.
  static SessionConfig from_json(const Json& j);
  Json to_json() const;
};

enum class SessionStatus { AwaitingAbelard, AwaitingAdvance, Finished };

std::string to_string(SessionStatus s);

// Game sessions in which a client plays Abelard against the strategy of a realizer.
//
// Requests and responses are JSON objects carrying "v":1:
//   {"op":"create","config":{...}}        -> view with every event so far
//   {"op":"move","id":ID,"choice":C}      -> view with the new events
//   {"op":"view","id":ID}                 -> view without events
//   {"op":"export","id":ID}               -> {"v":1,"id":ID,"config":{...},"trace":[...]}
//   {"op":"import","export":{...}}        -> view of a fresh session replaying the export
// Failures come back as {"v":1,"error":{"code":"E_...","message":"..."}}.
class SessionService {
 public:
  explicit SessionService(Env env, std::uint64_t seed = std::random_device{}());

  Json handle(const Json& request);

  // The operations behind handle; they throw Error.
  Json create(const SessionConfig& config);
  Json move(const std::string& id, const Choice& choice);
  Json view(const std::string& id);
  Json export_trace(const std::string& id);
  Json import_trace(const Json& exported);

  std::size_t session_count() const;

  static Json error_json(ErrorCode code, const std::string& message);

 private:
  struct Session {
    std::mutex mutex;
    std::string id;
    SessionConfig config;
    std::unique_ptr<Arena> arena;
    SessionStatus status = SessionStatus::AwaitingAbelard;
  };

  std::shared_ptr<Session> find(const std::string& id) const;
  std::shared_ptr<Session> open(const SessionConfig& config) const;
  void advance(Session& s) const;
  Json view_of(const Session& s, std::size_t events_from, bool with_events) const;
  std::string fresh_id();

  const Env env_;
  mutable std::mutex registry_mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::mt19937_64 ids_;
};

}  // namespace lbr
