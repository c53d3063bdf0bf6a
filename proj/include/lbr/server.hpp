#pragma once

#include <memory>
#include <string>
#include <thread>

#include "lbr/session.hpp"

namespace httplib {
class Server;
}

namespace lbr {

// HTTP front end of a SessionService:
//   POST /sessions               body: config            -> 201 view
//   POST /sessions/import        body: export            -> 201 view
//   POST /sessions/{id}/move     body: {"choice":C}      -> 200 view
//   GET  /sessions/{id}                                   -> 200 view
//   GET  /sessions/{id}/trace    [?format=jsonl]          -> 200 export, or one event per line
// Errors use the service's error object with status 400, 404 (E_NOT_FOUND) or 409 (E_FINISHED).
class HttpServer {
 public:
  explicit HttpServer(SessionService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws Error(Io).
  int bind(const std::string& host, int port);
  // Serves until stop().
  void run();
  // run() on a background thread.
  void start();
  void stop();

 private:
  SessionService& service_;
  std::unique_ptr<httplib::Server> server_;
  std::thread thread_;
};

// Status code for a service response.
int http_status(const Json& response, int success);

// $LBR_BIND, or 127.0.0.1.
std::string default_bind_address();

}  // namespace lbr
