#include "lbr/server.hpp"

#include <cstdlib>

#include <httplib.h>

#include "lbr/error.hpp"

namespace lbr {
namespace {

constexpr const char* kJsonType = "application/json";

void reply(httplib::Response& res, const Json& body, int success) {
  res.status = http_status(body, success);
  res.set_content(body.dump(), kJsonType);
}

Json parse_body(const httplib::Request& req) {
  try {
    return Json::parse(req.body);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("request body is not JSON: ") + e.what());
  }
}

template <class F>
void guarded(httplib::Response& res, int success, F&& f) {
  try {
    reply(res, f(), success);
  } catch (const Error& e) {
    reply(res, SessionService::error_json(e.code(), e.what()), success);
  }
}

}  // namespace

int http_status(const Json& response, int success) {
  if (!response.contains("error")) return success;
  const std::string code = response["error"].value("code", "");
  if (code == error_code_name(ErrorCode::NotFound)) return 404;
  if (code == error_code_name(ErrorCode::Finished)) return 409;
  return 400;
}

std::string default_bind_address() {
  const char* env = std::getenv("LBR_BIND");
  return env && *env ? env : "127.0.0.1";
}

HttpServer::HttpServer(SessionService& service)
    : service_(service), server_(std::make_unique<httplib::Server>()) {
  httplib::Server& s = *server_;
  s.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 201, [&] { return service_.handle(Json{{"op", "create"}, {"config", parse_body(req)}}); });
  });
  s.Post("/sessions/import", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 201, [&] { return service_.handle(Json{{"op", "import"}, {"export", parse_body(req)}}); });
  });
  s.Post(R"(/sessions/([0-9a-f]+)/move)", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 200, [&] {
      Json body = parse_body(req);
      if (!body.is_object() || !body.contains("choice")) {
        throw Error(ErrorCode::Usage, "body must be {\"choice\": ...}");
      }
      return service_.handle(Json{{"op", "move"}, {"id", req.matches[1].str()}, {"choice", body["choice"]}});
    });
  });
  s.Get(R"(/sessions/([0-9a-f]+))", [this](const httplib::Request& req, httplib::Response& res) {
    guarded(res, 200, [&] { return service_.handle(Json{{"op", "view"}, {"id", req.matches[1].str()}}); });
  });
  s.Get(R"(/sessions/([0-9a-f]+)/trace)", [this](const httplib::Request& req, httplib::Response& res) {
    Json exported = service_.handle(Json{{"op", "export"}, {"id", req.matches[1].str()}});
    if (exported.contains("error") || req.get_param_value("format") != "jsonl") {
      reply(res, exported, 200);
      return;
    }
    std::string lines;
    for (const Json& e : exported["trace"]) lines += e.dump() + "\n";
    res.set_content(lines, "application/x-ndjson");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  int bound = port == 0 ? server_->bind_to_any_port(host) : (server_->bind_to_port(host, port) ? port : -1);
  if (bound <= 0) throw Error(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::run() { server_->listen_after_bind(); }

void HttpServer::start() {
  thread_ = std::thread([this] { run(); });
  server_->wait_until_ready();
}

void HttpServer::stop() {
  server_->stop();
  if (thread_.joinable()) thread_.join();
}

}  // namespace lbr
