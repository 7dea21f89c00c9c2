#include "adrcode/service/http.hpp"

#include <stdexcept>

#include "httplib.h"

namespace adrcode::service {

namespace {

constexpr std::size_t kMaxBodyBytes = 1 << 20;

void send(httplib::Response& res, const Reply& reply) {
  res.status = reply.status;
  res.set_content(reply.body.dump(), "application/json; charset=utf-8");
}

std::optional<std::string> param(const httplib::Request& req, const char* name) {
  if (!req.has_param(name)) return std::nullopt;
  return req.get_param_value(name);
}

}  // namespace

struct HttpServer::Impl {
  ReviewService& service;
  httplib::Server server;
  explicit Impl(ReviewService& s) : service(s) {}
};

HttpServer::HttpServer(ReviewService& service) : impl_(std::make_unique<Impl>(service)) {
  auto& svr = impl_->server;
  auto& svc = impl_->service;
  svr.set_payload_max_length(kMaxBodyBytes);

  svr.Get("/health", [&svc](const httplib::Request&, httplib::Response& res) { send(res, svc.health()); });
  svr.Post("/encode", [&svc](const httplib::Request& req, httplib::Response& res) { send(res, svc.encode(req.body)); });
  svr.Post("/sessions", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.create_session(req.body));
  });
  svr.Post(R"(/sessions/([^/]+)/decisions)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.add_decision(req.matches[1], req.body));
  });
  svr.Post(R"(/sessions/([^/]+)/validate)", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.validate(req.matches[1]));
  });
  svr.Get(R"(/sessions/([^/]+))", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.get_session(req.matches[1]));
  });
  svr.Get("/terms", [&svc](const httplib::Request& req, httplib::Response& res) {
    send(res, svc.search_terms(param(req, "q"), param(req, "limit")));
  });

  svr.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    const char* message = res.status == 404   ? "no such endpoint"
                          : res.status == 413 ? "request body too large"
                                              : "request failed";
    res.set_content(Json{{"error", message}}.dump(), "application/json; charset=utf-8");
  });
  svr.set_exception_handler([](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
    std::string message = "internal error";
    try {
      std::rethrow_exception(ep);
    } catch (const std::exception& e) {
      message = e.what();
    } catch (...) {
    }
    res.status = 500;
    res.set_content(Json{{"error", message}}.dump(), "application/json; charset=utf-8");
  });
}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  auto& svr = impl_->server;
  if (port == 0) {
    const int bound = svr.bind_to_any_port(host);
    if (bound < 0) throw std::runtime_error("cannot bind " + host);
    return bound;
  }
  if (!svr.bind_to_port(host, port)) throw std::runtime_error("cannot bind " + host + ":" + std::to_string(port));
  return port;
}

void HttpServer::serve() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void HttpServer::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace adrcode::service
