#pragma once

#include <memory>
#include <string>

#include "adrcode/service/review.hpp"

namespace adrcode::service {

// HTTP front end over a ReviewService.
class HttpServer {
 public:
  explicit HttpServer(ReviewService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Port 0 picks a free port. Returns the bound port; throws on failure.
  int bind(const std::string& host, int port);
  // Blocks until stop().
  void serve();
  void stop();
  void wait_until_ready() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace adrcode::service
