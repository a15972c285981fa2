// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QGAME_SERVER_HTTP_SERVER_HPP_
#define QGAME_SERVER_HTTP_SERVER_HPP_

#include <filesystem>
#include <memory>
#include <string>

#include "qgame/server/protocol.hpp"

namespace qgame::server {

struct HttpServerOptions {
  std::string address = "0.0.0.0";
  // 0 picks a free port; see HttpServer::port().
  unsigned short port = 8080;
  // Files served for GET requests outside /api; none when empty.
  std::filesystem::path static_dir;
  int threads = 2;
};

// Serves the protocol on one port:
//   POST /api/v1/message   one request per body, reply in the response body
//   GET  /api/v1/ws        WebSocket; each text frame is a request and gets
//                          its reply. A successful request carrying
//                          session_id and token subscribes the connection to
//                          that seat's state_push messages.
//   GET  /healthz          "ok"
//   GET  /<path>           static files, "/" maps to index.html
class HttpServer {
 public:
  HttpServer(SessionService& service, HttpServerOptions options);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  // Binds and starts the worker threads; returns immediately.
  void start();
  unsigned short port() const;
  // Closes the listener and every connection, then joins the workers.
  void stop();

 private:
  class Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace qgame::server

#endif  // QGAME_SERVER_HTTP_SERVER_HPP_
