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

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>

#include <boost/asio/connect.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/websocket.hpp>
#include <gtest/gtest.h>

#include "httplib.h"
#include "json.hpp"
#include "qgame/server/http_server.hpp"
#include "qgame/server/protocol.hpp"

namespace qgame::server {
namespace {

namespace beast = boost::beast;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::ordered_json;

ordered_json request(const std::string& kind, ordered_json payload) {
  return {{"protocol_version", 1}, {"kind", kind}, {"payload", std::move(payload)}};
}

class HttpServerTest : public ::testing::Test {
 protected:
  void SetUp() override {
    static_dir_ = std::filesystem::temp_directory_path() / "qgame_http_static";
    std::filesystem::create_directories(static_dir_ / "assets");
    std::ofstream(static_dir_ / "index.html") << "<!doctype html><title>qgame</title>";
    std::ofstream(static_dir_ / "assets" / "app.js") << "console.log(1);";
    server_ = std::make_unique<HttpServer>(
        service_, HttpServerOptions{"127.0.0.1", 0, static_dir_, 2});
    server_->start();
    client_ = std::make_unique<httplib::Client>("127.0.0.1", server_->port());
  }
  void TearDown() override { server_->stop(); }

  ordered_json post(const ordered_json& body) {
    const auto res = client_->Post("/api/v1/message", body.dump(), "application/json");
    EXPECT_TRUE(res);
    EXPECT_EQ(res->status, 200);
    EXPECT_EQ(res->get_header_value("Content-Type"), "application/json");
    return ordered_json::parse(res->body);
  }

  SessionService service_;
  std::filesystem::path static_dir_;
  std::unique_ptr<HttpServer> server_;
  std::unique_ptr<httplib::Client> client_;
};

// Blocking WebSocket client.
class WsClient {
 public:
  explicit WsClient(unsigned short port) : ws_(ioc_) {
    tcp::resolver resolver(ioc_);
    net::connect(ws_.next_layer(), resolver.resolve("127.0.0.1", std::to_string(port)));
    ws_.handshake("127.0.0.1", "/api/v1/ws");
  }
  ~WsClient() {
    beast::error_code ec;
    ws_.close(websocket::close_code::normal, ec);
  }
  void send(const ordered_json& message) { ws_.write(net::buffer(message.dump())); }
  ordered_json receive() {
    beast::flat_buffer buffer;
    ws_.read(buffer);
    return ordered_json::parse(beast::buffers_to_string(buffer.data()));
  }
  // Next state_push whose view is in `phase`.
  ordered_json receive_phase(const std::string& phase) {
    for (;;) {
      auto m = receive_kind("state_push");
      if (m["payload"]["phase"] == phase) return m;
    }
  }
  // Next message of the given kind, skipping others.
  ordered_json receive_kind(const std::string& kind) {
    for (;;) {
      auto m = receive();
      if (m["kind"] == kind) return m;
    }
  }

 private:
  net::io_context ioc_;
  websocket::stream<tcp::socket> ws_;
};

TEST_F(HttpServerTest, Healthz) {
  const auto res = client_->Get("/healthz");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "ok\n");
}

TEST_F(HttpServerTest, MessageEndpointRunsARound) {
  const auto created = post(request("create", {{"seed", 42}}));
  ASSERT_TRUE(created["ok"].get<bool>());
  const std::string id = created["payload"]["session_id"];
  const std::string alice = created["payload"]["token"];
  const std::string bob =
      post(request("join", {{"session_id", id}}))["payload"]["token"];
  auto configured = post(request("configure", {{"session_id", id}, {"token", alice},
                                               {"alpha", "5"}, {"beta", "3"},
                                               {"gamma", "1"}, {"a_sq", "1"}}));
  EXPECT_EQ(configured["payload"]["phase"], "committing");
  post(request("commit_move", {{"session_id", id}, {"token", alice}, {"move", "identity"}}));
  post(request("commit_move", {{"session_id", id}, {"token", bob}, {"move", "identity"}}));
  const auto d = post(request("draw_card", {{"session_id", id}, {"token", bob}}));
  EXPECT_EQ(d["payload"]["round"]["outcome"], "OO");
  EXPECT_EQ(d["payload"]["state"]["cumulative"],
            (ordered_json{{"alice", "5"}, {"bob", "3"}}));
}

TEST_F(HttpServerTest, MessageEndpointErrors) {
  auto res = client_->Post("/api/v1/message", "{oops", "application/json");
  ASSERT_TRUE(res);
  EXPECT_EQ(ordered_json::parse(res->body)["payload"]["code"], "bad_request");
  res = client_->Get("/api/v1/message");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 405);
  res = client_->Get("/api/v1/ws");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 426);
}

TEST_F(HttpServerTest, StaticFiles) {
  auto res = client_->Get("/");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->body, "<!doctype html><title>qgame</title>");
  EXPECT_EQ(res->get_header_value("Content-Type"), "text/html; charset=utf-8");
  res = client_->Get("/assets/app.js?v=1");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 200);
  EXPECT_EQ(res->get_header_value("Content-Type"), "text/javascript; charset=utf-8");
  res = client_->Get("/missing.css");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
  res = client_->Get("/../etc/passwd");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

TEST_F(HttpServerTest, WebSocketRepliesAndPushes) {
  WsClient alice_ws(server_->port());
  alice_ws.send(request("create", {{"seed", 5}}));
  const auto created = alice_ws.receive_kind("create");
  const std::string id = created["payload"]["session_id"];
  const std::string alice = created["payload"]["token"];
  // Subscribing sends a snapshot.
  EXPECT_EQ(alice_ws.receive_kind("state_push")["payload"]["phase"], "lobby");

  WsClient bob_ws(server_->port());
  auto join = request("join", {{"session_id", id}});
  join["request_id"] = 17;
  bob_ws.send(join);
  const auto joined = bob_ws.receive_kind("join");
  EXPECT_EQ(joined["request_id"], 17);
  const std::string bob = joined["payload"]["token"];
  EXPECT_EQ(alice_ws.receive_kind("state_push")["payload"]["seats"]["bob"]["joined"], true);

  // A commit over plain HTTP still reaches both sockets.
  post(request("configure", {{"session_id", id}, {"token", alice}, {"alpha", 5},
                             {"beta", 3}, {"gamma", 1}, {"a_sq", 0.5}}));
  EXPECT_EQ(alice_ws.receive_phase("committing")["payload"]["opponent_committed"], false);
  EXPECT_EQ(bob_ws.receive_phase("committing")["payload"]["opponent_committed"], false);
  post(request("commit_move", {{"session_id", id}, {"token", bob}, {"move", "flip"}}));
  const auto pushed = alice_ws.receive_kind("state_push")["payload"];
  EXPECT_TRUE(pushed["opponent_committed"].get<bool>());
  EXPECT_EQ(pushed.dump().find("flip"), std::string::npos);

  alice_ws.send(request("commit_move",
                        {{"session_id", id}, {"token", alice}, {"move", "identity"}}));
  EXPECT_TRUE(alice_ws.receive_kind("commit_move")["ok"].get<bool>());
  bool decided = false;
  while (!decided) {
    bob_ws.send(request("draw_card", {{"session_id", id}, {"token", bob}}));
    decided = bob_ws.receive_kind("draw_card")["payload"]["decided"].get<bool>();
  }
  const auto last = alice_ws.receive_phase("revealed");
  EXPECT_EQ(last["payload"]["last_round"]["moves"]["bob"], (ordered_json{{"kind", "flip"}}));
}

TEST_F(HttpServerTest, WebSocketMalformedFrame) {
  WsClient ws(server_->port());
  ws.send("nonsense");
  const auto r = ws.receive();
  EXPECT_EQ(r["kind"], "error");
  EXPECT_EQ(r["payload"]["code"], "bad_request");
}

TEST(HttpServer, StopIsIdempotentAndPortIsReleased) {
  SessionService service;
  HttpServer server(service, {"127.0.0.1", 0, {}, 1});
  server.start();
  const auto port = server.port();
  EXPECT_NE(port, 0);
  server.stop();
  server.stop();
  HttpServer again(service, {"127.0.0.1", port, {}, 1});
  EXPECT_NO_THROW(again.start());
  httplib::Client client("127.0.0.1", port);
  const auto res = client.Get("/");
  ASSERT_TRUE(res);
  EXPECT_EQ(res->status, 404);
}

}  // namespace
}  // namespace qgame::server
