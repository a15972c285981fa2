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

#include "qgame/server/http_server.hpp"

#include <chrono>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>
#include <utility>
#include <vector>

#include <boost/asio.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

namespace qgame::server {

namespace {

namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
namespace net = boost::asio;
using tcp = net::ip::tcp;
using nlohmann::ordered_json;

using Request = http::request<http::string_body>;
using Response = http::response<http::string_body>;

constexpr std::string_view kMessagePath = "/api/v1/message";
constexpr std::string_view kSocketPath = "/api/v1/ws";

std::string_view mime_type(const std::filesystem::path& path) {
  const std::string ext = path.extension().string();
  if (ext == ".html" || ext == ".htm") return "text/html; charset=utf-8";
  if (ext == ".js" || ext == ".mjs") return "text/javascript; charset=utf-8";
  if (ext == ".css") return "text/css; charset=utf-8";
  if (ext == ".json" || ext == ".map") return "application/json";
  if (ext == ".svg") return "image/svg+xml";
  if (ext == ".png") return "image/png";
  if (ext == ".ico") return "image/x-icon";
  if (ext == ".txt") return "text/plain; charset=utf-8";
  if (ext == ".wasm") return "application/wasm";
  return "application/octet-stream";
}

Response make_response(const Request& req, http::status status, std::string body,
                       std::string_view type) {
  Response res{status, req.version()};
  res.set(http::field::server, "qgame");
  res.set(http::field::content_type, beast::string_view(type.data(), type.size()));
  res.keep_alive(req.keep_alive());
  res.body() = std::move(body);
  res.prepare_payload();
  return res;
}

std::string_view path_of(beast::string_view raw) {
  const std::string_view target(raw.data(), raw.size());
  const auto q = target.find('?');
  return q == std::string_view::npos ? target : target.substr(0, q);
}

}  // namespace

class HttpServer::Impl {
 public:
  class WsConnection;
  class HttpConnection;

  Impl(SessionService& service, HttpServerOptions options)
      : service_(service),
        options_(std::move(options)),
        ioc_(std::in_place, std::max(1, options_.threads)),
        acceptor_(std::in_place, net::make_strand(*ioc_)),
        timer_(std::in_place, acceptor_->get_executor()) {}

  ~Impl() { stop(); }

  void start();
  void stop();
  unsigned short port() const { return port_; }

  SessionService& service() { return service_; }
  Response handle_http(const Request& req);
  void on_ws_message(const std::shared_ptr<WsConnection>& conn, const std::string& text);

 private:
  using Key = std::pair<std::string, Seat>;

  void accept();
  void schedule_tick();
  void subscribe(const std::shared_ptr<WsConnection>& conn, const Key& key);
  void push(const std::string& session_id, Seat seat, const ordered_json& message);
  Response serve_static(const Request& req, std::string_view path);

  SessionService& service_;
  HttpServerOptions options_;
  // Destroying the context drops every pending handler, which closes the
  // connections they own.
  std::optional<net::io_context> ioc_;
  std::optional<tcp::acceptor> acceptor_;
  std::optional<net::steady_timer> timer_;
  std::vector<std::thread> threads_;
  unsigned short port_ = 0;
  bool running_ = false;

  std::mutex subscribers_mutex_;
  std::map<Key, std::vector<std::weak_ptr<WsConnection>>> subscribers_;
};

class HttpServer::Impl::WsConnection
    : public std::enable_shared_from_this<WsConnection> {
 public:
  WsConnection(tcp::socket&& socket, Impl& server)
      : ws_(std::move(socket)), server_(server) {}

  void accept(Request req) {
    ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
    ws_.async_accept(req, beast::bind_front_handler(&WsConnection::on_accept,
                                                    shared_from_this()));
  }

  // Thread-safe; frames go out in the order they were queued.
  void send(std::string text) {
    net::post(ws_.get_executor(),
              [self = shared_from_this(), text = std::move(text)]() mutable {
                self->queue_.push_back(std::move(text));
                if (self->queue_.size() == 1) self->write_next();
              });
  }

 private:
  void on_accept(beast::error_code ec) {
    if (!ec) read();
  }

  void read() {
    ws_.async_read(buffer_, beast::bind_front_handler(&WsConnection::on_read,
                                                      shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec) return;
    const std::string text = beast::buffers_to_string(buffer_.data());
    buffer_.consume(buffer_.size());
    server_.on_ws_message(shared_from_this(), text);
    read();
  }

  void write_next() {
    ws_.text(true);
    ws_.async_write(net::buffer(queue_.front()),
                    beast::bind_front_handler(&WsConnection::on_write,
                                              shared_from_this()));
  }

  void on_write(beast::error_code ec, std::size_t) {
    if (ec) {
      queue_.clear();
      return;
    }
    queue_.pop_front();
    if (!queue_.empty()) write_next();
  }

  websocket::stream<beast::tcp_stream> ws_;
  beast::flat_buffer buffer_;
  std::deque<std::string> queue_;
  Impl& server_;
};

class HttpServer::Impl::HttpConnection
    : public std::enable_shared_from_this<HttpConnection> {
 public:
  HttpConnection(tcp::socket&& socket, Impl& server)
      : stream_(std::move(socket)), server_(server) {}

  void run() {
    net::dispatch(stream_.get_executor(),
                  beast::bind_front_handler(&HttpConnection::read, shared_from_this()));
  }

 private:
  void read() {
    req_ = {};
    stream_.expires_after(std::chrono::seconds(30));
    http::async_read(stream_, buffer_, req_,
                     beast::bind_front_handler(&HttpConnection::on_read,
                                               shared_from_this()));
  }

  void on_read(beast::error_code ec, std::size_t) {
    if (ec == http::error::end_of_stream) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    if (ec) return;
    if (websocket::is_upgrade(req_) && path_of(req_.target()) == kSocketPath) {
      stream_.expires_never();
      std::make_shared<WsConnection>(stream_.release_socket(), server_)
          ->accept(std::move(req_));
      return;
    }
    write(server_.handle_http(req_));
  }

  void write(Response res) {
    auto sp = std::make_shared<Response>(std::move(res));
    http::async_write(stream_, *sp,
                      [self = shared_from_this(), sp](beast::error_code ec, std::size_t) {
                        self->on_write(sp->need_eof(), ec);
                      });
  }

  void on_write(bool close, beast::error_code ec) {
    if (ec) return;
    if (close) {
      stream_.socket().shutdown(tcp::socket::shutdown_send, ec);
      return;
    }
    read();
  }

  beast::tcp_stream stream_;
  beast::flat_buffer buffer_;
  Request req_;
  Impl& server_;
};

void HttpServer::Impl::start() {
  if (running_ || !ioc_) return;
  const tcp::endpoint endpoint(net::ip::make_address(options_.address), options_.port);
  acceptor_->open(endpoint.protocol());
  acceptor_->set_option(net::socket_base::reuse_address(true));
  acceptor_->bind(endpoint);
  acceptor_->listen(net::socket_base::max_listen_connections);
  port_ = acceptor_->local_endpoint().port();
  service_.set_push_sink([this](const std::string& id, Seat seat, const ordered_json& m) {
    push(id, seat, m);
  });
  running_ = true;
  accept();
  schedule_tick();
  for (int i = 0; i < std::max(1, options_.threads); ++i) {
    threads_.emplace_back([this] { ioc_->run(); });
  }
}

void HttpServer::Impl::stop() {
  if (!running_) return;
  running_ = false;
  service_.set_push_sink({});
  ioc_->stop();
  for (auto& t : threads_) t.join();
  threads_.clear();
  timer_.reset();
  acceptor_.reset();
  ioc_.reset();
}

void HttpServer::Impl::accept() {
  acceptor_->async_accept(net::make_strand(*ioc_), [this](beast::error_code ec,
                                                         tcp::socket socket) {
    if (ec == net::error::operation_aborted) return;
    if (!ec) std::make_shared<HttpConnection>(std::move(socket), *this)->run();
    accept();
  });
}

void HttpServer::Impl::schedule_tick() {
  timer_->expires_after(std::chrono::milliseconds(250));
  timer_->async_wait([this](beast::error_code ec) {
    if (ec) return;
    service_.tick();
    schedule_tick();
  });
}

Response HttpServer::Impl::handle_http(const Request& req) {
  const std::string_view path = path_of(req.target());
  if (path == kMessagePath) {
    if (req.method() != http::verb::post) {
      return make_response(req, http::status::method_not_allowed, "POST only\n",
                           "text/plain");
    }
    return make_response(req, http::status::ok, service_.handle_text(req.body()),
                         "application/json");
  }
  if (path == "/healthz") return make_response(req, http::status::ok, "ok\n", "text/plain");
  if (path == kSocketPath) {
    return make_response(req, http::status::upgrade_required,
                         "WebSocket upgrade required\n", "text/plain");
  }
  if (req.method() != http::verb::get && req.method() != http::verb::head) {
    return make_response(req, http::status::method_not_allowed, "GET only\n",
                         "text/plain");
  }
  return serve_static(req, path);
}

Response HttpServer::Impl::serve_static(const Request& req, std::string_view path) {
  auto not_found = [&] {
    return make_response(req, http::status::not_found, "not found\n", "text/plain");
  };
  if (options_.static_dir.empty() || path.empty() || path.front() != '/' ||
      path.find("..") != std::string_view::npos) {
    return not_found();
  }
  std::filesystem::path file = options_.static_dir / std::string(path.substr(1));
  std::error_code ec;
  if (std::filesystem::is_directory(file, ec)) file /= "index.html";
  if (!std::filesystem::is_regular_file(file, ec)) return not_found();
  std::ifstream in(file, std::ios::binary);
  std::ostringstream body;
  body << in.rdbuf();
  Response res = make_response(req, http::status::ok, body.str(), mime_type(file));
  if (req.method() == http::verb::head) res.body().clear();
  return res;
}

void HttpServer::Impl::on_ws_message(const std::shared_ptr<WsConnection>& conn,
                                     const std::string& text) {
  ordered_json request;
  try {
    request = ordered_json::parse(text);
  } catch (const ordered_json::parse_error&) {
    conn->send(service_.handle_text(text));
    return;
  }
  const ordered_json reply = service_.handle(request);
  conn->send(reply.dump());
  if (!reply.value("ok", false)) return;

  const std::string kind = reply["kind"].get<std::string>();
  if (kind == "create" || kind == "join") {
    const auto& p = reply["payload"];
    subscribe(conn, {p["session_id"].get<std::string>(),
                     p["seat"].get<std::string>() == "alice" ? Seat::alice : Seat::bob});
  } else if (auto who = service_.identify(request)) {
    subscribe(conn, *who);
  }
}

void HttpServer::Impl::subscribe(const std::shared_ptr<WsConnection>& conn,
                                 const Key& key) {
  {
    std::lock_guard lock(subscribers_mutex_);
    auto& list = subscribers_[key];
    for (const auto& w : list) {
      if (w.lock() == conn) return;
    }
    list.push_back(conn);
  }
  if (auto snapshot = service_.state_push(key.first, key.second)) {
    conn->send(snapshot->dump());
  }
}

void HttpServer::Impl::push(const std::string& session_id, Seat seat,
                            const ordered_json& message) {
  std::vector<std::shared_ptr<WsConnection>> targets;
  {
    std::lock_guard lock(subscribers_mutex_);
    const auto it = subscribers_.find({session_id, seat});
    if (it == subscribers_.end()) return;
    auto& list = it->second;
    for (auto w = list.begin(); w != list.end();) {
      if (auto sp = w->lock()) {
        targets.push_back(std::move(sp));
        ++w;
      } else {
        w = list.erase(w);
      }
    }
  }
  const std::string text = message.dump();
  for (const auto& t : targets) t->send(text);
}

HttpServer::HttpServer(SessionService& service, HttpServerOptions options)
    : impl_(std::make_unique<Impl>(service, std::move(options))) {}

HttpServer::~HttpServer() = default;

void HttpServer::start() { impl_->start(); }

unsigned short HttpServer::port() const { return impl_->port(); }

void HttpServer::stop() { impl_->stop(); }

}  // namespace qgame::server
