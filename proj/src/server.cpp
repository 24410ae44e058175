#include "evac/server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <system_error>
#include <variant>

#include "evac/wire.hpp"

namespace evac {

namespace {

[[noreturn]] void throw_errno(const char* what) {
  throw std::system_error(errno, std::generic_category(), what);
}

}  // namespace

LineServer::LineServer(PlanningService& service, ServerConfig cfg)
    : service_(service), cfg_(std::move(cfg)) {}

LineServer::~LineServer() { stop(); }

void LineServer::start() {
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw_errno("socket");
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(cfg_.port);
  if (::inet_pton(AF_INET, cfg_.host.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw std::invalid_argument("bad listen address: " + cfg_.host);
  }
  if (::bind(listen_fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) < 0) {
    const int saved = errno;
    ::close(listen_fd_);
    listen_fd_ = -1;
    errno = saved;
    throw_errno("bind");
  }
  if (::listen(listen_fd_, 16) < 0) {
    const int saved = errno;
    ::close(listen_fd_);
    listen_fd_ = -1;
    errno = saved;
    throw_errno("listen");
  }

  sockaddr_in bound{};
  socklen_t len = sizeof bound;
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  bound_port_ = ntohs(bound.sin_port);

  // The hook fires inside service calls, which all happen on the master
  // thread, so touching conns_ from it is safe.
  service_.set_publish_hook([this](std::uint64_t version) { broadcast_dmap(version); });

  started_ = true;
  stop_.store(false);
  acceptor_ = std::thread([this] { accept_loop(); });
  master_ = std::thread([this] { master_loop(); });
}

void LineServer::stop() {
  if (!started_) return;
  started_ = false;
  stop_.store(true);
  ::shutdown(listen_fd_, SHUT_RDWR);
  inbox_cv_.notify_all();
  if (acceptor_.joinable()) acceptor_.join();
  if (master_.joinable()) master_.join();
  ::close(listen_fd_);
  listen_fd_ = -1;
}

void LineServer::accept_loop() {
  for (;;) {
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) {
      if (stop_.load()) return;
      if (errno == EINTR) continue;
      return;  // listener gone
    }
    Event ev;
    ev.kind = Event::new_conn;
    ev.fd = fd;
    push_event(std::move(ev));
  }
}

void LineServer::reader_loop(std::uint64_t conn_id, int fd) {
  std::string buf;
  char tmp[4096];
  for (;;) {
    const ssize_t n = ::recv(fd, tmp, sizeof tmp, 0);
    if (n <= 0) break;
    buf.append(tmp, static_cast<std::size_t>(n));
    std::size_t pos;
    while ((pos = buf.find('\n')) != std::string::npos) {
      Event ev;
      ev.kind = Event::line;
      ev.conn_id = conn_id;
      ev.text = buf.substr(0, pos);
      buf.erase(0, pos + 1);
      push_event(std::move(ev));
    }
    if (buf.size() > 65536) {  // overlong line: degrade to a parse error
      buf.clear();
      Event ev;
      ev.kind = Event::line;
      ev.conn_id = conn_id;
      push_event(std::move(ev));
    }
  }
  Event ev;
  ev.kind = Event::eof;
  ev.conn_id = conn_id;
  push_event(std::move(ev));
}

void LineServer::push_event(Event ev) {
  std::lock_guard lk(inbox_mu_);
  inbox_.push_back(std::move(ev));
  inbox_cv_.notify_one();
}

void LineServer::master_loop() {
  using namespace std::chrono_literals;
  while (true) {
    std::deque<Event> batch;
    {
      std::unique_lock lk(inbox_mu_);
      inbox_cv_.wait_for(lk, 20ms, [&] { return stop_.load() || !inbox_.empty(); });
      batch.swap(inbox_);
    }
    for (Event& ev : batch) {
      switch (ev.kind) {
        case Event::new_conn: {
          const std::uint64_t id = next_conn_id_++;
          Conn conn;
          conn.fd = ev.fd;
          conn.reader = std::thread([this, id, fd = ev.fd] { reader_loop(id, fd); });
          conns_.emplace(id, std::move(conn));
          break;
        }
        case Event::line:
          handle_line(ev.conn_id, ev.text);
          break;
        case Event::eof:
          close_conn(ev.conn_id);
          break;
      }
    }
    drain_responses();
    if (stop_.load()) break;
  }
  // Shutdown: close every connection and collect the readers.
  for (auto& [id, conn] : conns_) {
    ::shutdown(conn.fd, SHUT_RDWR);
    if (conn.reader.joinable()) conn.reader.join();
    ::close(conn.fd);
  }
  conns_.clear();
  pending_.clear();
}

void LineServer::handle_line(std::uint64_t conn_id, const std::string& text) {
  if (conns_.find(conn_id) == conns_.end()) return;  // connection already gone
  const auto cmd = wire::parse_client_line(text);
  if (!cmd) {
    send_to(conn_id, wire::format_err(0, 400, "parse"));
    return;
  }
  if (const auto* pos = std::get_if<wire::PosCmd>(&*cmd)) {
    if (!service_.ingest_position(pos->user, {pos->x, pos->y})) {
      send_to(conn_id, wire::format_err(pos->user, 400, "position out of bounds"));
    }
  } else if (const auto* plan = std::get_if<wire::PlanCmd>(&*cmd)) {
    pending_[service_.submit(plan->user)] = conn_id;
  } else if (const auto* bye = std::get_if<wire::ByeCmd>(&*cmd)) {
    service_.remove_user(bye->user);
  } else {
    conns_[conn_id].subscribed = true;
  }
}

void LineServer::drain_responses() {
  for (RouteResponse& r : service_.poll_responses()) {
    const auto it = pending_.find(r.seq);
    if (it == pending_.end()) continue;
    const std::uint64_t conn_id = it->second;
    pending_.erase(it);
    if (r.ok()) {
      send_to(conn_id, wire::format_route(r.user_id, r.version, r.route->cells));
    } else {
      send_to(conn_id, wire::format_err(r.user_id, r.err_code, r.err_msg));
    }
  }
}

void LineServer::send_to(std::uint64_t conn_id, const std::string& data) {
  const auto it = conns_.find(conn_id);
  if (it == conns_.end()) return;
  const char* p = data.data();
  std::size_t left = data.size();
  while (left > 0) {
    const ssize_t n = ::send(it->second.fd, p, left, MSG_NOSIGNAL);
    if (n <= 0) return;  // dead peer; reader's eof event cleans up
    p += n;
    left -= static_cast<std::size_t>(n);
  }
}

void LineServer::broadcast_dmap(std::uint64_t version) {
  const std::string msg = wire::format_dmap(version);
  for (auto& [id, conn] : conns_) {
    if (conn.subscribed) send_to(id, msg);
  }
}

void LineServer::close_conn(std::uint64_t conn_id) {
  const auto it = conns_.find(conn_id);
  if (it == conns_.end()) return;
  if (it->second.reader.joinable()) it->second.reader.join();
  ::close(it->second.fd);
  conns_.erase(it);
}

}  // namespace evac
