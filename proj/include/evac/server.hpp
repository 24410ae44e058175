#pragma once

#include <condition_variable>
#include <cstdint>
#include <deque>
#include <mutex>
#include <string>
#include <thread>
#include <unordered_map>

#include "evac/dispatch.hpp"

namespace evac {

struct ServerConfig {
  std::string host = "127.0.0.1";
  std::uint16_t port = 0;  // 0 = pick an ephemeral port
};

/// TCP front end for PlanningService: newline-delimited commands in,
/// ROUTE/ERR/DMAP lines out.
///
/// One acceptor thread, one reader thread per connection, and a master
/// thread that is the only caller of the service and the only writer to any
/// socket — so the single-writer contract of PlanningService holds by
/// construction.
class LineServer {
 public:
  LineServer(PlanningService& service, ServerConfig cfg = {});
  ~LineServer();

  LineServer(const LineServer&) = delete;
  LineServer& operator=(const LineServer&) = delete;

  /// Binds and starts serving; throws std::system_error on socket errors.
  void start();
  /// Stops accepting, closes every connection, joins all threads. Idempotent.
  void stop();

  std::uint16_t port() const { return bound_port_; }

 private:
  struct Event {
    enum Kind { new_conn, line, eof } kind;
    std::uint64_t conn_id = 0;
    int fd = -1;
    std::string text;
  };

  struct Conn {
    int fd = -1;
    bool subscribed = false;
    std::thread reader;
  };

  void accept_loop();
  void reader_loop(std::uint64_t conn_id, int fd);
  void master_loop();
  void push_event(Event ev);
  void handle_line(std::uint64_t conn_id, const std::string& text);
  void drain_responses();
  void send_to(std::uint64_t conn_id, const std::string& data);
  void broadcast_dmap(std::uint64_t version);
  void close_conn(std::uint64_t conn_id);

  PlanningService& service_;
  ServerConfig cfg_;
  std::uint16_t bound_port_ = 0;
  int listen_fd_ = -1;
  std::atomic<bool> stop_{false};
  bool started_ = false;

  std::thread acceptor_;
  std::thread master_;

  std::mutex inbox_mu_;
  std::condition_variable inbox_cv_;
  std::deque<Event> inbox_;

  // Master-thread state.
  std::uint64_t next_conn_id_ = 1;
  std::unordered_map<std::uint64_t, Conn> conns_;
  std::unordered_map<std::uint64_t, std::uint64_t> pending_;  // seq -> conn
};

}  // namespace evac
