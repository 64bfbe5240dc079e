#pragma once

#include <atomic>
#include <cstdint>
#include <mutex>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "docmap/protocol.hpp"

namespace docmap {

// Line-oriented TCP front end. Each accepted connection gets its own worker
// thread that answers requests in the order they arrive on that stream.
class TcpServer {
 public:
  // Port 0 picks an ephemeral port; see port() after start().
  TcpServer(ProtocolHandler& handler, std::uint16_t port,
            std::string host = "127.0.0.1");
  ~TcpServer();

  TcpServer(const TcpServer&) = delete;
  TcpServer& operator=(const TcpServer&) = delete;

  void start();
  void stop();
  std::uint16_t port() const { return port_; }

  static constexpr std::size_t kMaxLine = 1 << 20;

 private:
  void accept_loop();
  void serve(int fd);

  ProtocolHandler& handler_;
  std::string host_;
  std::uint16_t port_;
  int listen_fd_ = -1;
  std::atomic<bool> stopping_{false};
  std::thread acceptor_;
  std::mutex mu_;
  std::set<int> clients_;
  std::vector<std::thread> workers_;
};

// Blocking client for the same protocol; one request in flight at a time.
class LineClient {
 public:
  LineClient(const std::string& host, std::uint16_t port);
  ~LineClient();

  LineClient(const LineClient&) = delete;
  LineClient& operator=(const LineClient&) = delete;

  std::string call(const std::string& request_line);
  nlohmann::json call(const nlohmann::json& request);

 private:
  int fd_ = -1;
  std::string pending_;
};

}  // namespace docmap
