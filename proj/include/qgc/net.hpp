#pragma once

#include <cstdint>
#include <string>

#include "qgc/wire.hpp"

namespace qgc::net {

// Transport over POSIX file descriptors: a connected stream socket (one fd for both
// directions) or a pipe pair such as stdin/stdout.
class FdTransport final : public wire::Transport {
 public:
  FdTransport(int read_fd, int write_fd, bool owns);
  explicit FdTransport(int socket_fd) : FdTransport(socket_fd, socket_fd, true) {}
  FdTransport(FdTransport&& other) noexcept;
  FdTransport& operator=(FdTransport&&) = delete;
  FdTransport(const FdTransport&) = delete;
  ~FdTransport() override;

  void write_all(std::span<const std::uint8_t> bytes) override;
  std::size_t read_some(std::span<std::uint8_t> buffer) override;
  void close_write() override;

 private:
  int read_fd_;
  int write_fd_;
  bool owns_;
  bool write_closed_ = false;
};

struct Endpoint {
  std::string host;
  std::uint16_t port;
};
// "host:port"; throws invalid_argument.
Endpoint parse_endpoint(const std::string& text);

class TcpListener {
 public:
  // Port 0 binds an ephemeral port; see port().
  explicit TcpListener(const Endpoint& where);
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  ~TcpListener();

  std::uint16_t port() const { return port_; }
  FdTransport accept();

 private:
  int fd_ = -1;
  std::uint16_t port_ = 0;
};

FdTransport tcp_connect(const Endpoint& where);

}  // namespace qgc::net
