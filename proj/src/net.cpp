#include "qgc/net.hpp"

#include <cerrno>
#include <cstring>

#include <netdb.h>
#include <netinet/in.h>
#include <sys/socket.h>
#include <sys/types.h>
#include <unistd.h>

namespace qgc::net {

namespace {

Error sys_error(const std::string& what) { return Error(Errc::io, what + ": " + std::strerror(errno)); }

struct AddrInfo {
  addrinfo* head = nullptr;
  ~AddrInfo() {
    if (head) freeaddrinfo(head);
  }
};

void resolve(const Endpoint& where, bool passive, AddrInfo& out) {
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  if (passive) hints.ai_flags = AI_PASSIVE;
  const std::string port = std::to_string(where.port);
  int rc = getaddrinfo(where.host.empty() ? nullptr : where.host.c_str(), port.c_str(), &hints, &out.head);
  if (rc != 0) throw Error(Errc::io, "cannot resolve " + where.host + ": " + gai_strerror(rc));
}

}  // namespace

FdTransport::FdTransport(int read_fd, int write_fd, bool owns) : read_fd_(read_fd), write_fd_(write_fd), owns_(owns) {}

FdTransport::FdTransport(FdTransport&& other) noexcept
    : read_fd_(other.read_fd_), write_fd_(other.write_fd_), owns_(other.owns_), write_closed_(other.write_closed_) {
  other.owns_ = false;
  other.read_fd_ = other.write_fd_ = -1;
}

FdTransport::~FdTransport() {
  if (!owns_) return;
  if (read_fd_ >= 0) ::close(read_fd_);
  if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
}

void FdTransport::write_all(std::span<const std::uint8_t> bytes) {
  if (write_closed_) throw Error(Errc::io, "write after close");
  std::size_t off = 0;
  while (off < bytes.size()) {
    ssize_t n = ::send(write_fd_, bytes.data() + off, bytes.size() - off, MSG_NOSIGNAL);
    if (n < 0 && errno == ENOTSOCK) n = ::write(write_fd_, bytes.data() + off, bytes.size() - off);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw sys_error("write failed");
    }
    off += static_cast<std::size_t>(n);
  }
}

std::size_t FdTransport::read_some(std::span<std::uint8_t> buffer) {
  for (;;) {
    ssize_t n = ::read(read_fd_, buffer.data(), buffer.size());
    if (n >= 0) return static_cast<std::size_t>(n);
    if (errno == EINTR) continue;
    // A reset after the peer aborted reads as end of stream.
    if (errno == ECONNRESET) return 0;
    throw sys_error("read failed");
  }
}

void FdTransport::close_write() {
  if (write_closed_) return;
  write_closed_ = true;
  if (::shutdown(write_fd_, SHUT_WR) != 0 && errno == ENOTSOCK && owns_ && write_fd_ != read_fd_) {
    ::close(write_fd_);
    write_fd_ = -1;
  }
}

Endpoint parse_endpoint(const std::string& text) {
  auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(Errc::invalid_argument, "expected host:port, got '" + text + "'");
  std::string host = text.substr(0, colon);
  if (host.size() >= 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
  unsigned long port = 0;
  try {
    std::size_t used = 0;
    port = std::stoul(text.substr(colon + 1), &used);
    if (used != text.size() - colon - 1) throw std::invalid_argument("junk");
  } catch (const std::exception&) {
    throw Error(Errc::invalid_argument, "bad port in '" + text + "'");
  }
  if (port > 65535) throw Error(Errc::invalid_argument, "port out of range in '" + text + "'");
  return Endpoint{host, static_cast<std::uint16_t>(port)};
}

TcpListener::TcpListener(const Endpoint& where) {
  AddrInfo ai;
  resolve(where, true, ai);
  for (addrinfo* a = ai.head; a; a = a->ai_next) {
    int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
    if (::bind(fd, a->ai_addr, a->ai_addrlen) == 0 && ::listen(fd, 4) == 0) {
      fd_ = fd;
      break;
    }
    ::close(fd);
  }
  if (fd_ < 0) throw sys_error("cannot listen on " + where.host + ":" + std::to_string(where.port));

  sockaddr_storage bound{};
  socklen_t len = sizeof(bound);
  ::getsockname(fd_, reinterpret_cast<sockaddr*>(&bound), &len);
  if (bound.ss_family == AF_INET)
    port_ = ntohs(reinterpret_cast<sockaddr_in*>(&bound)->sin_port);
  else
    port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&bound)->sin6_port);
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

FdTransport TcpListener::accept() {
  for (;;) {
    int fd = ::accept(fd_, nullptr, nullptr);
    if (fd >= 0) return FdTransport(fd);
    if (errno != EINTR) throw sys_error("accept failed");
  }
}

FdTransport tcp_connect(const Endpoint& where) {
  AddrInfo ai;
  resolve(where, false, ai);
  for (addrinfo* a = ai.head; a; a = a->ai_next) {
    int fd = ::socket(a->ai_family, a->ai_socktype, a->ai_protocol);
    if (fd < 0) continue;
    if (::connect(fd, a->ai_addr, a->ai_addrlen) == 0) return FdTransport(fd);
    ::close(fd);
  }
  throw sys_error("cannot connect to " + where.host + ":" + std::to_string(where.port));
}

}  // namespace qgc::net
