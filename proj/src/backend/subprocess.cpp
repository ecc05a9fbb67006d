// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>

#include "backend/backend.hpp"

namespace atomnlu::backend {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kMaxFrameBytes = 64u << 20;

void send_all(int fd, std::string_view data) {
  while (!data.empty()) {
    auto n = ::send(fd, data.data(), data.size(), MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      throw Error(ErrorCode::BackendUnavailable, std::string("subprocess write failed: ") + std::strerror(errno));
    }
    data.remove_prefix(static_cast<std::size_t>(n));
  }
}

// Reads up to max bytes once data is available.
std::size_t read_some(int fd, char* buf, std::size_t max, Clock::time_point deadline) {
  while (true) {
    auto left = std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now()).count();
    if (left <= 0) throw Error(ErrorCode::Timeout, "subprocess reply timed out");
    pollfd p{fd, POLLIN, 0};
    int r = ::poll(&p, 1, static_cast<int>(left));
    if (r < 0 && errno == EINTR) continue;
    if (r == 0) throw Error(ErrorCode::Timeout, "subprocess reply timed out");
    auto n = ::recv(fd, buf, max, 0);
    if (n > 0) return static_cast<std::size_t>(n);
    if (n < 0 && errno == EINTR) continue;
    throw Error(ErrorCode::BackendUnavailable, "subprocess closed its output");
  }
}

char read_byte(int fd, Clock::time_point deadline) {
  char c = 0;
  read_some(fd, &c, 1, deadline);
  return c;
}

std::string read_frame(int fd, Clock::time_point deadline) {
  std::string header;
  for (char c = read_byte(fd, deadline); c != '\n'; c = read_byte(fd, deadline)) {
    if (c < '0' || c > '9' || header.size() > 18)
      throw Error(ErrorCode::ProtocolError, "subprocess sent a malformed frame header");
    header.push_back(c);
  }
  if (header.empty()) throw Error(ErrorCode::ProtocolError, "subprocess sent an empty frame header");
  const auto len = std::stoull(header);
  if (len > kMaxFrameBytes) throw Error(ErrorCode::ProtocolError, "subprocess frame of " + header + " bytes is too large");
  std::string payload(len, '\0');
  for (std::size_t got = 0; got < len;) got += read_some(fd, payload.data() + got, len - got, deadline);
  return payload;
}

}  // namespace

std::string encode_frame(std::string_view payload) {
  return std::to_string(payload.size()) + "\n" + std::string(payload);
}

SubprocessBackend::SubprocessBackend(std::string command, std::chrono::milliseconds timeout, RetryPolicy retry)
    : command_(std::move(command)), timeout_(timeout), retry_(retry) {
  if (command_.empty()) throw Error(ErrorCode::InvalidConfig, "subprocess backend needs a command");
}

SubprocessBackend::~SubprocessBackend() { terminate(); }

void SubprocessBackend::spawn() {
  int sv[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM | SOCK_CLOEXEC, 0, sv) != 0)
    throw Error(ErrorCode::BackendUnavailable, std::string("socketpair: ") + std::strerror(errno));
  pid_t pid = ::fork();
  if (pid < 0) {
    ::close(sv[0]);
    ::close(sv[1]);
    throw Error(ErrorCode::BackendUnavailable, std::string("fork: ") + std::strerror(errno));
  }
  if (pid == 0) {
    ::dup2(sv[1], STDIN_FILENO);
    ::dup2(sv[1], STDOUT_FILENO);
    ::execl("/bin/sh", "sh", "-c", command_.c_str(), static_cast<char*>(nullptr));
    ::_exit(127);
  }
  ::close(sv[1]);
  fd_ = sv[0];
  pid_ = pid;
}

void SubprocessBackend::terminate() {
  if (fd_ >= 0) ::close(fd_);
  fd_ = -1;
  if (pid_ > 0) {
    ::kill(pid_, SIGTERM);
    int status = 0;
    ::waitpid(pid_, &status, 0);
  }
  pid_ = -1;
}

BackendResult SubprocessBackend::attempt(const GenerationRequest& request) {
  if (fd_ < 0) spawn();
  const auto start = Clock::now();
  try {
    send_all(fd_, encode_frame(request.prompt));
    auto text = read_frame(fd_, start + timeout_);
    return {std::move(text), std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start), 1};
  } catch (const Error&) {
    // Stream position is unknown after a failure; start over with a fresh child.
    terminate();
    throw;
  }
}

BackendResult SubprocessBackend::generate(const GenerationRequest& request) {
  request.validate();
  std::lock_guard lock(mutex_);
  return with_retries(retry_, [&] { return attempt(request); }, util::fnv1a64(request.prompt));
}

}  // namespace atomnlu::backend
