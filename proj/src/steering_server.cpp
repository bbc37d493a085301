#include "floater/steering_server.hpp"

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <cstring>
#include <utility>
#include <variant>

namespace floater {

namespace {

constexpr std::size_t kMaxLineBytes = 64 * 1024;
constexpr int kPollMillis = 50;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

// ---------------------------------------------------------------------------
// SteeringSession

SteeringSession::SteeringSession(SimConfig cfg, int steps_per_second)
    : sim_(std::move(cfg)),
      steps_per_second_(std::clamp(steps_per_second, protocol::SetSpeed::kMin,
                                   protocol::SetSpeed::kMax)) {}

void SteeringSession::apply(const protocol::ClientCommand& command) {
  std::visit(overloaded{
                 [&](const protocol::SetLight& c) { sim_.set_light(c.position); },
                 [&](const protocol::Pause&) { paused_ = true; },
                 [&](const protocol::Resume&) { paused_ = false; },
                 [&](const protocol::Reset& c) { sim_.reset(c.seed); },
                 [&](const protocol::SetRule& c) { sim_.set_rule(c.rule); },
                 [&](const protocol::SetSpeed& c) { steps_per_second_ = c.steps_per_second; },
             },
             command);
}

bool SteeringSession::advance() {
  if (paused_) return false;
  sim_.step();
  return true;
}

protocol::StateFrame SteeringSession::frame() const {
  const auto rec = sim_.record();
  protocol::StateFrame f;
  f.step = rec.step;
  f.pose = rec.pose;
  f.light = sim_.light().position;
  f.excited = rec.excited;
  f.width = sim_.lattice().width();
  f.height = sim_.lattice().height();
  f.grid = protocol::encode_grid(sim_.lattice());
  f.dist_to_light = rec.dist_to_light;
  f.rule = format_rule(sim_.rule());
  f.paused = paused_;
  return f;
}

// ---------------------------------------------------------------------------
// SteeringServer

struct SteeringServer::Client {
  explicit Client(int fd_) : fd(fd_) {}

  void send_line(const std::string& line) {
    std::lock_guard lock(write_mutex);
    if (!alive) return;
    std::string buf = line;
    buf.push_back('\n');
    std::size_t off = 0;
    while (off < buf.size()) {
      const ssize_t n = ::send(fd, buf.data() + off, buf.size() - off, MSG_NOSIGNAL);
      if (n < 0 && errno == EINTR) continue;
      if (n <= 0) {
        alive = false;
        return;
      }
      off += static_cast<std::size_t>(n);
    }
  }

  int fd;
  std::mutex write_mutex;
  std::atomic<bool> alive{true};
  std::thread reader;
};

SteeringServer::SteeringServer(SimConfig cfg, Options options)
    : cfg_(std::move(cfg)), options_(std::move(options)) {
  cfg_.validate();
  if (options_.port < 0 || options_.port > 65535) {
    throw ServerError("port must lie in [0, 65535]");
  }
  if (!(options_.frames_per_second > 0.0)) throw ServerError("frame rate must be positive");
}

SteeringServer::~SteeringServer() { stop(); }

void SteeringServer::start() {
  if (started_) return;
  listen_fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
  if (listen_fd_ < 0) throw ServerError(std::string("socket: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(listen_fd_, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));

  sockaddr_in addr{};
  addr.sin_family = AF_INET;
  addr.sin_port = htons(static_cast<std::uint16_t>(options_.port));
  if (::inet_pton(AF_INET, options_.bind_address.c_str(), &addr.sin_addr) != 1) {
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ServerError("invalid bind address '" + options_.bind_address + "'");
  }
  if (::bind(listen_fd_, reinterpret_cast<const sockaddr*>(&addr), sizeof(addr)) < 0 ||
      ::listen(listen_fd_, 16) < 0) {
    const std::string msg = std::strerror(errno);
    ::close(listen_fd_);
    listen_fd_ = -1;
    throw ServerError("cannot listen on port " + std::to_string(options_.port) + ": " + msg);
  }
  socklen_t len = sizeof(addr);
  ::getsockname(listen_fd_, reinterpret_cast<sockaddr*>(&addr), &len);
  bound_port_ = ntohs(addr.sin_port);

  stopping_ = false;
  started_ = true;
  sim_thread_ = std::thread([this] { simulation_loop(); });
  accept_thread_ = std::thread([this] { accept_loop(); });
}

void SteeringServer::stop() {
  if (!started_) return;
  stopping_ = true;
  if (accept_thread_.joinable()) accept_thread_.join();
  if (sim_thread_.joinable()) sim_thread_.join();
  if (listen_fd_ >= 0) {
    ::close(listen_fd_);
    listen_fd_ = -1;
  }
  std::vector<std::shared_ptr<Client>> clients;
  {
    std::lock_guard lock(clients_mutex_);
    clients.swap(clients_);
  }
  for (auto& c : clients) {
    ::shutdown(c->fd, SHUT_RDWR);
    if (c->reader.joinable()) c->reader.join();
    ::close(c->fd);
  }
  started_ = false;
}

void SteeringServer::wait() {
  while (!stopping_) std::this_thread::sleep_for(std::chrono::milliseconds(100));
  stop();
}

std::size_t SteeringServer::client_count() const {
  std::lock_guard lock(clients_mutex_);
  return static_cast<std::size_t>(
      std::count_if(clients_.begin(), clients_.end(), [](const auto& c) { return c->alive.load(); }));
}

void SteeringServer::accept_loop() {
  while (!stopping_) {
    pollfd p{listen_fd_, POLLIN, 0};
    if (::poll(&p, 1, kPollMillis) <= 0) continue;
    const int fd = ::accept(listen_fd_, nullptr, nullptr);
    if (fd < 0) continue;
    auto client = std::make_shared<Client>(fd);
    client->reader = std::thread([this, client] { read_loop(client); });
    std::lock_guard lock(clients_mutex_);
    clients_.push_back(std::move(client));
  }
}

void SteeringServer::read_loop(const std::shared_ptr<Client>& client) {
  std::string pending;
  std::array<char, 4096> buf{};
  while (!stopping_ && client->alive) {
    pollfd p{client->fd, POLLIN, 0};
    if (::poll(&p, 1, kPollMillis) <= 0) continue;
    const ssize_t n = ::recv(client->fd, buf.data(), buf.size(), 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    pending.append(buf.data(), static_cast<std::size_t>(n));
    std::size_t nl;
    while ((nl = pending.find('\n')) != std::string::npos) {
      std::string line = pending.substr(0, nl);
      pending.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      try {
        auto command = protocol::decode_command(line);
        std::lock_guard lock(queue_mutex_);
        queue_.push_back(std::move(command));
      } catch (const protocol::DecodeError& e) {
        client->send_line(protocol::encode_error(e.what()));
      }
    }
    if (pending.size() > kMaxLineBytes) {
      pending.clear();
      client->send_line(protocol::encode_error("line too long"));
    }
  }
  client->alive = false;
}

void SteeringServer::broadcast(const std::string& line) {
  std::vector<std::shared_ptr<Client>> clients;
  {
    std::lock_guard lock(clients_mutex_);
    clients = clients_;
  }
  for (auto& c : clients) c->send_line(line);
}

void SteeringServer::reap_clients() {
  std::vector<std::shared_ptr<Client>> dead;
  {
    std::lock_guard lock(clients_mutex_);
    auto it = std::partition(clients_.begin(), clients_.end(),
                             [](const auto& c) { return c->alive.load(); });
    dead.assign(it, clients_.end());
    clients_.erase(it, clients_.end());
  }
  for (auto& c : dead) {
    ::shutdown(c->fd, SHUT_RDWR);
    if (c->reader.joinable()) c->reader.join();
    ::close(c->fd);
  }
}

void SteeringServer::simulation_loop() {
  using clock = std::chrono::steady_clock;
  SteeringSession session(cfg_, options_.steps_per_second);
  const auto frame_interval = std::chrono::duration_cast<clock::duration>(
      std::chrono::duration<double>(1.0 / options_.frames_per_second));
  auto step_interval = [&] {
    return std::chrono::duration_cast<clock::duration>(
        std::chrono::duration<double>(1.0 / session.steps_per_second()));
  };
  auto next_step = clock::now();
  auto next_frame = clock::now();

  while (!stopping_) {
    std::deque<protocol::ClientCommand> commands;
    {
      std::lock_guard lock(queue_mutex_);
      commands.swap(queue_);
    }
    for (const auto& c : commands) {
      const int speed = session.steps_per_second();
      session.apply(c);
      if (session.steps_per_second() != speed) next_step = clock::now();
    }

    auto now = clock::now();
    if (!session.paused() && now >= next_step) {
      session.advance();
      next_step += step_interval();
      // Do not try to catch up after a stall.
      if (now - next_step > std::chrono::milliseconds(100)) next_step = now;
    }
    if (now >= next_frame) {
      broadcast(protocol::encode_frame(session.frame()));
      next_frame += frame_interval;
      if (now - next_frame > frame_interval) next_frame = now + frame_interval;
      reap_clients();
    }

    now = clock::now();
    auto wake = next_frame;
    if (!session.paused()) wake = std::min(wake, next_step);
    wake = std::min(wake, now + std::chrono::milliseconds(5));
    if (wake > now) std::this_thread::sleep_until(wake);
  }
}

}  // namespace floater
