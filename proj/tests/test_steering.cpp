#include <doctest.h>

#include <arpa/inet.h>
#include <netinet/in.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <chrono>
#include <optional>
#include <string>
#include <thread>

#include "floater/presets.hpp"
#include "floater/protocol.hpp"
#include "floater/steering_server.hpp"

using namespace floater;
using namespace std::chrono_literals;

namespace {

// Minimal blocking line client for the steering socket.
class LineClient {
 public:
  explicit LineClient(int port) {
    fd_ = ::socket(AF_INET, SOCK_STREAM, 0);
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_port = htons(static_cast<std::uint16_t>(port));
    ::inet_pton(AF_INET, "127.0.0.1", &addr.sin_addr);
    connected_ = ::connect(fd_, reinterpret_cast<sockaddr*>(&addr), sizeof addr) == 0;
  }
  ~LineClient() { close(); }
  LineClient(const LineClient&) = delete;
  LineClient& operator=(const LineClient&) = delete;

  [[nodiscard]] bool connected() const { return connected_; }

  void close() {
    if (fd_ >= 0) ::close(fd_);
    fd_ = -1;
  }

  void send(const std::string& line) {
    const std::string buf = line + "\n";
    (void)::send(fd_, buf.data(), buf.size(), MSG_NOSIGNAL);
  }

  std::optional<std::string> read_line(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    for (;;) {
      if (const auto nl = buffer_.find('\n'); nl != std::string::npos) {
        std::string line = buffer_.substr(0, nl);
        buffer_.erase(0, nl + 1);
        return line;
      }
      const auto left = std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now());
      if (left.count() <= 0) return std::nullopt;
      pollfd p{fd_, POLLIN, 0};
      if (::poll(&p, 1, static_cast<int>(left.count())) <= 0) return std::nullopt;
      char chunk[65536];
      const ssize_t n = ::recv(fd_, chunk, sizeof chunk, 0);
      if (n <= 0) return std::nullopt;
      buffer_.append(chunk, static_cast<std::size_t>(n));
    }
  }

  // Next line whose "type" is "state", skipping anything else.
  std::optional<protocol::StateFrame> next_frame(std::chrono::milliseconds timeout) {
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    while (std::chrono::steady_clock::now() < deadline) {
      auto line = read_line(std::chrono::duration_cast<std::chrono::milliseconds>(
          deadline - std::chrono::steady_clock::now()));
      if (!line) return std::nullopt;
      if (line->find(R"("type":"state")") != std::string::npos) return protocol::decode_frame(*line);
    }
    return std::nullopt;
  }

 private:
  int fd_ = -1;
  bool connected_ = false;
  std::string buffer_;
};

SimConfig small_config() {
  SimConfig cfg = default_config(40, 40);
  cfg.steps = 1000;
  return cfg;
}

SteeringServer::Options test_options() {
  SteeringServer::Options o;
  o.port = 0;
  o.frames_per_second = 10.0;
  o.steps_per_second = 200;
  return o;
}

}  // namespace

TEST_CASE("session without commands reproduces a batch run") {
  auto cfg = small_config();
  cfg.steps = 300;
  cfg.record_every = 1;
  const auto batch = run_simulation(cfg);
  SteeringSession session(cfg);
  for (std::int64_t i = 1; i <= cfg.steps; ++i) {
    REQUIRE(session.advance());
    const auto rec = session.simulation().record();
    REQUIRE(rec == batch[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("session commands") {
  SteeringSession session(small_config());
  session.apply(protocol::Pause{});
  CHECK_FALSE(session.advance());
  CHECK(session.frame().paused);
  session.apply(protocol::Resume{});
  CHECK(session.advance());
  session.apply(protocol::SetLight{Vec2(0.0, 500.0)});
  CHECK(session.frame().light == Vec2(0.0, 500.0));
  session.apply(protocol::SetRule{parse_rule("1899")});
  CHECK(session.frame().rule == "1899");
  session.apply(protocol::SetSpeed{20});
  CHECK(session.steps_per_second() == 20);
  session.apply(protocol::Reset{3});
  CHECK(session.frame().step == 0);
  const auto f = session.frame();
  CHECK(protocol::decode_grid(f.grid, f.width, f.height) == session.simulation().lattice());
}

TEST_CASE("light due north pulls the floater north") {
  // Statistical: mean northward velocity over 500 steps, 5 seeds.
  const auto base = preset_config(*find_preset("fig5"));
  int north = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto cfg = base;
    cfg.seed = seed;
    SteeringSession session(cfg);
    for (int i = 0; i < 200; ++i) session.advance();
    const Vec2 start = session.simulation().pose().position;
    session.apply(protocol::SetLight{start + Vec2(0.0, cfg.initial_distance())});
    for (int i = 0; i < 500; ++i) session.advance();
    const double vy = (session.simulation().pose().position.y() - start.y()) / 500.0;
    if (vy > 0.0) ++north;
  }
  CHECK(north >= 4);
}

TEST_CASE("tcp service") {
  SteeringServer server(small_config(), test_options());
  server.start();
  REQUIRE(server.port() > 0);

  LineClient client(server.port());
  REQUIRE(client.connected());

  SUBCASE("frames arrive at the frame rate") {
    const auto t0 = std::chrono::steady_clock::now();
    const auto first = client.next_frame(1500ms);
    REQUIRE(first);
    const auto second = client.next_frame(1500ms);
    REQUIRE(second);
    CHECK(std::chrono::steady_clock::now() - t0 < 1500ms);
    CHECK(second->step > first->step);
    CHECK(protocol::decode_grid(second->grid, second->width, second->height).width() == 40);
  }

  SUBCASE("set_light is reflected in the next frame") {
    client.send(R"({"cmd":"set_light","x":0,"y":500})");
    bool seen = false;
    for (int i = 0; i < 5 && !seen; ++i) {
      const auto f = client.next_frame(1500ms);
      REQUIRE(f);
      seen = f->light == Vec2(0.0, 500.0);
    }
    CHECK(seen);
  }

  SUBCASE("pause freezes the step counter") {
    client.send(R"({"cmd":"pause"})");
    std::optional<protocol::StateFrame> f;
    do {
      f = client.next_frame(1500ms);
      REQUIRE(f);
    } while (!f->paused);
    const auto step = f->step;
    for (int i = 0; i < 5; ++i) {
      const auto g = client.next_frame(1500ms);
      REQUIRE(g);
      CHECK(g->step == step);
    }
    client.send(R"({"cmd":"resume"})");
    std::optional<protocol::StateFrame> g;
    for (int i = 0; i < 10; ++i) {
      g = client.next_frame(1500ms);
      REQUIRE(g);
      if (g->step > step) break;
    }
    CHECK(g->step > step);
  }

  SUBCASE("malformed command gets an error and keeps the connection") {
    client.send("{not json");
    bool error_seen = false;
    for (int i = 0; i < 20 && !error_seen; ++i) {
      const auto line = client.read_line(1500ms);
      REQUIRE(line);
      error_seen = line->find(R"("type":"error")") != std::string::npos;
    }
    CHECK(error_seen);
    CHECK(client.next_frame(1500ms));
  }

  SUBCASE("disconnect is cleaned up and the simulation continues") {
    LineClient other(server.port());
    REQUIRE(other.connected());
    REQUIRE(other.next_frame(1500ms));
    other.close();
    for (int i = 0; i < 40 && server.client_count() != 1; ++i) std::this_thread::sleep_for(50ms);
    CHECK(server.client_count() == 1);
    const auto a = client.next_frame(1500ms);
    const auto b = client.next_frame(1500ms);
    REQUIRE(a);
    REQUIRE(b);
    CHECK(b->step > a->step);
  }

  server.stop();
}

TEST_CASE("busy port is reported") {
  SteeringServer first(small_config(), test_options());
  first.start();
  auto opts = test_options();
  opts.port = first.port();
  SteeringServer second(small_config(), opts);
  CHECK_THROWS_AS((void)second.start(), ServerError);
}
