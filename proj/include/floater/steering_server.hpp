#ifndef FLOATER_STEERING_SERVER_HPP
#define FLOATER_STEERING_SERVER_HPP

#include <atomic>
#include <chrono>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "floater/config.hpp"
#include "floater/protocol.hpp"
#include "floater/simulation.hpp"

namespace floater {

/// The simulation side of steering, free of sockets and clocks: applies
/// commands and produces frames. Only the owning loop touches it.
class SteeringSession {
 public:
  explicit SteeringSession(SimConfig cfg, int steps_per_second = 100);

  void apply(const protocol::ClientCommand& command);
  /// Advances one step unless paused; returns whether it stepped.
  bool advance();

  [[nodiscard]] protocol::StateFrame frame() const;
  [[nodiscard]] const Simulation& simulation() const noexcept { return sim_; }
  [[nodiscard]] bool paused() const noexcept { return paused_; }
  [[nodiscard]] int steps_per_second() const noexcept { return steps_per_second_; }

 private:
  Simulation sim_;
  bool paused_ = false;
  int steps_per_second_;
};

class ServerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Line-delimited JSON steering service over plain TCP.
///
/// One loop thread owns the session. Connection readers push decoded
/// commands onto a queue; the loop applies them between steps and
/// broadcasts a frame every frame interval.
class SteeringServer {
 public:
  struct Options {
    std::string bind_address = "127.0.0.1";
    int port = 8080;  // 0 picks a free port
    double frames_per_second = 10.0;
    int steps_per_second = 100;
  };

  SteeringServer(SimConfig cfg, Options options);
  ~SteeringServer();
  SteeringServer(const SteeringServer&) = delete;
  SteeringServer& operator=(const SteeringServer&) = delete;

  /// Binds and starts serving. Throws ServerError if the port is unavailable.
  void start();
  /// Stops all threads and closes every connection. Idempotent.
  void stop();
  /// Blocks until stop() is called from another thread or a signal handler
  /// sets the flag returned by stop_flag().
  void wait();

  [[nodiscard]] int port() const noexcept { return bound_port_; }
  [[nodiscard]] std::size_t client_count() const;
  [[nodiscard]] std::atomic<bool>& stop_flag() noexcept { return stopping_; }

 private:
  struct Client;

  void accept_loop();
  void simulation_loop();
  void read_loop(const std::shared_ptr<Client>& client);
  void broadcast(const std::string& line);
  void reap_clients();

  SimConfig cfg_;
  Options options_;
  int listen_fd_ = -1;
  int bound_port_ = 0;
  std::atomic<bool> stopping_{false};
  bool started_ = false;

  std::mutex queue_mutex_;
  std::deque<protocol::ClientCommand> queue_;

  mutable std::mutex clients_mutex_;
  std::vector<std::shared_ptr<Client>> clients_;

  std::thread accept_thread_;
  std::thread sim_thread_;
};

}  // namespace floater

#endif  // FLOATER_STEERING_SERVER_HPP
