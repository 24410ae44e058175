#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

#include "evac/density_map.hpp"
#include "evac/grid_map.hpp"
#include "evac/router.hpp"

namespace evac {

struct ServiceConfig {
  const GridMap* map = nullptr;
  int workers = 1;
  double beta = 0.5;
  double gamma = 5.0;
  int patch_radius = 3;
  std::size_t queue_capacity = 4096;  // per worker
  std::chrono::milliseconds republish_min_interval{100};
};

struct RouteRequest {
  std::uint64_t user_id = 0;
  WorldPos src;
  std::uint64_t requested_at = 0;  // snapshot version bound at assignment
};

/// Error codes mirror the wire protocol: 400 bad input, 404 no route /
/// unknown user, 409 shed under backpressure (retriable).
struct RouteResponse {
  std::uint64_t seq = 0;  // submission order, unique per service
  std::uint64_t user_id = 0;
  std::uint64_t version = 0;  // snapshot the route was planned against
  std::optional<Route> route;
  int err_code = 0;
  std::string err_msg;

  bool ok() const { return err_code == 0; }
};

/// Round-robin by arrival order; resulting queue sizes differ by at most 1.
/// Throws std::invalid_argument when workers < 1.
std::vector<std::vector<RouteRequest>> assign(std::span<const RouteRequest> requests, int workers);

/// Master/worker planning service.
///
/// The master (the thread calling the public methods — keep it to one
/// controlling thread) owns user positions and publishes immutable density
/// snapshots; workers run searches against the snapshot pinned to each job
/// at submission, so a publish never changes what an in-flight job sees.
/// Every submitted request produces exactly one response, including requests
/// shed under backpressure.
class PlanningService {
 public:
  explicit PlanningService(const ServiceConfig& cfg);
  ~PlanningService();

  PlanningService(const PlanningService&) = delete;
  PlanningService& operator=(const PlanningService&) = delete;

  /// Upserts a user position. Returns false (state unchanged) when the
  /// position lies outside the world rectangle.
  bool ingest_position(std::uint64_t user_id, WorldPos pos);
  void remove_user(std::uint64_t user_id);
  std::size_t user_count() const { return positions_.size(); }

  /// Rebuilds the snapshot from current positions. Never required by the
  /// other entry points — they publish on demand — but callable directly.
  std::shared_ptr<const DensityMap> publish_snapshot();
  /// Current snapshot, publishing first if none exists yet.
  std::shared_ptr<const DensityMap> snapshot();

  /// Queues a plan job for a known user; returns its seq. Unknown users get
  /// an immediate 404 response through the response channel. Republishes a
  /// dirty snapshot at most every republish_min_interval.
  std::uint64_t submit(std::uint64_t user_id);

  /// Drains already-completed responses without blocking.
  std::vector<RouteResponse> poll_responses();

  /// Batch mode: publishes if dirty, distributes round-robin, waits for
  /// every response and returns them ordered by request. Requests with an
  /// out-of-bounds src produce per-request 400 errors, nothing else fails.
  std::vector<RouteResponse> serve(std::span<const RouteRequest> requests);

  /// Called (on the master thread) with the new version after each publish.
  void set_publish_hook(std::function<void(std::uint64_t)> hook) { publish_hook_ = std::move(hook); }

  const ServiceConfig& config() const { return cfg_; }

 private:
  struct Job {
    std::uint64_t seq;
    std::uint64_t user_id;
    GridCoord src_cell;
    std::shared_ptr<const DensityMap> snapshot;
  };

  struct WorkerQueue {
    std::mutex mu;
    std::condition_variable cv;
    std::deque<Job> jobs;
  };

  void worker_loop(int worker_index);
  void push_response(RouteResponse r);
  void enqueue(Job job);
  std::shared_ptr<const DensityMap> ensure_snapshot_for_submit();

  ServiceConfig cfg_;
  const GridMap* map_;

  std::unordered_map<std::uint64_t, WorldPos> positions_;
  std::shared_ptr<const DensityMap> snapshot_;
  bool dirty_ = true;
  std::chrono::steady_clock::time_point last_publish_{};
  std::function<void(std::uint64_t)> publish_hook_;

  std::uint64_t next_seq_ = 0;
  std::size_t next_worker_ = 0;

  std::vector<std::unique_ptr<WorkerQueue>> queues_;
  std::vector<std::thread> workers_;
  std::atomic<bool> stop_{false};

  std::mutex results_mu_;
  std::condition_variable results_cv_;
  std::deque<RouteResponse> results_;
  std::vector<RouteResponse> stray_;  // streaming responses drained during serve()
};

}  // namespace evac
