#include "evac/dispatch.hpp"

#include <algorithm>
#include <stdexcept>

namespace evac {

std::vector<std::vector<RouteRequest>> assign(std::span<const RouteRequest> requests, int workers) {
  if (workers < 1) throw std::invalid_argument("assign: need at least one worker");
  std::vector<std::vector<RouteRequest>> queues(static_cast<std::size_t>(workers));
  for (std::size_t i = 0; i < requests.size(); ++i) {
    queues[i % static_cast<std::size_t>(workers)].push_back(requests[i]);
  }
  return queues;
}

PlanningService::PlanningService(const ServiceConfig& cfg) : cfg_(cfg), map_(cfg.map) {
  if (!map_) throw std::invalid_argument("service has no map");
  if (cfg_.workers < 1) throw std::invalid_argument("workers must be >= 1");
  if (!(cfg_.beta >= 0.0 && cfg_.beta <= 1.0)) throw std::invalid_argument("beta must be in [0, 1]");
  if (!(cfg_.gamma > 0.0)) throw std::invalid_argument("gamma must be > 0");
  if (cfg_.patch_radius < 0) throw std::invalid_argument("patch_radius must be >= 0");
  if (cfg_.queue_capacity < 1) throw std::invalid_argument("queue_capacity must be >= 1");

  queues_.reserve(static_cast<std::size_t>(cfg_.workers));
  for (int i = 0; i < cfg_.workers; ++i) queues_.push_back(std::make_unique<WorkerQueue>());
  workers_.reserve(static_cast<std::size_t>(cfg_.workers));
  for (int i = 0; i < cfg_.workers; ++i) {
    workers_.emplace_back([this, i] { worker_loop(i); });
  }
}

PlanningService::~PlanningService() {
  stop_.store(true);
  for (auto& q : queues_) {
    std::lock_guard lk(q->mu);
    q->cv.notify_all();
  }
  for (auto& w : workers_) w.join();
}

bool PlanningService::ingest_position(std::uint64_t user_id, WorldPos pos) {
  if (!map_->cell_of(pos)) return false;
  positions_[user_id] = pos;
  dirty_ = true;
  return true;
}

void PlanningService::remove_user(std::uint64_t user_id) {
  if (positions_.erase(user_id) > 0) dirty_ = true;
}

std::shared_ptr<const DensityMap> PlanningService::publish_snapshot() {
  std::vector<WorldPos> pts;
  pts.reserve(positions_.size());
  for (const auto& [id, p] : positions_) pts.push_back(p);
  auto dm = std::make_shared<const DensityMap>(
      build_density(bin_positions(pts, *map_), *map_, {cfg_.gamma, cfg_.patch_radius}));
  snapshot_ = dm;
  dirty_ = false;
  last_publish_ = std::chrono::steady_clock::now();
  if (publish_hook_) publish_hook_(dm->version());
  return dm;
}

std::shared_ptr<const DensityMap> PlanningService::snapshot() {
  if (!snapshot_) publish_snapshot();
  return snapshot_;
}

std::shared_ptr<const DensityMap> PlanningService::ensure_snapshot_for_submit() {
  if (!snapshot_ ||
      (dirty_ && std::chrono::steady_clock::now() - last_publish_ >= cfg_.republish_min_interval)) {
    publish_snapshot();
  }
  return snapshot_;
}

void PlanningService::push_response(RouteResponse r) {
  std::lock_guard lk(results_mu_);
  results_.push_back(std::move(r));
  results_cv_.notify_one();
}

void PlanningService::enqueue(Job job) {
  auto& q = *queues_[next_worker_];
  next_worker_ = (next_worker_ + 1) % queues_.size();
  std::lock_guard lk(q.mu);
  if (q.jobs.size() >= cfg_.queue_capacity) {
    // Shed the oldest unserved request from the same user, if any; that one
    // still gets its (retriable) response, so nothing is silently lost.
    const auto dup = std::find_if(q.jobs.begin(), q.jobs.end(),
                                  [&](const Job& j) { return j.user_id == job.user_id; });
    if (dup != q.jobs.end()) {
      RouteResponse shed;
      shed.seq = dup->seq;
      shed.user_id = dup->user_id;
      shed.version = dup->snapshot->version();
      shed.err_code = 409;
      shed.err_msg = "superseded by a newer request";
      q.jobs.erase(dup);
      push_response(std::move(shed));
    } else {
      RouteResponse full;
      full.seq = job.seq;
      full.user_id = job.user_id;
      full.version = job.snapshot->version();
      full.err_code = 409;
      full.err_msg = "queue full, retry";
      push_response(std::move(full));
      return;
    }
  }
  q.jobs.push_back(std::move(job));
  q.cv.notify_one();
}

std::uint64_t PlanningService::submit(std::uint64_t user_id) {
  const std::uint64_t seq = next_seq_++;
  const auto it = positions_.find(user_id);
  if (it == positions_.end()) {
    RouteResponse r;
    r.seq = seq;
    r.user_id = user_id;
    r.err_code = 404;
    r.err_msg = "unknown user";
    push_response(std::move(r));
    return seq;
  }
  auto snap = ensure_snapshot_for_submit();
  enqueue(Job{seq, user_id, *map_->cell_of(it->second), std::move(snap)});
  return seq;
}

std::vector<RouteResponse> PlanningService::poll_responses() {
  std::vector<RouteResponse> out;
  std::lock_guard lk(results_mu_);
  out.swap(stray_);
  while (!results_.empty()) {
    out.push_back(std::move(results_.front()));
    results_.pop_front();
  }
  return out;
}

std::vector<RouteResponse> PlanningService::serve(std::span<const RouteRequest> requests) {
  if (dirty_ || !snapshot_) publish_snapshot();
  const auto snap = snapshot_;

  std::vector<RouteResponse> out;
  out.reserve(requests.size());
  const std::uint64_t seq0 = next_seq_;
  std::size_t awaiting = 0;
  for (const RouteRequest& req : requests) {
    const std::uint64_t seq = next_seq_++;
    const auto cell = map_->cell_of(req.src);
    if (!cell) {
      RouteResponse r;
      r.seq = seq;
      r.user_id = req.user_id;
      r.version = snap->version();
      r.err_code = 400;
      r.err_msg = "src out of bounds";
      out.push_back(std::move(r));
      continue;
    }
    enqueue(Job{seq, req.user_id, *cell, snap});
    ++awaiting;
  }
  const std::uint64_t seq1 = next_seq_;

  while (awaiting > 0) {
    std::unique_lock lk(results_mu_);
    results_cv_.wait(lk, [&] { return !results_.empty(); });
    while (!results_.empty()) {
      RouteResponse r = std::move(results_.front());
      results_.pop_front();
      if (r.seq >= seq0 && r.seq < seq1) {
        out.push_back(std::move(r));
        --awaiting;
      } else {
        stray_.push_back(std::move(r));  // belongs to the streaming interface
      }
    }
  }

  std::sort(out.begin(), out.end(),
            [](const RouteResponse& a, const RouteResponse& b) { return a.seq < b.seq; });
  return out;
}

void PlanningService::worker_loop(int worker_index) {
  auto& q = *queues_[static_cast<std::size_t>(worker_index)];
  Planner planner(*map_);
  const std::vector<GridCoord> exits(map_->exits().begin(), map_->exits().end());
  RouterOptions opts;
  opts.beta = cfg_.beta;

  for (;;) {
    Job job;
    {
      std::unique_lock lk(q.mu);
      q.cv.wait(lk, [&] { return stop_.load() || !q.jobs.empty(); });
      if (q.jobs.empty()) {
        if (stop_.load()) return;
        continue;
      }
      job = std::move(q.jobs.front());
      q.jobs.pop_front();
    }

    RouteResponse r;
    r.seq = job.seq;
    r.user_id = job.user_id;
    r.version = job.snapshot->version();
    try {
      auto route = planner.plan(*job.snapshot, job.src_cell, exits, opts);
      if (route) {
        r.route = std::move(*route);
      } else {
        r.err_code = 404;
        r.err_msg = "no route";
      }
    } catch (const std::exception& e) {
      r.err_code = 404;
      r.err_msg = e.what();
    }
    push_response(std::move(r));
  }
}

}  // namespace evac
