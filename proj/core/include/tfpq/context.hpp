#pragma once
#include <cstdint>
#include <memory>
#include <vector>

#include "cost_meter.hpp"
#include "node.hpp"

namespace tfpq {

inline std::uint64_t next_queue_uid() {
  static std::uint64_t counter = 0;
  return ++counter;
}

// Per-queue bookkeeping shared by all queue flavors: element storage indexed
// by handle id (ids are never recycled, dead slots stay burned), the insertion
// clock and the cost meter.
class queue_ctx {
public:
  queue_ctx() : uid_(next_queue_uid()) {}
  queue_ctx(const queue_ctx&) = delete;
  queue_ctx& operator=(const queue_ctx&) = delete;

  node* make_node(std::int64_t key, std::uint32_t epoch) {
    auto n = std::make_unique<node>();
    n->key = key;
    n->ts = next_ts_++;
    n->id = slots_.size() + 1;
    n->epoch = epoch;
    node* raw = n.get();
    slots_.push_back(std::move(n));
    ++live_;
    return raw;
  }

  // nullptr + err on a stale or foreign handle
  node* resolve(handle h, queue_error& err) const {
    if (h.queue != uid_) {
      err = queue_error::wrong_queue;
      return nullptr;
    }
    if (h.id == 0 || h.id > slots_.size() || !slots_[h.id - 1]) {
      err = queue_error::stale_handle;
      return nullptr;
    }
    err = queue_error::none;
    return slots_[h.id - 1].get();
  }

  void release(node* x) {
    slots_[x->id - 1].reset();
    --live_;
  }

  std::uint64_t uid() const { return uid_; }
  std::uint64_t last_ts() const { return next_ts_ - 1; }
  std::size_t live() const { return live_; }

  mutable cost_meter meter;

private:
  std::vector<std::unique_ptr<node>> slots_;
  std::uint64_t next_ts_ = 1;
  std::uint64_t uid_;
  std::size_t live_ = 0;
};

}  // namespace tfpq
