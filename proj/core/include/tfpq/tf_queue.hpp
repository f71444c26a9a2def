#pragma once
#include <optional>
#include <string>
#include <vector>

#include "deq.hpp"

namespace tfpq {

// Priority queue with declared time fingers. Each call to set_time_finger
// finalizes the current sub-queue and starts a fresh one, so the elements
// between two consecutive fingers form one epoch served by its own two-row
// queue. Inserts go to the live (last) epoch; find-min probes every epoch;
// removals are routed by the epoch recorded on the element. Removing x costs
// O(rank of x's tree), which tracks the smallest number of live elements
// inserted between x and any declared finger instant; find-min degrades
// linearly in the number of fingers, so the count is capped at construction.
class tf_queue {
public:
  explicit tf_queue(std::size_t max_fingers = 8) : max_fingers_(max_fingers) {
    epochs_.emplace_back(&ctx_, 0);
  }

  handle insert(std::int64_t key) {
    ctx_.meter.begin_op();
    node* x = epochs_.back().insert(key);
    return {x->id, ctx_.uid()};
  }

  std::optional<min_result> find_min() const {
    ctx_.meter.begin_op();
    node* m = min_node();
    if (!m) return std::nullopt;
    return min_result{{m->id, ctx_.uid()}, m->key};
  }

  erase_result delete_min() {
    ctx_.meter.begin_op();
    node* m = min_node();
    if (!m) return {queue_error::empty_queue, {}};
    return remove(m);
  }

  erase_result erase(handle h) {
    ctx_.meter.begin_op();
    queue_error err;
    node* x = ctx_.resolve(h, err);
    if (!x) return {err, {}};
    return remove(x);
  }

  // finalizes the live epoch at the current instant and opens a new one
  queue_error set_time_finger() {
    ctx_.meter.begin_op();
    if (fingers_.size() >= max_fingers_) return queue_error::too_many_fingers;
    fingers_.push_back(ctx_.last_ts());
    epochs_.emplace_back(&ctx_, static_cast<std::uint32_t>(epochs_.size()));
    return queue_error::none;
  }

  std::size_t size() const { return ctx_.live(); }
  bool empty() const { return size() == 0; }

  std::size_t finger_count() const { return fingers_.size(); }
  std::size_t max_fingers() const { return max_fingers_; }
  // insertion timestamps the fingers were planted at, in declaration order
  const std::vector<std::uint64_t>& finger_times() const { return fingers_; }

  std::size_t epoch_count() const { return epochs_.size(); }
  std::size_t epoch_size(std::size_t i) const { return epochs_[i].size(); }
  std::optional<std::uint32_t> epoch_of(handle h) const {
    queue_error err;
    node* x = ctx_.resolve(h, err);
    if (!x) return std::nullopt;
    return x->epoch;
  }

  const cost_meter& meter() const { return ctx_.meter; }
  op_cost last_op_cost() const { return ctx_.meter.last_op(); }

  std::vector<std::string> validate() const;

private:
  node* min_node() const {
    node* best = nullptr;
    for (const deq_core& e : epochs_) {
      node* m = e.min_node();
      if (!m) continue;
      if (!best || tree::less(m, best, ctx_.meter)) best = m;
    }
    return best;
  }

  erase_result remove(node* x) {
    auto rem = epochs_[x->epoch].remove(x);
    removed_info info{rem.dead->key, rem.dead->id, rem.tree_rank};
    ctx_.release(rem.dead);
    return {queue_error::none, info};
  }

  queue_ctx ctx_;
  std::vector<deq_core> epochs_;
  std::vector<std::uint64_t> fingers_;
  std::size_t max_fingers_;
};

}  // namespace tfpq
