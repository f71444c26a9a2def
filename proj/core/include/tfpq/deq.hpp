#pragma once
#include <optional>
#include <string>
#include <vector>

#include "context.hpp"
#include "tree_row.hpp"

namespace tfpq {

// Two-row priority queue guts, sharing an externally owned element context so
// several instances can serve as epochs of one fingered queue.
//
// Elements live in a left row (newest block at its big end) and a right row
// (oldest block at its big end); the two big ends face each other, so reading
// the left row small-to-big and then the right row big-to-small reproduces
// insertion order. Insertions go to the right row; when one row's maximal
// rank exceeds the other's by two (an empty row counts as rank -1), the big
// trees next to the boundary are split and the boundary fragment moves over.
// An element's removal therefore costs O(rank of its tree), which tracks the
// smaller of: live elements inserted after it (right row), live elements
// inserted before it (left row).
class deq_core {
public:
  deq_core() = default;
  deq_core(queue_ctx* ctx, std::uint32_t epoch)
      : ctx_(ctx),
        epoch_(epoch),
        left_(/*newest_at_small=*/false, /*side=*/1),
        right_(/*newest_at_small=*/true, /*side=*/0) {}

  node* insert(std::int64_t key) {
    node* x = ctx_->make_node(key, epoch_);
    right_.insert_root(x, ctx_->meter);
    ++size_;
    maybe_rebalance();
    return x;
  }

  // null when empty; at most one key comparison
  node* min_node() const {
    node* l = left_.min_root();
    node* r = right_.min_root();
    if (!l) return r;
    if (!r) return l;
    return tree::less(l, r, ctx_->meter) ? l : r;
  }

  // x must be a live node of this instance
  tree_row::removal remove(node* x) {
    node* root = x;
    while (root->parent) root = root->parent;
    auto rem = (root->side == 1 ? left_ : right_).remove_node(x, ctx_->meter);
    --size_;
    maybe_rebalance();
    return rem;
  }

  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }
  std::uint32_t epoch() const { return epoch_; }

  const tree_row& left() const { return left_; }
  const tree_row& right() const { return right_; }

  void set_rebalance_enabled(bool on) { rebalance_enabled_ = on; }

  std::vector<std::string> validate() const;

private:
  void maybe_rebalance();
  // splits the heavy row's boundary trees and moves the boundary fragment over
  void move_once(tree_row& heavy, tree_row& light);

  queue_ctx* ctx_ = nullptr;
  std::uint32_t epoch_ = 0;
  std::size_t size_ = 0;
  bool rebalance_enabled_ = true;
  tree_row left_;
  tree_row right_;
};

// Standalone double-ended-bound priority queue: the public face of deq_core.
class deq {
public:
  deq() : core_(&ctx_, 0) {}

  handle insert(std::int64_t key) {
    ctx_.meter.begin_op();
    node* x = core_.insert(key);
    return {x->id, ctx_.uid()};
  }

  std::optional<min_result> find_min() const {
    ctx_.meter.begin_op();
    node* m = core_.min_node();
    if (!m) return std::nullopt;
    return min_result{{m->id, ctx_.uid()}, m->key};
  }

  erase_result delete_min() {
    ctx_.meter.begin_op();
    node* m = core_.min_node();
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

  std::size_t size() const { return core_.size(); }
  bool empty() const { return core_.empty(); }

  const cost_meter& meter() const { return ctx_.meter; }
  op_cost last_op_cost() const { return ctx_.meter.last_op(); }

  int left_max_rank() const { return core_.left().max_rank(); }
  int right_max_rank() const { return core_.right().max_rank(); }
  std::vector<std::uint32_t> left_rank_profile() const { return core_.left().rank_profile(); }
  std::vector<std::uint32_t> right_rank_profile() const { return core_.right().rank_profile(); }

  // disables row balancing: everything stays in the right row (test hook)
  void set_rebalance_enabled(bool on) { core_.set_rebalance_enabled(on); }

  std::vector<std::string> validate() const { return core_.validate(); }

  // live element ids in insertion order, oldest first (test helper)
  std::vector<std::uint64_t> chronology() const;

private:
  erase_result remove(node* x) {
    auto rem = core_.remove(x);
    removed_info info{rem.dead->key, rem.dead->id, rem.tree_rank};
    ctx_.release(rem.dead);
    return {queue_error::none, info};
  }

  queue_ctx ctx_;
  deq_core core_;
};

}  // namespace tfpq
