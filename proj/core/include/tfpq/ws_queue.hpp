#pragma once
#include <optional>
#include <string>
#include <vector>

#include "context.hpp"
#include "tree_row.hpp"

namespace tfpq {

// Priority queue over a single row of (2,3) binomial trees. Fresh elements
// enter as rank-0 roots at the row's newest end, so recently inserted
// elements live in small trees: insert and find-min are O(1), and removing
// an element costs O(rank of its tree), which tracks the number of live
// elements inserted after it (its working-set size).
class ws_queue {
public:
  ws_queue() : row_(/*newest_at_small=*/true, /*side=*/0) {}

  handle insert(std::int64_t key) {
    ctx_.meter.begin_op();
    node* x = ctx_.make_node(key, 0);
    row_.insert_root(x, ctx_.meter);
    return {x->id, ctx_.uid()};
  }

  // O(1), no key comparisons; nullopt when empty
  std::optional<min_result> find_min() const {
    ctx_.meter.begin_op();
    node* m = row_.min_root();
    if (!m) return std::nullopt;
    return min_result{{m->id, ctx_.uid()}, m->key};
  }

  erase_result delete_min() {
    ctx_.meter.begin_op();
    node* m = row_.min_root();
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

  std::size_t size() const { return ctx_.live(); }
  bool empty() const { return size() == 0; }

  const cost_meter& meter() const { return ctx_.meter; }
  op_cost last_op_cost() const { return ctx_.meter.last_op(); }

  std::vector<std::uint32_t> rank_profile() const { return row_.rank_profile(); }
  std::vector<std::string> validate() const { return row_.validate(); }

  // live element ids in insertion order, oldest first (test helper)
  std::vector<std::uint64_t> chronology() const {
    std::vector<std::uint64_t> out;
    for (const node* r = row_.big_end(); r; r = r->right)
      for (const node* p : tree::chronological_order(r)) out.push_back(p->id);
    return out;
  }

private:
  erase_result remove(node* x) {
    auto rem = row_.remove_node(x, ctx_.meter);
    removed_info info{rem.dead->key, rem.dead->id, rem.tree_rank};
    ctx_.release(rem.dead);
    return {queue_error::none, info};
  }

  queue_ctx ctx_;
  tree_row row_;
};

}  // namespace tfpq
