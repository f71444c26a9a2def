#pragma once
#include <string>
#include <vector>

#include "context.hpp"
#include "tree.hpp"

namespace tfpq {

// One row of (2,3) binomial trees, linked from its big end to its small end:
// root ranks never increase toward the small end and at most two roots share
// a rank. Tree blocks are chronologically ordered along the row;
// `newest_at_small` gives the direction (true for a plain queue row, which
// appends fresh elements at the small end; false for the mirrored left row of
// a double-ended queue). Every root carries a prefix-minimum pointer covering
// the roots from the big end through itself, so the small-end root resolves
// find-min in O(1).
class tree_row {
public:
  tree_row() = default;
  tree_row(bool newest_at_small, std::uint8_t side)
      : newest_at_small_(newest_at_small), side_(side) {}

  bool empty() const { return big_ == nullptr; }
  node* big_end() const { return big_; }
  node* small_end() const { return small_; }
  int max_rank() const { return big_ ? int(big_->rank) : -1; }
  bool newest_at_small() const { return newest_at_small_; }
  std::uint8_t side() const { return side_; }

  // the row minimum (oldest on key ties); null when empty. No comparisons.
  node* min_root() const { return small_ ? small_->prefix_min : nullptr; }

  // appends a fresh rank-0 element at the small end, then restores the
  // two-per-rank rule by joining triples. O(1) amortized.
  void insert_root(node* x, cost_meter& m);

  struct removal {
    node* dead = nullptr;
    std::uint32_t tree_rank = 0;  // rank of x's tree when the removal started
  };

  // Removes element x (any node of any tree in this row) and repairs the row.
  // Splits down to x's tree root, detaches it, folds everything back together,
  // re-links the survivor, then thins the survivor toward the small end until
  // its rank is within one of its small-side neighbor (down to rank 0 at the
  // row's end), re-joins rank triples and refreshes prefix minima. Cost is
  // O(rank of x's tree) primitives plus any triple-join cascade.
  removal remove_node(node* x, cost_meter& m);

  // rebalance support for double-ended queues --------------------------------

  // unlinks the big-end trees of maximal rank (one or two), big end first
  int take_max_rank_trees(node* out[2], cost_meter& m);
  // links one tree as the new big end
  void push_big(node* t, cost_meter& m);
  // links a run of trees at the big end, given in row order (big to small)
  void push_big_sequence(node* const* seq, int n, cost_meter& m);
  // joins adjacent same-rank triples until every rank holds at most two
  // roots again, cascading toward the big end; `seed` is any root whose rank
  // group may have overflowed
  void resolve_overflow(node* seed, node** frontier, cost_meter& m);
  void refresh_all_prefix_mins(cost_meter& m);

  // ---------------------------------------------------------------------------

  std::size_t root_count() const;
  std::vector<std::uint32_t> rank_profile() const;  // big end first
  std::vector<std::string> validate() const;

private:
  void link_between(node* big_nb, node* small_nb, node* x, cost_meter& m);
  void unlink(node* x, cost_meter& m);
  // recomputes prefix minima from `from` (big side first) to the small end
  void refresh_prefix_mins_from(node* from, cost_meter& m);

  node* big_ = nullptr;
  node* small_ = nullptr;
  bool newest_at_small_ = true;
  std::uint8_t side_ = 0;
};

}  // namespace tfpq
