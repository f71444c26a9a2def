#pragma once
#include <string>
#include <vector>

#include "cost_meter.hpp"
#include "node.hpp"

// Primitives on heap-ordered (2,3) binomial trees. A tree of rank r has
// children of every rank 0..r-1 below its root, each once or twice, ordered
// by non-increasing rank left to right; sizes therefore lie in [2^r, 3^r].
// All primitives preserve heap order and the chronology invariant described
// on `node::reverse`.
namespace tfpq::tree {

// ties on key go to the chronologically older element, so the root of any
// tree is the oldest among its key-equal elements
bool less(const node* a, const node* b, cost_meter& m);

// Splits a tree of rank r >= 1 into 2 or 3 trees of rank r-1 by detaching the
// leftmost child(ren) of rank r-1. Performs no key comparisons. `out` receives
// the roots in chronological block order (oldest block first) with their
// reverse bits cleared; returns how many.
int split(node* t, node* out[3], cost_meter& m);

// Joins 2 or 3 trees of equal rank, given oldest block first, into one tree of
// rank+1 using exactly n-1 key comparisons. Losers become new leftmost
// children of the winner; their reverse bits record which side of the winner's
// block they came from.
node* join(node* const* chrono, int n, cost_meter& m);
node* join2(node* older, node* newer, cost_meter& m);

// Joins a tree `a` of rank r with a chronologically adjacent tree `b` of rank
// r-1 by splitting `a` and re-joining the 3 or 4 pieces in groups of two or
// three. Result has rank r or r+1.
node* join_mixed(node* a, node* b, bool b_older, cost_meter& m);

// Folds a chronologically adjacent tree `c` into `acc`; ranks may differ by at
// most one. Null `acc` yields `c`.
node* combine(node* acc, node* c, bool c_older, cost_meter& m);

struct detach_result {
  node* removed;
  node* rebuilt;  // rank r-1 or r; null when `t` was a singleton
};

// Detaches the root of `t` and rebuilds the remaining elements into a single
// tree by folding the root's subtrees together from the rightmost to the
// leftmost.
detach_result detach_root_rebuild(node* t, cost_meter& m);

// The insertion order of the subtree, reconstructed from the reverse bits:
// starting from the root, each child's block (processed right to left) goes
// in front of everything gathered so far when its reverse bit is set, after
// it otherwise.
std::vector<const node*> chronological_order(const node* t);

// min/max insertion timestamp over the subtree
struct ts_span {
  std::uint64_t lo = 0;
  std::uint64_t hi = 0;
};
ts_span timestamp_span(const node* t);

std::size_t subtree_size(const node* t);

// Full structural check of one tree: heap order (with the older-on-tie rule),
// child rank pattern, size bounds, link consistency, and strictly increasing
// timestamps under the chronological reconstruction. Violations come back as
// human-readable strings; empty means valid.
std::vector<std::string> validate(const node* t);

}  // namespace tfpq::tree
