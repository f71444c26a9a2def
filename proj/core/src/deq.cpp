#include "tfpq/deq.hpp"

namespace tfpq {

void deq_core::maybe_rebalance() {
  if (!rebalance_enabled_) return;
  while (true) {
    const int dl = left_.max_rank();
    const int dr = right_.max_rank();
    if (dl - dr >= 2)
      move_once(left_, right_);
    else if (dr - dl >= 2)
      move_once(right_, left_);
    else
      return;
  }
}

void deq_core::move_once(tree_row& heavy, tree_row& light) {
  cost_meter& m = ctx_->meter;
  node* taken[2];
  const int nt = heavy.take_max_rank_trees(taken, m);
  node* pieces[2][3];
  int np[2] = {0, 0};
  for (int t = 0; t < nt; ++t) np[t] = tree::split(taken[t], pieces[t], m);

  // taken[0] sat at the heavy big end, i.e. at the boundary between the rows;
  // the fragment that crosses over is its boundary-most piece: the oldest one
  // when the heavy row keeps its oldest block at the big end (right row), the
  // newest one otherwise (left row). The rest go back in heavy-row order.
  node* moved;
  node* seq[5];
  int n = 0;
  if (heavy.newest_at_small()) {
    moved = pieces[0][0];
    for (int i = 1; i < np[0]; ++i) seq[n++] = pieces[0][i];
    for (int i = 0; i < np[1]; ++i) seq[n++] = pieces[1][i];
  } else {
    moved = pieces[0][np[0] - 1];
    for (int i = np[0] - 2; i >= 0; --i) seq[n++] = pieces[0][i];
    for (int i = np[1] - 1; i >= 0; --i) seq[n++] = pieces[1][i];
  }
  heavy.push_big_sequence(seq, n, m);
  heavy.resolve_overflow(seq[n - 1], nullptr, m);
  light.push_big(moved, m);
  heavy.refresh_all_prefix_mins(m);
  light.refresh_all_prefix_mins(m);
}

namespace {

void check_epochs(const node* t, std::uint32_t epoch, std::vector<std::string>& out) {
  if (t->epoch != epoch)
    out.push_back("node id=" + std::to_string(t->id) + " tagged with epoch " +
                  std::to_string(t->epoch) + " inside epoch " + std::to_string(epoch));
  for (const node* c = t->first_child; c; c = c->right) check_epochs(c, epoch, out);
}

}  // namespace

std::vector<std::string> deq_core::validate() const {
  std::vector<std::string> out;
  for (auto& v : left_.validate()) out.push_back("left row: " + v);
  for (auto& v : right_.validate()) out.push_back("right row: " + v);
  if (rebalance_enabled_) {
    const int dl = left_.max_rank();
    const int dr = right_.max_rank();
    if (dl - dr > 1 || dr - dl > 1)
      out.push_back("rows out of balance: left max rank " + std::to_string(dl) +
                    ", right max rank " + std::to_string(dr));
  }
  // all left-row elements must be older than all right-row elements
  if (!left_.empty() && !right_.empty()) {
    std::uint64_t left_hi = 0;
    for (const node* r = left_.big_end(); r; r = r->right)
      left_hi = std::max(left_hi, tree::timestamp_span(r).hi);
    std::uint64_t right_lo = ~std::uint64_t{0};
    for (const node* r = right_.big_end(); r; r = r->right)
      right_lo = std::min(right_lo, tree::timestamp_span(r).lo);
    if (left_hi >= right_lo) out.push_back("left row holds an element newer than the right row");
  }
  std::size_t total = 0;
  for (const node* r = left_.big_end(); r; r = r->right) {
    total += tree::subtree_size(r);
    check_epochs(r, epoch_, out);
  }
  for (const node* r = right_.big_end(); r; r = r->right) {
    total += tree::subtree_size(r);
    check_epochs(r, epoch_, out);
  }
  if (total != size_)
    out.push_back("rows hold " + std::to_string(total) + " elements, expected " +
                  std::to_string(size_));
  return out;
}

std::vector<std::uint64_t> deq::chronology() const {
  std::vector<std::uint64_t> out;
  std::vector<const node*> lroots;
  for (const node* r = core_.left().big_end(); r; r = r->right) lroots.push_back(r);
  for (auto it = lroots.rbegin(); it != lroots.rend(); ++it)
    for (const node* p : tree::chronological_order(*it)) out.push_back(p->id);
  for (const node* r = core_.right().big_end(); r; r = r->right)
    for (const node* p : tree::chronological_order(r)) out.push_back(p->id);
  return out;
}

}  // namespace tfpq
