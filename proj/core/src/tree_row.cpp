#include "tfpq/tree_row.hpp"

#include <cassert>

namespace tfpq {

void tree_row::link_between(node* big_nb, node* small_nb, node* x, cost_meter& m) {
  x->parent = nullptr;
  x->side = side_;
  x->prefix_min = x;  // placeholder until refreshed; never left dangling
  x->left = big_nb;
  x->right = small_nb;
  if (big_nb)
    big_nb->right = x;
  else
    big_ = x;
  if (small_nb)
    small_nb->left = x;
  else
    small_ = x;
  m.count_links(5);
}

void tree_row::unlink(node* x, cost_meter& m) {
  if (x->left)
    x->left->right = x->right;
  else
    big_ = x->right;
  if (x->right)
    x->right->left = x->left;
  else
    small_ = x->left;
  x->left = x->right = nullptr;
  m.count_links(4);
}

void tree_row::refresh_prefix_mins_from(node* from, cost_meter& m) {
  for (node* p = from; p; p = p->right) {
    node* bp = p->left ? p->left->prefix_min : nullptr;
    p->prefix_min = (bp && tree::less(bp, p, m)) ? bp : p;
    m.count_links(1);
  }
}

void tree_row::insert_root(node* x, cost_meter& m) {
  link_between(small_, nullptr, x, m);
  node* bp = x->left ? x->left->prefix_min : nullptr;
  x->prefix_min = (bp && tree::less(bp, x, m)) ? bp : x;
  m.count_links(1);
  resolve_overflow(x, nullptr, m);
}

void tree_row::resolve_overflow(node* seed, node** frontier, cost_meter& m) {
  node* work[64];
  int wn = 0;
  work[wn++] = seed;
  while (wn) {
    node* q = work[--wn];
    if (!q || q->parent) continue;  // already consumed by an earlier join
    node* hi = q;
    while (hi->left && hi->left->rank == q->rank) hi = hi->left;
    node* lo = q;
    while (lo->right && lo->right->rank == q->rank) lo = lo->right;
    int count = 1;
    for (node* p = hi; p != lo; p = p->right) ++count;
    if (count < 3) continue;

    node* a = hi;
    node* b = a->right;
    node* c = b->right;
    node* rest = (count > 3) ? c->right : nullptr;
    if (frontier && (*frontier == a || *frontier == b || *frontier == c))
      *frontier = a->left;
    node* big_nb = a->left;
    node* small_nb = c->right;
    unlink(a, m);
    unlink(b, m);
    unlink(c, m);
    // row order big->small is oldest-first exactly when the newest block sits
    // at the small end
    node* chrono[3] = {newest_at_small_ ? a : c, b, newest_at_small_ ? c : a};
    node* joined = tree::join(chrono, 3, m);
    link_between(big_nb, small_nb, joined, m);
    node* bp = joined->left ? joined->left->prefix_min : nullptr;
    joined->prefix_min = (bp && tree::less(bp, joined, m)) ? bp : joined;
    m.count_links(1);

    assert(wn + 2 <= 64);
    work[wn++] = joined;
    if (rest) work[wn++] = rest;
  }
}

tree_row::removal tree_row::remove_node(node* x, cost_meter& m) {
  // climb to the root, remembering the path so the piece holding x can be
  // tracked through the splits
  node* path[64];
  int plen = 0;
  for (node* p = x; p; p = p->parent) {
    assert(plen < 64);
    path[plen++] = p;
  }
  node* R = path[plen - 1];
  const std::uint32_t r0 = R->rank;
  node* B = R->left;
  node* S = R->right;
  node* frontier = B;  // big-most root whose prefix is untouched so far
  unlink(R, m);

  // descend: peel pieces off until x is a root, remembering for each piece
  // which side of x's block it belongs to; nearer pieces pop first
  struct ent {
    node* t;
    bool older;
  };
  ent stack[128];
  int sn = 0;
  node* T = R;
  int pi = plen - 1;
  while (T != x) {
    node* parts[3];
    const int n = tree::split(T, parts, m);
    int xi = -1;
    for (int i = 0; i < n; ++i)
      if (parts[i] == path[pi - 1]) {
        xi = i;
        --pi;
        break;
      }
    if (xi < 0)
      for (int i = 0; i < n; ++i)
        if (parts[i] == path[pi]) {
          xi = i;
          break;
        }
    assert(xi >= 0);
    for (int d = n - 1; d >= 1; --d) {
      if (xi - d >= 0) {
        assert(sn < 128);
        stack[sn++] = {parts[xi - d], true};
      }
      if (xi + d < n) {
        assert(sn < 128);
        stack[sn++] = {parts[xi + d], false};
      }
    }
    T = parts[xi];
  }

  auto det = tree::detach_root_rebuild(T, m);
  node* cur = det.rebuilt;
  while (sn) {
    ent e = stack[--sn];
    cur = tree::combine(cur, e.t, e.older, m);
  }

  if (cur) {
    link_between(B, S, cur, m);
    if (cur->rank + 1 == r0 && S && S->rank == r0) {
      // rank dropped below an equal-rank neighbor: merge the two slots
      node* s2 = S->right;
      unlink(cur, m);
      unlink(S, m);
      cur = tree::join_mixed(S, cur, /*b_older=*/newest_at_small_, m);
      link_between(B, s2, cur, m);
    }
    // thin the survivor toward the small end until its rank is within one of
    // its neighbor (all the way down at the row's end), so ranks stay gapless
    // where fresh elements live
    node* snb = cur->right;
    const std::uint32_t stop = snb ? snb->rank + 1 : 0;
    while (cur->rank > stop) {
      node* parts[3];
      const int n = tree::split(cur, parts, m);
      node* prev = cur->left;
      unlink(cur, m);
      if (newest_at_small_) {
        for (int i = 0; i < n; ++i) {
          link_between(prev, snb, parts[i], m);
          prev = parts[i];
        }
        cur = parts[n - 1];
      } else {
        for (int i = n - 1; i >= 0; --i) {
          link_between(prev, snb, parts[i], m);
          prev = parts[i];
        }
        cur = parts[0];
      }
    }
    resolve_overflow(cur, &frontier, m);
  }

  refresh_prefix_mins_from(frontier ? frontier->right : big_, m);
  return {det.removed, r0};
}

int tree_row::take_max_rank_trees(node* out[2], cost_meter& m) {
  assert(big_);
  const std::uint32_t mr = big_->rank;
  int n = 0;
  while (big_ && big_->rank == mr) {
    assert(n < 2);
    out[n++] = big_;
    unlink(big_, m);
  }
  return n;
}

void tree_row::push_big(node* t, cost_meter& m) {
  assert(empty() || t->rank > big_->rank);
  link_between(nullptr, big_, t, m);
}

void tree_row::push_big_sequence(node* const* seq, int n, cost_meter& m) {
  node* prev = nullptr;
  node* after = big_;
  for (int i = 0; i < n; ++i) {
    link_between(prev, after, seq[i], m);
    prev = seq[i];
  }
}

void tree_row::refresh_all_prefix_mins(cost_meter& m) { refresh_prefix_mins_from(big_, m); }

std::size_t tree_row::root_count() const {
  std::size_t n = 0;
  for (node* p = big_; p; p = p->right) ++n;
  return n;
}

std::vector<std::uint32_t> tree_row::rank_profile() const {
  std::vector<std::uint32_t> out;
  for (node* p = big_; p; p = p->right) out.push_back(p->rank);
  return out;
}

std::vector<std::string> tree_row::validate() const {
  std::vector<std::string> out;
  cost_meter scratch;  // validation does not charge the queue
  int per_rank = 0;
  const node* prev = nullptr;
  for (const node* p = big_; p; p = p->right) {
    if (p->parent) out.push_back("row root has a parent");
    if (p->side != side_) out.push_back("row root tagged with the wrong side");
    if (p->left != prev) out.push_back("row links disagree");
    if (prev) {
      if (p->rank > prev->rank) {
        out.push_back("root ranks increase toward the small end");
      }
      per_rank = (p->rank == prev->rank) ? per_rank + 1 : 1;
      if (per_rank > 2) out.push_back("more than two roots of rank " + std::to_string(p->rank));
      // blocks must be chronologically ordered along the row
      auto a = tree::timestamp_span(prev);
      auto b = tree::timestamp_span(p);
      const bool ok = newest_at_small_ ? a.hi < b.lo : b.hi < a.lo;
      if (!ok) out.push_back("tree blocks out of chronological order");
    } else {
      per_rank = 1;
    }
    // prefix minimum must equal the true prefix minimum
    node* expect = p->left ? p->left->prefix_min : nullptr;
    expect = (expect && tree::less(expect, p, scratch)) ? expect : const_cast<node*>(p);
    if (p->prefix_min != expect) out.push_back("prefix minimum is stale");
    for (auto& v : tree::validate(p)) out.push_back(v);
    prev = p;
  }
  if (prev != small_) out.push_back("small-end pointer is stale");
  return out;
}

}  // namespace tfpq
