#include "tfpq/tree.hpp"

#include <cassert>
#include <list>

namespace tfpq::tree {

bool less(const node* a, const node* b, cost_meter& m) {
  m.count_comparison();
  if (a->key != b->key) return a->key < b->key;
  return a->ts < b->ts;
}

namespace {

// makes c the new leftmost child of p
void attach_front(node* p, node* c, bool rev, cost_meter& m) {
  c->parent = p;
  c->reverse = rev;
  c->left = nullptr;
  c->right = p->first_child;
  if (p->first_child)
    p->first_child->left = c;
  else
    p->last_child = c;
  p->first_child = c;
  m.count_links(5);
}

void clear_detached(node* c, cost_meter& m) {
  c->parent = nullptr;
  c->left = c->right = nullptr;
  c->reverse = false;
  m.count_links(4);
}

}  // namespace

int split(node* t, node* out[3], cost_meter& m) {
  assert(t->rank >= 1 && "cannot split a rank-0 tree");
  m.count_split();
  const std::uint32_t sub = t->rank - 1;
  node* d1 = t->first_child;  // leftmost child always has rank r-1
  node* d2 = (d1->right && d1->right->rank == sub) ? d1->right : nullptr;

  node* keep = d2 ? d2->right : d1->right;
  t->first_child = keep;
  if (keep)
    keep->left = nullptr;
  else
    t->last_child = nullptr;
  t->rank = sub;
  m.count_links(2);

  // Remainder first, then fold the detached children back in block order.
  // The rightmost detached child goes first: its bit positions it relative to
  // the remainder alone, the next one relative to everything gathered so far.
  int n = 0;
  out[n++] = t;
  for (node* d : {d2, d1}) {
    if (!d) continue;
    const bool before = d->reverse;
    clear_detached(d, m);
    if (before) {
      for (int i = n; i > 0; --i) out[i] = out[i - 1];
      out[0] = d;
    } else {
      out[n] = d;
    }
    ++n;
  }
  return n;
}

node* join(node* const* chrono, int n, cost_meter& m) {
  assert((n == 2 || n == 3) && "join takes two or three trees");
  assert(chrono[0]->rank == chrono[n - 1]->rank && "join needs equal ranks");
  m.count_join();
  int w = 0;
  for (int i = 1; i < n; ++i)
    if (less(chrono[i], chrono[w], m)) w = i;  // strict, so ties keep the older
  node* win = chrono[w];
  // Attach newer losers first (nearest block first), then older ones, so each
  // loser lands adjacent to the block gathered around the winner so far.
  for (int i = w + 1; i < n; ++i) attach_front(win, chrono[i], false, m);
  for (int i = w - 1; i >= 0; --i) attach_front(win, chrono[i], true, m);
  ++win->rank;
  return win;
}

node* join2(node* older, node* newer, cost_meter& m) {
  node* duo[2] = {older, newer};
  return join(duo, 2, m);
}

node* join_mixed(node* a, node* b, bool b_older, cost_meter& m) {
  assert(a->rank == b->rank + 1 && "join_mixed takes ranks r and r-1");
  node* parts[4];
  int n = split(a, parts, m);
  if (b_older) {
    for (int i = n; i > 0; --i) parts[i] = parts[i - 1];
    parts[0] = b;
  } else {
    parts[n] = b;
  }
  ++n;
  if (n == 3) return join(parts, 3, m);
  node* lo = join(parts, 2, m);
  node* hi = join(parts + 2, 2, m);
  node* duo[2] = {lo, hi};
  return join(duo, 2, m);
}

node* combine(node* acc, node* c, bool c_older, cost_meter& m) {
  if (!acc) return c;
  if (acc->rank == c->rank) return c_older ? join2(c, acc, m) : join2(acc, c, m);
  if (acc->rank == c->rank + 1) return join_mixed(acc, c, c_older, m);
  assert(c->rank == acc->rank + 1 && "combine needs ranks within one");
  return join_mixed(c, acc, !c_older, m);
}

detach_result detach_root_rebuild(node* t, cost_meter& m) {
  node* acc = nullptr;
  node* c = t->last_child;
  while (c) {
    node* next = c->left;
    const bool older = c->reverse;  // relative to the root and everything right of c
    clear_detached(c, m);
    acc = combine(acc, c, older, m);
    c = next;
  }
  t->first_child = t->last_child = nullptr;
  t->rank = 0;
  m.count_links(2);
  return {t, acc};
}

namespace {

void order_into(const node* t, std::list<const node*>& out) {
  out.push_back(t);
  for (const node* c = t->last_child; c; c = c->left) {
    std::list<const node*> sub;
    order_into(c, sub);
    if (c->reverse)
      out.splice(out.begin(), sub);
    else
      out.splice(out.end(), sub);
  }
}

}  // namespace

std::vector<const node*> chronological_order(const node* t) {
  std::list<const node*> l;
  order_into(t, l);
  return {l.begin(), l.end()};
}

ts_span timestamp_span(const node* t) {
  ts_span s{t->ts, t->ts};
  for (const node* c = t->last_child; c; c = c->left) {
    ts_span cs = timestamp_span(c);
    if (cs.lo < s.lo) s.lo = cs.lo;
    if (cs.hi > s.hi) s.hi = cs.hi;
  }
  return s;
}

std::size_t subtree_size(const node* t) {
  std::size_t n = 1;
  for (const node* c = t->first_child; c; c = c->right) n += subtree_size(c);
  return n;
}

namespace {

std::uint64_t pow_sat(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t v = 1;
  while (exp--) {
    if (v > (std::uint64_t(1) << 62) / base) return std::uint64_t(-1);
    v *= base;
  }
  return v;
}

struct checker {
  std::vector<std::string>& out;

  void fail(const node* at, const std::string& what) {
    out.push_back("node id=" + std::to_string(at->id) + ": " + what);
  }

  // verifies the subtree and returns its chronological block span; the block
  // is strictly increasing iff every fold step lands fully before or after
  // everything gathered so far
  ts_span check(const node* t) {
    ts_span span{t->ts, t->ts};
    if (t->last_child && t->last_child->rank != 0)
      fail(t, "rightmost child must have rank 0");
    std::uint32_t expect = 0;  // rank of the current run of children
    int run = 0;               // how many children of rank `expect` seen
    for (const node* c = t->last_child; c; c = c->left) {
      if (c->parent != t) fail(c, "parent link does not point at its parent");
      if (c->right && c->right->left != c) fail(c, "sibling links disagree");
      if (run == 0) {
        expect = c->rank;
        run = 1;
      } else if (c->rank == expect) {
        if (++run > 2) fail(t, "more than two children of rank " + std::to_string(c->rank));
      } else if (c->rank == expect + 1) {
        expect = c->rank;
        run = 1;
      } else {
        fail(t, "child rank " + std::to_string(c->rank) + " after rank " +
                    std::to_string(expect));
        expect = c->rank;
        run = 1;
      }
      if (c->key < t->key || (c->key == t->key && c->ts < t->ts))
        fail(t, "heap order violated by child id=" + std::to_string(c->id));
      ts_span cs = check(c);
      if (c->reverse) {
        if (cs.hi >= span.lo) fail(c, "reversed block does not precede its context");
        span.lo = cs.lo;
      } else {
        if (cs.lo <= span.hi) fail(c, "block does not follow its context");
        span.hi = cs.hi;
      }
    }
    const std::uint32_t top = t->first_child ? expect + 1 : 0;
    if (top != t->rank) fail(t, "stored rank " + std::to_string(t->rank) +
                                    " but children imply " + std::to_string(top));
    return span;
  }
};

}  // namespace

std::vector<std::string> validate(const node* t) {
  std::vector<std::string> out;
  checker ck{out};
  ck.check(t);
  const std::size_t size = subtree_size(t);
  if (size < pow_sat(2, t->rank) || size > pow_sat(3, t->rank))
    ck.fail(t, "size " + std::to_string(size) + " outside [2^r, 3^r] for rank " +
                   std::to_string(t->rank));
  return out;
}

}  // namespace tfpq::tree
