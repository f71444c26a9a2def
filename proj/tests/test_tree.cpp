#include <algorithm>
#include <random>
#include <vector>

#include "doctest.h"
#include "tfpq/context.hpp"
#include "tfpq/tree.hpp"

using namespace tfpq;

namespace {

std::vector<std::uint64_t> chrono_ts(const node* t) {
  std::vector<std::uint64_t> out;
  for (const node* p : tree::chronological_order(t)) out.push_back(p->ts);
  return out;
}

std::vector<std::int64_t> chrono_keys(const node* t) {
  std::vector<std::int64_t> out;
  for (const node* p : tree::chronological_order(t)) out.push_back(p->key);
  return out;
}

bool strictly_increasing(const std::vector<std::uint64_t>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1]) return false;
  return true;
}

}  // namespace

TEST_CASE("joining two singletons keeps the insertion order reconstructible") {
  queue_ctx ctx;
  node* a = ctx.make_node(5, 0);
  node* b = ctx.make_node(7, 0);
  ctx.meter.begin_op();
  node* t = tree::join2(a, b, ctx.meter);
  CHECK(t == a);  // smaller key wins
  CHECK(t->rank == 1);
  CHECK(ctx.meter.last_op().comparisons == 1);
  CHECK(a->first_child == b);
  CHECK_FALSE(b->reverse);  // loser was inserted after the winner
  CHECK(chrono_keys(t) == std::vector<std::int64_t>{5, 7});
  CHECK(tree::validate(t).empty());
}

TEST_CASE("a newer winner records the older loser with its reverse bit") {
  queue_ctx ctx;
  node* a = ctx.make_node(7, 0);
  node* b = ctx.make_node(5, 0);
  node* t = tree::join2(a, b, ctx.meter);
  CHECK(t == b);
  CHECK(b->first_child == a);
  CHECK(a->reverse);  // loser was inserted before the winner
  CHECK(chrono_keys(t) == std::vector<std::int64_t>{7, 5});
  CHECK(tree::validate(t).empty());
}

TEST_CASE("key ties go to the chronologically older element") {
  queue_ctx ctx;
  node* a = ctx.make_node(5, 0);
  node* b = ctx.make_node(5, 0);
  node* t = tree::join2(a, b, ctx.meter);
  CHECK(t == a);
  CHECK(chrono_ts(t) == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("joining three singletons: middle winner gathers both sides") {
  queue_ctx ctx;
  node* n3 = ctx.make_node(3, 0);
  node* n1 = ctx.make_node(1, 0);
  node* n2 = ctx.make_node(2, 0);
  node* chrono[3] = {n3, n1, n2};
  ctx.meter.begin_op();
  node* t = tree::join(chrono, 3, ctx.meter);
  CHECK(t == n1);
  CHECK(t->rank == 1);
  CHECK(ctx.meter.last_op().comparisons == 2);  // n - 1 exactly
  // children left to right: the older loser (reverse set), then the newer one
  CHECK(t->first_child == n3);
  CHECK(n3->reverse);
  CHECK(t->last_child == n2);
  CHECK_FALSE(n2->reverse);
  CHECK(chrono_keys(t) == std::vector<std::int64_t>{3, 1, 2});
  CHECK(tree::validate(t).empty());
}

TEST_CASE("split undoes a three-way join, oldest block first") {
  queue_ctx ctx;
  node* n3 = ctx.make_node(3, 0);
  node* n1 = ctx.make_node(1, 0);
  node* n2 = ctx.make_node(2, 0);
  node* chrono[3] = {n3, n1, n2};
  node* t = tree::join(chrono, 3, ctx.meter);

  ctx.meter.begin_op();
  node* parts[3];
  const int n = tree::split(t, parts, ctx.meter);
  CHECK(ctx.meter.last_op().comparisons == 0);
  REQUIRE(n == 3);
  CHECK(parts[0] == n3);
  CHECK(parts[1] == n1);
  CHECK(parts[2] == n2);
  for (int i = 0; i < n; ++i) {
    CHECK(parts[i]->rank == 0);
    CHECK(parts[i]->parent == nullptr);
    CHECK_FALSE(parts[i]->reverse);
  }
}

TEST_CASE("detaching the root rebuilds the rest into one valid tree") {
  queue_ctx ctx;
  node* n3 = ctx.make_node(3, 0);
  node* n1 = ctx.make_node(1, 0);
  node* n2 = ctx.make_node(2, 0);
  node* chrono[3] = {n3, n1, n2};
  node* t = tree::join(chrono, 3, ctx.meter);

  auto det = tree::detach_root_rebuild(t, ctx.meter);
  CHECK(det.removed == n1);
  REQUIRE(det.rebuilt != nullptr);
  CHECK(det.rebuilt == n2);  // min of the remaining two
  CHECK(det.rebuilt->rank == 1);
  CHECK(chrono_keys(det.rebuilt) == std::vector<std::int64_t>{3, 2});
  CHECK(tree::validate(det.rebuilt).empty());
}

TEST_CASE("detaching a singleton's root leaves nothing") {
  queue_ctx ctx;
  node* a = ctx.make_node(9, 0);
  auto det = tree::detach_root_rebuild(a, ctx.meter);
  CHECK(det.removed == a);
  CHECK(det.rebuilt == nullptr);
}

TEST_CASE("join meter cost is exactly n-1 comparisons, split exactly zero") {
  queue_ctx ctx;
  std::mt19937_64 rng(7);
  for (int round = 0; round < 50; ++round) {
    node* a = ctx.make_node(std::int64_t(rng() % 100), 0);
    node* b = ctx.make_node(std::int64_t(rng() % 100), 0);
    ctx.meter.begin_op();
    node* t = tree::join2(a, b, ctx.meter);
    CHECK(ctx.meter.last_op().comparisons == 1);
    CHECK(ctx.meter.last_op().joins == 1);
    ctx.meter.begin_op();
    node* parts[3];
    tree::split(t, parts, ctx.meter);
    CHECK(ctx.meter.last_op().comparisons == 0);
    CHECK(ctx.meter.last_op().splits == 1);
  }
}

// Random sequences of joins, splits and mixed-rank folds over a pool of trees
// kept in insertion order; after every step each touched tree must validate
// and the pool must reproduce the exact insertion order.
TEST_CASE("chronology survives random join/split/fold storms") {
  std::mt19937_64 rng(42);
  for (int round = 0; round < 40; ++round) {
    queue_ctx ctx;
    std::vector<node*> pool;
    const std::size_t n = 20 + rng() % 60;
    for (std::size_t i = 0; i < n; ++i)
      pool.push_back(ctx.make_node(std::int64_t(rng() % 25), 0));

    auto check_pool = [&] {
      std::uint64_t prev = 0;
      for (node* t : pool) {
        auto errs = tree::validate(t);
        if (!errs.empty()) {
          CAPTURE(errs.front());
          REQUIRE(errs.empty());
        }
        for (std::uint64_t ts : chrono_ts(t)) {
          REQUIRE(ts > prev);
          prev = ts;
        }
      }
    };

    for (int step = 0; step < 300; ++step) {
      const std::uint64_t action = rng() % 3;
      if (action == 0) {
        // join a run of 2-3 equal-rank adjacent trees
        std::vector<std::size_t> starts;
        for (std::size_t i = 0; i + 1 < pool.size(); ++i)
          if (pool[i]->rank == pool[i + 1]->rank) starts.push_back(i);
        if (starts.empty()) continue;
        const std::size_t at = starts[rng() % starts.size()];
        int width = 2;
        if (at + 2 < pool.size() && pool[at + 2]->rank == pool[at]->rank && rng() % 2) width = 3;
        node* group[3];
        for (int i = 0; i < width; ++i) group[i] = pool[at + i];
        node* t = tree::join(group, width, ctx.meter);
        pool.erase(pool.begin() + long(at), pool.begin() + long(at + width));
        pool.insert(pool.begin() + long(at), t);
      } else if (action == 1) {
        // split a random splittable tree in place
        std::vector<std::size_t> cands;
        for (std::size_t i = 0; i < pool.size(); ++i)
          if (pool[i]->rank >= 1) cands.push_back(i);
        if (cands.empty()) continue;
        const std::size_t at = cands[rng() % cands.size()];
        node* parts[3];
        const int parts_n = tree::split(pool[at], parts, ctx.meter);
        pool.erase(pool.begin() + long(at));
        pool.insert(pool.begin() + long(at), parts, parts + parts_n);
      } else {
        // fold two adjacent trees whose ranks differ by at most one
        std::vector<std::size_t> cands;
        for (std::size_t i = 0; i + 1 < pool.size(); ++i) {
          const auto d = int(pool[i]->rank) - int(pool[i + 1]->rank);
          if (d >= -1 && d <= 1) cands.push_back(i);
        }
        if (cands.empty()) continue;
        const std::size_t at = cands[rng() % cands.size()];
        node* t = tree::combine(pool[at + 1], pool[at], /*c_older=*/true, ctx.meter);
        pool.erase(pool.begin() + long(at), pool.begin() + long(at + 2));
        pool.insert(pool.begin() + long(at), t);
      }
      check_pool();
    }

    // tear everything down root by root; rebuilt remainders must stay valid
    while (!pool.empty()) {
      const std::size_t at = rng() % pool.size();
      auto det = tree::detach_root_rebuild(pool[at], ctx.meter);
      pool.erase(pool.begin() + long(at));
      if (det.rebuilt) pool.insert(pool.begin() + long(at), det.rebuilt);
      check_pool();
    }
  }
}

TEST_CASE("subtree sizes stay inside the rank bounds under random growth") {
  queue_ctx ctx;
  std::mt19937_64 rng(3);
  std::vector<node*> pool;
  for (int i = 0; i < 243; ++i) pool.push_back(ctx.make_node(std::int64_t(rng() % 9), 0));
  // repeatedly join the leftmost equal-rank run until none remains
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 2 < pool.size(); ++i)
      if (pool[i]->rank == pool[i + 2]->rank) {
        node* group[3] = {pool[i], pool[i + 1], pool[i + 2]};
        node* t = tree::join(group, 3, ctx.meter);
        pool.erase(pool.begin() + long(i), pool.begin() + long(i + 3));
        pool.insert(pool.begin() + long(i), t);
        changed = true;
        break;
      }
  }
  for (node* t : pool) {
    const std::size_t size = tree::subtree_size(t);
    std::size_t lo = 1, hi = 1;
    for (std::uint32_t r = 0; r < t->rank; ++r) {
      lo *= 2;
      hi *= 3;
    }
    CHECK(size >= lo);
    CHECK(size <= hi);
    CHECK(tree::validate(t).empty());
  }
  // 243 = 3^5 singletons joined in threes gives exactly one rank-5 tree
  CHECK(pool.size() == 1);
  CHECK(pool.front()->rank == 5);
}

TEST_CASE("timestamp spans cover exactly the subtree's insertion window") {
  queue_ctx ctx;
  node* a = ctx.make_node(4, 0);
  node* b = ctx.make_node(2, 0);
  node* c = ctx.make_node(6, 0);
  node* chrono[3] = {a, b, c};
  node* t = tree::join(chrono, 3, ctx.meter);
  const auto s = tree::timestamp_span(t);
  CHECK(s.lo == 1);
  CHECK(s.hi == 3);
  CHECK(tree::subtree_size(t) == 3);
}
