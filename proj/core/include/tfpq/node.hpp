#pragma once
#include <cstdint>

namespace tfpq {

enum class queue_error {
  none,
  empty_queue,
  stale_handle,
  wrong_queue,
  too_many_fingers,
};

inline const char* to_string(queue_error e) {
  switch (e) {
    case queue_error::none: return "none";
    case queue_error::empty_queue: return "empty-queue";
    case queue_error::stale_handle: return "stale-handle";
    case queue_error::wrong_queue: return "wrong-queue";
    case queue_error::too_many_fingers: return "too-many-fingers";
  }
  return "unknown";
}

// Ticket for one inserted element. Ids are never recycled; `queue` ties the
// handle to the queue instance that issued it.
struct handle {
  std::uint64_t id = 0;
  std::uint64_t queue = 0;
};

struct min_result {
  handle h;
  std::int64_t key = 0;
};

struct removed_info {
  std::int64_t key = 0;
  std::uint64_t id = 0;
  std::uint32_t tree_rank = 0;  // rank of the element's tree when removal started
};

struct erase_result {
  queue_error err = queue_error::none;
  removed_info info;
};

// One element of a heap-ordered (2,3) binomial tree.
//
// Child lists are doubly linked and a parent knows both ends, so splits and
// joins are O(1) pointer surgery. While a node is a tree root, `left`/`right`
// double as the links of the root row and `prefix_min`/`side` are meaningful.
//
// `reverse` encodes insertion order: it says whether this subtree's elements
// were all inserted before (set) or after (clear) the elements of its parent
// and of the subtrees of its right siblings. Folding the children of a node
// right-to-left around it with that rule reproduces the exact insertion order
// of the subtree, which is the chronology invariant everything here preserves.
struct node {
  std::int64_t key = 0;
  std::uint64_t ts = 0;  // insertion timestamp, unique within a queue
  std::uint64_t id = 0;  // handle id
  node* parent = nullptr;
  node* first_child = nullptr;  // leftmost, highest-rank child
  node* last_child = nullptr;   // rightmost, rank-0 child
  node* left = nullptr;
  node* right = nullptr;
  node* prefix_min = nullptr;  // roots: min-key root from the row's big end through here
  std::uint32_t rank = 0;
  std::uint32_t epoch = 0;  // which sub-queue owns the element (fingered queues)
  std::uint8_t side = 0;    // roots: which row of a double-ended queue
  bool reverse = false;
};

}  // namespace tfpq
