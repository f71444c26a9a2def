#pragma once
#include <cstdint>

namespace tfpq {

// Tally of the primitive operations the amortized bounds are stated in:
// key comparisons, tree splits, tree joins and pointer-field writes.
struct op_cost {
  std::uint64_t comparisons = 0;
  std::uint64_t splits = 0;
  std::uint64_t joins = 0;
  std::uint64_t link_writes = 0;

  std::uint64_t total() const { return comparisons + splits + joins + link_writes; }
};

class cost_meter {
public:
  void count_comparison() { ++totals_.comparisons; }
  void count_split() { ++totals_.splits; }
  void count_join() { ++totals_.joins; }
  void count_links(std::uint64_t n) { totals_.link_writes += n; }

  // called at the start of every public queue operation
  void begin_op() { mark_ = totals_; }

  op_cost last_op() const {
    return {totals_.comparisons - mark_.comparisons, totals_.splits - mark_.splits,
            totals_.joins - mark_.joins, totals_.link_writes - mark_.link_writes};
  }
  const op_cost& totals() const { return totals_; }

private:
  op_cost totals_{};
  op_cost mark_{};
};

}  // namespace tfpq
