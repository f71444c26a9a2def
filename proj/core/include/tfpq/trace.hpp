#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "cost_meter.hpp"

// Text traces of queue operations plus a runner that executes them against
// the fingered queue, optionally cross-checking every answer against the
// naive oracle and validating all structural invariants after every step.
//
// Format: one operation per line, whitespace separated; everything from '#'
// to the end of a line is a comment. Operations:
//   I <key> [<id>]   insert; <id> names the element for later D lines (any
//                    unused unsigned 64-bit value; assigned automatically
//                    when omitted)
//   DM               delete the minimum
//   D <id>           delete the element inserted under <id>
//   FM               report the minimum
//   TF               plant a time finger
// Keys are signed 64-bit integers.
namespace tfpq::trace {

enum class op_kind { insert, delete_min, erase, find_min, finger };

struct op {
  op_kind kind = op_kind::insert;
  std::int64_t key = 0;   // insert only
  std::uint64_t id = 0;   // insert (when named) and erase
  bool has_id = false;    // insert carries an explicit id
};

struct parse_result {
  std::vector<op> ops;
  bool ok = true;
  std::size_t error_line = 0;  // 1-based
  std::string error;
};

parse_result parse(const std::string& text);
std::string serialize(const std::vector<op>& ops);

// Deterministic workload generation; identical bytes for identical arguments.
// Workloads: random (mixed ops, live count sawtoothing so oracle checks stay
// affordable), fifo (build up, then delete oldest-first under refills), lifo
// (build up, then insert/delete pairs at the newest end), burst-fingers
// (insert bursts separated by fingers, then deletes walking outward from the
// middle finger), adversarial-rank (insert/delete-oldest bursts that keep
// forcing big trees across the two-row boundary). Throws std::invalid_argument
// for an unknown name.
std::vector<op> generate(const std::string& workload, std::size_t size, std::uint64_t seed);
const std::vector<std::string>& workload_names();

struct op_record {
  std::size_t index = 0;  // position in the trace, 0-based
  op_kind kind = op_kind::insert;
  std::uint64_t id = 0;        // trace id (insert/erase/answers)
  std::int64_t key = 0;        // inserted key, or the answer key
  bool failed = false;         // op reported an error (empty queue, dead id)
  op_cost cost;                // meter delta for this op
  bool has_measures = false;   // the fields below are set (successful deletes
                               // under the oracle)
  std::uint64_t w = 0;         // live elements inserted after x
  std::uint64_t q = 0;         // live elements inserted before x
  std::uint64_t min_window = 0;  // smallest insertion window over all fingers
  std::uint32_t tree_rank = 0;   // rank of x's tree when the delete started
  double bound = 0;              // lg2(min_window + 2)
};

struct run_summary {
  std::size_t ops = 0;
  std::size_t inserts = 0;
  std::size_t deletes = 0;  // successful DM + D
  std::size_t find_mins = 0;
  std::size_t fingers = 0;
  std::size_t max_live = 0;

  std::uint64_t total_cost = 0;   // meter total over the whole trace
  op_cost cost_breakdown;
  std::uint64_t delete_cost = 0;  // meter total over successful deletes
  std::uint64_t naive_scans = 0;  // oracle's elements-touched counter
  double bound_sum = 0;           // Σ lg2(min_window+2) over successful deletes

  // least-squares fit of cumulative cost ≈ c1·(cumulative bound sum) + c2·ops
  double c1 = 0;
  double c2 = 0;

  // worst find-min comparison count, absolute and per (finger count + 1)
  std::uint64_t max_find_min_comparisons = 0;
  double max_find_min_normalized = 0;

  std::size_t identity_violations = 0;  // w + q + 1 != live count at a delete

  bool mismatch = false;  // engine answer differed from the oracle
  std::size_t mismatch_index = 0;
  std::string mismatch_what;
  std::string violation;  // first structural validation failure, if any
  std::size_t violation_index = 0;

  bool ok() const { return !mismatch && violation.empty(); }
};

struct run_options {
  bool oracle = true;
  bool validate = false;
  bool keep_records = false;
  bool collect_rank_pairs = false;  // (lg2(min_window+2), tree rank) per delete
  std::size_t max_fingers = 8;
};

struct run_result {
  run_summary summary;
  std::vector<op_record> records;                     // when keep_records
  std::vector<std::pair<double, double>> rank_pairs;  // when collect_rank_pairs
};

run_result run(const std::vector<op>& ops, const run_options& opt);

}  // namespace tfpq::trace
