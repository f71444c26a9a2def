#pragma once
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

// Distribution-sensitive cost bounds for access sequences, all in log2
// units: the working-set bound, the static-finger bound, static optimality,
// and their per-access minimum (the unified bound). Plus the interleaving
// comparison: the working-set cost of an interleaved sequence against the sum
// of the costs of its two strands.
namespace tfpq::bounds {

using sequence = std::vector<std::string>;
using rank_map = std::unordered_map<std::string, std::int64_t>;

struct working_set_result {
  std::vector<std::uint64_t> w;  // distinct elements accessed since the last
                                 // access to this one (all prior distinct
                                 // elements on a first access)
  std::vector<double> terms;     // lg2(w+2)
  double total = 0;
};

// O(m log m) via a Fenwick tree over latest-occurrence marks
working_set_result working_set_profile(const sequence& s);

// Σ lg2(|rank(x_i) - rank(f)| + 2); throws std::invalid_argument when an
// element or the finger has no rank
double static_finger_cost(const sequence& s, const std::string& finger, const rank_map& rank_of);

// Σ lg2(m / q(x_i) + 1) with q = occurrences of x_i in the whole sequence
double static_optimality_cost(const sequence& s);

struct bound_report {
  std::vector<double> finger_terms;
  std::vector<double> opt_terms;
  std::vector<double> ws_terms;
  std::vector<double> unified_terms;  // per-access min of the other three
  double finger_total = 0;
  double opt_total = 0;
  double ws_total = 0;
  double unified_total = 0;
};

bound_report unified_cost(const sequence& s, const std::string& finger, const rank_map& rank_of);

struct interleave_report {
  double ws_x = 0;  // working-set total of the interleaved sequence
  double ws_y = 0;
  double ws_z = 0;
  // When the strands use disjoint element sets, every access is at least as
  // expensive inside the interleaving as in its own strand (its window keeps
  // the same endpoints and only gains foreign elements), so ws_x >= ws_y +
  // ws_z. A shared element breaks this: an access in the other strand can cut
  // a window short.
  bool termwise_ok = false;
  double ratio = 1.0;  // ws_x / (ws_y + ws_z)
};

// `take_z[i]` says slot i of the interleaving comes from z; throws
// std::invalid_argument unless |take_z| == |y| + |z|
interleave_report interleave(const sequence& y, const sequence& z,
                             const std::vector<bool>& take_z);

}  // namespace tfpq::bounds
