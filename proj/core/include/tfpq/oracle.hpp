#pragma once
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace tfpq {

// Ground truth for tests: a priority queue answering every query by linear
// scan (same older-on-tie rule as the real structure), plus exact counts of
// the insertion-window measures the cost bounds are stated in. O(n) per
// query, by design; `scans` tallies elements touched, as the naive cost model
// the distribution-sensitive structure is contrasted against.
class naive_pq {
public:
  struct entry {
    std::int64_t key = 0;
    std::uint64_t ts = 0;  // doubles as the id; both count inserts from 1
  };

  std::uint64_t insert(std::int64_t key) {
    live_.push_back({key, ++next_ts_});
    return next_ts_;
  }

  std::optional<entry> find_min() const {
    scans_ += live_.size();
    const entry* best = nullptr;
    for (const entry& e : live_)
      if (!best || e.key < best->key || (e.key == best->key && e.ts < best->ts)) best = &e;
    if (!best) return std::nullopt;
    return *best;
  }

  std::optional<entry> delete_min() {
    auto m = find_min();
    if (m) erase_at(index_of(m->ts));
    return m;
  }

  std::optional<entry> erase(std::uint64_t id) {
    const std::size_t i = index_of(id);
    if (i == live_.size()) return std::nullopt;
    entry e = live_[i];
    erase_at(i);
    return e;
  }

  bool contains(std::uint64_t id) const { return index_of(id) != live_.size(); }
  std::size_t size() const { return live_.size(); }
  bool empty() const { return live_.empty(); }
  std::uint64_t last_ts() const { return next_ts_; }
  std::uint64_t scans() const { return scans_; }
  const std::vector<entry>& live() const { return live_; }

  // live elements inserted in the window between x and the instant f:
  // strictly after x up to f when f is on x's future side, strictly between
  // f and x otherwise (an element inserted at f precedes the instant)
  std::size_t measure_w_at(std::uint64_t id, std::uint64_t f) const {
    std::size_t n = 0;
    for (const entry& e : live_)
      if (f >= id ? (e.ts > id && e.ts <= f) : (e.ts > f && e.ts < id)) ++n;
    return n;
  }

  // live elements inserted after x / before x
  std::size_t measure_w(std::uint64_t id) const {
    return measure_w_at(id, std::numeric_limits<std::uint64_t>::max());
  }
  std::size_t measure_q(std::uint64_t id) const { return measure_w_at(id, 0); }

  // smallest window over the declared fingers plus the implicit ones at the
  // beginning of time and at infinity
  std::size_t min_window(std::uint64_t id, const std::vector<std::uint64_t>& fingers) const {
    std::size_t best = std::min(measure_q(id), measure_w(id));
    for (std::uint64_t f : fingers) best = std::min(best, measure_w_at(id, f));
    return best;
  }

private:
  std::size_t index_of(std::uint64_t id) const {
    std::size_t i = 0;
    while (i < live_.size() && live_[i].ts != id) ++i;
    scans_ += (i < live_.size()) ? i + 1 : live_.size();
    return i;
  }

  void erase_at(std::size_t i) { live_.erase(live_.begin() + long(i)); }

  std::vector<entry> live_;
  std::uint64_t next_ts_ = 0;
  mutable std::uint64_t scans_ = 0;
};

}  // namespace tfpq
