#include "tfpq/trace.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "tfpq/oracle.hpp"
#include "tfpq/tf_queue.hpp"

namespace tfpq::trace {

parse_result parse(const std::string& text) {
  parse_result res;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  auto fail = [&](const std::string& what) {
    res.ok = false;
    res.error_line = lineno;
    res.error = what;
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string mnemonic;
    if (!(ls >> mnemonic)) continue;  // blank or comment-only line

    op o;
    if (mnemonic == "I") {
      o.kind = op_kind::insert;
      if (!(ls >> o.key)) {
        fail("I needs a key");
        return res;
      }
      if (ls >> o.id) o.has_id = true;
    } else if (mnemonic == "DM") {
      o.kind = op_kind::delete_min;
    } else if (mnemonic == "D") {
      o.kind = op_kind::erase;
      if (!(ls >> o.id)) {
        fail("D needs an id");
        return res;
      }
    } else if (mnemonic == "FM") {
      o.kind = op_kind::find_min;
    } else if (mnemonic == "TF") {
      o.kind = op_kind::finger;
    } else {
      fail("unknown operation '" + mnemonic + "'");
      return res;
    }
    std::string extra;
    if (ls >> extra) {
      fail("trailing token '" + extra + "'");
      return res;
    }
    res.ops.push_back(o);
  }
  return res;
}

std::string serialize(const std::vector<op>& ops) {
  std::string out;
  for (const op& o : ops) {
    switch (o.kind) {
      case op_kind::insert:
        out += "I " + std::to_string(o.key);
        if (o.has_id) out += " " + std::to_string(o.id);
        break;
      case op_kind::delete_min: out += "DM"; break;
      case op_kind::erase: out += "D " + std::to_string(o.id); break;
      case op_kind::find_min: out += "FM"; break;
      case op_kind::finger: out += "TF"; break;
    }
    out += '\n';
  }
  return out;
}

namespace {

// Trace builder that tracks liveness, so generated deletes always target live
// elements and DM lines are only emitted on non-empty state. Labels equal the
// insertion counter. std::mt19937_64 with plain modulo keeps the byte stream
// identical across platforms (the <random> distributions are not portable).
struct builder {
  std::mt19937_64 rng;
  std::vector<op> ops;
  std::vector<std::pair<std::int64_t, std::uint64_t>> live;  // (key, label)
  std::uint64_t next_label = 1;
  std::size_t fingers = 0;

  explicit builder(std::uint64_t seed) : rng(seed) {}

  std::uint64_t pick(std::uint64_t n) { return rng() % n; }

  std::int64_t key() { return std::int64_t(pick(2001)) - 1000; }

  void insert() {
    const std::int64_t k = key();
    ops.push_back({op_kind::insert, k, next_label, true});
    live.emplace_back(k, next_label);
    ++next_label;
  }

  void remove_at(std::size_t i) {
    ops.push_back({op_kind::erase, 0, live[i].second, true});
    live.erase(live.begin() + long(i));
  }

  void delete_min() {
    ops.push_back({op_kind::delete_min, 0, 0, false});
    std::size_t best = 0;
    for (std::size_t i = 1; i < live.size(); ++i)
      if (live[i] < live[best]) best = i;
    live.erase(live.begin() + long(best));
  }

  void delete_oldest() {
    std::size_t best = 0;
    for (std::size_t i = 1; i < live.size(); ++i)
      if (live[i].second < live[best].second) best = i;
    remove_at(best);
  }

  void delete_newest() {
    std::size_t best = 0;
    for (std::size_t i = 1; i < live.size(); ++i)
      if (live[i].second > live[best].second) best = i;
    remove_at(best);
  }

  void find_min() { ops.push_back({op_kind::find_min, 0, 0, false}); }

  void finger() {
    ops.push_back({op_kind::finger, 0, 0, false});
    ++fingers;
  }
};

std::vector<op> gen_random(std::size_t size, std::uint64_t seed) {
  builder b(seed);
  bool growing = true;
  while (b.ops.size() < size) {
    if (b.live.size() <= 40) growing = true;
    if (b.live.size() >= 400) growing = false;
    const std::uint64_t r = b.pick(100);
    // insert-heavy on the way up, delete-heavy on the way down
    const std::uint64_t ins = growing ? 70 : 25;
    const std::uint64_t dm = growing ? 85 : 70;
    const std::uint64_t del = growing ? 95 : 90;
    if (r < ins || b.live.empty())
      b.insert();
    else if (r < dm)
      b.delete_min();
    else if (r < del)
      b.remove_at(b.pick(b.live.size()));
    else if (r < 99 || b.fingers >= 4)
      b.find_min();
    else
      b.finger();
  }
  return std::move(b.ops);
}

std::vector<op> gen_fifo(std::size_t size, std::uint64_t seed) {
  builder b(seed);
  const std::size_t build = std::min<std::size_t>(size / 2, 10000);
  while (b.ops.size() < build) b.insert();
  while (b.ops.size() < size) {
    if (b.ops.size() + 1 < size) b.insert();
    if (b.ops.size() < size && !b.live.empty()) b.delete_oldest();
  }
  return std::move(b.ops);
}

std::vector<op> gen_lifo(std::size_t size, std::uint64_t seed) {
  builder b(seed);
  const std::size_t build = std::min<std::size_t>(size / 2, 10000);
  while (b.ops.size() < build) b.insert();
  while (b.ops.size() < size) {
    if (b.ops.size() + 1 < size) b.insert();
    if (b.ops.size() < size && !b.live.empty()) b.delete_newest();
  }
  return std::move(b.ops);
}

std::vector<op> gen_burst_fingers(std::size_t size, std::uint64_t seed) {
  builder b(seed);
  const std::size_t burst = std::max<std::size_t>(size / 6, 1);
  for (int round = 0; round < 4 && b.ops.size() < size; ++round) {
    for (std::size_t i = 0; i < burst && b.ops.size() < size; ++i) b.insert();
    if (round < 3 && b.ops.size() < size) b.finger();
  }
  // walk outward from the second finger: each delete empties its own window
  // to that finger, so the cost bound stays constant while the queue is large
  std::uint64_t lo = 2 * burst;       // last label before the middle finger
  std::uint64_t hi = 2 * burst + 1;   // first label after it
  bool low_side = true;
  while (b.ops.size() < size && !b.live.empty()) {
    std::uint64_t target = 0;
    if (low_side && lo >= 1) {
      target = lo--;
    } else if (hi < b.next_label) {
      target = hi++;
    } else if (lo >= 1) {
      target = lo--;
    } else {
      break;
    }
    low_side = !low_side;
    for (std::size_t i = 0; i < b.live.size(); ++i)
      if (b.live[i].second == target) {
        b.remove_at(i);
        break;
      }
  }
  while (b.ops.size() < size) b.find_min();
  return std::move(b.ops);
}

std::vector<op> gen_adversarial_rank(std::size_t size, std::uint64_t seed) {
  builder b(seed);
  while (b.ops.size() < size) {
    for (std::uint64_t i = 1 + b.pick(64); i > 0 && b.ops.size() < size; --i) b.insert();
    for (std::uint64_t i = 1 + b.pick(48); i > 0 && b.ops.size() < size && !b.live.empty(); --i)
      b.delete_oldest();
  }
  return std::move(b.ops);
}

}  // namespace

const std::vector<std::string>& workload_names() {
  static const std::vector<std::string> names = {"random", "fifo", "lifo", "burst-fingers",
                                                 "adversarial-rank"};
  return names;
}

std::vector<op> generate(const std::string& workload, std::size_t size, std::uint64_t seed) {
  if (workload == "random") return gen_random(size, seed);
  if (workload == "fifo") return gen_fifo(size, seed);
  if (workload == "lifo") return gen_lifo(size, seed);
  if (workload == "burst-fingers") return gen_burst_fingers(size, seed);
  if (workload == "adversarial-rank") return gen_adversarial_rank(size, seed);
  throw std::invalid_argument("unknown workload '" + workload + "'");
}

run_result run(const std::vector<op>& ops, const run_options& opt) {
  run_result res;
  run_summary& s = res.summary;
  tf_queue q(opt.max_fingers);
  naive_pq ora;
  std::unordered_map<std::uint64_t, handle> engine_of;   // trace id -> handle
  std::unordered_map<std::uint64_t, std::uint64_t> oracle_of;  // trace id -> oracle id
  std::unordered_map<std::uint64_t, std::uint64_t> label_of;   // engine id -> trace id
  std::unordered_set<std::uint64_t> live_labels;
  std::vector<std::uint64_t> finger_times;
  std::uint64_t next_auto = 1;

  // accumulators for the (c1, c2) fit over per-prefix cumulative totals
  double s11 = 0, s12 = 0, s22 = 0, s1y = 0, s2y = 0;
  double cum_bound = 0;
  std::uint64_t cum_cost = 0;

  auto mismatch = [&](std::size_t i, const std::string& what) {
    s.mismatch = true;
    s.mismatch_index = i;
    s.mismatch_what = what;
  };

  for (std::size_t i = 0; i < ops.size(); ++i) {
    const op& o = ops[i];
    op_record rec;
    rec.index = i;
    rec.kind = o.kind;
    ++s.ops;

    switch (o.kind) {
      case op_kind::insert: {
        std::uint64_t label = o.id;
        if (!o.has_id) {
          while (engine_of.count(next_auto)) ++next_auto;
          label = next_auto++;
        } else if (live_labels.count(label)) {
          mismatch(i, "insert reuses id " + std::to_string(label) + " while it is live");
          break;
        }
        handle h = q.insert(o.key);
        engine_of[label] = h;
        label_of[h.id] = label;
        live_labels.insert(label);
        if (opt.oracle) {
          const std::uint64_t oid = ora.insert(o.key);
          oracle_of[label] = oid;
          if (oid != h.id) mismatch(i, "engine and oracle ids drifted apart");
        }
        rec.key = o.key;
        rec.id = label;
        ++s.inserts;
        break;
      }

      case op_kind::find_min: {
        auto r = q.find_min();
        rec.failed = !r;
        if (r) {
          rec.key = r->key;
          rec.id = label_of[r->h.id];
        }
        if (opt.oracle) {
          auto m = ora.find_min();
          if (!!r != !!m)
            mismatch(i, std::string("find-min emptiness: engine ") + (r ? "found" : "empty") +
                            ", oracle " + (m ? "found" : "empty"));
          else if (r && (r->key != m->key || r->h.id != m->ts))
            mismatch(i, "find-min: engine key " + std::to_string(r->key) + " id " +
                            std::to_string(r->h.id) + ", oracle key " + std::to_string(m->key) +
                            " id " + std::to_string(m->ts));
        }
        ++s.find_mins;
        break;
      }

      case op_kind::delete_min:
      case op_kind::erase: {
        std::optional<naive_pq::entry> target;  // oracle's view, pre-removal
        if (opt.oracle) {
          if (o.kind == op_kind::delete_min) {
            target = ora.find_min();
          } else {
            auto it = oracle_of.find(o.id);
            if (it != oracle_of.end() && ora.contains(it->second)) {
              for (const auto& e : ora.live())
                if (e.ts == it->second) {
                  target = e;
                  break;
                }
            }
          }
        }

        erase_result er;
        if (o.kind == op_kind::delete_min) {
          er = q.delete_min();
        } else {
          auto it = engine_of.find(o.id);
          er = q.erase(it != engine_of.end() ? it->second : handle{});
        }
        rec.failed = er.err != queue_error::none;
        if (!rec.failed) {
          rec.key = er.info.key;
          rec.id = label_of[er.info.id];
          rec.tree_rank = er.info.tree_rank;
          live_labels.erase(rec.id);
          ++s.deletes;
        }

        if (opt.oracle) {
          if (!!target == rec.failed) {
            mismatch(i, std::string("delete emptiness: engine ") +
                            (rec.failed ? "failed" : "succeeded") + ", oracle " +
                            (target ? "has the element" : "does not"));
            break;
          }
          if (target) {
            if (er.info.key != target->key || er.info.id != target->ts) {
              mismatch(i, "delete: engine key " + std::to_string(er.info.key) + " id " +
                              std::to_string(er.info.id) + ", oracle key " +
                              std::to_string(target->key) + " id " + std::to_string(target->ts));
              break;
            }
            const std::size_t n0 = ora.size();
            rec.w = ora.measure_w(target->ts);
            rec.q = ora.measure_q(target->ts);
            rec.min_window = ora.min_window(target->ts, finger_times);
            rec.bound = std::log2(double(rec.min_window) + 2.0);
            rec.has_measures = true;
            if (rec.w + rec.q + 1 != n0) ++s.identity_violations;
            ora.erase(target->ts);
            cum_bound += rec.bound;
            if (opt.collect_rank_pairs) res.rank_pairs.emplace_back(rec.bound, double(rec.tree_rank));
          }
        }
        break;
      }

      case op_kind::finger: {
        const queue_error e = q.set_time_finger();
        rec.failed = e != queue_error::none;
        if (!rec.failed) {
          finger_times.push_back(s.inserts);  // timestamps count inserts from 1
          ++s.fingers;
        }
        break;
      }
    }
    if (s.mismatch) break;

    rec.cost = q.last_op_cost();
    cum_cost += rec.cost.total();
    if (o.kind == op_kind::find_min) {
      s.max_find_min_comparisons = std::max(s.max_find_min_comparisons, rec.cost.comparisons);
      s.max_find_min_normalized =
          std::max(s.max_find_min_normalized,
                   double(rec.cost.comparisons) / double(finger_times.size() + 1));
    }
    if ((o.kind == op_kind::delete_min || o.kind == op_kind::erase) && !rec.failed)
      s.delete_cost += rec.cost.total();
    s.max_live = std::max(s.max_live, q.size());

    const double x1 = cum_bound;
    const double x2 = double(i + 1);
    const double y = double(cum_cost);
    s11 += x1 * x1;
    s12 += x1 * x2;
    s22 += x2 * x2;
    s1y += x1 * y;
    s2y += x2 * y;

    if (opt.validate) {
      auto v = q.validate();
      if (!v.empty()) {
        s.violation = v.front();
        s.violation_index = i;
      }
    }
    if (opt.keep_records) res.records.push_back(rec);
    if (!s.violation.empty()) break;
  }

  s.total_cost = q.meter().totals().total();
  s.cost_breakdown = q.meter().totals();
  s.naive_scans = ora.scans();
  s.bound_sum = cum_bound;

  const double det = s11 * s22 - s12 * s12;
  if (s11 > 0 && std::abs(det) > 1e-9 * s11 * s22) {
    s.c1 = (s1y * s22 - s2y * s12) / det;
    s.c2 = (s11 * s2y - s12 * s1y) / det;
  } else if (s22 > 0) {
    s.c1 = 0;
    s.c2 = s2y / s22;
  }
  return res;
}

}  // namespace tfpq::trace
