#include "tfpq/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace tfpq::bounds {

namespace {

double lg2(double v) { return std::log2(v); }

// point updates, prefix sums, 1-based
class fenwick {
public:
  explicit fenwick(std::size_t n) : tree_(n + 1, 0) {}

  void add(std::size_t i, int delta) {
    for (; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
  }

  int prefix(std::size_t i) const {
    int s = 0;
    for (; i > 0; i -= i & (~i + 1)) s += tree_[i];
    return s;
  }

private:
  std::vector<int> tree_;
};

}  // namespace

working_set_result working_set_profile(const sequence& s) {
  working_set_result out;
  const std::size_t m = s.size();
  out.w.reserve(m);
  out.terms.reserve(m);
  // marks sit on the latest occurrence seen so far of each element, so the
  // number of distinct elements accessed in positions (p, i) is the number of
  // marks in that range just before position i is processed
  fenwick marks(m);
  std::unordered_map<std::string, std::size_t> last;
  for (std::size_t i = 1; i <= m; ++i) {
    const std::string& x = s[i - 1];
    auto it = last.find(x);
    std::uint64_t w;
    if (it == last.end()) {
      w = std::uint64_t(marks.prefix(i - 1));  // every distinct element so far
    } else {
      w = std::uint64_t(marks.prefix(i - 1) - marks.prefix(it->second));
      marks.add(it->second, -1);
    }
    marks.add(i, 1);
    last[x] = i;
    out.w.push_back(w);
    const double term = lg2(double(w) + 2.0);
    out.terms.push_back(term);
    out.total += term;
  }
  return out;
}

namespace {

std::int64_t rank_or_throw(const rank_map& rank_of, const std::string& e) {
  auto it = rank_of.find(e);
  if (it == rank_of.end()) throw std::invalid_argument("no rank for element '" + e + "'");
  return it->second;
}

std::vector<double> finger_terms(const sequence& s, const std::string& finger,
                                 const rank_map& rank_of) {
  const std::int64_t rf = rank_or_throw(rank_of, finger);
  std::vector<double> terms;
  terms.reserve(s.size());
  for (const std::string& x : s) {
    const std::int64_t d = std::abs(rank_or_throw(rank_of, x) - rf);
    terms.push_back(lg2(double(d) + 2.0));
  }
  return terms;
}

std::vector<double> optimality_terms(const sequence& s) {
  std::unordered_map<std::string, std::uint64_t> freq;
  for (const std::string& x : s) ++freq[x];
  std::vector<double> terms;
  terms.reserve(s.size());
  for (const std::string& x : s)
    terms.push_back(lg2(double(s.size()) / double(freq[x]) + 1.0));
  return terms;
}

}  // namespace

double static_finger_cost(const sequence& s, const std::string& finger, const rank_map& rank_of) {
  double total = 0;
  for (double t : finger_terms(s, finger, rank_of)) total += t;
  return total;
}

double static_optimality_cost(const sequence& s) {
  double total = 0;
  for (double t : optimality_terms(s)) total += t;
  return total;
}

bound_report unified_cost(const sequence& s, const std::string& finger, const rank_map& rank_of) {
  bound_report r;
  r.finger_terms = finger_terms(s, finger, rank_of);
  r.opt_terms = optimality_terms(s);
  r.ws_terms = working_set_profile(s).terms;
  r.unified_terms.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double u = std::min(r.finger_terms[i], std::min(r.opt_terms[i], r.ws_terms[i]));
    r.unified_terms.push_back(u);
    r.finger_total += r.finger_terms[i];
    r.opt_total += r.opt_terms[i];
    r.ws_total += r.ws_terms[i];
    r.unified_total += u;
  }
  return r;
}

interleave_report interleave(const sequence& y, const sequence& z,
                             const std::vector<bool>& take_z) {
  if (take_z.size() != y.size() + z.size())
    throw std::invalid_argument("interleave pattern must have |y| + |z| slots");
  sequence x;
  x.reserve(take_z.size());
  std::vector<std::size_t> from_y, from_z;  // x positions of each strand's accesses
  std::size_t yi = 0, zi = 0;
  for (bool tz : take_z) {
    if (tz) {
      if (zi >= z.size()) throw std::invalid_argument("interleave pattern overruns z");
      from_z.push_back(x.size());
      x.push_back(z[zi++]);
    } else {
      if (yi >= y.size()) throw std::invalid_argument("interleave pattern overruns y");
      from_y.push_back(x.size());
      x.push_back(y[yi++]);
    }
  }

  const auto px = working_set_profile(x);
  const auto py = working_set_profile(y);
  const auto pz = working_set_profile(z);
  interleave_report r;
  r.ws_x = px.total;
  r.ws_y = py.total;
  r.ws_z = pz.total;
  r.termwise_ok = true;
  for (std::size_t i = 0; i < y.size(); ++i)
    if (px.w[from_y[i]] < py.w[i]) r.termwise_ok = false;
  for (std::size_t i = 0; i < z.size(); ++i)
    if (px.w[from_z[i]] < pz.w[i]) r.termwise_ok = false;
  const double denom = r.ws_y + r.ws_z;
  r.ratio = denom > 0 ? r.ws_x / denom : 1.0;
  return r;
}

}  // namespace tfpq::bounds
