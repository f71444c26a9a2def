#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfpq/bounds.hpp"
#include "tfpq/trace.hpp"

namespace {

constexpr int exit_ok = 0;
constexpr int exit_failed = 1;  // oracle mismatch or invariant violation
constexpr int exit_usage = 2;   // bad arguments, unreadable or malformed input

bool read_file(const std::string& path, std::string& out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return false;
  std::ostringstream ss;
  ss << in.rdbuf();
  out = ss.str();
  return true;
}

const char* kind_name(tfpq::trace::op_kind k) {
  using tfpq::trace::op_kind;
  switch (k) {
    case op_kind::insert: return "I";
    case op_kind::delete_min: return "DM";
    case op_kind::erase: return "D";
    case op_kind::find_min: return "FM";
    case op_kind::finger: return "TF";
  }
  return "?";
}

nlohmann::json record_json(const tfpq::trace::op_record& r) {
  nlohmann::json j{
      {"index", r.index},
      {"op", kind_name(r.kind)},
      {"key", r.key},
      {"id", r.id},
      {"failed", r.failed},
      {"cost",
       {{"comparisons", r.cost.comparisons},
        {"splits", r.cost.splits},
        {"joins", r.cost.joins},
        {"link_writes", r.cost.link_writes}}},
  };
  if (r.has_measures) {
    j["w"] = r.w;
    j["q"] = r.q;
    j["min_window"] = r.min_window;
    j["tree_rank"] = r.tree_rank;
    j["bound"] = r.bound;
  }
  return j;
}

nlohmann::json summary_json(const tfpq::trace::run_summary& s) {
  return nlohmann::json{
      {"summary", true},
      {"ops", s.ops},
      {"inserts", s.inserts},
      {"deletes", s.deletes},
      {"find_mins", s.find_mins},
      {"fingers", s.fingers},
      {"max_live", s.max_live},
      {"total_cost", s.total_cost},
      {"delete_cost", s.delete_cost},
      {"naive_scans", s.naive_scans},
      {"bound_sum", s.bound_sum},
      {"c1", s.c1},
      {"c2", s.c2},
      {"max_find_min_comparisons", s.max_find_min_comparisons},
      {"max_find_min_normalized", s.max_find_min_normalized},
      {"identity_violations", s.identity_violations},
      {"ok", s.ok()},
  };
}

void print_summary(const tfpq::trace::run_summary& s, bool oracle) {
  std::cout << "ops: " << s.ops << " (inserts " << s.inserts << ", deletes " << s.deletes
            << ", find-mins " << s.find_mins << ", fingers " << s.fingers << ")\n"
            << "max live: " << s.max_live << "\n"
            << "total cost: " << s.total_cost << " (comparisons " << s.cost_breakdown.comparisons
            << ", splits " << s.cost_breakdown.splits << ", joins " << s.cost_breakdown.joins
            << ", link writes " << s.cost_breakdown.link_writes << ")\n";
  if (s.deletes > 0)
    std::cout << "mean delete cost: " << double(s.delete_cost) / double(s.deletes) << "\n";
  if (oracle) {
    std::cout << "bound sum: " << s.bound_sum << "\n";
    std::printf("fit: total_cost ~ %.3f * bound_sum + %.3f * ops\n", s.c1, s.c2);
    std::cout << "naive scans: " << s.naive_scans << "\n";
  }
  if (s.find_mins > 0)
    std::cout << "worst find-min comparisons: " << s.max_find_min_comparisons << " ("
              << s.max_find_min_normalized << " per finger+1)\n";
}

int cmd_run(const std::string& trace_path, bool oracle, bool validate,
            const std::string& report_path, std::size_t max_fingers) {
  std::string text;
  if (!read_file(trace_path, text)) {
    std::cerr << "cannot read trace file '" << trace_path << "'\n";
    return exit_usage;
  }
  auto parsed = tfpq::trace::parse(text);
  if (!parsed.ok) {
    std::cerr << trace_path << ":" << parsed.error_line << ": " << parsed.error << "\n";
    return exit_usage;
  }

  tfpq::trace::run_options opt;
  opt.oracle = oracle;
  opt.validate = validate;
  opt.keep_records = !report_path.empty();
  opt.max_fingers = max_fingers;
  auto res = tfpq::trace::run(parsed.ops, opt);

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report file '" << report_path << "'\n";
      return exit_usage;
    }
    for (const auto& r : res.records) out << record_json(r).dump() << "\n";
    out << summary_json(res.summary).dump() << "\n";
  }

  print_summary(res.summary, oracle);

  if (res.summary.mismatch) {
    std::cerr << "oracle mismatch at op " << res.summary.mismatch_index << ": "
              << res.summary.mismatch_what << "\n"
              << "shortest failing prefix:\n"
              << tfpq::trace::serialize(std::vector<tfpq::trace::op>(
                     parsed.ops.begin(),
                     parsed.ops.begin() + long(res.summary.mismatch_index) + 1));
    return exit_failed;
  }
  if (!res.summary.violation.empty()) {
    std::cerr << "invariant violation after op " << res.summary.violation_index << ": "
              << res.summary.violation << "\n";
    return exit_failed;
  }
  return exit_ok;
}

int cmd_gen(const std::string& workload, std::size_t size, std::uint64_t seed,
            const std::string& out_path) {
  std::vector<tfpq::trace::op> ops;
  try {
    ops = tfpq::trace::generate(workload, size, seed);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  }
  const std::string text = tfpq::trace::serialize(ops);
  if (out_path.empty()) {
    std::cout << text;
    return exit_ok;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) {
    std::cerr << "cannot write '" << out_path << "'\n";
    return exit_usage;
  }
  out << text;
  return exit_ok;
}

int cmd_analyze(const std::string& seq_path, const std::string& finger,
                const std::string& ranks_path, const std::string& report_path) {
  std::string text;
  if (!read_file(seq_path, text)) {
    std::cerr << "cannot read sequence file '" << seq_path << "'\n";
    return exit_usage;
  }
  tfpq::bounds::sequence seq;
  {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string tok;
      while (ls >> tok) seq.push_back(tok);
    }
  }
  if (seq.empty()) {
    std::cerr << "sequence file '" << seq_path << "' holds no accesses\n";
    return exit_usage;
  }

  tfpq::bounds::rank_map ranks;
  {
    std::string rtext;
    if (!read_file(ranks_path, rtext)) {
      std::cerr << "cannot read rank file '" << ranks_path << "'\n";
      return exit_usage;
    }
    std::istringstream in(rtext);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      std::istringstream ls(line);
      std::string name;
      if (!(ls >> name)) continue;
      std::int64_t rank;
      std::string extra;
      if (!(ls >> rank) || (ls >> extra)) {
        std::cerr << ranks_path << ":" << lineno << ": expected '<element> <rank>'\n";
        return exit_usage;
      }
      ranks[name] = rank;
    }
  }

  tfpq::bounds::bound_report rep;
  try {
    rep = tfpq::bounds::unified_cost(seq, finger, ranks);
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return exit_usage;
  }

  if (!report_path.empty()) {
    std::ofstream out(report_path);
    if (!out) {
      std::cerr << "cannot write report file '" << report_path << "'\n";
      return exit_usage;
    }
    for (std::size_t i = 0; i < seq.size(); ++i)
      out << nlohmann::json{{"index", i},
                            {"element", seq[i]},
                            {"working_set", rep.ws_terms[i]},
                            {"static_finger", rep.finger_terms[i]},
                            {"static_optimality", rep.opt_terms[i]},
                            {"unified", rep.unified_terms[i]}}
                 .dump()
          << "\n";
    out << nlohmann::json{{"summary", true},
                          {"accesses", seq.size()},
                          {"working_set_total", rep.ws_total},
                          {"static_finger_total", rep.finger_total},
                          {"static_optimality_total", rep.opt_total},
                          {"unified_total", rep.unified_total}}
               .dump()
        << "\n";
  }

  std::cout << "accesses: " << seq.size() << "\n"
            << "working-set total: " << rep.ws_total << "\n"
            << "static-finger total: " << rep.finger_total << "\n"
            << "static-optimality total: " << rep.opt_total << "\n"
            << "unified total: " << rep.unified_total << "\n";
  return exit_ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"trace harness for the fingered priority queue"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "execute a trace file");
  std::string trace_path, run_report;
  bool oracle = false, validate = false;
  std::size_t max_fingers = 8;
  run->add_option("--trace", trace_path, "trace file")->required();
  run->add_flag("--oracle", oracle, "cross-check every answer against the naive oracle");
  run->add_flag("--validate", validate, "check all structural invariants after every op");
  run->add_option("--report", run_report, "write per-op records as JSON lines");
  run->add_option("--max-fingers", max_fingers, "time-finger cap (default 8)");

  auto* gen = app.add_subcommand("gen", "generate a workload trace");
  std::string workload, gen_out;
  std::size_t size = 1000;
  std::uint64_t seed = 1;
  std::string workloads;
  for (const auto& w : tfpq::trace::workload_names()) workloads += (workloads.empty() ? "" : ", ") + w;
  gen->add_option("--workload", workload, "one of: " + workloads)->required();
  gen->add_option("--size", size, "number of operations")->required();
  gen->add_option("--seed", seed, "rng seed")->required();
  gen->add_option("--out", gen_out, "output file (stdout when omitted)");

  auto* analyze = app.add_subcommand("analyze", "compute access-sequence cost bounds");
  std::string seq_path, finger, ranks_path, an_report;
  analyze->add_option("--seq", seq_path, "whitespace-separated access sequence file")->required();
  analyze->add_option("--finger", finger, "finger element for the static-finger bound")->required();
  analyze->add_option("--ranks", ranks_path, "rank file: one '<element> <rank>' per line")->required();
  analyze->add_option("--report", an_report, "write per-access terms as JSON lines");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return exit_usage;
  }

  if (run->parsed()) return cmd_run(trace_path, oracle, validate, run_report, max_fingers);
  if (gen->parsed()) return cmd_gen(workload, size, seed, gen_out);
  return cmd_analyze(seq_path, finger, ranks_path, an_report);
}
