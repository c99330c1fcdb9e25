#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "hatcc/bp_engine.hpp"
#include "hatcc/compile.hpp"
#include "hatcc/generators.hpp"
#include "hatcc/graph_io.hpp"
#include "hatcc/metrics.hpp"
#include "hatcc/nerve.hpp"
#include "hatcc/oracle.hpp"
#include "hatcc/reports.hpp"
#include "hatcc/sectors.hpp"

namespace hatcc::cli {

using nlohmann::json;

namespace {

// Thrown for bad parameter values that CLI11 cannot see (ranges that
// depend on other flags, unknown list entries).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TopologyFlags {
  std::string kind = "cycle";
  int n = 6;
  int rows = 3;
  int cols = 3;
  double p = 0.2;

  Topology build() const {
    if (kind == "cycle") return Topology::cycle(n);
    if (kind == "grid") return Topology::grid(rows, cols);
    return Topology::random(n, p);
  }
};

void add_topology_flags(CLI::App* cmd, TopologyFlags& t) {
  cmd->add_option("--topology", t.kind, "cycle | grid | random")
      ->check(CLI::IsMember({"cycle", "grid", "random"}))
      ->capture_default_str();
  cmd->add_option("--n", t.n, "vertex count (cycle, random)")->capture_default_str();
  cmd->add_option("--rows", t.rows, "grid rows")->capture_default_str();
  cmd->add_option("--cols", t.cols, "grid columns")->capture_default_str();
  cmd->add_option("--p", t.p, "extra-edge probability (random)")->capture_default_str();
}

struct BpFlags {
  int max_iters = 200;
  double threshold = 1e-6;
  double damping = 0.0;
  std::string init = "uniform";
  std::uint64_t seed = 0;

  BpOptions build() const {
    BpOptions o;
    o.max_iters = max_iters;
    o.threshold = threshold;
    o.damping = damping;
    o.init = init == "random" ? InitKind::Random : InitKind::Uniform;
    o.seed = seed;
    return o;
  }
};

void add_bp_flags(CLI::App* cmd, BpFlags& b) {
  cmd->add_option("--max-iters", b.max_iters, "BP iteration budget")->capture_default_str();
  cmd->add_option("--threshold", b.threshold, "BP residual threshold")->capture_default_str();
  cmd->add_option("--damping", b.damping, "BP damping in [0, 1)")->check(CLI::Range(0.0, 1.0))->capture_default_str();
  cmd->add_option("--init", b.init, "message initialization: uniform | random")
      ->check(CLI::IsMember({"uniform", "random"}))
      ->capture_default_str();
  cmd->add_option("--bp-seed", b.seed, "seed for random message initialization")->capture_default_str();
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << text;
}

json read_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot open " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ParseError(path, e.what());
  }
}

// ---- gen -------------------------------------------------------------

struct GenFlags {
  std::string family;
  std::string out;
  std::string parity;
  TopologyFlags topo;
  int k = 2;
  double eta = 0.1;
  double eps = 0.0;
  std::uint64_t seed = 0;
  int d = 2;
  double noise = 0.0;
  bool consistent = false;
  double field = 0.0;
  double coupling = 2.0;
  int card = 2;
  bool closed = false;
};

int cmd_gen(const GenFlags& g, std::ostream& out) {
  FactorGraph graph;
  json truth = {{"family", g.family}};
  if (g.family == "four-cycle") {
    if (g.parity != "odd" && g.parity != "even") throw UsageError("four-cycle needs --parity odd|even");
    graph = gen_four_cycle(g.parity == "odd" ? Parity::Odd : Parity::Even);
    truth["parity"] = g.parity;
  } else if (g.family == "zk") {
    auto inst = gen_zk_sync(g.topo.build(), g.k, g.eta, g.eps, g.seed);
    graph = std::move(inst.graph);
    truth.update({{"seed", g.seed}, {"topology", g.topo.kind}, {"k", g.k}, {"eta", g.eta}, {"eps", g.eps},
                  {"truth", inst.truth}, {"edges", inst.edges}, {"shifts", inst.shifts},
                  {"corrupted", inst.corrupted}});
  } else if (g.family == "perm") {
    auto inst = gen_permutation_graph(g.topo.build(), g.d, g.noise, g.seed, {g.consistent, g.field});
    graph = std::move(inst.graph);
    truth.update({{"seed", g.seed}, {"topology", g.topo.kind}, {"d", g.d}, {"noise", g.noise},
                  {"consistent", g.consistent}, {"edges", inst.edges}, {"permutations", inst.permutations}});
  } else if (g.family == "grid") {
    graph = gen_grid_mrf(g.topo.rows, g.topo.cols, g.coupling, g.field, g.seed);
    truth.update({{"seed", g.seed}, {"rows", g.topo.rows}, {"cols", g.topo.cols}, {"coupling", g.coupling},
                  {"field", g.field}});
  } else if (g.family == "tree") {
    graph = gen_random_tree(g.topo.n, g.seed, g.card);
    truth.update({{"seed", g.seed}, {"n", g.topo.n}, {"cardinality", g.card}});
  } else {
    graph = gen_chain(g.topo.n, g.closed, g.seed);
    truth.update({{"seed", g.seed}, {"n", g.topo.n}, {"closed", g.closed}});
  }
  if (g.out.empty()) {
    out << dump_graph(graph);
  } else {
    save_graph(graph, g.out);
    write_text(g.out + ".truth.json", truth.dump(2) + "\n");
  }
  return 0;
}

// ---- infer -----------------------------------------------------------

struct InferFlags {
  std::string instance;
  std::string method = "hatcc";
  BpFlags bp;
  std::string sector_mode = "bp";
  int base = -1;
  double support_tol = 0.0;
  bool checksum = false;
  bool force_cluster_tree = false;
  std::string truth;
  std::optional<double> log_floor;
};

SectorOptions sector_options(const InferFlags& f) {
  SectorOptions o;
  if (f.base >= 0) o.base = f.base;
  o.mode = f.sector_mode == "decomposition" ? SectorMode::DecompositionOnly : SectorMode::SectorBp;
  o.support_tolerance = f.support_tol;
  o.bp = f.bp.build();
  return o;
}

std::vector<HolonomyReport> chord_reports(const FactorGraph& graph, double support_tol) {
  HolonomyOptions ho;
  ho.support_tolerance = support_tol;
  const auto nerve = build_factor_nerve(graph);
  const auto bb = backbone(nerve);
  return holonomy_reports(graph, nerve, bb, ho);
}

void attach_truth_metrics(json& doc, const std::vector<std::vector<double>>& marginals, const InferFlags& f) {
  if (f.truth.empty() || marginals.empty()) return;
  const json t = read_json(f.truth);
  if (!t.contains("truth")) throw ParseError(f.truth + ".truth", "missing required field");
  const auto truth = t.at("truth").get<std::vector<State>>();
  doc["metrics"] = {{"mean_log_score", mean_log_score(marginals, truth, f.log_floor)},
                    {"map_hamming", map_hamming(argmax_assignment(marginals), truth)}};
  if (std::isinf(doc["metrics"]["mean_log_score"].get<double>())) doc["metrics"]["mean_log_score"] = "-inf";
}

int cmd_infer(const InferFlags& f, std::ostream& out) {
  const FactorGraph graph = load_graph(f.instance);
  if (f.checksum) {
    std::vector<std::vector<int>> orbits;
    if (f.method == "sectors") orbits = sector_infer(graph, sector_options(f)).orbits;
    out << checksum_hex(structural_checksum(chord_reports(graph, f.support_tol), orbits)) << "\n";
    return 0;
  }
  json doc;
  std::vector<std::vector<double>> marginals;
  if (f.method == "bp") {
    BpEngine engine(graph);
    const auto t0 = std::chrono::steady_clock::now();
    auto r = engine.run(f.bp.build());
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    doc = bp_to_json(r);
    doc["timings"] = {{"total", ms}};
    marginals = r.beliefs.marginals;
  } else if (f.method == "hatcc") {
    HatccOptions o;
    o.holonomy.support_tolerance = f.support_tol;
    o.force_cluster_tree = f.force_cluster_tree;
    auto r = hatcc_infer(graph, o);
    doc = hatcc_to_json(r);
    marginals = r.marginals;
  } else if (f.method == "sectors") {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = sector_infer(graph, sector_options(f));
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    doc = sectors_to_json(r);
    doc["timings"] = {{"total", ms}};
    marginals = r.marginals;
  } else {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = exact_marginals(graph);
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    doc = oracle_to_json(r);
    doc["timings"] = {{"total", ms}};
    if (!r.unsat) marginals = r.marginals;
  }
  doc["method"] = f.method;
  attach_truth_metrics(doc, marginals, f);
  out << doc.dump(2) << "\n";
  return 0;
}

// ---- diagnose --------------------------------------------------------

struct DiagnoseFlags {
  std::string instance;
  std::string dot;
  double support_tol = 0.0;
  bool checksum = false;
};

int cmd_diagnose(const DiagnoseFlags& f, std::ostream& out) {
  const FactorGraph graph = load_graph(f.instance);
  const auto nerve = build_factor_nerve(graph);
  const auto bb = backbone(nerve);
  HolonomyOptions ho;
  ho.support_tolerance = f.support_tol;
  const auto reports = holonomy_reports(graph, nerve, bb, ho);
  if (f.checksum) {
    out << checksum_hex(structural_checksum(reports)) << "\n";
    return 0;
  }
  json edges = json::array();
  for (const auto& e : nerve.edges) {
    edges.push_back({{"factors", {e.u, e.v}}, {"interface", e.interface}, {"weight", e.weight}});
  }
  const auto sig = holonomy_signature(reports);
  json doc = {{"nerve", {{"factors", nerve.num_factors}, {"edges", edges}}},
              {"backbone", {{"tree_edges", bb.tree_edges}, {"chords", bb.chords}, {"roots", bb.roots}}},
              {"holonomy", holonomy_to_json(reports)},
              {"signature", {{"chords", sig.generators},
                             {"nontrivial", sig.nontrivial_generators},
                             {"mode_sizes", sig.orbit_sizes}}},
              {"checksum", checksum_hex(structural_checksum(reports))}};
  if (!f.dot.empty()) write_text(f.dot, nerve_to_dot(nerve, bb));
  out << doc.dump(2) << "\n";
  return 0;
}

// ---- sweep -----------------------------------------------------------

struct SweepFlags {
  std::string family = "zk";
  TopologyFlags topo;
  int k = 2;
  std::string etas = "0.1";
  std::string epss = "0,0.25,0.5,0.75,1";
  int seeds = 10;
  std::uint64_t seed_start = 0;
  std::string methods = "bp,sectors";
  std::string out;
  BpFlags bp;
  double support_tol = 0.0;
  std::string sector_mode = "bp";
};

struct SweepJob {
  double eta;
  double eps;
  std::uint64_t seed;
  std::string method;
};

MetricsRow run_job(const SweepFlags& s, const SweepJob& job) {
  const Topology topo = s.topo.build();
  const auto inst = gen_zk_sync(topo, s.k, job.eta, job.eps, job.seed);
  MetricsRow row;
  row.family = s.family;
  row.topology = topo.name();
  row.n = topo.vertex_count();
  row.k = s.k;
  row.eta = job.eta;
  row.eps = job.eps;
  row.seed = job.seed;
  row.method = job.method;
  row.status = "ok";

  std::optional<ExactMarginals> exact;
  try {
    exact = exact_marginals(inst.graph);
  } catch (const CapacityError&) {
  }

  SectorOptions so;
  so.mode = s.sector_mode == "decomposition" ? SectorMode::DecompositionOnly : SectorMode::SectorBp;
  so.support_tolerance = s.support_tol;
  so.bp = s.bp.build();
  // the signature columns describe the instance, whatever the method
  const auto forest = pairwise_forest(inst.graph, default_base_vertex(inst.graph));
  const auto gens = base_generators(inst.graph, forest, s.support_tol);
  const auto orbits = orbit_partition(gens, static_cast<std::size_t>(s.k));
  for (const auto& g : gens) row.nontrivial_generators += g.is_identity() ? 0 : 1;
  row.orbit_count = static_cast<int>(orbits.size());
  for (const auto& o : orbits) row.max_orbit_size = std::max(row.max_orbit_size, static_cast<int>(o.size()));
  row.chords = static_cast<int>(backbone(build_factor_nerve(inst.graph)).chords.size());

  std::vector<std::vector<double>> marginals;
  if (job.method == "bp") {
    BpEngine engine(inst.graph);
    auto r = engine.run(s.bp.build());
    row.converged = r.converged;
    row.oscillating = r.oscillating;
    row.iterations = r.iterations;
    marginals = std::move(r.beliefs.marginals);
  } else if (job.method == "sectors") {
    auto r = sector_infer(inst.graph, so);
    if (r.unsat) row.status = "unsat";
    row.converged = std::all_of(r.sectors.begin(), r.sectors.end(), [](const auto& x) { return x.converged; });
    for (const auto& x : r.sectors) row.iterations = std::max(row.iterations, x.iterations);
    row.dominant_weight = holonomy_signature(r).dominant_weight();
    marginals = std::move(r.marginals);
  } else if (job.method == "hatcc") {
    HatccOptions ho;
    ho.holonomy.support_tolerance = s.support_tol;
    auto r = hatcc_infer(inst.graph, ho);
    row.status = r.status == HatccStatus::Ok ? (r.diagnostics.exactness_certified ? "ok" : "uncertified") : "unsat";
    row.converged = r.status == HatccStatus::Ok;
    marginals = std::move(r.marginals);
  } else {
    if (!exact) throw UsageError("oracle method exceeds the enumeration cap for this sweep");
    row.status = exact->unsat ? "unsat" : "ok";
    row.converged = true;
    marginals = exact->marginals;
  }
  if (marginals.empty()) {
    row.mean_tv = std::numeric_limits<double>::quiet_NaN();
    row.mean_log_score = std::numeric_limits<double>::quiet_NaN();
    row.map_hamming = -1;
    return row;
  }
  row.mean_tv = exact && !exact->unsat ? mean_tv(marginals, exact->marginals) : std::numeric_limits<double>::quiet_NaN();
  row.mean_log_score = mean_log_score(marginals, inst.truth);
  row.map_hamming = map_hamming(argmax_assignment(marginals), inst.truth);
  return row;
}

unsigned thread_budget() {
  unsigned n = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("HATCC_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
  }
  return n;
}

std::vector<double> parse_doubles(const std::string& list, const char* flag) {
  std::vector<double> out;
  for (const auto& item : split_list(list)) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError(std::string(flag) + ": '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw UsageError(std::string(flag) + " needs at least one value");
  return out;
}

int cmd_sweep(const SweepFlags& s, std::ostream& out) {
  if (s.family != "zk") throw UsageError("sweep supports the zk family");
  const auto etas = parse_doubles(s.etas, "--eta");
  const auto epss = parse_doubles(s.epss, "--eps");
  const auto methods = split_list(s.methods);
  for (const auto& m : methods) {
    if (m != "bp" && m != "sectors" && m != "hatcc" && m != "oracle") throw UsageError("unknown method '" + m + "'");
  }
  for (double eta : etas) {
    if (!(eta > 0.0 && eta < 1.0)) throw UsageError("--eta values must lie in (0, 1)");
  }
  for (double eps : epss) {
    if (!(eps >= 0.0 && eps <= 1.0)) throw UsageError("--eps values must lie in [0, 1]");
  }
  std::vector<SweepJob> jobs;
  for (double eta : etas) {
    for (double eps : epss) {
      for (int i = 0; i < s.seeds; ++i) {
        for (const auto& m : methods) jobs.push_back({eta, eps, s.seed_start + static_cast<std::uint64_t>(i), m});
      }
    }
  }
  std::vector<MetricsRow> rows(jobs.size());
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        rows[i] = run_job(s, jobs[i]);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned threads = std::min<unsigned>(thread_budget(), static_cast<unsigned>(std::max<std::size_t>(1, jobs.size())));
  for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::sort(rows.begin(), rows.end(), [](const MetricsRow& a, const MetricsRow& b) {
    return std::tie(a.eta, a.eps, a.seed, a.method) < std::tie(b.eta, b.eps, b.seed, b.method);
  });
  std::ostringstream csv;
  csv << csv_header() << "\n";
  for (const auto& r : rows) csv << csv_row(r) << "\n";
  if (s.out.empty()) {
    out << csv.str();
  } else {
    write_text(s.out, csv.str());
  }
  return 0;
}

// ---- compare ---------------------------------------------------------

struct CompareFlags {
  std::string instance;
  std::string methods = "bp,hatcc,sectors";
  BpFlags bp;
  double support_tol = 0.0;
};

int cmd_compare(const CompareFlags& f, std::ostream& out) {
  const FactorGraph graph = load_graph(f.instance);
  const auto exact = exact_marginals(graph);
  json doc = {{"oracle", oracle_to_json(exact)}, {"methods", json::object()}};
  for (const auto& m : split_list(f.methods)) {
    json entry;
    std::vector<std::vector<double>> marginals;
    if (m == "bp") {
      BpEngine engine(graph);
      auto r = engine.run(f.bp.build());
      entry = {{"status", r.beliefs.any_degenerate() ? "degenerate" : "ok"},
               {"converged", r.converged},
               {"oscillating", r.oscillating},
               {"iterations", r.iterations}};
      marginals = r.beliefs.marginals;
    } else if (m == "hatcc") {
      HatccOptions o;
      o.holonomy.support_tolerance = f.support_tol;
      auto r = hatcc_infer(graph, o);
      entry = {{"status", r.status == HatccStatus::Ok ? "ok" : "unsat"},
               {"exactness_certified", r.diagnostics.exactness_certified}};
      marginals = r.marginals;
    } else if (m == "sectors") {
      SectorOptions o;
      o.support_tolerance = f.support_tol;
      o.bp = f.bp.build();
      auto r = sector_infer(graph, o);
      entry = {{"status", r.unsat ? "unsat" : "ok"}, {"orbits", r.orbits.size()}};
      marginals = r.marginals;
    } else {
      throw UsageError("unknown method '" + m + "'");
    }
    if (!exact.unsat && !marginals.empty()) entry["mean_tv"] = mean_tv(marginals, exact.marginals);
    doc["methods"][m] = entry;
  }
  out << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Discrete factor-graph inference with holonomy-aware tree compilation"};
  app.name("hatcc");
  app.require_subcommand(1);

  GenFlags gen;
  auto* gen_cmd = app.add_subcommand("gen", "generate an instance file");
  gen_cmd->add_option("family", gen.family, "four-cycle | zk | perm | grid | tree | chain")
      ->required()
      ->check(CLI::IsMember({"four-cycle", "zk", "perm", "grid", "tree", "chain"}));
  gen_cmd->add_option("--out", gen.out, "instance path; a <out>.truth.json sidecar is written next to it");
  gen_cmd->add_option("--parity", gen.parity, "four-cycle: odd | even")->check(CLI::IsMember({"odd", "even"}));
  add_topology_flags(gen_cmd, gen.topo);
  gen_cmd->add_option("--k", gen.k, "zk: group order")->capture_default_str();
  gen_cmd->add_option("--eta", gen.eta, "zk: noise level in (0, 1)")->capture_default_str();
  gen_cmd->add_option("--eps", gen.eps, "zk: corrupted fraction of off-tree edges")->capture_default_str();
  auto* seed_opt = gen_cmd->add_option("--seed", gen.seed, "random seed");
  gen_cmd->add_option("--d", gen.d, "perm: domain size")->capture_default_str();
  gen_cmd->add_option("--noise", gen.noise, "perm: uniform mixing weight")->capture_default_str();
  gen_cmd->add_flag("--consistent", gen.consistent, "perm: cycle-consistent permutations");
  gen_cmd->add_option("--field", gen.field, "perm, grid: unary field strength")->capture_default_str();
  gen_cmd->add_option("--coupling", gen.coupling, "grid: agreement weight")->capture_default_str();
  gen_cmd->add_option("--card", gen.card, "tree: variable cardinality")->capture_default_str();
  gen_cmd->add_flag("--closed", gen.closed, "chain: close into a ring");

  InferFlags infer;
  auto* infer_cmd = app.add_subcommand("infer", "run inference and print JSON");
  infer_cmd->add_option("instance", infer.instance, "instance file")->required()->check(CLI::ExistingFile);
  infer_cmd->add_option("--method", infer.method, "bp | hatcc | sectors | oracle")
      ->check(CLI::IsMember({"bp", "hatcc", "sectors", "oracle"}))
      ->capture_default_str();
  add_bp_flags(infer_cmd, infer.bp);
  infer_cmd->add_option("--sector-mode", infer.sector_mode, "sectors: bp | decomposition")
      ->check(CLI::IsMember({"bp", "decomposition"}))
      ->capture_default_str();
  infer_cmd->add_option("--base", infer.base, "sectors: base variable (default: highest degree)");
  infer_cmd->add_option("--support-tol", infer.support_tol, "treat entries at or below this as zero for supports")
      ->capture_default_str();
  infer_cmd->add_flag("--checksum", infer.checksum, "print only the structural holonomy/orbit checksum");
  infer_cmd->add_flag("--force-cluster-tree", infer.force_cluster_tree, "hatcc: skip the tree fast path");
  infer_cmd->add_option("--truth", infer.truth, "ground-truth sidecar for log-score and Hamming metrics")
      ->check(CLI::ExistingFile);
  infer_cmd->add_option("--log-floor", infer.log_floor, "floor probabilities before taking logs");

  DiagnoseFlags diag;
  auto* diag_cmd = app.add_subcommand("diagnose", "print nerve, backbone and holonomy report");
  diag_cmd->add_option("instance", diag.instance, "instance file")->required()->check(CLI::ExistingFile);
  diag_cmd->add_option("--dot", diag.dot, "write the backbone as Graphviz DOT");
  diag_cmd->add_option("--support-tol", diag.support_tol, "support tolerance")->capture_default_str();
  diag_cmd->add_flag("--checksum", diag.checksum, "print only the structural checksum");

  SweepFlags sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "corruption sweep, one CSV row per run");
  sweep_cmd->add_option("--family", sweep.family, "instance family (zk)")->capture_default_str();
  add_topology_flags(sweep_cmd, sweep.topo);
  sweep_cmd->add_option("--k", sweep.k, "group order")->capture_default_str();
  sweep_cmd->add_option("--eta", sweep.etas, "comma-separated eta grid")->capture_default_str();
  sweep_cmd->add_option("--eps", sweep.epss, "comma-separated epsilon grid")->capture_default_str();
  sweep_cmd->add_option("--seeds", sweep.seeds, "seeds per grid point")->check(CLI::PositiveNumber)->capture_default_str();
  sweep_cmd->add_option("--seed-start", sweep.seed_start, "first seed")->capture_default_str();
  sweep_cmd->add_option("--methods", sweep.methods, "comma-separated: bp, sectors, hatcc, oracle")->capture_default_str();
  sweep_cmd->add_option("--out", sweep.out, "CSV path (stdout when omitted)");
  sweep_cmd->add_option("--support-tol", sweep.support_tol, "support tolerance for generators")->capture_default_str();
  sweep_cmd->add_option("--sector-mode", sweep.sector_mode, "bp | decomposition")
      ->check(CLI::IsMember({"bp", "decomposition"}))
      ->capture_default_str();
  add_bp_flags(sweep_cmd, sweep.bp);

  CompareFlags cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "run several methods against the oracle");
  cmp_cmd->add_option("instance", cmp.instance, "instance file")->required()->check(CLI::ExistingFile);
  cmp_cmd->add_option("--methods", cmp.methods, "comma-separated: bp, hatcc, sectors")->capture_default_str();
  cmp_cmd->add_option("--support-tol", cmp.support_tol, "support tolerance")->capture_default_str();
  add_bp_flags(cmp_cmd, cmp.bp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (*gen_cmd) {
      const bool seeded = gen.family != "four-cycle";
      if (seeded && seed_opt->count() == 0) throw UsageError("--seed is required for the " + gen.family + " family");
      return cmd_gen(gen, out);
    }
    if (*infer_cmd) return cmd_infer(infer, out);
    if (*diag_cmd) return cmd_diagnose(diag, out);
    if (*sweep_cmd) return cmd_sweep(sweep, out);
    if (*cmp_cmd) return cmd_compare(cmp, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "invalid parameters: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace hatcc::cli
