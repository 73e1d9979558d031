// Command-line front end: check, deathsets, prob, monitor, gen, coverage.

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "covfail/complex.hpp"
#include "covfail/deathsets.hpp"
#include "covfail/error.hpp"
#include "covfail/generator.hpp"
#include "covfail/graph_io.hpp"
#include "covfail/monitor.hpp"
#include "covfail/persistence.hpp"
#include "covfail/probability.hpp"
#include "json.hpp"

using namespace covfail;
using json = nlohmann::ordered_json;

namespace {

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kInputError = 2;
constexpr int kInternalError = 3;

/// Thrown for bad flag combinations found after CLI11 has parsed.
struct UsageError : Error {
  using Error::Error;
};

json labels_json(const SimplicialComplex2& k, const Simplex& s) {
  json out = json::array();
  for (auto v : s.vertex_span()) out.push_back(k.label(v));
  return out;
}

SimplicialComplex2 load_complex(const std::string& path, CommunicationGraph* graph_out = nullptr) {
  auto g = parse_graph_file(path);
  const auto diag = validate_fence(g);
  if (!diag.ok) throw FenceInvalid(diag.summary());
  auto k = build_rips_2skeleton(g);
  if (graph_out) *graph_out = std::move(g);
  return k;
}

std::vector<Point> parse_polygon(const std::string& text) {
  std::vector<Point> out;
  std::stringstream ss(text);
  std::string pair;
  while (std::getline(ss, pair, ';')) {
    const auto comma = pair.find(',');
    if (comma == std::string::npos) throw UsageError("polygon vertices are written x,y;x,y;...");
    try {
      out.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
    } catch (const std::exception&) {
      throw UsageError("bad polygon vertex '" + pair + "'");
    }
  }
  if (out.size() < 3) throw UsageError("a polygon needs at least three vertices");
  return out;
}

/// The fence positions, in fence order, as the domain boundary.
std::vector<Point> fence_polygon(const CommunicationGraph& g) {
  std::vector<Point> out;
  for (const auto& id : g.fence_order) {
    const auto* n = g.find(id);
    if (!n || !n->position) return {};
    out.push_back(*n->position);
  }
  return out;
}

std::size_t budget_from_env(std::size_t fallback) {
  if (const char* env = std::getenv("COVFAIL_BUDGET")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size() && v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("COVFAIL_BUDGET must be a positive integer, got '") + env + "'");
  }
  return fallback;
}

bool ci_mode() { return std::getenv("CI") != nullptr; }

json sets_json(const DeathSetReport& r) {
  json out = json::array();
  for (const auto& d : r.minimal_death_sets) out.push_back(d.members);
  return out;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
  std::string graph;
  bool verify = false;
};

int cmd_check(const CheckArgs& a) {
  const auto k = load_complex(a.graph);
  const auto state = reduce_complex(k);
  const auto verdict = check_dsg(state);
  const auto& fo = state.filtration();
  const auto betti = complex_betti(k);

  json out;
  out["dsg"] = verdict.pass ? "pass" : "fail";
  if (verdict.witness) {
    json w;
    w["triangle"] = labels_json(k, fo[*verdict.witness]);
    json boundary = json::array();
    for (auto s : verdict.witness_boundary) boundary.push_back(labels_json(k, fo[s]));
    w["boundary"] = boundary;
    json chain = json::array();
    for (auto s : witness_chain(state, state.position_of(*verdict.witness))) chain.push_back(labels_json(k, fo[s]));
    w["chain"] = chain;
    out["witness"] = w;
  } else {
    out["witness"] = nullptr;
  }
  out["diagnostics"] = {{"vertices", k.vertex_count()},
                        {"edges", k.edges().size()},
                        {"triangles", k.triangles().size()},
                        {"fence", k.fence_order().size()},
                        {"interior", k.interior_vertices().size()},
                        {"betti", {betti.beta0, betti.beta1, betti.beta2}}};
  int code = verdict.pass ? kPass : kFail;
  if (a.verify) {
    const auto oracle = dsg_oracle(k);
    out["verify"] = {{"oracle", oracle.pass ? "pass" : "fail"}, {"agree", oracle.pass == verdict.pass}};
    if (oracle.pass != verdict.pass) {
      std::cerr << "error: reduction and direct solve disagree\n";
      code = kInternalError;
    }
  }
  std::cout << out.dump(2) << '\n';
  return code;
}

// ------------------------------------------------------------ deathsets

struct DeathArgs {
  std::string graph;
  std::optional<std::size_t> max_size;
  std::optional<std::size_t> budget;
  std::optional<double> cover_radius;
  bool verify = false;
  bool parallel = false;
  unsigned threads = 0;
};

DeathSetOptions death_options(const DeathArgs& a, const CommunicationGraph& g, const SimplicialComplex2& k,
                              json& info) {
  DeathSetOptions opt;
  opt.parallel = a.parallel;
  opt.threads = a.threads;
  opt.budget = a.budget ? *a.budget : budget_from_env(opt.budget);
  if (a.max_size) {
    opt.max_size = a.max_size;
    info["max_size"] = *a.max_size;
    info["max_size_source"] = "user";
  } else if (a.cover_radius) {
    const auto polygon = fence_polygon(g);
    if (polygon.empty()) throw UsageError("--rc needs positions for every fence node");
    const double area = polygon_area(polygon);
    if (!(area > 0.0)) throw UsageError("the fence encloses no area");
    const double density = static_cast<double>(k.interior_vertices().size()) * std::acos(-1.0) *
                           *a.cover_radius * *a.cover_radius / area;
    opt.max_size = static_cast<std::size_t>(std::ceil(density));
    info["max_size"] = *opt.max_size;
    info["max_size_source"] = "density";
  } else {
    info["max_size"] = nullptr;
    info["max_size_source"] = "none";
  }
  return opt;
}

int cmd_deathsets(const DeathArgs& a) {
  CommunicationGraph g;
  const auto k = load_complex(a.graph, &g);
  json out;
  const auto opt = death_options(a, g, k, out);
  const auto report = cake_or_death(k, opt);

  out["minimal_death_sets"] = sets_json(report);
  out["interior"] = report.interior;
  out["explored"] = {{"cake", report.explored_cake_count}, {"total", report.explored_total}};
  out["baseline_failure"] = report.baseline_failure;
  out["budget_exceeded"] = report.budget_exceeded;
  if (report.truncated_at_size) {
    out["truncated_at_size"] = *report.truncated_at_size;
    out["notice"] = "no death set of size <= " + std::to_string(*report.truncated_at_size) +
                    " beyond those listed; larger sets were not searched";
  } else {
    out["truncated_at_size"] = nullptr;
  }

  int code = report.baseline_failure ? kFail : kPass;
  if (a.verify) {
    if (report.interior.size() > 14) {
      out["verify"] = {{"status", "skipped"}, {"reason", "more than 14 interior nodes"}};
    } else {
      const auto brute = brute_force_death_sets(k);
      json expected = json::array();
      for (const auto& d : brute.minimal_death_sets) {
        if (!report.truncated_at_size || d.members.size() <= *report.truncated_at_size) {
          expected.push_back(d.members);
        }
      }
      const bool agree = expected == out["minimal_death_sets"];
      out["verify"] = {{"status", agree ? "agree" : "mismatch"}, {"brute_force", expected}};
      if (!agree) {
        std::cerr << "error: lattice search and exhaustive search disagree\n";
        code = kInternalError;
      }
    }
  }
  std::cout << out.dump(2) << '\n';
  return code;
}

// ----------------------------------------------------------------- prob

struct ProbArgs {
  std::string graph;
  std::vector<double> times{1.0};
  std::string method = "auto";
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  unsigned threads = 1;
  std::size_t max_sets = 20;
  std::optional<std::size_t> budget;
  bool csv = false;
};

int cmd_prob(const ProbArgs& a) {
  CommunicationGraph g;
  const auto k = load_complex(a.graph, &g);
  const auto model = FailureModel::from_graph(g);
  for (double t : a.times) {
    if (!(t >= 0.0)) throw UsageError("times must be non-negative");
  }

  json out;
  std::vector<std::string> warnings;
  FailureCurve curve;
  std::string method = a.method;
  if (!check_dsg(reduce_complex(k)).pass) {
    warnings.push_back("the intact network already fails the criterion; every probability is 1");
  }
  if (method == "brute") {
    curve = prob_failure_bruteforce(k, model, a.times);
  } else {
    DeathSetOptions opt;
    opt.budget = a.budget ? *a.budget : budget_from_env(opt.budget);
    const auto report = cake_or_death(k, opt);
    if (report.truncated_at_size) {
      warnings.push_back("death-set search stopped after size " + std::to_string(*report.truncated_at_size) +
                         "; the curve is a lower bound");
    }
    MinimalSets sets;
    for (const auto& d : report.minimal_death_sets) sets.push_back(d.members);
    out["minimal_death_sets"] = sets;
    if (method == "auto") method = sets.size() <= a.max_sets ? "ie" : "mc";
    if (method == "ie") {
      curve = prob_failure_exact(sets, model, a.times, a.max_sets);
    } else {
      if (!a.seed && ci_mode()) throw UsageError("--seed is required for Monte Carlo when CI is set");
      const auto seed = a.seed.value_or(1);
      out["seed"] = seed;
      curve = prob_failure_mc(sets, model, a.times, a.samples, seed, a.threads);
    }
  }

  if (a.csv) {
    for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
    std::cout << "t,probability,method,stderr,terms\n";
    for (const auto& p : curve) {
      std::cout << format_number(p.t) << ',' << format_number(p.probability) << ',' << p.method << ','
                << (p.stderr_est ? format_number(*p.stderr_est) : "") << ','
                << (p.terms ? std::to_string(*p.terms) : "") << '\n';
    }
    return kPass;
  }
  out["method"] = method;
  json points = json::array();
  for (const auto& p : curve) {
    json pt = {{"t", p.t}, {"probability", p.probability}, {"method", p.method}};
    if (p.stderr_est) pt["stderr"] = *p.stderr_est;
    if (p.terms) pt["terms"] = *p.terms;
    points.push_back(pt);
  }
  out["curve"] = points;
  out["warnings"] = warnings;
  std::cout << out.dump(2) << '\n';
  return kPass;
}

// -------------------------------------------------------------- monitor

struct MonitorArgs {
  std::string graph;
  std::string events;
};

const char* status_name(MonitorStatus s) { return s == MonitorStatus::Running ? "Running" : "CriterionFailed"; }

int cmd_monitor(const MonitorArgs& a) {
  const auto k = load_complex(a.graph);
  const auto events = parse_events_file(a.events);
  Monitor m(k);

  json init;
  init["event"] = "init";
  init["status"] = status_name(m.status());
  init["baseline_pass"] = m.baseline_pass();
  json flagged = json::array();
  for (const auto& w : m.live_interior())
    if (m.is_flagged(w)) flagged.push_back(w);
  init["flagged"] = flagged;
  init["h1_rank"] = m.h1_rank();
  init["h2_rank"] = m.h2_rank();
  init["warnings"] = m.warnings();
  std::cout << init.dump() << '\n';

  const auto verdict = replay(m, events);
  for (const auto& e : verdict.entries) {
    json line;
    line["event"] = "fail";
    line["time"] = e.time;
    line["vertex"] = e.vertex;
    line["fence"] = e.fence;
    line["was_flagged"] = e.was_flagged;
    line["dsg_checked"] = e.dsg_checked;
    line["dsg_pass"] = e.dsg_pass ? json(*e.dsg_pass) : json(nullptr);
    line["conservative"] = e.conservative;
    line["warnings"] = e.warnings;
    line["status"] = status_name(e.status);
    std::cout << line.dump() << '\n';
  }
  for (std::size_t i = events.size() - verdict.unprocessed; i < events.size(); ++i) {
    json line;
    line["event"] = "fail";
    line["time"] = events[i].time;
    line["vertex"] = events[i].vertex;
    line["unprocessed"] = true;
    line["status"] = status_name(verdict.status);
    std::cout << line.dump() << '\n';
  }
  return verdict.status == MonitorStatus::Running ? kPass : kFail;
}

// ------------------------------------------------------------------ gen

struct GenArgs {
  std::optional<double> square;
  std::string polygon;
  std::size_t n = 0;
  double rb = 0.0;
  std::optional<double> rc;
  std::optional<double> spacing;
  std::optional<std::uint64_t> seed;
  bool allow_small_rc = false;
  std::string output;
};

int cmd_gen(const GenArgs& a) {
  if (!a.seed && ci_mode()) throw UsageError("--seed is required when CI is set");
  if (a.square && !a.polygon.empty()) throw UsageError("give either --square or --polygon");
  GeneratorSpec spec;
  spec.polygon = a.polygon.empty() ? square_domain(a.square.value_or(1.0)) : parse_polygon(a.polygon);
  spec.interior_count = a.n;
  spec.broadcast_radius = a.rb;
  spec.cover_radius = a.rc;
  spec.fence_spacing = a.spacing;
  spec.seed = a.seed.value_or(1);
  spec.allow_small_cover_radius = a.allow_small_rc;
  const auto inst = generate_instance(spec);
  for (const auto& w : inst.warnings) std::cerr << "warning: " << w << '\n';

  std::ostringstream text;
  text << "# rb=" << format_number(a.rb) << " rc=" << format_number(inst.cover_radius)
       << " seed=" << spec.seed << " n=" << a.n << '\n';
  write_graph(text, inst.graph);
  if (a.output.empty()) {
    std::cout << text.str();
  } else {
    std::ofstream f(a.output);
    if (!f) throw Error("cannot write '" + a.output + "'");
    f << text.str();
  }
  return kPass;
}

// ------------------------------------------------------------- coverage

struct CoverageArgs {
  std::string graph;
  double rc = 0.0;
  std::string polygon;
  std::optional<double> step;
};

int cmd_coverage(const CoverageArgs& a) {
  const auto g = parse_graph_file(a.graph);
  std::vector<Point> nodes;
  for (const auto& n : g.nodes) {
    if (!n.position) throw UsageError("node '" + n.id + "' has no position");
    nodes.push_back(*n.position);
  }
  const auto polygon = a.polygon.empty() ? fence_polygon(g) : parse_polygon(a.polygon);
  if (polygon.size() < 3) throw UsageError("no domain: give --polygon or fence positions");
  if (!(a.rc > 0.0)) throw UsageError("--rc must be positive");
  const double h = a.step.value_or(a.rc / 50.0);
  if (!(h > 0.0)) throw UsageError("--step must be positive");
  const auto r = coverage_oracle(nodes, a.rc, polygon, h);
  json out;
  out["covered"] = r.covered;
  out["samples"] = r.samples;
  out["grid_step"] = h;
  out["worst_uncovered"] = r.worst_uncovered ? json::array({r.worst_uncovered->x, r.worst_uncovered->y}) : json(nullptr);
  out["worst_gap"] = r.worst_gap;
  std::cout << out.dump(2) << '\n';
  return r.covered ? kPass : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Homological coverage checks and failure analysis for sensor networks"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Decide the coverage criterion for a network");
  c->add_option("graph", check.graph, "Graph file")->required();
  c->add_flag("--verify", check.verify, "Cross-check with a direct linear solve");

  DeathArgs death;
  auto* d = app.add_subcommand("deathsets", "List the minimal sets of interior nodes whose loss breaks coverage");
  d->add_option("graph", death.graph, "Graph file")->required();
  d->add_option("--max-size", death.max_size, "Largest subset size to search");
  d->add_option("--budget", death.budget, "Maximum number of subsets to classify (default: COVFAIL_BUDGET or 4194304)");
  d->add_option("--rc", death.cover_radius, "Cover radius; sets the default size cap from node density");
  d->add_flag("--verify", death.verify, "Compare with exhaustive search (at most 14 interior nodes)");
  d->add_flag("--parallel", death.parallel, "Classify each level on several threads");
  d->add_option("--threads", death.threads, "Worker threads (0: all cores)");

  ProbArgs prob;
  auto* p = app.add_subcommand("prob", "Probability that coverage has failed by given times");
  p->add_option("graph", prob.graph, "Graph file with failure distributions")->required();
  p->add_option("--times", prob.times, "Comma-separated times")->delimiter(',');
  p->add_option("--method", prob.method, "auto, ie, mc or brute")
      ->check(CLI::IsMember({"auto", "ie", "mc", "brute"}));
  p->add_option("--samples", prob.samples, "Monte Carlo samples")->check(CLI::PositiveNumber);
  p->add_option("--seed", prob.seed, "Monte Carlo seed");
  p->add_option("--threads", prob.threads, "Monte Carlo threads")->check(CLI::PositiveNumber);
  p->add_option("--max-sets", prob.max_sets, "Largest family for inclusion-exclusion");
  p->add_option("--budget", prob.budget, "Maximum number of subsets to classify");
  p->add_flag("--csv", prob.csv, "Write the curve as CSV");

  MonitorArgs mon;
  auto* m = app.add_subcommand("monitor", "Replay failure events and report after each one (JSON lines)");
  m->add_option("graph", mon.graph, "Graph file")->required();
  m->add_option("events", mon.events, "Event file: fail <time> <node> per line")->required();

  GenArgs gen;
  auto* gcmd = app.add_subcommand("gen", "Generate a random sensor field");
  gcmd->add_option("--square", gen.square, "Side of a square domain (default 1)");
  gcmd->add_option("--polygon", gen.polygon, "Convex domain as x,y;x,y;...");
  gcmd->add_option("--n", gen.n, "Number of interior nodes");
  gcmd->add_option("--rb", gen.rb, "Broadcast radius")->required()->check(CLI::PositiveNumber);
  gcmd->add_option("--rc", gen.rc, "Cover radius (default rb/sqrt(3))");
  gcmd->add_option("--spacing", gen.spacing, "Fence spacing (default rb/2)");
  gcmd->add_option("--seed", gen.seed, "Random seed");
  gcmd->add_flag("--allow-small-rc", gen.allow_small_rc, "Accept rc < rb/sqrt(3) with a warning");
  gcmd->add_option("-o,--output", gen.output, "Output file (default stdout)");

  CoverageArgs cov;
  auto* cv = app.add_subcommand("coverage", "Check geometric coverage of the domain on a grid");
  cv->add_option("graph", cov.graph, "Graph file with positions")->required();
  cv->add_option("--rc", cov.rc, "Cover radius")->required();
  cv->add_option("--polygon", cov.polygon, "Domain as x,y;x,y;... (default: the fence)");
  cv->add_option("--step", cov.step, "Grid step (default rc/50)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*c) return cmd_check(check);
    if (*d) return cmd_deathsets(death);
    if (*p) return cmd_prob(prob);
    if (*m) return cmd_monitor(mon);
    if (*gcmd) return cmd_gen(gen);
    if (*cv) return cmd_coverage(cov);
  } catch (const InvariantBreach& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}
