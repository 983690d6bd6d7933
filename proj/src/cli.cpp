#include "roep/cli.hpp"

#include <chrono>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "roep/error.hpp"
#include "roep/generators.hpp"
#include "roep/instance_io.hpp"

namespace roep::cli {

namespace {

using json = nlohmann::json;
using Clock = std::chrono::steady_clock;

struct Options {
  std::string file;
  std::string seed;
  std::string report;
  bool minimal = false;
  bool force = false;

  // gen
  std::string kind;
  std::uint64_t rng_seed = 0;
  std::string output;
  std::vector<std::size_t> sizes;
  double density = 0.35;
  std::string filter = "none";
  bool monotone = false;
  std::string shape = "random";
  bool total_utility = false;
  std::string constraints = "mixed";
  std::size_t max_retries = 2000;
};

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::HypothesisFailed:
    case ErrorCode::FilterExhausted:
      return kHypothesisFailed;
    case ErrorCode::NoSolution:
      return kNoSolution;
    case ErrorCode::InvariantBreach:
      return kInternal;
    default:
      return kUsage;
  }
}

const char* yes_no(bool b) { return b ? "yes" : "no"; }

ProblemInstance as_instance(const io::Document& doc) {
  if (auto* inst = std::get_if<ProblemInstance>(&doc)) return *inst;
  if (auto* game = std::get_if<io::GameDocument>(&doc)) return build_game(game->game, game->seed);
  throw Error(ErrorCode::ValidationError, "expected a problem instance, got a poset document");
}

Pair parse_seed(const ProblemInstance& inst, const std::string& text) {
  auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorCode::InvalidArgument, "--seed expects X,Y");
  return inst.pair(text.substr(0, comma), text.substr(comma + 1));
}

bool passes(const ProblemInstance& inst, Pair p, Direction dir) {
  return (dir == Direction::ascending ? check_hypotheses(inst, p) : check_dual_hypotheses(inst, p)).passed();
}

// Explicit flag, then the file's seed if it passes, then a search; when
// nothing passes, the file's seed or the first pair (for reporting/forcing).
Pair resolve_seed(const ProblemInstance& inst, const std::string& flag, Direction dir) {
  if (!flag.empty()) return parse_seed(inst, flag);
  if (inst.seed() && passes(inst, *inst.seed(), dir)) return *inst.seed();
  if (auto found = find_seed(inst, dir)) return *found;
  if (inst.seed()) return *inst.seed();
  return inst.pairs().front();
}

void require_certified(const ProblemInstance& inst, const SolutionReport& r) {
  for (Pair p : r.solutions)
    if (!is_solution(inst, p))
      throw Error(ErrorCode::InvariantBreach, "refusing to print uncertified solution " + inst.pair_name(p));
}

void print_hypotheses(std::ostream& out, const ProblemInstance& inst, const HypothesisReport& h) {
  const bool up = h.direction == Direction::ascending;
  out << "hypotheses at seed " << inst.pair_name(h.seed) << " (" << (up ? "ascending" : "descending") << ")\n";
  out << "  phi increasing " << (up ? "upward" : "downward") << ": "
      << yes_no(up ? h.phi.increasing_upward : h.phi.increasing_downward) << "\n";
  out << "  psi increasing " << (up ? "upward" : "downward") << ": "
      << yes_no(up ? h.psi.increasing_upward : h.psi.increasing_downward) << "\n";
  out << "  values universally inductive: " << yes_no(h.values_complete) << "\n";
  out << "  seed condition: " << yes_no(h.seed_condition);
  if (h.seed_condition)
    out << " (z'=" << inst.x_order().name(*h.witness_z) << ", u'=" << inst.y_order().name(*h.witness_u) << ")";
  out << "\n  result: " << (h.passed() ? "pass" : "fail") << "\n";
}

void print_trace(std::ostream& out, const ProblemInstance& inst, const SolutionReport& r) {
  out << "climb trace (" << r.climb_trace.size() << "):";
  for (std::size_t i = 0; i < r.climb_trace.size(); ++i)
    out << (i ? " -> " : " ") << inst.pair_name(r.climb_trace[i]);
  out << "\n";
}

void write_report(const Options& o, const json& report) {
  if (o.report.empty()) return;
  std::ofstream f(o.report);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write report '" + o.report + "'");
  f << report.dump(2) << "\n";
}

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

int cmd_validate(const Options& o, std::ostream& out) {
  io::Document doc = io::parse_file(o.file);
  if (auto* p = std::get_if<io::PosetDocument>(&doc)) {
    out << "valid poset '" << p->name << "': " << p->poset.size() << " elements, " << p->poset.relation_size()
        << " related pairs\n";
    return kOk;
  }
  const bool game = std::holds_alternative<io::GameDocument>(doc);
  ProblemInstance inst = as_instance(doc);
  out << "valid " << (game ? "game" : "roep") << " instance: |C|=" << inst.c().size() << " |D|=" << inst.d().size()
      << " |U|=" << inst.u().size() << "\n";
  out << "digest " << io::digest(doc) << "\n";
  return kOk;
}

int cmd_check(const Options& o, std::ostream& out) {
  auto start = Clock::now();
  io::Document doc = io::parse_file(o.file);
  ProblemInstance inst = as_instance(doc);
  const Direction dir = o.minimal ? Direction::descending : Direction::ascending;
  Pair seed = resolve_seed(inst, o.seed, dir);
  HypothesisReport h = o.minimal ? check_dual_hypotheses(inst, seed) : check_hypotheses(inst, seed);
  print_hypotheses(out, inst, h);
  json report = io::report_header("check", io::digest(doc), elapsed_ms(start));
  report["hypotheses"] = io::to_json(inst, h);
  write_report(o, report);
  return h.passed() ? kOk : kHypothesisFailed;
}

int cmd_solve(const Options& o, std::ostream& out) {
  auto start = Clock::now();
  io::Document doc = io::parse_file(o.file);
  ProblemInstance inst = as_instance(doc);
  const Direction dir = o.minimal ? Direction::descending : Direction::ascending;
  Pair seed = resolve_seed(inst, o.seed, dir);
  SolveOptions opts{o.force};
  SolutionReport r = o.minimal ? solve_minimal(inst, seed, opts) : solve_maximal(inst, seed, opts);
  require_certified(inst, r);

  const Pair s = o.minimal ? *r.minimal_solution : *r.maximal_solution;
  out << (o.minimal ? "minimal" : "maximal") << " solution " << inst.pair_name(s) << " from seed "
      << inst.pair_name(seed) << "\n";
  out << "value " << inst.u().name(inst.value(s)) << "\n";
  print_trace(out, inst, r);
  out << "existence " << (r.existence_guaranteed ? "guaranteed" : "unguaranteed (forced)") << "\n";

  json report = io::report_header("solve", io::digest(doc), elapsed_ms(start));
  io::fill_report(report, inst, r);
  write_report(o, report);
  return kOk;
}

int cmd_enumerate(const Options& o, std::ostream& out) {
  auto start = Clock::now();
  io::Document doc = io::parse_file(o.file);
  ProblemInstance inst = as_instance(doc);
  SolutionReport r = enumerate_solutions(inst);
  require_certified(inst, r);
  out << "solutions (" << r.solutions.size() << "):";
  for (Pair p : r.solutions) out << " " << inst.pair_name(p);
  out << "\n";
  json report = io::report_header("enumerate", io::digest(doc), elapsed_ms(start));
  io::fill_report(report, inst, r);
  write_report(o, report);
  return r.solutions.empty() ? kNoSolution : kOk;
}

int cmd_game(const Options& o, std::ostream& out) {
  auto start = Clock::now();
  io::Document doc = io::parse_file(o.file);
  auto* g = std::get_if<io::GameDocument>(&doc);
  if (!g) throw Error(ErrorCode::ValidationError, "game needs an instance with \"mode\": \"game\"");
  ProblemInstance inst = build_game(g->game, g->seed);
  std::optional<Pair> seed;
  if (!o.seed.empty())
    seed = parse_seed(inst, o.seed);
  else if (g->seed)
    seed = g->seed;
  GameReport gr = solve_game(g->game, seed, SolveOptions{o.force});
  require_certified(inst, gr.report);

  out << "equilibrium " << inst.pair_name(gr.equilibrium) << " value " << format_rational(gr.value) << "\n";
  out << "saddle inequalities verified: " << yes_no(gr.saddle_verified) << "\n";
  print_trace(out, inst, gr.report);
  out << "existence " << (gr.report.existence_guaranteed ? "guaranteed" : "unguaranteed (forced)") << "\n";

  json report = io::report_header("game", io::digest(doc), elapsed_ms(start));
  io::fill_report(report, inst, gr.report);
  report["game"] = {{"equilibrium", {inst.x_order().name(gr.equilibrium.x), inst.y_order().name(gr.equilibrium.y)}},
                    {"value", format_rational(gr.value)},
                    {"saddle_verified", gr.saddle_verified}};
  write_report(o, report);
  return kOk;
}

int cmd_gen(const Options& o, std::ostream& out) {
  GenSpec spec;
  spec.kind = parse_gen_kind(o.kind);
  spec.sizes = o.sizes;
  spec.density = o.density;
  spec.rng_seed = o.rng_seed;
  spec.monotone_bias = o.monotone;
  spec.total_utility = o.total_utility;
  spec.caps.max_retries = o.max_retries;
  if (o.filter == "require_hypotheses")
    spec.filter = GenFilter::require_hypotheses;
  else if (o.filter != "none")
    throw Error(ErrorCode::InvalidSpec, "unknown filter '" + o.filter + "'");
  if (o.shape == "chain")
    spec.factor_shape = FactorShape::chain;
  else if (o.shape == "bounded")
    spec.factor_shape = FactorShape::bounded;
  else if (o.shape != "random")
    throw Error(ErrorCode::InvalidSpec, "unknown shape '" + o.shape + "'");
  if (o.constraints == "constant")
    spec.constraints = ConstraintStyle::constant;
  else if (o.constraints == "principal")
    spec.constraints = ConstraintStyle::principal;
  else if (o.constraints == "random")
    spec.constraints = ConstraintStyle::random;
  else if (o.constraints != "mixed")
    throw Error(ErrorCode::InvalidSpec, "unknown constraint style '" + o.constraints + "'");

  json doc;
  if (spec.kind == GenKind::random_instance) {
    if (spec.sizes.empty()) spec.sizes = {3, 3, 5};
    doc = io::serialize(gen_instance(spec));
  } else {
    doc = io::serialize(io::PosetDocument{to_string(spec.kind), gen_poset(spec)});
  }
  std::ofstream f(o.output);
  if (!f) throw Error(ErrorCode::InvalidArgument, "cannot write '" + o.output + "'");
  f << doc.dump(2) << "\n";
  out << "wrote " << to_string(spec.kind) << " (seed " << spec.rng_seed << ") to " << o.output << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained ordered equilibrium solver for finite posets", "roep"};
  app.require_subcommand(1);
  app.set_version_flag("--version", io::kToolVersion);
  Options o;

  auto* validate = app.add_subcommand("validate", "Parse and validate an instance or poset file");
  validate->add_option("file", o.file, "Instance file")->required();

  auto* check = app.add_subcommand("check", "Report the existence hypotheses at a seed");
  check->add_option("file", o.file, "Instance file")->required();
  check->add_option("--seed", o.seed, "Seed pair X,Y");
  check->add_flag("--minimal", o.minimal, "Check the order-dual hypotheses");
  check->add_option("--report", o.report, "Write a JSON report");

  auto* solve = app.add_subcommand("solve", "Climb to a maximal (or minimal) solution");
  solve->add_option("file", o.file, "Instance file")->required();
  solve->add_option("--seed", o.seed, "Seed pair X,Y");
  solve->add_flag("--minimal", o.minimal, "Descend to a minimal solution");
  solve->add_flag("--force", o.force, "Solve even when the hypotheses fail");
  solve->add_option("--report", o.report, "Write a JSON report");

  auto* enumerate = app.add_subcommand("enumerate", "List the full solution set by brute force");
  enumerate->add_option("file", o.file, "Instance file")->required();
  enumerate->add_option("--report", o.report, "Write a JSON report");

  auto* game = app.add_subcommand("game", "Solve a constrained zero-sum game");
  game->add_option("file", o.file, "Game-mode instance file")->required();
  game->add_option("--seed", o.seed, "Seed pair X,Y");
  game->add_flag("--force", o.force, "Solve even when the hypotheses fail");
  game->add_option("--report", o.report, "Write a JSON report");

  auto* gen = app.add_subcommand("gen", "Generate a poset or instance file");
  gen->add_option("--kind", o.kind, "chain|antichain|boolean_lattice|grid|random_poset|random_instance")->required();
  gen->add_option("--seed", o.rng_seed, "RNG seed");
  gen->add_option("-o,--output", o.output, "Output file")->required();
  gen->add_option("--size", o.sizes, "Size parameters, comma separated")->delimiter(',');
  gen->add_option("--density", o.density, "Edge density for random posets");
  gen->add_option("--filter", o.filter, "none|require_hypotheses");
  gen->add_flag("--monotone", o.monotone, "Build T from order-monotone scores");
  gen->add_option("--shape", o.shape, "Strategy poset shape: random|chain|bounded");
  gen->add_flag("--total-utility", o.total_utility, "Draw U as a chain");
  gen->add_option("--constraints", o.constraints, "constant|principal|random|mixed");
  gen->add_option("--max-retries", o.max_retries, "Rejection-sampling cap under a filter");

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return cmd_validate(o, out);
    if (*check) return cmd_check(o, out);
    if (*solve) return cmd_solve(o, out);
    if (*enumerate) return cmd_enumerate(o, out);
    if (*game) return cmd_game(o, out);
    if (*gen) return cmd_gen(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}

}  // namespace roep::cli
