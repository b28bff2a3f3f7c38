// Command-line front end: every subcommand is a thin adapter over the library
// operations, with stable JSON/CSV formats for interchange.

#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "cubedim/analysis.hpp"
#include "cubedim/io.hpp"

namespace {

using namespace cubedim;

struct GlobalOptions {
  std::uint64_t seed = 0;
  unsigned threads = 0;   // 0 = auto
  std::string format;     // json|csv|plain; empty picks each command's default
  bool emit_evidence = false;
  std::string out_path;  // empty = stdout

  std::string format_or(const std::string& fallback) const {
    return format.empty() ? fallback : format;
  }
};

unsigned effective_threads(const GlobalOptions& g) {
  if (g.threads > 0) return g.threads;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

std::string read_input(const std::string& path) {
  if (path == "-" || path.empty()) {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) fail(Errc::InvalidParams, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void emit(const GlobalOptions& g, const std::string& text) {
  if (g.out_path.empty() || g.out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(g.out_path);
  if (!out) fail(Errc::InvalidParams, "cannot write '" + g.out_path + "'");
  out << text;
}

Rational parse_rational_flag(const std::string& text, bool* inexact = nullptr) {
  const ParsedRational parsed = parse_rational(text);
  if (parsed.inexact && inexact) *inexact = true;
  return parsed.value;
}

std::vector<Rational> parse_rational_list(const std::string& text) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational_flag(item));
  if (out.empty()) fail(Errc::InvalidParams, "empty rational list");
  return out;
}

TreeSpec load_spec(const std::string& path) { return tree_spec_from_json(read_input(path)); }

FiniteMetricSpace load_points(const std::string& path, const std::string& metric) {
  return load_points_csv_string(read_input(path), coord_metric_from_string(metric));
}

bool usage_error(Errc code) {
  switch (code) {
    case Errc::InvalidParams:
    case Errc::ParamsOutOfRange:
    case Errc::POutOfRange:
    case Errc::EtaInvalid:
    case Errc::WindowInvalid:
    case Errc::InvalidScales:
    case Errc::DeltaOutOfRange:
    case Errc::TooDeep:
    case Errc::TooLarge:
    case Errc::InstanceTooLarge:
    case Errc::DepthExceeded:
    case Errc::TreeTooShallow:
    case Errc::SourceMismatch:
      return true;
    default:
      return false;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"generalized nested cubes, homogeneous measures and Assouad/lower dimensions"};
  app.require_subcommand(1);

  GlobalOptions global;
  app.add_option("--seed", global.seed, "seed for sampled checks")->capture_default_str();
  app.add_option("--threads", global.threads, "worker threads (0 = auto)")->capture_default_str();
  app.add_option("--format", global.format, "output format: json|csv|plain")
      ->check(CLI::IsMember({"json", "csv", "plain"}));
  app.add_flag("--emit-evidence", global.emit_evidence, "include evidence rows in reports");
  app.add_option("-o,--out", global.out_path, "output path (default stdout)");
  app.set_version_flag("--version", std::string(kToolName) + " " + kVersion);

  int exit_code = 0;

  // ---- gen ----------------------------------------------------------------
  auto* gen = app.add_subcommand("gen", "emit generator specs and point clouds");
  gen->require_subcommand(1);

  gen->add_subcommand("triadic", "the triadic interval spec")->callback([&]() {
    emit(global, tree_spec_to_json(triadic_spec()));
  });

  {
    auto* cmd = gen->add_subcommand("uniform", "single-type spec with constant branching");
    auto branching = std::make_shared<int>(3);
    auto delta = std::make_shared<std::string>("1/8");
    auto slots = std::make_shared<int>(1);
    auto relax = std::make_shared<bool>(false);
    cmd->add_option("--branching,--M", *branching, "children per cube")->required();
    cmd->add_option("--delta", *delta, "scale factor (rational)")->required();
    cmd->add_option("--slots,--J", *slots, "central slots")->capture_default_str();
    cmd->add_flag("--relax-delta", *relax, "admit delta outside (0,1/7)");
    cmd->callback([&, branching, delta, slots, relax]() {
      emit(global, tree_spec_to_json(
                       uniform_spec(*branching, parse_rational_flag(*delta), *slots, *relax)));
    });
  }

  {
    auto* cmd = gen->add_subcommand("boundary-rich", "periodic spec with designated boundary steps");
    auto bnum = std::make_shared<int>(1);
    auto bden = std::make_shared<int>(2);
    auto branching = std::make_shared<int>(2);
    auto delta = std::make_shared<std::string>("1/8");
    auto relax = std::make_shared<bool>(false);
    cmd->add_option("--beta-num", *bnum, "boundary steps per period")->required();
    cmd->add_option("--beta-den", *bden, "period length")->required();
    cmd->add_option("--branching,--M", *branching, "children at boundary positions")->required();
    cmd->add_option("--delta", *delta, "scale factor (rational)")->required();
    cmd->add_flag("--relax-delta", *relax, "admit delta outside (0,1/7)");
    cmd->callback([&, bnum, bden, branching, delta, relax]() {
      emit(global, tree_spec_to_json(boundary_rich_spec(*bnum, *bden, *branching,
                                                        parse_rational_flag(*delta), *relax)));
    });
  }

  {
    auto* cmd = gen->add_subcommand("cantor", "middle-thirds left endpoints");
    auto depth = std::make_shared<int>(6);
    cmd->add_option("--depth", *depth, "construction depth")->required();
    cmd->callback([&, depth]() { emit(global, points_to_csv(cantor_points(*depth))); });
  }

  {
    auto* cmd = gen->add_subcommand("grid", "lattice points in [0,1]^d");
    auto dim = std::make_shared<int>(1);
    auto side = std::make_shared<int>(2);
    cmd->add_option("--dim", *dim, "dimension")->required();
    cmd->add_option("--side,--n", *side, "points per axis")->required();
    cmd->callback([&, dim, side]() { emit(global, points_to_csv(grid_points(*dim, *side))); });
  }

  {
    auto* cmd = gen->add_subcommand("random", "seeded points in [0,1]^d");
    auto dim = std::make_shared<int>(2);
    auto count = std::make_shared<int>(100);
    cmd->add_option("--dim", *dim, "dimension")->required();
    cmd->add_option("--count,--n", *count, "number of points")->required();
    cmd->callback([&, dim, count]() {
      emit(global, points_to_csv(random_points(*dim, *count, global.seed)));
    });
  }

  // ---- tree ---------------------------------------------------------------
  auto* tree_cmd = app.add_subcommand("tree", "build and validate cube trees");
  tree_cmd->require_subcommand(1);

  {
    auto* cmd = tree_cmd->add_subcommand("build", "nested-net cube tree over a point cloud");
    auto points = std::make_shared<std::string>("-");
    auto metric = std::make_shared<std::string>("euclidean");
    auto delta = std::make_shared<std::string>();
    auto levels = std::make_shared<int>(0);
    auto origin = std::make_shared<std::string>();
    cmd->add_option("--points", *points, "point CSV (default stdin)");
    cmd->add_option("--metric", *metric, "euclidean|chebyshev|manhattan");
    cmd->add_option("--delta", *delta, "scale factor in (0,1/7)")->required();
    cmd->add_option("--levels", *levels, "number of refinement levels")->required();
    cmd->add_option("--origin", *origin, "origin point id (default: first point)");
    cmd->callback([&, points, metric, delta, levels, origin]() {
      const FiniteMetricSpace space = load_points(*points, *metric);
      int origin_index = 0;
      if (!origin->empty()) {
        origin_index = space.index_of(*origin);
        if (origin_index < 0) fail(Errc::InvalidParams, "origin id '" + *origin + "' not found");
      }
      const CubeTree tree =
          build_cube_tree(space, parse_rational_flag(*delta), *levels, origin_index);
      emit(global, cube_tree_to_json(tree));
    });
  }

  {
    auto* cmd = tree_cmd->add_subcommand("validate", "check the nested-cube properties");
    auto tree_path = std::make_shared<std::string>();
    auto points = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("euclidean");
    cmd->add_option("--tree", *tree_path, "cube tree JSON")->required();
    cmd->add_option("--points", *points, "point CSV (required for metric-sourced trees)");
    cmd->add_option("--metric", *metric, "euclidean|chebyshev|manhattan");
    cmd->callback([&, tree_path, points, metric]() {
      const CubeTree tree = cube_tree_from_json(read_input(*tree_path));
      TreeValidation report;
      if (tree.source == TreeSource::metric) {
        if (points->empty())
          fail(Errc::SourceMismatch, "metric-sourced trees need --points for validation");
        const FiniteMetricSpace space = load_points(*points, *metric);
        report = validate_tree(tree, &space);
      } else {
        report = validate_tree(tree);
      }
      emit(global, tree_validation_to_json(report));
      if (!report.pass) exit_code = 1;
    });
  }

  // ---- measure ------------------------------------------------------------
  auto* measure_cmd = app.add_subcommand("measure", "build cube-mass assignments");
  measure_cmd->require_subcommand(1);

  {
    auto* cmd = measure_cmd->add_subcommand("build", "mass assignment mu_p or mu_{p,eta}");
    auto tree_path = std::make_shared<std::string>("-");
    auto p = std::make_shared<std::string>();
    auto eta = std::make_shared<std::string>();
    cmd->add_option("--tree", *tree_path, "cube tree JSON (default stdin)");
    cmd->add_option("--p", *p, "boundary mass fraction (rational)")->required();
    cmd->add_option("--eta", *eta, "comma-separated slot weights");
    cmd->callback([&, tree_path, p, eta]() {
      const CubeTree tree = cube_tree_from_json(read_input(*tree_path));
      const Rational pv = parse_rational_flag(*p);
      const MassAssignment mu = eta->empty()
                                    ? build_mu_p(tree, pv)
                                    : build_mu_p_eta(tree, pv, parse_rational_list(*eta));
      emit(global, mass_assignment_to_json(mu, *tree_path == "-" ? "stdin" : *tree_path));
    });
  }

  // ---- dim ----------------------------------------------------------------
  auto* dim_cmd = app.add_subcommand("dim", "dimension estimates and exact values");
  dim_cmd->require_subcommand(1);

  {
    auto* cmd = dim_cmd->add_subcommand("set", "covering-number estimate for a point cloud");
    auto points = std::make_shared<std::string>("-");
    auto metric = std::make_shared<std::string>("euclidean");
    auto kind = std::make_shared<std::string>("assouad");
    auto rmin = std::make_shared<double>(0);
    auto rmax = std::make_shared<double>(0);
    auto budget = std::make_shared<long>(20000);
    cmd->add_option("--points", *points, "point CSV (default stdin)");
    cmd->add_option("--metric", *metric, "euclidean|chebyshev|manhattan");
    cmd->add_option("--kind", *kind, "assouad|lower")->check(CLI::IsMember({"assouad", "lower"}));
    cmd->add_option("--r-min", *rmin, "window lower scale")->required();
    cmd->add_option("--r-max", *rmax, "window upper scale")->required();
    cmd->add_option("--budget", *budget, "sample budget")->capture_default_str();
    cmd->callback([&, points, metric, kind, rmin, rmax, budget]() {
      const FiniteMetricSpace space = load_points(*points, *metric);
      const ScaleWindow window(*rmin, *rmax);
      const DimensionReport report =
          *kind == "assouad"
              ? set_assouad_estimate(space, window, *budget, effective_threads(global))
              : set_lower_estimate(space, window, *budget, effective_threads(global));
      emit(global, dimension_report_to_json(report, global.emit_evidence));
    });
  }

  {
    auto* cmd = dim_cmd->add_subcommand("measure", "chain or ball estimate for a measure");
    auto tree_path = std::make_shared<std::string>();
    auto mass_path = std::make_shared<std::string>();
    auto points = std::make_shared<std::string>();
    auto metric = std::make_shared<std::string>("euclidean");
    auto kind = std::make_shared<std::string>("assouad");
    auto method = std::make_shared<std::string>("chain");
    auto m_min = std::make_shared<int>(1);
    auto rmin = std::make_shared<double>(0);
    auto rmax = std::make_shared<double>(0);
    auto budget = std::make_shared<long>(20000);
    cmd->add_option("--tree", *tree_path, "cube tree JSON")->required();
    cmd->add_option("--mass", *mass_path, "mass assignment JSON")->required();
    cmd->add_option("--points", *points, "point CSV (ball method)");
    cmd->add_option("--metric", *metric, "euclidean|chebyshev|manhattan");
    cmd->add_option("--kind", *kind, "assouad|lower")->check(CLI::IsMember({"assouad", "lower"}));
    cmd->add_option("--method", *method, "chain|ball")->check(CLI::IsMember({"chain", "ball"}));
    cmd->add_option("--m-min", *m_min, "minimal chain length (chain method)");
    cmd->add_option("--r-min", *rmin, "window lower scale (ball method)");
    cmd->add_option("--r-max", *rmax, "window upper scale (ball method)");
    cmd->add_option("--budget", *budget, "sample budget")->capture_default_str();
    cmd->callback([&, tree_path, mass_path, points, metric, kind, method, m_min, rmin, rmax,
                   budget]() {
      const CubeTree tree = cube_tree_from_json(read_input(*tree_path));
      const MassAssignment mu = mass_assignment_from_json(read_input(*mass_path), tree);
      const DimKind dk = *kind == "assouad" ? DimKind::measure_assouad : DimKind::measure_lower;
      DimensionReport report;
      if (*method == "chain") {
        report = measure_chain_estimate(tree, mu, *m_min, dk);
      } else {
        if (points->empty()) fail(Errc::InvalidParams, "ball estimates need --points");
        const FiniteMetricSpace space = load_points(*points, *metric);
        report = measure_ball_estimate(space, tree, mu, ScaleWindow(*rmin, *rmax), *budget, dk,
                                       effective_threads(global));
      }
      emit(global, dimension_report_to_json(report, global.emit_evidence));
    });
  }

  {
    auto* cmd = dim_cmd->add_subcommand("exact", "exact dimension of a symbolic spec");
    auto spec_path = std::make_shared<std::string>("-");
    auto kind = std::make_shared<std::string>();
    auto p = std::make_shared<std::string>();
    auto eta = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec_path, "spec JSON (default stdin)");
    cmd->add_option("--kind", *kind, "assouad|lower|set-assouad|set-lower")->required();
    cmd->add_option("--p", *p, "boundary mass fraction (measure kinds)");
    cmd->add_option("--eta", *eta, "comma-separated slot weights");
    cmd->callback([&, spec_path, kind, p, eta]() {
      const TreeSpec spec = load_spec(*spec_path);
      const DimKind dk = dim_kind_from_string(*kind);
      Rational pv;
      std::vector<Rational> weights;
      if (dk == DimKind::measure_assouad || dk == DimKind::measure_lower) {
        if (p->empty()) fail(Errc::InvalidParams, "measure kinds need --p");
        pv = parse_rational_flag(*p);
        weights = eta->empty()
                      ? std::vector<Rational>(spec.num_slots, Rational(1, spec.num_slots))
                      : parse_rational_list(*eta);
      }
      const ExactDimension dim = exact_dimension_spec(spec, pv, weights, dk);
      if (global.format_or("plain") == "json") {
        emit(global, exact_dimension_to_json(dim, global.emit_evidence));
      } else {
        std::ostringstream line;
        line.precision(12);
        line << dim.value() << "\n";
        emit(global, line.str());
      }
    });
  }

  // ---- check --------------------------------------------------------------
  auto* check_cmd = app.add_subcommand("check", "quantitative consistency checks");
  check_cmd->require_subcommand(1);

  {
    auto* cmd = check_cmd->add_subcommand("key-estimate", "two-sided mass-ratio bound");
    auto spec_path = std::make_shared<std::string>();
    auto tree_path = std::make_shared<std::string>();
    auto depth = std::make_shared<int>(6);
    auto p = std::make_shared<std::string>();
    auto p2 = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec_path, "spec JSON, unfolded to --depth");
    cmd->add_option("--tree", *tree_path, "explicit cube tree JSON");
    cmd->add_option("--depth", *depth, "unfolding depth for --spec")->capture_default_str();
    cmd->add_option("--p", *p, "first parameter")->required();
    cmd->add_option("--p2", *p2, "second parameter")->required();
    cmd->callback([&, spec_path, tree_path, depth, p, p2]() {
      CubeTree tree;
      if (!tree_path->empty())
        tree = cube_tree_from_json(read_input(*tree_path));
      else if (!spec_path->empty())
        tree = unfold_spec(load_spec(*spec_path), *depth);
      else
        fail(Errc::InvalidParams, "need --spec or --tree");
      const KeyEstimateResult result =
          check_key_estimate(tree, parse_rational_flag(*p), parse_rational_flag(*p2));
      emit(global, key_estimate_to_json(result));
      if (!result.pass) exit_code = 1;
    });
  }

  {
    auto* cmd = check_cmd->add_subcommand("continuity", "dimension gap vs modulus");
    auto spec_path = std::make_shared<std::string>("-");
    auto pairs = std::make_shared<std::string>();
    auto count = std::make_shared<int>(0);
    cmd->add_option("--spec", *spec_path, "spec JSON (default stdin)");
    cmd->add_option("--pairs", *pairs, "pairs like 1/4:1/3,1/9:1/8");
    cmd->add_option("--count", *count, "seeded random pairs instead of --pairs");
    cmd->callback([&, spec_path, pairs, count]() {
      const TreeSpec spec = load_spec(*spec_path);
      std::vector<std::pair<Rational, Rational>> parsed;
      if (*count > 0) {
        std::mt19937_64 rng(global.seed);
        const int branching = spec.max_branching();
        for (int i = 0; i < *count; ++i) {
          const long a = 1 + static_cast<long>(rng() % 997);
          const long b = 1 + static_cast<long>(rng() % 997);
          parsed.emplace_back(Rational(a, 999 * branching), Rational(b, 999 * branching));
        }
      } else {
        std::stringstream ss(*pairs);
        std::string item;
        while (std::getline(ss, item, ',')) {
          const auto colon = item.find(':');
          if (colon == std::string::npos) fail(Errc::InvalidParams, "pairs are p:p2");
          parsed.emplace_back(parse_rational_flag(item.substr(0, colon)),
                              parse_rational_flag(item.substr(colon + 1)));
        }
        if (parsed.empty()) fail(Errc::InvalidParams, "need --pairs or --count");
      }
      const ContinuityReport report = dimension_continuity_check(spec, parsed);
      emit(global, continuity_report_to_json(report));
      if (!report.pass) exit_code = 1;
    });
  }

  {
    auto* cmd = check_cmd->add_subcommand("binom", "offspring-count bound");
    auto spec_path = std::make_shared<std::string>("-");
    auto beta = std::make_shared<std::string>();
    auto depth = std::make_shared<int>();
    cmd->add_option("--spec", *spec_path, "spec JSON (default stdin)");
    cmd->add_option("--beta", *beta, "boundary fraction (rational)")->required();
    cmd->add_option("--depth,--N", *depth, "chain length")->required();
    cmd->callback([&, spec_path, beta, depth]() {
      const BinomBoundResult result =
          binom_bound_check(load_spec(*spec_path), parse_rational_flag(*beta), *depth);
      emit(global, binom_bound_to_json(result));
      if (!result.pass) exit_code = 1;
    });
  }

  {
    auto* cmd = check_cmd->add_subcommand("blowup", "lower bound beta_hat log_delta p");
    auto spec_path = std::make_shared<std::string>("-");
    auto p_list = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec_path, "spec JSON (default stdin)");
    cmd->add_option("--p-list", *p_list, "comma-separated p values")->required();
    cmd->callback([&, spec_path, p_list]() {
      const BlowupReport report = blowup_check(load_spec(*spec_path), parse_rational_list(*p_list));
      emit(global, blowup_report_to_json(report));
      if (report.applicable && !report.pass) exit_code = 1;
    });
  }

  // ---- sweep --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("sweep", "exact dimensions over a p grid");
    auto spec_path = std::make_shared<std::string>("-");
    auto p_list = std::make_shared<std::string>();
    auto grid = std::make_shared<std::string>();
    auto eta = std::make_shared<std::string>();
    cmd->add_option("--spec", *spec_path, "spec JSON (default stdin)");
    cmd->add_option("--p-list", *p_list, "comma-separated p values");
    cmd->add_option("--grid", *grid, "start:stop:step (rationals, inclusive)");
    cmd->add_option("--eta", *eta, "comma-separated slot weights");
    cmd->callback([&, spec_path, p_list, grid, eta]() {
      const TreeSpec spec = load_spec(*spec_path);
      std::vector<Rational> ps;
      if (!p_list->empty()) {
        ps = parse_rational_list(*p_list);
      } else if (!grid->empty()) {
        std::vector<std::string> parts;
        std::stringstream ss(*grid);
        std::string item;
        while (std::getline(ss, item, ':')) parts.push_back(item);
        if (parts.size() != 3) fail(Errc::InvalidParams, "grid is start:stop:step");
        const Rational start = parse_rational_flag(parts[0]);
        const Rational stop = parse_rational_flag(parts[1]);
        const Rational step = parse_rational_flag(parts[2]);
        if (!(step > 0)) fail(Errc::InvalidParams, "grid step must be positive");
        for (Rational v = start; v <= stop; v += step) ps.push_back(v);
      } else {
        fail(Errc::InvalidParams, "need --p-list or --grid");
      }
      const std::vector<Rational> weights = eta->empty() ? std::vector<Rational>{}
                                                         : parse_rational_list(*eta);
      const std::vector<SweepRow> rows = sweep(spec, ps, weights);
      emit(global, global.format_or("csv") == "csv" ? sweep_to_csv(rows) : sweep_to_json(rows));
    });
  }

  // ---- solve --------------------------------------------------------------
  {
    auto* cmd = app.add_subcommand("solve", "invert p -> dim mu_p for a target dimension");
    auto spec_path = std::make_shared<std::string>("-");
    auto target = std::make_shared<double>();
    auto tol = std::make_shared<double>(1e-6);
    auto kind = std::make_shared<std::string>("assouad");
    cmd->add_option("--spec", *spec_path, "spec JSON (default stdin)");
    cmd->add_option("--target", *target, "target dimension")->required();
    cmd->add_option("--tol", *tol, "tolerance on the achieved dimension")->capture_default_str();
    cmd->add_option("--kind", *kind, "assouad|lower")->check(CLI::IsMember({"assouad", "lower"}));
    cmd->callback([&, spec_path, target, tol, kind]() {
      const DimKind dk = *kind == "assouad" ? DimKind::measure_assouad : DimKind::measure_lower;
      const SolveResult result = ivp_solve(load_spec(*spec_path), *target, dk, *tol);
      emit(global, solve_result_to_json(result));
    });
  }

  // global flags may follow the subcommand
  std::function<void(CLI::App*)> enable_fallthrough = [&](CLI::App* node) {
    node->fallthrough();
    for (CLI::App* sub : node->get_subcommands([](CLI::App*) { return true; }))
      enable_fallthrough(sub);
  };
  enable_fallthrough(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return 0;  // --help / --version
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return usage_error(e.code()) ? 2 : 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
