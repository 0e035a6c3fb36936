#include <CLI11.hpp>
#include <chrono>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "socpmw/cost.hpp"
#include "socpmw/harness.hpp"
#include "socpmw/io.hpp"
#include "socpmw/reduction.hpp"
#include "socpmw/rng.hpp"

namespace {

using namespace socpmw;

int parse_mode(const std::string& name, SolveMode& out) {
  if (name == "direct") out = SolveMode::Direct;
  else if (name == "two-step-exact") out = SolveMode::TwoStepExact;
  else if (name == "sq") out = SolveMode::Sq;
  else return 1;
  return 0;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - t0)
      .count();
}

int run_solve(const std::string& instance_path, double epsilon, double theta,
              const std::string& mode_name, std::uint64_t seed,
              const std::string& out_path, int threads, bool have_eps,
              bool have_theta) {
  SolveMode mode;
  if (parse_mode(mode_name, mode)) {
    std::cerr << "error: unknown mode '" << mode_name << "'\n";
    return 1;
  }
  InstanceFile file = load_instance(instance_path);
  if (have_eps == have_theta) {
    std::cerr << "error: provide exactly one of --epsilon or --theta\n";
    return 1;
  }
  auto t0 = std::chrono::steady_clock::now();
  ReportFile rep;
  rep.seed = seed;
  int exit_code = 0;

  if (have_theta) {
    if (!file.theta) {
      std::cerr << "error: --theta given but the file is a full problem\n";
      return 1;
    }
    if (std::abs(*file.theta - theta) > 1e-12) {
      std::cerr << "error: --theta does not match the file's theta\n";
      return 1;
    }
    FeasibilityInstance F = to_feasibility(file);
    SolveCounters counters;
    std::unique_ptr<SqMatrix> sq;
    TwoStepContext ctx;
    ctx.seed = seed;
    ctx.threads = threads;
    ViolatedConstraintOracle oracle;
    if (mode == SolveMode::Direct) {
      oracle = [&](const FeasibilityInstance& Fi, const DualWeights& y,
                   double) { return direct_oracle(Fi, y, Fi.theta); };
    } else {
      if (mode == SolveMode::Sq) {
        sq = std::make_unique<SqMatrix>(F.A);
        ctx.backend = OracleBackend::Sq;
        ctx.sq = sq.get();
      }
      oracle = [&](const FeasibilityInstance& Fi, const DualWeights& y,
                   double xi) { return two_step_oracle(Fi, y, Fi.theta, xi, ctx); };
    }
    MwResult res = feasibility_solve(F, oracle);
    counters.mw_iterations = res.iterations;
    counters.oracle_calls = res.oracle_calls;
    counters.gibbs_draws = ctx.gibbs_draws;
    counters.feasibility_runs = 1;
    if (sq) counters.sq = sq->counters();

    rep.status = res.status == MwResult::Status::Feasible ? "Feasible"
                                                          : "Infeasible";
    rep.theta = F.theta;
    for (const auto& [j, v] : res.y.entries()) rep.y[j] = v;
    if (res.status == MwResult::Status::Feasible) {
      MulticoneVector x = build_x_from_y(F, res.y);
      rep.x.assign(x.values.data(), x.values.data() + x.values.size());
      Eigen::VectorXd margins = violation_vector(F, x);
      rep.margins.assign(margins.data(), margins.data() + margins.size());
    }
    rep.cost = make_cost_report(
        mode, counters, predict_costs(F.part.r(), F.part.n(), F.m(), F.theta));
  } else {
    auto [P, norm_rep] = normalize(file.socp);
    (void)norm_rep;
    SolveOptions opts;
    opts.epsilon = epsilon;
    opts.mode = mode;
    opts.seed = seed;
    opts.threads = threads;
    SolveReport sol = binary_search_solve(P, opts);
    rep.status = sol.status == SolveReport::Status::Success
                     ? "Success"
                     : "PromiseViolated";
    rep.g = sol.g;
    rep.epsilon = epsilon;
    for (const auto& [j, v] : sol.y.entries()) rep.y[j] = v;
    rep.x.assign(sol.x.values.data(), sol.x.values.data() + sol.x.values.size());
    rep.margins.assign(sol.constraint_margins.data(),
                       sol.constraint_margins.data() +
                           sol.constraint_margins.size());
    rep.cost = make_cost_report(
        mode, sol.counters,
        predict_costs(P.part.r(), P.part.n(), P.m(), sol.theta));
    if (sol.status == SolveReport::Status::PromiseViolated) exit_code = 2;
  }

  rep.wall_ms = elapsed_ms(t0);
  if (!out_path.empty()) save_report(out_path, rep);
  std::cout << "status: " << rep.status;
  if (rep.g) std::cout << "  g: " << *rep.g;
  std::cout << "\n";
  return exit_code;
}

int run_generate(const std::string& recipe, int r, int m, int min_size,
                 int max_size, double slack_min, double theta, int variant,
                 std::uint64_t seed, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  std::string name = recipe + "-" + std::to_string(seed) + ".json";
  std::string path = (fs::path(out_dir) / name).string();
  nlohmann::ordered_json entry;
  entry["file"] = name;
  entry["recipe"] = recipe;
  entry["seed"] = seed;

  if (recipe == "feasible") {
    auto gen = gen_feasible(seed, r, min_size, max_size, m, 0.0 + slack_min,
                            theta);
    SocpInstance P;
    P.part = gen.instance.part;
    P.A = gen.instance.A;
    P.b = gen.instance.b;
    P.c = MulticoneVector::zero(P.part);
    save_instance(path, P, gen.instance.theta);
    std::string wname = recipe + "-" + std::to_string(seed) + "-witness.json";
    save_point((fs::path(out_dir) / wname).string(), gen.witness.values);
    entry["witness"] = wname;
  } else if (recipe == "infeasible") {
    std::vector<int> sizes(r, std::max(2, min_size));
    FeasibilityInstance F = gen_infeasible_uniform(theta, r, sizes, m);
    SocpInstance P;
    P.part = F.part;
    P.A = F.A;
    P.b = F.b;
    P.c = MulticoneVector::zero(P.part);
    save_instance(path, P, F.theta);
  } else if (recipe == "tiny") {
    GeneratedSocp gen = gen_tiny_socp(seed, variant);
    save_instance(path, gen.instance, std::nullopt);
    entry["variant"] = variant;
    entry["known_optimum"] = gen.known_optimum;
  } else {
    std::cerr << "error: unknown recipe '" << recipe << "'\n";
    return 1;
  }

  // Append to the manifest, keeping entries sorted and unique by file name.
  fs::path man_path = fs::path(out_dir) / "manifest.json";
  nlohmann::ordered_json manifest = nlohmann::ordered_json::array();
  if (fs::exists(man_path)) {
    std::ifstream in(man_path);
    in >> manifest;
  }
  bool replaced = false;
  for (auto& e : manifest)
    if (e["file"] == name) {
      e = entry;
      replaced = true;
    }
  if (!replaced) manifest.push_back(entry);
  std::ofstream out(man_path);
  out << manifest.dump(2) << "\n";
  std::cout << "wrote " << path << "\n";
  return 0;
}

int run_check(const std::string& instance_path, const std::string& point_path,
              double slack, double tol) {
  InstanceFile file = load_instance(instance_path);
  if (!file.theta) {
    std::cerr << "error: check needs a feasibility instance (theta field)\n";
    return 1;
  }
  FeasibilityInstance F = to_feasibility(file);
  Eigen::VectorXd xv = load_point(point_path);
  if (xv.size() != F.part.n()) {
    std::cerr << "error: point has dimension " << xv.size() << ", expected "
              << F.part.n() << "\n";
    return 1;
  }
  MulticoneVector x(F.part, xv);
  FeasibilityReport rep = feasibility_check(F, x, slack, tol);
  std::cout << "min_cone_eigenvalue: " << rep.min_cone_eigenvalue << "\n"
            << "trace: " << rep.trace_value << "\n"
            << "margins:";
  for (int j = 0; j < rep.margins.size(); ++j) std::cout << " " << rep.margins[j];
  std::cout << "\n" << (rep.pass ? "pass" : "fail") << "\n";
  return rep.pass ? 0 : 3;
}

int run_cost(int r, long long n, int m, double theta, double xi, double eta,
             const std::string& mode_name) {
  SolveMode mode;
  if (parse_mode(mode_name, mode)) {
    std::cerr << "error: unknown mode '" << mode_name << "'\n";
    return 1;
  }
  CostReport rep =
      make_cost_report(mode, SolveCounters{}, predict_costs(r, n, m, theta, xi, eta));
  std::cout << "oracle_mode: " << rep.oracle_mode << "\n";
  for (const auto& f : rep.formulas)
    std::cout << f.name << " = " << f.formula << " = "
              << nlohmann::ordered_json(f.value).dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Approximate SOCP solver via multiplicative weights"};
  app.require_subcommand(1);

  std::string instance_path, out_path, mode_name = "direct";
  double epsilon = 0.0, theta = 0.0, tol = 1e-8, slack = 0.0;
  std::uint64_t seed = 0;
  int threads = 1;

  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("--instance", instance_path)->required();
  auto* eps_opt = solve->add_option("--epsilon", epsilon);
  auto* theta_opt = solve->add_option("--theta", theta);
  solve->add_option("--mode", mode_name);
  solve->add_option("--seed", seed);
  solve->add_option("--out", out_path);
  solve->add_option("--threads", threads);

  std::string recipe = "feasible", out_dir = ".";
  int r = 5, m = 8, min_size = 1, max_size = 6, variant = 0;
  double slack_min = 0.05, gen_theta = 0.05;
  auto* gen = app.add_subcommand("generate", "Generate an instance + manifest");
  gen->add_option("--recipe", recipe);
  gen->add_option("--r", r);
  gen->add_option("--m", m);
  gen->add_option("--min-size", min_size);
  gen->add_option("--max-size", max_size);
  gen->add_option("--slack-min", slack_min);
  gen->add_option("--theta", gen_theta);
  gen->add_option("--variant", variant);
  gen->add_option("--seed", seed);
  gen->add_option("--out", out_dir);

  std::string point_path;
  auto* check = app.add_subcommand("check", "Check a point against an instance");
  check->add_option("--instance", instance_path)->required();
  check->add_option("--point", point_path)->required();
  check->add_option("--slack", slack);
  check->add_option("--tol", tol);

  int cost_r = 2, cost_m = 10;
  long long cost_n = 10;
  double cost_theta = 0.1, cost_xi = 0.0, cost_eta = 0.0;
  auto* cost = app.add_subcommand("cost", "Print predicted query/sample counts");
  cost->add_option("--r", cost_r);
  cost->add_option("--n", cost_n);
  cost->add_option("--m", cost_m);
  cost->add_option("--theta", cost_theta);
  cost->add_option("--xi", cost_xi);
  cost->add_option("--eta", cost_eta);
  cost->add_option("--mode", mode_name);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed())
      return run_solve(instance_path, epsilon, theta, mode_name, seed, out_path,
                       threads, eps_opt->count() > 0, theta_opt->count() > 0);
    if (gen->parsed())
      return run_generate(recipe, r, m, min_size, max_size, slack_min,
                          gen_theta, variant, seed, out_dir);
    if (check->parsed()) return run_check(instance_path, point_path, slack, tol);
    if (cost->parsed())
      return run_cost(cost_r, cost_n, cost_m, cost_theta, cost_xi, cost_eta,
                      mode_name);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
