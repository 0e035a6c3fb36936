#include "socpmw/reduction.hpp"

#include <cmath>
#include <memory>

#include "socpmw/rng.hpp"

namespace socpmw {

FeasibilityInstance embed(const SocpInstance& P, double g, double theta) {
  if (g < -P.R || g > P.R)
    throw std::invalid_argument("embed: guess outside [-R, R]");
  std::vector<int> sizes = P.part.sizes();
  sizes.push_back(1);
  FeasibilityInstance F;
  F.part = ConePartition(std::move(sizes));
  F.theta = theta;
  int m = P.m();
  F.A.reserve(P.part.r() + 1);
  for (int k = 0; k < P.part.r(); ++k) {
    RowMatrixXd blk(m + 1, P.part.size(k));
    blk.topRows(m) = P.A[k];
    blk.row(m) = -P.c.cone(k).transpose();
    F.A.push_back(std::move(blk));
  }
  F.A.push_back(RowMatrixXd::Zero(m + 1, 1));
  F.b.resize(m + 1);
  F.b.head(m) = P.b / P.R;
  F.b[m] = -g / P.R;
  return F;
}

MulticoneVector lift_point(const MulticoneVector& x_star,
                           const SocpInstance& P) {
  double tr = trace(x_star);
  if (tr > P.R + 1e-12)
    throw std::invalid_argument("lift_point: trace exceeds R");
  std::vector<int> sizes = P.part.sizes();
  sizes.push_back(1);
  ConePartition part(std::move(sizes));
  Eigen::VectorXd v(part.n());
  v.head(x_star.values.size()) = x_star.values / P.R;
  // Slack scalar chosen so the Jordan trace (2 * scalar per cone) is 1.
  v[part.n() - 1] = 0.5 * (1.0 - tr / P.R);
  return MulticoneVector(part, v);
}

MulticoneVector extract_primal(const DualWeights& y, const SocpInstance& P) {
  if (y.size() != P.m() + 1)
    throw std::invalid_argument("extract_primal: y must have m+1 entries");
  double ym = y.at(P.m());
  // Exponent per cone: w^(k) = -A^(k)T y_{0..m-1} + c^(k) y_m.
  Eigen::VectorXd w = ym * P.c.values;
  for (const auto& [j, yj] : y.entries()) {
    if (j == P.m()) continue;
    for (int k = 0; k < P.part.r(); ++k) {
      w.segment(P.part.offset(k), P.part.size(k)) -=
          yj * P.A[k].row(j).transpose();
    }
  }
  MulticoneVector wv(P.part, w);
  SpectralData s = spectral_decompose(wv);
  // The slack cone contributes exponent 0; shift everything uniformly so no
  // term overflows and the "+1" becomes e^{-sigma}.
  double sigma = 0.0;
  for (int k = 0; k < P.part.r(); ++k)
    sigma = std::max(sigma, s.lambda_plus[k]);
  MulticoneVector num = jordan_exp(wv, sigma);
  // Slack cone: exponent 0, Jordan trace 2 e^{-sigma}.
  double denom = 2.0 * std::exp(-sigma) + trace(num);
  MulticoneVector x(P.part, (P.R / denom) * num.values);
  return x;
}

long binary_search_steps(double r_tilde, double theta) {
  double arg = 1.0 / (2.0 * r_tilde * theta);
  if (arg <= 1.0) return 0;
  return static_cast<long>(std::ceil(std::log(arg) / std::log(4.0 / 3.0)));
}

long vote_repetitions(double zeta) {
  return static_cast<long>(std::ceil(9.0 * std::log(1.0 / zeta)));
}

namespace {

struct VoteResult {
  bool feasible;
  DualWeights y;
};

VoteResult run_feasibility(const FeasibilityInstance& F, SolveMode mode,
                           std::uint64_t seed, int threads, const SqMatrix* sq,
                           SolveCounters& counters) {
  MwResult res;
  if (mode == SolveMode::Direct) {
    res = feasibility_solve(F, [](const FeasibilityInstance& fi,
                                  const DualWeights& y, double) {
      return direct_oracle(fi, y, fi.theta);
    });
  } else {
    TwoStepContext ctx;
    ctx.backend = mode == SolveMode::Sq ? OracleBackend::Sq : OracleBackend::Exact;
    ctx.sq = sq;
    ctx.seed = seed;
    ctx.threads = threads;
    res = feasibility_solve(F, [&](const FeasibilityInstance& fi,
                                   const DualWeights& y, double xi) {
      return two_step_oracle(fi, y, fi.theta, xi, ctx);
    });
    counters.gibbs_draws += ctx.gibbs_draws;
  }
  counters.mw_iterations += res.iterations;
  counters.oracle_calls += res.oracle_calls;
  counters.feasibility_runs += 1;
  return {res.status == MwResult::Status::Feasible, std::move(res.y)};
}

}  // namespace

SolveReport binary_search_solve(const SocpInstance& P,
                                const SolveOptions& opts) {
  if (!(opts.epsilon > 0.0))
    throw std::invalid_argument("binary_search_solve: epsilon must be positive");
  double theta = opts.epsilon / (4.0 * P.R * P.R_tilde);
  if (theta >= 1.0)
    throw std::invalid_argument("binary_search_solve: epsilon too large, theta >= 1");
  double gap = P.R * P.R_tilde * theta;

  long t_bs = binary_search_steps(P.R_tilde, theta);
  double zeta = 1.0 / (3.0 * static_cast<double>(std::max(t_bs, 1L)));
  // The direct oracle is deterministic, so a single call decides the vote.
  long reps = opts.mode == SolveMode::Direct ? 1 : vote_repetitions(zeta);

  std::unique_ptr<SqMatrix> sq;  // shared across all embedded instances

  SolveReport rep;
  rep.theta = theta;
  rep.epsilon = opts.epsilon;
  rep.seed = opts.seed;

  double a = -P.R, b = P.R;
  long step = 0;
  for (; step < t_bs && (b - a) > 4.0 * gap; ++step) {
    double g = 0.5 * (a + b);
    FeasibilityInstance F = embed(P, g, theta);
    if (opts.mode == SolveMode::Sq && !sq) sq = std::make_unique<SqMatrix>(F.A);
    long feas_votes = 0;
    for (long v = 0; v < reps; ++v) {
      std::uint64_t vote_seed = splitmix64(
          opts.seed ^ splitmix64(stream::kVote ^ splitmix64(
                                     static_cast<std::uint64_t>(step) * 4096 + v)));
      VoteResult vr = run_feasibility(F, opts.mode, vote_seed, opts.threads,
                                      sq.get(), rep.counters);
      if (vr.feasible) ++feas_votes;
    }
    if (2 * feas_votes > reps) {
      a = g - gap;
    } else {
      b = g;
    }
    rep.counters.bs_steps += 1;
  }

  rep.g = a;
  FeasibilityInstance F = embed(P, a, theta);
  if (opts.mode == SolveMode::Sq && !sq) sq = std::make_unique<SqMatrix>(F.A);
  std::uint64_t final_seed =
      splitmix64(opts.seed ^ splitmix64(stream::kVote ^ 0xf17a1ULL));
  VoteResult final_run = run_feasibility(F, opts.mode, final_seed, opts.threads,
                                         sq.get(), rep.counters);
  if (sq) rep.counters.sq = sq->counters();
  if (!final_run.feasible) {
    rep.status = SolveReport::Status::PromiseViolated;
    rep.y = std::move(final_run.y);
    rep.x = MulticoneVector::zero(P.part);
    rep.constraint_margins = Eigen::VectorXd::Zero(P.m());
    return rep;
  }
  rep.status = SolveReport::Status::Success;
  rep.y = std::move(final_run.y);
  rep.x = extract_primal(rep.y, P);
  rep.objective = objective_value(P, rep.x);
  rep.constraint_margins = -P.b;
  for (int k = 0; k < P.part.r(); ++k)
    rep.constraint_margins += P.A[k] * rep.x.cone(k);
  return rep;
}

}  // namespace socpmw
