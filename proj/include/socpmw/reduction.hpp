#pragma once

#include <cstdint>

#include "socpmw/oracles.hpp"

namespace socpmw {

// Feasibility embedding of a guess g: m+1 constraints (original rows then
// -c), r+1 cones (extra size-1 slack cone), b_hat = (b/R; -g/R).
FeasibilityInstance embed(const SocpInstance& P, double g, double theta);

// Scales a trace <= R point into the embedded space and appends the slack
// coordinate that makes the Jordan trace exactly 1.
MulticoneVector lift_point(const MulticoneVector& x_star, const SocpInstance& P);

// x^(k) = R e^{-A^(k)T y_{0..m-1} + c^(k) y_m} / (2 + sum_k Tr e^{...}); the
// 2 is the slack cone's Jordan trace. Evaluated with a uniform exponent
// shift. y has m+1 entries.
MulticoneVector extract_primal(const DualWeights& y, const SocpInstance& P);

enum class SolveMode { Direct, TwoStepExact, Sq };

// T_bs = ceil(log_{4/3}(1 / (2 R_tilde theta))).
long binary_search_steps(double r_tilde, double theta);
// Majority-vote repetitions ceil(9 ln(1/zeta)).
long vote_repetitions(double zeta);

struct SolveCounters {
  long long mw_iterations = 0;
  long long oracle_calls = 0;
  long long gibbs_draws = 0;
  long long bs_steps = 0;
  long long feasibility_runs = 0;
  SqCounters sq;
};

struct SolveReport {
  enum class Status { Success, PromiseViolated } status;
  double g = 0.0;
  double theta = 0.0;
  double epsilon = 0.0;
  DualWeights y;       // m+1 entries
  MulticoneVector x;   // r cones, unscaled original space
  double objective = 0.0;
  Eigen::VectorXd constraint_margins;  // A x - b
  SolveCounters counters;
  std::uint64_t seed = 0;
};

struct SolveOptions {
  double epsilon = 0.05;
  SolveMode mode = SolveMode::Direct;
  std::uint64_t seed = 0;
  int threads = 1;
};

// Binary search of the reduction lemma over g in [-R, R]; P must already be
// normalized.
SolveReport binary_search_solve(const SocpInstance& P, const SolveOptions& opts);

}  // namespace socpmw
