#pragma once

#include <string>
#include <vector>

#include "socpmw/oracles.hpp"
#include "socpmw/reduction.hpp"

namespace socpmw {

// Closed-form count predictions for a feasibility run at precision theta.
struct PredictedCosts {
  long long T = 0;         // MW iteration bound
  double xi = 0.0;         // per-call failure budget 1/(3T)
  long long T_prime = 0;   // Gibbs draws per oracle call
  long long B = 0;         // estimator batch size
  long long M = 0;         // estimator batch count (median)
  long long sq_samples_per_call = 0;  // m * T' * B * M
  double corollary = 0.0;  // n/theta^4 + m/theta^6, formula evaluation only
};

struct CostFormula {
  std::string name;
  std::string formula;
  double value = 0.0;
};

struct CostReport {
  std::string oracle_mode;
  SolveCounters counts;
  PredictedCosts predicted;
  std::vector<CostFormula> formulas;
};

// Evaluates the count formulas without solving. xi <= 0 and eta <= 0 select
// the defaults xi = 1/(3T) and eta = xi/2.
PredictedCosts predict_costs(int r, long long n, int m, double theta,
                             double xi = 0.0, double eta = 0.0);

CostReport make_cost_report(SolveMode mode, const SolveCounters& counts,
                            const PredictedCosts& predicted);

const char* solve_mode_name(SolveMode mode);

}  // namespace socpmw
