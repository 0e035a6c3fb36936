#include "socpmw/cost.hpp"

#include <cmath>

namespace socpmw {

PredictedCosts predict_costs(int r, long long n, int m, double theta,
                             double xi, double eta) {
  if (r < 1 || n < 1 || m < 1 || !(theta > 0.0))
    throw std::invalid_argument("predict_costs: positive parameters required");
  PredictedCosts out;
  out.T = mw_iteration_bound(r, theta);
  out.xi = xi > 0.0 ? xi : 1.0 / (3.0 * static_cast<double>(out.T));
  if (eta <= 0.0) eta = out.xi / 2.0;
  out.T_prime = gibbs_sample_count(m, out.xi, theta);
  double mu = theta / 12.0;
  double delta = eta / static_cast<double>(m);
  out.B = sq_batch_size(mu);
  out.M = sq_batch_count(delta);
  out.sq_samples_per_call =
      static_cast<long long>(m) * out.T_prime * out.B * out.M;
  double t4 = theta * theta * theta * theta;
  out.corollary = static_cast<double>(n) / t4 +
                  static_cast<double>(m) / (t4 * theta * theta);
  return out;
}

CostReport make_cost_report(SolveMode mode, const SolveCounters& counts,
                            const PredictedCosts& p) {
  CostReport rep;
  rep.oracle_mode = solve_mode_name(mode);
  rep.counts = counts;
  rep.predicted = p;
  rep.formulas = {
      {"T", "ceil(36 ln(2r) / theta^2)", static_cast<double>(p.T)},
      {"xi", "1 / (3T)", p.xi},
      {"T_prime", "ceil(288 ln(8m/xi) / theta^2)",
       static_cast<double>(p.T_prime)},
      {"B", "ceil(6 / mu^2), mu = theta/12", static_cast<double>(p.B)},
      {"M", "ceil(9 ln(1/delta)), delta = eta/m", static_cast<double>(p.M)},
      {"sq_samples_per_call", "m * T_prime * B * M",
       static_cast<double>(p.sq_samples_per_call)},
      {"corollary", "n/theta^4 + m/theta^6", p.corollary},
  };
  return rep;
}

const char* solve_mode_name(SolveMode mode) {
  switch (mode) {
    case SolveMode::Direct:
      return "direct";
    case SolveMode::TwoStepExact:
      return "two-step-exact";
    default:
      return "sq";
  }
}

}  // namespace socpmw
