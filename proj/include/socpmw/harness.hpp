#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "socpmw/instance.hpp"

namespace socpmw {

struct GeneratedFeasibility {
  FeasibilityInstance instance;
  MulticoneVector witness;  // strictly interior, unit trace, slack-0 feasible
  std::uint64_t seed = 0;
  std::string recipe;
};

struct GeneratedSocp {
  SocpInstance instance;
  double known_optimum = 0.0;  // closed form for the generated family
  std::uint64_t seed = 0;
  std::string recipe;
};

// Feasible instance with a planted interior witness: b = A x* + slack.
GeneratedFeasibility gen_feasible(std::uint64_t seed, int r, int min_size,
                                  int max_size, int m, double slack_min,
                                  double theta);

// Every row is (1, 0...) per cone with b_j = 1/2 - 2 theta, so every
// unit-trace cone point violates each constraint by exactly 2 theta.
FeasibilityInstance gen_infeasible_uniform(double theta, int r,
                                           const std::vector<int>& sizes,
                                           int m);

// Tiny SOCP (total dim <= 4) from a family with a provable dual trace bound
// R_tilde = 1 and a closed-form optimum.
GeneratedSocp gen_tiny_socp(std::uint64_t seed, int variant);

// Brute-force grid maximization of c.x over cone points with trace <= R that
// satisfy the constraints. resolution is the grid spacing as a fraction of R;
// the returned value underestimates the optimum by O(R * resolution) for
// well-conditioned instances. Desk scale only: total dim <= 4 and m <= 4.
double grid_optimum(const SocpInstance& P, double resolution);

struct ChiSquareResult {
  double statistic;
  double p_value;
  int dof;
};

// Pearson test; adjacent bins are merged until every expected count is >= 5.
ChiSquareResult chi_square_test(const std::vector<long>& observed,
                                const std::vector<double>& expected_probs);

// Upper regularized incomplete gamma Q(a, x); series/continued fraction,
// accurate to ~1e-8 relative.
double regularized_gamma_q(double a, double x);

// Dense matrix-exponential oracle: expm(Arw(v)) applied to the identity
// element, for one cone of size <= 16.
Eigen::VectorXd matrix_exp_oracle(const Eigen::VectorXd& cone_vector);

}  // namespace socpmw
