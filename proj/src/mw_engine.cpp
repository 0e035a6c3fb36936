#include "socpmw/mw_engine.hpp"

#include <cmath>

namespace socpmw {

long mw_iteration_bound(int r, double theta) {
  return static_cast<long>(
      std::ceil(36.0 * std::log(2.0 * r) / (theta * theta)));
}

double mw_failure_budget(int r, double theta) {
  return 1.0 / (3.0 * static_cast<double>(mw_iteration_bound(r, theta)));
}

Eigen::VectorXd dual_combination(const FeasibilityInstance& F,
                                 const DualWeights& y) {
  Eigen::VectorXd u = Eigen::VectorXd::Zero(F.part.n());
  for (const auto& [j, yj] : y.entries()) {
    for (int k = 0; k < F.part.r(); ++k) {
      u.segment(F.part.offset(k), F.part.size(k)) +=
          yj * F.A[k].row(j).transpose();
    }
  }
  return u;
}

MulticoneVector build_x_from_y(const FeasibilityInstance& F,
                               const DualWeights& y) {
  MulticoneVector w(F.part, -dual_combination(F, y));
  // Shift so all exponents are <= 0: no overflow, denominator >= 1.
  SpectralData s = spectral_decompose(w);
  double sigma = s.lambda_plus[0];
  for (int k = 1; k < F.part.r(); ++k)
    sigma = std::max(sigma, s.lambda_plus[k]);
  MulticoneVector x = jordan_exp(w, sigma);
  double z = trace(x);
  x.values /= z;
  return x;
}

MwResult feasibility_solve(const FeasibilityInstance& F,
                           const ViolatedConstraintOracle& oracle,
                           const MwOptions& opts) {
  long T = mw_iteration_bound(F.part.r(), F.theta);
  double xi = 1.0 / (3.0 * static_cast<double>(T));
  MwResult res;
  res.y = DualWeights(F.m(), F.theta / 6.0);
  for (long t = 0; t < T; ++t) {
    OracleOutcome out = oracle(F, res.y, xi);
    ++res.oracle_calls;
    if (out.all_satisfied) {
      res.status = MwResult::Status::Feasible;
      res.iterations = t;
      return res;
    }
    if (out.j < 0 || out.j >= F.m())
      throw std::out_of_range("oracle returned constraint index out of range");
    if (opts.record_log) res.log.push_back({t, out.j, out.evidence});
    res.y.bump(out.j);
    ++res.iterations;
  }
  res.status = MwResult::Status::Infeasible;
  return res;
}

}  // namespace socpmw
