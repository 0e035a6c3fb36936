#pragma once

#include <functional>
#include <map>

#include "socpmw/instance.hpp"

namespace socpmw {

// Sparse non-negative dual vector accumulated by the MW loop; every stored
// entry is a positive multiple of the step theta/6.
class DualWeights {
 public:
  DualWeights() = default;
  DualWeights(int m, double step) : m_(m), step_(step) {}

  void bump(int j) {
    entries_[j] += step_;
    beta_ += step_;
  }

  int size() const { return m_; }
  double step() const { return step_; }
  int sparsity() const { return static_cast<int>(entries_.size()); }
  double l1() const { return beta_; }
  double at(int j) const {
    auto it = entries_.find(j);
    return it == entries_.end() ? 0.0 : it->second;
  }
  const std::map<int, double>& entries() const { return entries_; }

 private:
  int m_ = 0;
  double step_ = 0.0;
  double beta_ = 0.0;
  std::map<int, double> entries_;
};

struct OracleOutcome {
  bool all_satisfied = false;
  int j = -1;             // violated constraint index when not all_satisfied
  double evidence = 0.0;  // the oracle's violation estimate for j

  static OracleOutcome satisfied() { return {true, -1, 0.0}; }
  static OracleOutcome violated(int j, double evidence) {
    return {false, j, evidence};
  }
};

// Contract: given (F, y, xi) return an outcome per the violated-constraint
// oracle definition with failure probability at most xi.
using ViolatedConstraintOracle = std::function<OracleOutcome(
    const FeasibilityInstance&, const DualWeights&, double xi)>;

struct MwTraceEntry {
  long t;
  int j;
  double evidence;
};

struct MwResult {
  enum class Status { Feasible, Infeasible } status;
  DualWeights y;
  long iterations = 0;    // violated iterations executed
  long oracle_calls = 0;
  std::vector<MwTraceEntry> log;
};

// T = ceil(36 ln(2r) / theta^2).
long mw_iteration_bound(int r, double theta);
// Per-call failure budget xi = 1/(3T).
double mw_failure_budget(int r, double theta);

struct MwOptions {
  bool record_log = false;
};

MwResult feasibility_solve(const FeasibilityInstance& F,
                           const ViolatedConstraintOracle& oracle,
                           const MwOptions& opts = {});

// x = e^{-A^T y} / sum_k Tr(e^{-A^(k)T y}); unit trace, exactly in the cone.
MulticoneVector build_x_from_y(const FeasibilityInstance& F,
                               const DualWeights& y);

// u^(k) = A^(k)^T y exploiting the sparsity of y; concatenated over cones.
Eigen::VectorXd dual_combination(const FeasibilityInstance& F,
                                 const DualWeights& y);

}  // namespace socpmw
