#pragma once

#include <string>
#include <utility>
#include <vector>

#include "socpmw/jordan.hpp"

namespace socpmw {

// max c.x  s.t.  sum_k A^(k) x^(k) <= b,  x^(k) in the cone, with trust
// bounds R (primal trace) and R_tilde (dual l1).
struct SocpInstance {
  ConePartition part;
  std::vector<RowMatrixXd> A;  // A[k] is m x size(k)
  Eigen::VectorXd b;
  MulticoneVector c;
  double R = 1.0;
  double R_tilde = 1.0;

  int m() const { return static_cast<int>(b.size()); }
};

// Unit-trace theta-feasibility instance: rows soc-normalized, |b_j| <= 1.
struct FeasibilityInstance {
  ConePartition part;
  std::vector<RowMatrixXd> A;
  Eigen::VectorXd b;
  double theta = 0.1;

  int m() const { return static_cast<int>(b.size()); }
};

struct Diagnostic {
  enum class Severity { Error, Warning } severity;
  std::string message;
};

struct NormalizationReport {
  double c_scale = 1.0;
  Eigen::VectorXd row_scales;
  std::vector<int> b_clamped;
};

struct FeasibilityReport {
  double min_cone_eigenvalue = 0.0;
  double trace_value = 0.0;
  Eigen::VectorXd margins;  // Ax - b - slack, per constraint
  bool cone_ok = false;
  bool trace_ok = false;
  bool constraints_ok = false;
  bool pass = false;
};

std::vector<Diagnostic> validate(const SocpInstance& inst);
std::vector<Diagnostic> validate(const FeasibilityInstance& inst);
bool has_errors(const std::vector<Diagnostic>& diags);

// soc-norm of row j taken as max over cone blocks.
double row_soc_norm(const std::vector<RowMatrixXd>& A, int j);

// Scales c and the constraint rows down to the normalisation conditions and
// clamps |b_j| to R. The feasible set is unchanged.
std::pair<SocpInstance, NormalizationReport> normalize(const SocpInstance& inst);

FeasibilityReport feasibility_check(const FeasibilityInstance& F,
                                    const MulticoneVector& x, double slack,
                                    double tol);

double objective_value(const SocpInstance& inst, const MulticoneVector& x);

// v_j = sum_k A^(k)_{j,:} x^(k) - b_j, exact dense evaluation.
Eigen::VectorXd violation_vector(const FeasibilityInstance& F,
                                 const MulticoneVector& x);

}  // namespace socpmw
