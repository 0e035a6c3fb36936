#include "socpmw/instance.hpp"

#include <cmath>
#include <sstream>

namespace socpmw {

namespace {

void check_blocks(const ConePartition& part, const std::vector<RowMatrixXd>& A,
                  int m, std::vector<Diagnostic>& out) {
  if (static_cast<int>(A.size()) != part.r()) {
    out.push_back({Diagnostic::Severity::Error,
                   "expected " + std::to_string(part.r()) + " A blocks, got " +
                       std::to_string(A.size())});
    return;
  }
  for (int k = 0; k < part.r(); ++k) {
    if (A[k].rows() != m) {
      std::ostringstream ss;
      ss << "A block " << k << " has " << A[k].rows() << " rows, expected " << m;
      out.push_back({Diagnostic::Severity::Error, ss.str()});
    }
    if (A[k].cols() != part.size(k)) {
      std::ostringstream ss;
      ss << "A block " << k << " has " << A[k].cols() << " columns, expected "
         << part.size(k);
      out.push_back({Diagnostic::Severity::Error, ss.str()});
    }
    if (!A[k].allFinite()) {
      out.push_back({Diagnostic::Severity::Error,
                     "A block " + std::to_string(k) + " has non-finite entries"});
    }
  }
}

void check_row_norms(const ConePartition& part,
                     const std::vector<RowMatrixXd>& A, int m,
                     std::vector<Diagnostic>& out) {
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < part.r(); ++k) {
      if (A[k].rows() != m || A[k].cols() != part.size(k)) continue;
      Eigen::VectorXd row = A[k].row(j).transpose();
      double nrm = soc_norm_block(row);
      if (nrm > 1.0 + 1e-9) {
        std::ostringstream ss;
        ss << "row (" << j << "," << k << ") has soc-norm " << nrm << " > 1";
        out.push_back({Diagnostic::Severity::Warning, ss.str()});
      }
    }
  }
}

}  // namespace

bool has_errors(const std::vector<Diagnostic>& diags) {
  for (const auto& d : diags)
    if (d.severity == Diagnostic::Severity::Error) return true;
  return false;
}

std::vector<Diagnostic> validate(const SocpInstance& inst) {
  std::vector<Diagnostic> out;
  check_blocks(inst.part, inst.A, inst.m(), out);
  if (!(inst.c.part == inst.part))
    out.push_back({Diagnostic::Severity::Error, "c partition mismatch"});
  if (!inst.b.allFinite() || !inst.c.values.allFinite())
    out.push_back({Diagnostic::Severity::Error, "non-finite b or c"});
  if (!(inst.R > 0.0) || !(inst.R_tilde > 0.0))
    out.push_back({Diagnostic::Severity::Error, "R and R_tilde must be positive"});
  check_row_norms(inst.part, inst.A, inst.m(), out);
  return out;
}

std::vector<Diagnostic> validate(const FeasibilityInstance& inst) {
  std::vector<Diagnostic> out;
  check_blocks(inst.part, inst.A, inst.m(), out);
  if (!inst.b.allFinite())
    out.push_back({Diagnostic::Severity::Error, "non-finite b"});
  if (!(inst.theta > 0.0 && inst.theta < 1.0))
    out.push_back({Diagnostic::Severity::Error, "theta must lie in (0,1)"});
  for (int j = 0; j < inst.m(); ++j) {
    if (std::abs(inst.b[j]) > 1.0 + 1e-9) {
      out.push_back({Diagnostic::Severity::Warning,
                     "|b_" + std::to_string(j) + "| exceeds 1"});
    }
  }
  check_row_norms(inst.part, inst.A, inst.m(), out);
  return out;
}

double row_soc_norm(const std::vector<RowMatrixXd>& A, int j) {
  double m = 0.0;
  for (const auto& blk : A) {
    Eigen::VectorXd row = blk.row(j).transpose();
    m = std::max(m, soc_norm_block(row));
  }
  return m;
}

std::pair<SocpInstance, NormalizationReport> normalize(const SocpInstance& inst) {
  if (!inst.b.allFinite() || !inst.c.values.allFinite())
    throw std::invalid_argument("normalize: non-finite data");
  SocpInstance out = inst;
  NormalizationReport rep;
  rep.row_scales = Eigen::VectorXd::Ones(inst.m());

  rep.c_scale = std::max(1.0, soc_norm(inst.c));
  out.c.values /= rep.c_scale;

  for (int j = 0; j < inst.m(); ++j) {
    double s = std::max(1.0, row_soc_norm(inst.A, j));
    rep.row_scales[j] = s;
    for (auto& blk : out.A) blk.row(j) /= s;
    out.b[j] /= s;
    if (std::abs(out.b[j]) > out.R) {
      out.b[j] = out.b[j] > 0.0 ? out.R : -out.R;
      rep.b_clamped.push_back(j);
    }
  }
  return {out, rep};
}

FeasibilityReport feasibility_check(const FeasibilityInstance& F,
                                    const MulticoneVector& x, double slack,
                                    double tol) {
  if (!(x.part == F.part))
    throw std::invalid_argument("feasibility_check: partition mismatch");
  FeasibilityReport rep;
  rep.min_cone_eigenvalue = cone_min_eigenvalue(x);
  rep.trace_value = trace(x);
  Eigen::VectorXd v = violation_vector(F, x);
  rep.margins = v.array() - slack;
  rep.cone_ok = rep.min_cone_eigenvalue >= -tol;
  rep.trace_ok = std::abs(rep.trace_value - 1.0) <= tol;
  rep.constraints_ok = (rep.margins.array() <= tol).all();
  rep.pass = rep.cone_ok && rep.trace_ok && rep.constraints_ok;
  return rep;
}

double objective_value(const SocpInstance& inst, const MulticoneVector& x) {
  return inst.c.values.dot(x.values);
}

Eigen::VectorXd violation_vector(const FeasibilityInstance& F,
                                 const MulticoneVector& x) {
  if (!(x.part == F.part))
    throw std::invalid_argument("violation_vector: partition mismatch");
  Eigen::VectorXd v = -F.b;
  for (int k = 0; k < F.part.r(); ++k) v += F.A[k] * x.cone(k);
  return v;
}

}  // namespace socpmw
