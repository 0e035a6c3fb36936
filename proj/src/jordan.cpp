#include "socpmw/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace socpmw {

ConePartition::ConePartition(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("partition needs at least one cone");
  offsets_.reserve(sizes_.size());
  for (int s : sizes_) {
    if (s < 1) throw std::invalid_argument("cone sizes must be positive");
    offsets_.push_back(n_);
    n_ += s;
  }
}

MulticoneVector::MulticoneVector(ConePartition p, Eigen::VectorXd v)
    : part(std::move(p)), values(std::move(v)) {
  if (values.size() != part.n())
    throw std::invalid_argument("value length does not match partition");
}

MulticoneVector MulticoneVector::zero(const ConePartition& p) {
  return MulticoneVector(p, Eigen::VectorXd::Zero(p.n()));
}

double MulticoneVector::vec_norm(int k) const {
  int sz = part.size(k);
  if (sz == 1) return 0.0;
  return values.segment(part.offset(k) + 1, sz - 1).norm();
}

MulticoneVector identity_element(const ConePartition& p) {
  MulticoneVector e = MulticoneVector::zero(p);
  for (int k = 0; k < p.r(); ++k) e.values[p.offset(k)] = 1.0;
  return e;
}

SpectralData spectral_decompose(const MulticoneVector& v, double tol) {
  SpectralData s;
  int r = v.part.r();
  s.lambda_plus.resize(r);
  s.lambda_minus.resize(r);
  s.direction.resize(r);
  for (int k = 0; k < r; ++k) {
    double v0 = v.scalar(k);
    double nv = v.vec_norm(k);
    if (v.part.size(k) > 1 && nv > tol) {
      s.lambda_plus[k] = v0 + nv;
      s.lambda_minus[k] = v0 - nv;
      s.direction[k] =
          v.values.segment(v.part.offset(k) + 1, v.part.size(k) - 1) / nv;
    } else {
      s.lambda_plus[k] = v0;
      s.lambda_minus[k] = v0;
    }
  }
  return s;
}

SpectralData spectral_decompose(const MulticoneVector& v) {
  double tol = 0.0;
  for (int k = 0; k < v.part.r(); ++k)
    tol = std::max(tol, degenerate_tol(v.scalar(k)));
  return spectral_decompose(v, tol);
}

MulticoneVector jordan_product(const MulticoneVector& v,
                               const MulticoneVector& w) {
  if (!(v.part == w.part))
    throw std::invalid_argument("jordan_product: partition mismatch");
  MulticoneVector out = MulticoneVector::zero(v.part);
  for (int k = 0; k < v.part.r(); ++k) {
    int off = v.part.offset(k), sz = v.part.size(k);
    auto vk = v.values.segment(off, sz);
    auto wk = w.values.segment(off, sz);
    out.values[off] = vk.dot(wk);
    if (sz > 1) {
      out.values.segment(off + 1, sz - 1) =
          vk[0] * wk.tail(sz - 1) + wk[0] * vk.tail(sz - 1);
    }
  }
  return out;
}

Eigen::MatrixXd arrowhead_dense(const MulticoneVector& v, int dense_cap) {
  for (int k = 0; k < v.part.r(); ++k) {
    if (v.part.size(k) > dense_cap)
      throw std::invalid_argument("arrowhead_dense: cone exceeds dense size cap");
  }
  int n = v.part.n();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < v.part.r(); ++k) {
    int off = v.part.offset(k), sz = v.part.size(k);
    double v0 = v.scalar(k);
    for (int i = 0; i < sz; ++i) A(off + i, off + i) = v0;
    for (int i = 1; i < sz; ++i) {
      double vi = v.values[off + i];
      A(off, off + i) = vi;
      A(off + i, off) = vi;
    }
  }
  return A;
}

namespace {
double checked_exp(double lam, double shift) {
  double a = lam - shift;
  if (a > kExpOverflowLimit)
    throw std::overflow_error("jordan_exp: exponent beyond double range");
  return std::exp(a);
}
}  // namespace

MulticoneVector jordan_exp(const MulticoneVector& v, double shift) {
  SpectralData s = spectral_decompose(v);
  MulticoneVector out = MulticoneVector::zero(v.part);
  for (int k = 0; k < v.part.r(); ++k) {
    int off = v.part.offset(k), sz = v.part.size(k);
    double ep = checked_exp(s.lambda_plus[k], shift);
    double em = checked_exp(s.lambda_minus[k], shift);
    out.values[off] = 0.5 * (ep + em);
    if (s.has_direction(k)) {
      out.values.segment(off + 1, sz - 1) = 0.5 * (ep - em) * s.direction[k];
    }
  }
  return out;
}

double trace(const MulticoneVector& v) {
  double t = 0.0;
  for (int k = 0; k < v.part.r(); ++k) t += 2.0 * v.scalar(k);
  return t;
}

double trace_exp(const MulticoneVector& v, double shift) {
  SpectralData s = spectral_decompose(v);
  double t = 0.0;
  for (int k = 0; k < v.part.r(); ++k) {
    t += checked_exp(s.lambda_plus[k], shift) +
         checked_exp(s.lambda_minus[k], shift);
  }
  return t;
}

double soc_norm_block(const Eigen::Ref<const Eigen::VectorXd>& block) {
  double n = block.size() > 1 ? block.tail(block.size() - 1).norm() : 0.0;
  return std::abs(block[0]) + n;
}

double soc_norm(const MulticoneVector& v) {
  double m = 0.0;
  for (int k = 0; k < v.part.r(); ++k)
    m = std::max(m, std::abs(v.scalar(k)) + v.vec_norm(k));
  return m;
}

double cone_min_eigenvalue(const MulticoneVector& v) {
  double m = std::numeric_limits<double>::infinity();
  for (int k = 0; k < v.part.r(); ++k)
    m = std::min(m, v.scalar(k) - v.vec_norm(k));
  return m;
}

bool is_in_cone(const MulticoneVector& v, double tol) {
  return cone_min_eigenvalue(v) >= -tol;
}

}  // namespace socpmw
