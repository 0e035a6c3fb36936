#include "socpmw/harness.hpp"

#include <cmath>
#include <limits>
#include <unsupported/Eigen/MatrixFunctions>

#include "socpmw/rng.hpp"

namespace socpmw {

GeneratedFeasibility gen_feasible(std::uint64_t seed, int r, int min_size,
                                  int max_size, int m, double slack_min,
                                  double theta) {
  if (slack_min < 0.0) throw std::invalid_argument("slack_min must be >= 0");
  auto rng = derive_rng(seed, stream::kGenerator, 0);
  std::vector<int> sizes(r);
  for (int k = 0; k < r; ++k) {
    sizes[k] = min_size +
               static_cast<int>(uniform_double(rng) * (max_size - min_size + 1));
    sizes[k] = std::min(sizes[k], max_size);
  }
  ConePartition part(sizes);

  // Witness: scalar parts from bounded weights, vector parts at most 70% of
  // the scalar, so min eigenvalue stays >= 0.1/r after unit-trace scaling.
  MulticoneVector x = MulticoneVector::zero(part);
  std::vector<double> w(r);
  double wsum = 0.0;
  for (int k = 0; k < r; ++k) {
    w[k] = 0.8 + 0.4 * uniform_double(rng);
    wsum += w[k];
  }
  for (int k = 0; k < r; ++k) {
    int off = part.offset(k), sz = part.size(k);
    double x0 = w[k] / (2.0 * wsum);
    x.values[off] = x0;
    if (sz > 1) {
      Eigen::VectorXd dir(sz - 1);
      for (int i = 0; i < sz - 1; ++i) dir[i] = gaussian(rng);
      double nd = dir.norm();
      if (nd > 0.0) {
        double rho = 0.7 * uniform_double(rng);
        x.values.segment(off + 1, sz - 1) = (rho * x0 / nd) * dir;
      }
    }
  }

  std::vector<RowMatrixXd> A;
  A.reserve(r);
  for (int k = 0; k < r; ++k) {
    RowMatrixXd blk(m, part.size(k));
    for (int j = 0; j < m; ++j)
      for (int i = 0; i < part.size(k); ++i) blk(j, i) = gaussian(rng);
    A.push_back(std::move(blk));
  }
  for (int j = 0; j < m; ++j) {
    double s = std::max(1.0, row_soc_norm(A, j));
    for (auto& blk : A) blk.row(j) /= s;
  }

  FeasibilityInstance F;
  F.part = part;
  F.A = A;
  F.theta = theta;
  F.b.resize(m);
  for (int j = 0; j < m; ++j) {
    double ax = 0.0;
    for (int k = 0; k < r; ++k) ax += A[k].row(j).dot(x.cone(k));
    double slack = slack_min + 0.3 * uniform_double(rng);
    F.b[j] = std::min(ax + slack, 1.0);
  }
  return {std::move(F), std::move(x), seed, "feasible"};
}

FeasibilityInstance gen_infeasible_uniform(double theta, int r,
                                           const std::vector<int>& sizes,
                                           int m) {
  if (!(theta < 0.25)) throw std::invalid_argument("requires theta < 1/4");
  if (static_cast<int>(sizes.size()) != r)
    throw std::invalid_argument("sizes/r mismatch");
  ConePartition part(sizes);
  FeasibilityInstance F;
  F.part = part;
  F.theta = theta;
  for (int k = 0; k < r; ++k) {
    RowMatrixXd blk = RowMatrixXd::Zero(m, part.size(k));
    blk.col(0).setOnes();
    F.A.push_back(std::move(blk));
  }
  F.b = Eigen::VectorXd::Constant(m, 0.5 - 2.0 * theta);
  return F;
}

GeneratedSocp gen_tiny_socp(std::uint64_t seed, int variant) {
  auto rng = derive_rng(seed, stream::kGenerator, 100 + variant);
  GeneratedSocp out;
  out.seed = seed;
  SocpInstance& P = out.instance;
  P.R = 1.0;
  P.R_tilde = 1.0;
  switch (variant % 4) {
    case 0: {
      // Scalar LP: max c0 x0, x0 <= b0. Dual weight c0 <= 1.
      out.recipe = "tiny-lp";
      double b0 = 0.05 + 0.35 * uniform_double(rng);
      double c0 = 0.3 + 0.7 * uniform_double(rng);
      P.part = ConePartition({1});
      P.A = {RowMatrixXd::Constant(1, 1, 1.0)};
      P.b = Eigen::VectorXd::Constant(1, b0);
      P.c = MulticoneVector(P.part, Eigen::VectorXd::Constant(1, c0));
      out.known_optimum = c0 * b0;
      break;
    }
    case 1: {
      // Single cone, trace-cap row: optimum t * (c0 + |c_vec|).
      out.recipe = "tiny-trace-cap";
      int sz = 2 + static_cast<int>(uniform_double(rng) * 2.0);  // 2 or 3
      P.part = ConePartition({sz});
      double t = 0.2 + 0.25 * uniform_double(rng);
      Eigen::VectorXd c(sz);
      c[0] = 0.2 + 0.4 * uniform_double(rng);
      for (int i = 1; i < sz; ++i) c[i] = gaussian(rng);
      double vn = c.tail(sz - 1).norm();
      double cap = 0.95 - c[0];
      if (vn > cap) c.tail(sz - 1) *= cap / vn;
      RowMatrixXd row = RowMatrixXd::Zero(1, sz);
      row(0, 0) = 1.0;
      P.A = {row};
      P.b = Eigen::VectorXd::Constant(1, t);
      P.c = MulticoneVector(P.part, c);
      out.known_optimum = t * (c[0] + c.tail(sz - 1).norm());
      break;
    }
    case 2: {
      // Two cones sharing one trace-cap row plus a slack row.
      out.recipe = "tiny-two-cone";
      P.part = ConePartition({1, 2});
      double t = 0.2 + 0.2 * uniform_double(rng);
      Eigen::VectorXd c(3);
      c[0] = 0.1 + 0.5 * uniform_double(rng);
      c[1] = 0.1 + 0.4 * uniform_double(rng);
      c[2] = (uniform_double(rng) - 0.5);
      double cap = 0.9 - c[1];
      if (std::abs(c[2]) > cap) c[2] = c[2] > 0 ? cap : -cap;
      RowMatrixXd a0(2, 1), a1(2, 2);
      a0 << 1.0, 0.3 * uniform_double(rng);
      a1 << 1.0, 0.0, 0.3 * uniform_double(rng), 0.3 * (uniform_double(rng) - 0.5);
      P.A = {a0, a1};
      P.b.resize(2);
      P.b << t, 0.95;  // second row slack for every trace <= 2t point
      P.c = MulticoneVector(P.part, c);
      out.known_optimum =
          t * std::max(0.0, std::max(c[0], c[1] + std::abs(c[2])));
      break;
    }
    default: {
      // Size-2 cone with a trace cap and an axis cap on the vector part.
      out.recipe = "tiny-axis-cap";
      P.part = ConePartition({2});
      double t = 0.15 + 0.25 * uniform_double(rng);
      double sc = 0.05 + 0.3 * uniform_double(rng);
      Eigen::VectorXd c(2);
      c[0] = 0.2 + 0.4 * uniform_double(rng);
      c[1] = (uniform_double(rng) - 0.5);
      double cap = 0.95 - c[0];
      if (std::abs(c[1]) > cap) c[1] = c[1] > 0 ? cap : -cap;
      RowMatrixXd a(2, 2);
      a << 1.0, 0.0, 0.0, 1.0;
      P.A = {a};
      P.b.resize(2);
      P.b << t, sc;
      P.c = MulticoneVector(P.part, c);
      out.known_optimum =
          c[0] * t + (c[1] > 0.0 ? c[1] * std::min(t, sc) : -c[1] * t);
      break;
    }
  }
  return out;
}

namespace {

struct GridSearch {
  const SocpInstance& P;
  double h;
  double best = -std::numeric_limits<double>::infinity();
  Eigen::VectorXd x;
  Eigen::VectorXd ax;  // running A x

  explicit GridSearch(const SocpInstance& p, double spacing)
      : P(p), h(spacing), x(Eigen::VectorXd::Zero(p.part.n())),
        ax(Eigen::VectorXd::Zero(p.m())) {}

  void set_coord(int k, int i, double val) {
    int idx = P.part.offset(k) + i;
    double delta = val - x[idx];
    if (delta != 0.0) {
      for (int j = 0; j < P.m(); ++j) ax[j] += delta * P.A[k](j, i);
      x[idx] = val;
    }
  }

  void leaf() {
    for (int j = 0; j < P.m(); ++j)
      if (ax[j] > P.b[j] + 1e-12) return;
    double obj = P.c.values.dot(x);
    if (obj > best) best = obj;
  }

  // Enumerate the vector part of cone k with squared-norm budget x0^2.
  void vec_coords(int k, int i, double budget2, double trace_used) {
    int sz = P.part.size(k);
    if (i >= sz) {
      next_cone(k + 1, trace_used);
      return;
    }
    double lim = std::sqrt(budget2);
    long steps = static_cast<long>(std::floor(lim / h));
    for (long q = -steps; q <= steps; ++q) {
      double val = static_cast<double>(q) * h;
      set_coord(k, i, val);
      vec_coords(k, i + 1, budget2 - val * val, trace_used);
    }
    set_coord(k, i, 0.0);
  }

  void next_cone(int k, double trace_used) {
    if (k >= P.part.r()) {
      leaf();
      return;
    }
    double budget = (P.R - trace_used) / 2.0;
    long steps = static_cast<long>(std::floor(budget / h));
    for (long q = 0; q <= steps; ++q) {
      double x0 = static_cast<double>(q) * h;
      set_coord(k, 0, x0);
      vec_coords(k, 1, x0 * x0, trace_used + 2.0 * x0);
    }
    set_coord(k, 0, 0.0);
  }
};

}  // namespace

double grid_optimum(const SocpInstance& P, double resolution) {
  if (P.part.n() > 4 || P.m() > 4)
    throw std::invalid_argument("grid_optimum: desk scale only (dim <= 4, m <= 4)");
  if (!(resolution > 0.0 && resolution < 1.0))
    throw std::invalid_argument("grid_optimum: resolution must lie in (0,1)");
  GridSearch gs(P, P.R * resolution);
  gs.next_cone(0, 0.0);
  return gs.best;
}

namespace {

// Lower regularized incomplete gamma by series; x < a + 1.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int n = 0; n < 500; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Upper regularized incomplete gamma by continued fraction; x >= a + 1.
double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double frac = d;
  for (int i = 1; i < 500; ++i) {
    double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    double delta = d * c;
    frac *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return frac * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::invalid_argument("regularized_gamma_q: bad arguments");
  if (x == 0.0) return 1.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

ChiSquareResult chi_square_test(const std::vector<long>& observed,
                                const std::vector<double>& expected_probs) {
  if (observed.size() != expected_probs.size() || observed.empty())
    throw std::invalid_argument("chi_square_test: size mismatch");
  long total = 0;
  for (long o : observed) total += o;
  if (total <= 0) throw std::invalid_argument("chi_square_test: empty sample");

  // Merge adjacent bins until each expected count reaches 5.
  std::vector<double> exp_counts;
  std::vector<double> obs_counts;
  double acc_e = 0.0, acc_o = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    acc_e += expected_probs[i] * static_cast<double>(total);
    acc_o += static_cast<double>(observed[i]);
    if (acc_e >= 5.0) {
      exp_counts.push_back(acc_e);
      obs_counts.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0.0 || acc_o > 0.0) {
    if (exp_counts.empty())
      throw std::invalid_argument("chi_square_test: degenerate bins");
    exp_counts.back() += acc_e;
    obs_counts.back() += acc_o;
  }
  if (exp_counts.size() < 2)
    throw std::invalid_argument("chi_square_test: fewer than two usable bins");

  double stat = 0.0;
  for (std::size_t i = 0; i < exp_counts.size(); ++i) {
    double diff = obs_counts[i] - exp_counts[i];
    stat += diff * diff / exp_counts[i];
  }
  int dof = static_cast<int>(exp_counts.size()) - 1;
  double p = regularized_gamma_q(0.5 * dof, 0.5 * stat);
  return {stat, p, dof};
}

Eigen::VectorXd matrix_exp_oracle(const Eigen::VectorXd& cone_vector) {
  int n = static_cast<int>(cone_vector.size());
  if (n < 1 || n > 16)
    throw std::invalid_argument("matrix_exp_oracle: cone size must be in [1,16]");
  ConePartition part({n});
  MulticoneVector v(part, cone_vector);
  Eigen::MatrixXd A = arrowhead_dense(v);
  Eigen::MatrixXd E = A.exp();
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e[0] = 1.0;
  return E * e;
}

}  // namespace socpmw
