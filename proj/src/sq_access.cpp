#include "socpmw/sq_access.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "socpmw/oracles.hpp"
#include "socpmw/rng.hpp"

namespace socpmw {

namespace {
// Entries below this magnitude carry zero sampling mass; the ratio p_i/A_ji
// is never formed for them.
constexpr double kMassFloor = 1e-300;
}  // namespace

SqMatrix::SqMatrix(const std::vector<RowMatrixXd>& A) {
  if (A.empty()) throw std::invalid_argument("SqMatrix: no blocks");
  m_ = static_cast<int>(A[0].rows());
  values_.reserve(A.size());
  cumulative_.reserve(A.size());
  for (const auto& blk : A) {
    if (!blk.allFinite())
      throw std::invalid_argument("SqMatrix: non-finite entries");
    if (blk.rows() != m_) throw std::invalid_argument("SqMatrix: row mismatch");
    values_.push_back(blk);
    RowMatrixXd cum(blk.rows(), blk.cols());
    for (int j = 0; j < blk.rows(); ++j) {
      double acc = 0.0;
      for (int i = 0; i < blk.cols(); ++i) {
        double a = blk(j, i);
        if (std::abs(a) >= kMassFloor) acc += a * a;
        cum(j, i) = acc;
      }
    }
    cumulative_.push_back(std::move(cum));
    entry_queries_ += blk.rows() * blk.cols();  // the single build pass
  }
}

double SqMatrix::query(int j, int k, int i) const {
  ++entry_queries_;
  return values_[k](j, i);
}

double SqMatrix::row_norm(int j, int k) const {
  ++norm_queries_;
  return std::sqrt(cumulative_[k](j, cumulative_[k].cols() - 1));
}

int SqMatrix::sample_index(int j, int k, std::mt19937_64& rng) const {
  const auto& cum = cumulative_[k];
  int n = static_cast<int>(cum.cols());
  double total = cum(j, n - 1);
  if (total <= 0.0)
    throw std::domain_error("SqMatrix: cannot sample from a zero row");
  ++row_samples_;
  double u = uniform_double(rng) * total;
  const double* row = cum.data() + static_cast<std::ptrdiff_t>(j) * n;
  const double* it = std::upper_bound(row, row + n, u);
  int i = static_cast<int>(it - row);
  return i < n ? i : n - 1;
}

SqCounters SqMatrix::counters() const {
  return {entry_queries_.load(), row_samples_.load(), norm_queries_.load()};
}

void SqMatrix::reset_counters() {
  entry_queries_ = 0;
  row_samples_ = 0;
  norm_queries_ = 0;
}

long sq_batch_size(double mu) {
  return static_cast<long>(std::ceil(6.0 / (mu * mu)));
}

long sq_batch_count(double delta) {
  return static_cast<long>(std::ceil(9.0 * std::log(1.0 / delta)));
}

double inner_product_estimate(const SqMatrix& sq, int j, int k,
                              const Eigen::Ref<const Eigen::VectorXd>& p,
                              double mu, double delta, std::mt19937_64& rng) {
  double nrm = sq.row_norm(j, k);
  if (nrm == 0.0) return 0.0;
  double nrm2 = nrm * nrm;
  long B = sq_batch_size(mu);
  long M = sq_batch_count(delta);
  std::vector<double> means(M);
  for (long b = 0; b < M; ++b) {
    double acc = 0.0;
    for (long d = 0; d < B; ++d) {
      int i = sq.sample_index(j, k, rng);
      double a = sq.query(j, k, i);
      acc += nrm2 * p[i] / a;
    }
    double mean = acc / static_cast<double>(B);
    if (!std::isfinite(mean))
      throw std::domain_error("inner_product_estimate: non-finite batch mean");
    means[b] = mean;
  }
  auto mid = means.begin() + M / 2;
  std::nth_element(means.begin(), mid, means.end());
  if (M % 2 == 1) return *mid;
  double hi = *mid;
  double lo = *std::max_element(means.begin(), mid);
  return 0.5 * (lo + hi);
}

OracleOutcome sampled_search_sq(const FeasibilityInstance& F,
                                const SqMatrix& sq, const DualWeights& y,
                                double theta, double eta,
                                const GibbsSamples& samples,
                                std::uint64_t seed, int threads) {
  long t_prime = static_cast<long>(samples.indices.size());
  if (t_prime == 0) throw std::invalid_argument("empty sample list");
  int m = F.m();
  double mu = theta / 12.0;
  double delta = eta / m;

  // p^(k) computed exactly from queried data, once per distinct cone.
  std::vector<Eigen::VectorXd> p_cache(F.part.r());
  std::vector<char> have(F.part.r(), 0);
  for (int k : samples.indices) {
    if (!have[k]) {
      p_cache[k] = cone_gibbs_state(F, y, k);
      have[k] = 1;
    }
  }

  Eigen::VectorXd vtilde(m);
  auto estimate_row = [&](int j) {
    double acc = 0.0;
    for (long h = 0; h < t_prime; ++h) {
      int k = samples.indices[h];
      auto rng = derive_rng(seed, stream::kSqEstimate,
                            static_cast<std::uint64_t>(j) * t_prime + h);
      acc += inner_product_estimate(sq, j, k, p_cache[k], mu, delta, rng);
    }
    vtilde[j] = acc / static_cast<double>(t_prime) - F.b[j];
  };

  if (threads <= 1 || m <= 1) {
    for (int j = 0; j < m; ++j) estimate_row(j);
  } else {
    // Per-(j,h) derived streams make the result thread-count invariant.
    int nt = std::min(threads, m);
    std::vector<std::thread> pool;
    std::atomic<int> next{0};
    pool.reserve(nt);
    for (int w = 0; w < nt; ++w) {
      pool.emplace_back([&] {
        for (int j = next++; j < m; j = next++) estimate_row(j);
      });
    }
    for (auto& th : pool) th.join();
  }

  for (int j = 0; j < m; ++j) {
    if (vtilde[j] > 3.0 * theta / 4.0)
      return OracleOutcome::violated(j, vtilde[j]);
  }
  return OracleOutcome::satisfied();
}

}  // namespace socpmw
