#pragma once

#include <atomic>
#include <cstdint>
#include <random>

#include "socpmw/instance.hpp"
#include "socpmw/mw_engine.hpp"

namespace socpmw {

struct SqCounters {
  long long entry_queries = 0;
  long long row_samples = 0;
  long long norm_queries = 0;
};

struct GibbsSamples;  // oracles.hpp

// Sample-and-query access over the rows A^(k)_{j,:}: entry queries, row norm
// queries, and index sampling proportional to squared entries. Counters track
// every access.
class SqMatrix {
 public:
  explicit SqMatrix(const std::vector<RowMatrixXd>& A);

  int m() const { return m_; }
  int r() const { return static_cast<int>(values_.size()); }
  int cone_size(int k) const { return static_cast<int>(values_[k].cols()); }

  double query(int j, int k, int i) const;
  double row_norm(int j, int k) const;
  // Draws i with probability |A_{ji}|^2 / ||A_{j,:}||^2; throws on zero rows.
  int sample_index(int j, int k, std::mt19937_64& rng) const;

  SqCounters counters() const;
  void reset_counters();

 private:
  int m_ = 0;
  std::vector<RowMatrixXd> values_;      // per k: m x n^(k)
  std::vector<RowMatrixXd> cumulative_;  // per k: prefix sums of squares
  mutable std::atomic<long long> entry_queries_{0};
  mutable std::atomic<long long> row_samples_{0};
  mutable std::atomic<long long> norm_queries_{0};
};

// Median-of-means importance sampler for A^(k)_{j,:} . p with guarantee
// |est - true| <= mu * ||A_{j,:}|| * ||p|| w.p. >= 1 - delta.
double inner_product_estimate(const SqMatrix& sq, int j, int k,
                              const Eigen::Ref<const Eigen::VectorXd>& p,
                              double mu, double delta, std::mt19937_64& rng);

// Estimator batch sizes: mean over B draws, median over M batches.
long sq_batch_size(double mu);       // ceil(6 / mu^2)
long sq_batch_count(double delta);   // ceil(9 ln(1/delta))

OracleOutcome sampled_search_sq(const FeasibilityInstance& F,
                                const SqMatrix& sq, const DualWeights& y,
                                double theta, double eta,
                                const GibbsSamples& samples,
                                std::uint64_t seed, int threads = 1);

}  // namespace socpmw
