#pragma once

#include <cstdint>

#include "socpmw/mw_engine.hpp"
#include "socpmw/sq_access.hpp"

namespace socpmw {

struct GibbsSamples {
  std::vector<int> indices;  // T' cone indices in [r]
  enum class Provenance { Exact, Sq } provenance = Provenance::Exact;
  std::uint64_t seed = 0;
};

// Deterministic oracle: computes x and the violation vector exactly and
// thresholds at theta/2.
OracleOutcome direct_oracle(const FeasibilityInstance& F, const DualWeights& y,
                            double theta);

// Draws t_prime i.i.d. cone indices from Z^(k)/Z via inverse CDF; the
// distribution is exact up to floating point (zeta = 0).
GibbsSamples cone_gibbs_sample_exact(const FeasibilityInstance& F,
                                     const DualWeights& y, long t_prime,
                                     std::mt19937_64& rng);

// Per-cone Gibbs weights Z^(k) with a shared stability shift, and their sum.
struct GibbsWeights {
  Eigen::VectorXd z;  // length r
  double total;
};
GibbsWeights cone_gibbs_weights(const FeasibilityInstance& F,
                                const DualWeights& y);

// p^(k) = e^{-u^(k)} / Tr(e^{-u^(k)}) for one cone.
Eigen::VectorXd cone_gibbs_state(const FeasibilityInstance& F,
                                 const DualWeights& y, int k);

// Exact-arithmetic search over the sampled cone indices; thresholds the
// averaged violation at 4 theta / 6.
OracleOutcome sampled_search_exact(const FeasibilityInstance& F,
                                   const DualWeights& y, double theta,
                                   const GibbsSamples& samples);

enum class OracleBackend { Exact, Sq };

// T' = ceil(288 ln(8m/xi) / theta^2).
long gibbs_sample_count(int m, double xi, double theta);

struct TwoStepContext {
  OracleBackend backend = OracleBackend::Exact;
  const SqMatrix* sq = nullptr;  // required for the Sq backend
  std::uint64_t seed = 0;
  int threads = 1;
  mutable long long gibbs_draws = 0;  // accumulated across calls
  mutable long long calls = 0;
};

// Composition of the Gibbs sampler and the sampled search with the schedule
// eta = xi/2, zeta = xi/4, T' = ceil(288 ln(8m/xi)/theta^2).
OracleOutcome two_step_oracle(const FeasibilityInstance& F,
                              const DualWeights& y, double theta, double xi,
                              const TwoStepContext& ctx);

}  // namespace socpmw
