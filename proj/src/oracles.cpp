#include "socpmw/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "socpmw/rng.hpp"

namespace socpmw {

OracleOutcome direct_oracle(const FeasibilityInstance& F, const DualWeights& y,
                            double theta) {
  MulticoneVector x = build_x_from_y(F, y);
  Eigen::VectorXd v = violation_vector(F, x);
  int best = 0;
  for (int j = 1; j < F.m(); ++j)
    if (v[j] > v[best]) best = j;  // first index wins ties
  if (F.m() > 0 && v[best] > theta / 2.0)
    return OracleOutcome::violated(best, v[best]);
  return OracleOutcome::satisfied();
}

GibbsWeights cone_gibbs_weights(const FeasibilityInstance& F,
                                const DualWeights& y) {
  Eigen::VectorXd u = dual_combination(F, y);
  MulticoneVector uv(F.part, u);
  SpectralData s = spectral_decompose(uv);
  // Z^(k) = e^{-lambda_+ + sigma} + e^{-lambda_- + sigma}, sigma = min lambda_-.
  double sigma = s.lambda_minus[0];
  for (int k = 1; k < F.part.r(); ++k)
    sigma = std::min(sigma, s.lambda_minus[k]);
  GibbsWeights w;
  w.z.resize(F.part.r());
  for (int k = 0; k < F.part.r(); ++k) {
    w.z[k] = std::exp(sigma - s.lambda_plus[k]) +
             std::exp(sigma - s.lambda_minus[k]);
  }
  w.total = w.z.sum();
  return w;
}

GibbsSamples cone_gibbs_sample_exact(const FeasibilityInstance& F,
                                     const DualWeights& y, long t_prime,
                                     std::mt19937_64& rng) {
  if (t_prime < 1) throw std::invalid_argument("t_prime must be >= 1");
  GibbsWeights w = cone_gibbs_weights(F, y);
  Eigen::VectorXd cum(w.z.size());
  double acc = 0.0;
  for (int k = 0; k < w.z.size(); ++k) {
    acc += w.z[k];
    cum[k] = acc;
  }
  GibbsSamples out;
  out.provenance = GibbsSamples::Provenance::Exact;
  out.indices.resize(t_prime);
  for (long h = 0; h < t_prime; ++h) {
    double u = uniform_double(rng) * acc;
    const double* it = std::upper_bound(cum.data(), cum.data() + cum.size(), u);
    int k = static_cast<int>(it - cum.data());
    if (k >= cum.size()) k = static_cast<int>(cum.size()) - 1;
    out.indices[h] = k;
  }
  return out;
}

Eigen::VectorXd cone_gibbs_state(const FeasibilityInstance& F,
                                 const DualWeights& y, int k) {
  int sz = F.part.size(k);
  Eigen::VectorXd u = Eigen::VectorXd::Zero(sz);
  for (const auto& [j, yj] : y.entries()) u += yj * F.A[k].row(j).transpose();
  ConePartition single({sz});
  MulticoneVector w(single, -u);
  SpectralData s = spectral_decompose(w);
  MulticoneVector p = jordan_exp(w, s.lambda_plus[0]);
  return p.values / trace(p);
}

OracleOutcome sampled_search_exact(const FeasibilityInstance& F,
                                   const DualWeights& y, double theta,
                                   const GibbsSamples& samples) {
  long t_prime = static_cast<long>(samples.indices.size());
  if (t_prime == 0) throw std::invalid_argument("empty sample list");
  std::vector<long> counts(F.part.r(), 0);
  for (int k : samples.indices) counts[k]++;
  // One p^(k) and one row-dot pass per distinct sampled cone.
  Eigen::VectorXd avg = Eigen::VectorXd::Zero(F.m());
  for (int k = 0; k < F.part.r(); ++k) {
    if (counts[k] == 0) continue;
    Eigen::VectorXd p = cone_gibbs_state(F, y, k);
    avg += (static_cast<double>(counts[k]) / t_prime) * (F.A[k] * p);
  }
  Eigen::VectorXd vhat = avg - F.b;
  int best = 0;
  for (int j = 1; j < F.m(); ++j)
    if (vhat[j] > vhat[best]) best = j;
  if (F.m() > 0 && vhat[best] > 4.0 * theta / 6.0)
    return OracleOutcome::violated(best, vhat[best]);
  return OracleOutcome::satisfied();
}

long gibbs_sample_count(int m, double xi, double theta) {
  return static_cast<long>(
      std::ceil(288.0 * std::log(8.0 * m / xi) / (theta * theta)));
}

OracleOutcome two_step_oracle(const FeasibilityInstance& F,
                              const DualWeights& y, double theta, double xi,
                              const TwoStepContext& ctx) {
  if (!(xi > 0.0 && xi < 1.0)) throw std::invalid_argument("xi must lie in (0,1)");
  double eta = xi / 2.0;
  long t_prime = gibbs_sample_count(F.m(), xi, theta);
  std::uint64_t call = static_cast<std::uint64_t>(ctx.calls++);
  auto rng = derive_rng(ctx.seed, stream::kGibbs, call);
  GibbsSamples samples = cone_gibbs_sample_exact(F, y, t_prime, rng);
  ctx.gibbs_draws += t_prime;
  if (ctx.backend == OracleBackend::Exact) {
    return sampled_search_exact(F, y, theta, samples);
  }
  if (ctx.sq == nullptr)
    throw std::invalid_argument("sq backend requires an SqMatrix");
  std::uint64_t search_seed = splitmix64(ctx.seed ^ splitmix64(call));
  return sampled_search_sq(F, *ctx.sq, y, theta, eta, samples, search_seed,
                           ctx.threads);
}

}  // namespace socpmw
