#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "socpmw/harness.hpp"
#include "socpmw/oracles.hpp"
#include "socpmw/rng.hpp"

using namespace socpmw;

namespace {

FeasibilityInstance two_cone_example() {
  // r = 2 size-2 cones, A^(0) = [[1,0]], A^(1) = [[0,0]].
  FeasibilityInstance F;
  F.part = ConePartition({2, 2});
  F.A = {RowMatrixXd(1, 2), RowMatrixXd::Zero(1, 2)};
  F.A[0] << 1.0, 0.0;
  F.b = Eigen::VectorXd::Zero(1);
  F.theta = 0.1;
  return F;
}

}  // namespace

TEST_CASE("direct oracle") {
  FeasibilityInstance F;
  F.part = ConePartition({2});
  F.A = {RowMatrixXd::Zero(1, 2)};
  F.b = Eigen::VectorXd::Zero(1);
  F.theta = 0.2;
  DualWeights y(1, F.theta / 6.0);
  CHECK(direct_oracle(F, y, F.theta).all_satisfied);

  // r=1, A=[[0.5,0]], b=0.1, y=0: v = 0.15 > theta/2 = 0.1.
  F.A[0] << 0.5, 0.0;
  F.b[0] = 0.1;
  OracleOutcome out = direct_oracle(F, y, F.theta);
  CHECK(!out.all_satisfied);
  CHECK(out.j == 0);
  CHECK(out.evidence == doctest::Approx(0.15).epsilon(1e-12));

  FeasibilityInstance G = gen_infeasible_uniform(0.1, 3, {2, 2, 3}, 4);
  DualWeights yg(4, G.theta / 6.0);
  OracleOutcome og = direct_oracle(G, yg, G.theta);
  CHECK(!og.all_satisfied);
  CHECK(og.evidence == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(og.j == 0);  // exact tie broken toward the smallest index
}

TEST_CASE("gibbs weights hand example") {
  FeasibilityInstance F = two_cone_example();
  DualWeights y(1, std::log(2.0));
  y.bump(0);  // y_0 = ln 2
  GibbsWeights w = cone_gibbs_weights(F, y);
  // u^(0) = (ln2, 0), u^(1) = 0; sigma = 0 -> Z = (1, 2).
  CHECK(w.z[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(w.z[1] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(w.total == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("exact sampler matches the hand probability within 3 sigma") {
  FeasibilityInstance F = two_cone_example();
  DualWeights y(1, std::log(2.0));
  y.bump(0);
  auto rng = derive_rng(42, stream::kTest, 11);
  const long N = 100000;
  GibbsSamples s = cone_gibbs_sample_exact(F, y, N, rng);
  long c0 = 0;
  for (int k : s.indices) c0 += (k == 0);
  double p = 1.0 / 3.0;
  double sigma = std::sqrt(p * (1.0 - p) * N);
  CHECK(std::abs(c0 - p * N) <= 3.0 * sigma);
}

TEST_CASE("exact sampler is uniform at y = 0") {
  FeasibilityInstance F = two_cone_example();
  DualWeights y(1, 0.1);
  GibbsWeights w = cone_gibbs_weights(F, y);
  CHECK(w.z[0] == doctest::Approx(2.0));
  CHECK(w.z[1] == doctest::Approx(2.0));
}

TEST_CASE("exact sampler chi-square on a random 10-cone instance") {
  auto gen = gen_feasible(99, 10, 1, 6, 5, 0.1, 0.1);
  DualWeights y(5, 0.02);
  y.bump(0);
  y.bump(3);
  y.bump(3);
  GibbsWeights w = cone_gibbs_weights(gen.instance, y);
  auto rng = derive_rng(43, stream::kTest, 12);
  const long N = 100000;
  GibbsSamples s = cone_gibbs_sample_exact(gen.instance, y, N, rng);
  std::vector<long> counts(10, 0);
  for (int k : s.indices) counts[k]++;
  std::vector<double> probs(10);
  for (int k = 0; k < 10; ++k) probs[k] = w.z[k] / w.total;
  ChiSquareResult res = chi_square_test(counts, probs);
  CHECK(res.p_value > 0.01);
}

TEST_CASE("cone_gibbs_state is a unit-trace cone point with small norm") {
  auto gen = gen_feasible(7, 4, 2, 5, 6, 0.1, 0.1);
  DualWeights y(6, 0.05);
  y.bump(2);
  y.bump(4);
  for (int k = 0; k < 4; ++k) {
    Eigen::VectorXd p = cone_gibbs_state(gen.instance, y, k);
    ConePartition single({static_cast<int>(p.size())});
    MulticoneVector pv(single, p);
    CHECK(trace(pv) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(is_in_cone(pv, 1e-15));
    CHECK(p.norm() <= 1.0 / std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("sampled_search_exact expectation identity") {
  // Sum over k of (Z^k/Z) v_hat_{j,k} equals the exact violation v_j.
  auto gen = gen_feasible(15, 5, 1, 4, 4, 0.1, 0.1);
  const FeasibilityInstance& F = gen.instance;
  DualWeights y(4, 0.05);
  y.bump(1);
  y.bump(1);
  y.bump(3);
  GibbsWeights w = cone_gibbs_weights(F, y);
  MulticoneVector x = build_x_from_y(F, y);
  Eigen::VectorXd v = violation_vector(F, x);
  for (int j = 0; j < F.m(); ++j) {
    double acc = 0.0;
    for (int k = 0; k < F.part.r(); ++k) {
      Eigen::VectorXd p = cone_gibbs_state(F, y, k);
      acc += (w.z[k] / w.total) * (F.A[k].row(j).dot(p) - F.b[j]);
    }
    CHECK(acc == doctest::Approx(v[j]).epsilon(1e-10));
  }
}

TEST_CASE("sampled_search_exact on degenerate sample lists") {
  FeasibilityInstance F = two_cone_example();
  DualWeights y(1, 0.1);
  GibbsSamples s;
  s.indices.assign(50, 0);  // every draw the same cone
  // p^(0) = e/2 at y = 0, so v_hat_0 = 1/2 > 4 theta/6.
  OracleOutcome out = sampled_search_exact(F, y, F.theta, s);
  CHECK(!out.all_satisfied);
  CHECK(out.evidence == doctest::Approx(0.5).epsilon(1e-12));

  FeasibilityInstance Z = two_cone_example();
  Z.A[0].setZero();
  OracleOutcome oz = sampled_search_exact(Z, y, Z.theta, s);
  CHECK(oz.all_satisfied);
}

TEST_CASE("gibbs sample count") {
  CHECK(gibbs_sample_count(10, 0.1, 0.1) == 192517);
}

TEST_CASE("two_step_oracle with exact backend agrees with direct") {
  // Clearly satisfied and clearly violated instances.
  double theta = 0.1;
  double xi = 0.1;
  auto feasible = gen_feasible(31, 3, 1, 4, 4, 3.0 * theta, theta);
  TwoStepContext ctx;
  ctx.seed = 77;
  DualWeights y0(4, theta / 6.0);
  // Deep slack: direct sees max v_j well below theta/4.
  OracleOutcome direct = direct_oracle(feasible.instance, y0, theta);
  if (direct.all_satisfied) {
    OracleOutcome two = two_step_oracle(feasible.instance, y0, theta, xi, ctx);
    CHECK(two.all_satisfied);
  }
  CHECK(ctx.calls >= 0);

  FeasibilityInstance bad = gen_infeasible_uniform(theta, 3, {2, 2, 2}, 3);
  TwoStepContext ctx_bad;
  ctx_bad.seed = 78;
  OracleOutcome two = two_step_oracle(bad, y0, theta, xi, ctx_bad);
  CHECK(!two.all_satisfied);
  MulticoneVector x = build_x_from_y(bad, y0);
  CHECK(violation_vector(bad, x)[two.j] > theta / 2.0);
  CHECK(ctx_bad.gibbs_draws ==
        static_cast<long long>(ctx_bad.calls) *
            gibbs_sample_count(3, xi, theta));
}

TEST_CASE("two_step_oracle replays exactly for a fixed seed and call index") {
  double theta = 0.2;
  FeasibilityInstance F = gen_infeasible_uniform(theta, 2, {2, 2}, 2);
  DualWeights y(2, theta / 6.0);
  y.bump(1);
  TwoStepContext a, b;
  a.seed = b.seed = 5;
  OracleOutcome oa = two_step_oracle(F, y, theta, 0.1, a);
  OracleOutcome ob = two_step_oracle(F, y, theta, 0.1, b);
  CHECK(oa.all_satisfied == ob.all_satisfied);
  CHECK(oa.j == ob.j);
  CHECK(oa.evidence == ob.evidence);
}
