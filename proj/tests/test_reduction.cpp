#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "socpmw/harness.hpp"
#include "socpmw/reduction.hpp"

using namespace socpmw;

namespace {

SocpInstance tiny_lp() {
  // max c0 x over one scalar cone, x <= b0.
  SocpInstance P;
  P.part = ConePartition({1});
  P.A = {RowMatrixXd::Constant(1, 1, 1.0)};
  P.b = Eigen::VectorXd::Constant(1, 0.3);
  P.c = MulticoneVector(P.part, Eigen::VectorXd::Constant(1, 1.0));
  return P;
}

}  // namespace

TEST_CASE("embed structure") {
  SocpInstance P = tiny_lp();
  FeasibilityInstance F = embed(P, 0.1, 0.05);
  CHECK(F.part.r() == 2);
  CHECK(F.part.size(1) == 1);
  CHECK(F.m() == 2);
  CHECK(F.A[0](0, 0) == 1.0);
  CHECK(F.A[0](1, 0) == -1.0);  // last row is -c
  CHECK(F.A[1].isZero(0.0));    // slack cone block
  CHECK(F.b[0] == doctest::Approx(0.3));
  CHECK(F.b[1] == doctest::Approx(-0.1));
  CHECK(embed(P, P.R, 0.05).b[1] == doctest::Approx(-1.0));
  CHECK_THROWS_AS(embed(P, 1.5, 0.05), std::invalid_argument);
  CHECK(!has_errors(validate(F)));
}

TEST_CASE("lift_point") {
  SocpInstance P = tiny_lp();
  MulticoneVector zero = MulticoneVector::zero(P.part);
  MulticoneVector lifted = lift_point(zero, P);
  CHECK(trace(lifted) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lifted.values[lifted.values.size() - 1] ==
        doctest::Approx(0.5).epsilon(1e-14));

  auto gen = gen_feasible(12, 3, 1, 4, 3, 0.1, 0.05);
  SocpInstance Q;
  Q.part = gen.instance.part;
  Q.A = gen.instance.A;
  Q.b = gen.instance.b;
  Q.c = MulticoneVector::zero(Q.part);
  MulticoneVector w = gen.witness;
  MulticoneVector lw = lift_point(w, Q);
  CHECK(trace(lw) == doctest::Approx(1.0).epsilon(1e-12));
  // Feasibility transfers to the embedded instance at any g <= c.x = 0.
  FeasibilityInstance F = embed(Q, -0.5, 0.05);
  CHECK(feasibility_check(F, lw, 0.0, 1e-9).pass);

  MulticoneVector too_big = w;
  too_big.values *= 10.0;
  CHECK_THROWS_AS(lift_point(too_big, Q), std::invalid_argument);
}

TEST_CASE("extract_primal") {
  SocpInstance P = tiny_lp();
  DualWeights y0(2, 0.1);
  MulticoneVector x0 = extract_primal(y0, P);
  // y = 0: each cone gets R/(2 + 2r) * e.
  CHECK(x0.values[0] == doctest::Approx(1.0 / 4.0).epsilon(1e-12));

  auto gen = gen_tiny_socp(3, 1);
  const SocpInstance& Q = gen.instance;
  DualWeights y(Q.m() + 1, 0.01);
  y.bump(0);
  y.bump(Q.m());
  y.bump(Q.m());
  MulticoneVector x = extract_primal(y, Q);
  CHECK(is_in_cone(x));
  CHECK(trace(x) <= Q.R + 1e-9);
}

TEST_CASE("binary search step and vote counts") {
  CHECK(binary_search_steps(1.0, 0.0025) == 19);
  CHECK(binary_search_steps(1.0, 10.0) == 0);
  CHECK(vote_repetitions(1.0 / 57.0) == 37);  // ceil(9 ln 57)
}

TEST_CASE("binary_search_solve brackets the scalar LP optimum") {
  SocpInstance P = tiny_lp();
  SolveOptions opts;
  opts.epsilon = 0.05;
  SolveReport rep = binary_search_solve(P, opts);
  REQUIRE(rep.status == SolveReport::Status::Success);
  double gstar = 0.3;
  CHECK(rep.g <= gstar + 1e-9);
  CHECK(gstar <= rep.g + opts.epsilon + 1e-9);
  CHECK(rep.objective >= rep.g - opts.epsilon / 4.0 - 1e-6);
  CHECK((rep.constraint_margins.array() <= opts.epsilon / 4.0 + 1e-6).all());
  CHECK(rep.counters.bs_steps <= binary_search_steps(P.R_tilde, rep.theta));
}

TEST_CASE("binary_search_solve approaches an optimum at the trace bound") {
  // c = e and only a loose constraint: optimum = R * max unit-trace value
  // of <e, x> = R/2 at the trace bound R = 1.
  SocpInstance P;
  P.part = ConePartition({2});
  P.A = {RowMatrixXd(1, 2)};
  P.A[0] << 0.1, 0.0;
  P.b = Eigen::VectorXd::Constant(1, 0.9);
  P.c = identity_element(P.part);
  SolveOptions opts;
  opts.epsilon = 0.05;
  SolveReport rep = binary_search_solve(P, opts);
  REQUIRE(rep.status == SolveReport::Status::Success);
  CHECK(rep.g <= 0.5 + 1e-9);
  CHECK(0.5 <= rep.g + opts.epsilon + 1e-9);
}

TEST_CASE("tiny generated instances bracket their closed-form optimum") {
  for (int i = 0; i < 8; ++i) {
    auto gen = gen_tiny_socp(100 + i, i);
    SolveOptions opts;
    opts.epsilon = 0.1;
    SolveReport rep = binary_search_solve(gen.instance, opts);
    REQUIRE(rep.status == SolveReport::Status::Success);
    CHECK(rep.g <= gen.known_optimum + 1e-9);
    CHECK(gen.known_optimum <= rep.g + opts.epsilon + 1e-9);
  }
}

TEST_CASE("two-step-exact mode replays deterministically per seed") {
  auto gen = gen_tiny_socp(55, 0);
  SolveOptions opts;
  opts.epsilon = 1.2;  // coarse theta keeps the sample schedule small
  opts.mode = SolveMode::TwoStepExact;
  opts.seed = 9;
  SolveReport a = binary_search_solve(gen.instance, opts);
  SolveReport b = binary_search_solve(gen.instance, opts);
  CHECK(a.g == b.g);
  CHECK(a.counters.gibbs_draws == b.counters.gibbs_draws);
  CHECK(a.counters.oracle_calls == b.counters.oracle_calls);
}
