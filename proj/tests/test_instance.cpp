#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "socpmw/harness.hpp"
#include "socpmw/instance.hpp"
#include "socpmw/rng.hpp"

using namespace socpmw;

namespace {

SocpInstance small_socp() {
  SocpInstance P;
  P.part = ConePartition({2, 1});
  RowMatrixXd a0(2, 2), a1(2, 1);
  a0 << 0.5, 0.1, -0.2, 0.3;
  a1 << 0.4, 0.2;
  P.A = {a0, a1};
  P.b.resize(2);
  P.b << 0.3, 0.5;
  Eigen::VectorXd c(3);
  c << 0.5, 0.1, 0.2;
  P.c = MulticoneVector(P.part, c);
  return P;
}

}  // namespace

TEST_CASE("validate accepts a consistent instance") {
  CHECK(validate(small_socp()).empty());
}

TEST_CASE("validate flags structural problems") {
  SocpInstance P = small_socp();
  P.A[0] = RowMatrixXd::Zero(3, 2);  // wrong row count
  auto diags = validate(P);
  CHECK(has_errors(diags));
  bool names_block = false;
  for (const auto& d : diags)
    if (d.message.find("block 0") != std::string::npos) names_block = true;
  CHECK(names_block);

  SocpInstance Q = small_socp();
  Q.b[0] = std::numeric_limits<double>::quiet_NaN();
  CHECK(has_errors(validate(Q)));

  SocpInstance S = small_socp();
  S.A[0](0, 0) = 1.5;  // row soc-norm 1.6 > 1
  auto warn = validate(S);
  CHECK(!has_errors(warn));
  bool flagged = false;
  for (const auto& d : warn)
    if (d.severity == Diagnostic::Severity::Warning &&
        d.message.find("(0,0)") != std::string::npos)
      flagged = true;
  CHECK(flagged);
}

TEST_CASE("normalize scales c and rows and clamps b") {
  SocpInstance P = small_socp();
  P.c.values *= 8.0;  // soc-norm 4 * ... actually scale to a known norm
  double cn = soc_norm(P.c);
  auto [N, rep] = normalize(P);
  CHECK(rep.c_scale == doctest::Approx(cn));
  CHECK(soc_norm(N.c) == doctest::Approx(1.0).epsilon(1e-12));

  SocpInstance Q = small_socp();
  Q.A[0].row(0) *= 10.0;
  auto [NQ, repQ] = normalize(Q);
  CHECK(repQ.row_scales[0] > 1.0);
  CHECK(row_soc_norm(NQ.A, 0) == doctest::Approx(1.0).epsilon(1e-12));
  // b scaled by the same factor: feasible set unchanged.
  CHECK(NQ.b[0] == doctest::Approx(Q.b[0] / repQ.row_scales[0]));

  SocpInstance S = small_socp();
  S.b[1] = 3.0 * S.R;
  auto [NS, repS] = normalize(S);
  CHECK(NS.b[1] == S.R);
  REQUIRE(repS.b_clamped.size() == 1);
  CHECK(repS.b_clamped[0] == 1);
}

TEST_CASE("normalize is idempotent") {
  SocpInstance P = small_socp();
  P.c.values *= 5.0;
  P.A[1] *= 3.0;
  auto [N, rep1] = normalize(P);
  auto [N2, rep2] = normalize(N);
  CHECK(rep2.c_scale == doctest::Approx(1.0).epsilon(1e-12));
  for (int j = 0; j < P.m(); ++j)
    CHECK(rep2.row_scales[j] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK((N2.b - N.b).norm() <= 1e-12);
}

TEST_CASE("feasibility_check") {
  FeasibilityInstance F;
  F.part = ConePartition({2, 1});
  F.A = {RowMatrixXd::Zero(1, 2), RowMatrixXd::Zero(1, 1)};
  F.b = Eigen::VectorXd::Zero(1);
  F.theta = 0.1;
  MulticoneVector x = identity_element(F.part);
  x.values /= 4.0;  // trace 1 over r = 2 cones
  FeasibilityReport rep = feasibility_check(F, x, 0.0, 1e-9);
  CHECK(rep.pass);
  CHECK(rep.margins[0] == doctest::Approx(0.0));

  MulticoneVector bad = x;
  bad.values *= 0.9;
  CHECK(!feasibility_check(F, bad, 0.0, 1e-9).pass);  // trace 0.9
  CHECK(!feasibility_check(F, bad, 0.0, 1e-9).trace_ok);

  // Slack widens acceptance monotonically.
  F.b[0] = -0.2;
  FeasibilityReport tight = feasibility_check(F, x, 0.0, 1e-9);
  CHECK(!tight.pass);
  FeasibilityReport loose = feasibility_check(F, x, 0.3, 1e-9);
  CHECK(loose.pass);
}

TEST_CASE("objective and violation vector") {
  SocpInstance P = small_socp();
  MulticoneVector x = identity_element(P.part);
  x.values /= 4.0;
  CHECK(objective_value(P, x) ==
        doctest::Approx(P.c.values.dot(x.values)).epsilon(1e-15));
  // c = e on a unit-trace x gives trace/2.
  SocpInstance Q = P;
  Q.c = identity_element(P.part);
  CHECK(objective_value(Q, x) == doctest::Approx(0.5).epsilon(1e-12));

  FeasibilityInstance F;
  F.part = ConePartition({2});
  F.A = {RowMatrixXd(1, 2)};
  F.A[0] << 0.5, 0.0;
  F.b = Eigen::VectorXd::Constant(1, 0.1);
  F.theta = 0.2;
  Eigen::VectorXd xv(2);
  xv << 0.5, 0.0;
  Eigen::VectorXd v = violation_vector(F, MulticoneVector(F.part, xv));
  CHECK(v[0] == doctest::Approx(0.15).epsilon(1e-14));

  // b = Ax exactly -> v = 0.
  F.b[0] = 0.25;
  CHECK(violation_vector(F, MulticoneVector(F.part, xv))[0] ==
        doctest::Approx(0.0));
}

TEST_CASE("violation vector is linear in x and affine in b") {
  auto rng = derive_rng(21, stream::kTest, 0);
  FeasibilityInstance F = gen_feasible(3, 3, 1, 4, 5, 0.1, 0.1).instance;
  Eigen::VectorXd xa(F.part.n()), xb(F.part.n());
  for (int i = 0; i < F.part.n(); ++i) {
    xa[i] = gaussian(rng);
    xb[i] = gaussian(rng);
  }
  Eigen::VectorXd va = violation_vector(F, MulticoneVector(F.part, xa));
  Eigen::VectorXd vb = violation_vector(F, MulticoneVector(F.part, xb));
  Eigen::VectorXd vsum =
      violation_vector(F, MulticoneVector(F.part, xa + xb));
  CHECK((vsum - va - vb - F.b).norm() <= 1e-12);  // v(x) = Ax - b
}
