#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "filsim/models.hpp"
#include "filsim/sliding.hpp"

#include <random>

using namespace filsim;

namespace {

State vec(std::initializer_list<double> v) {
  State x(static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

// 1-manifold model with constant normal velocities (fup from below, fdn from
// above); gamma = x1.
HybridModel normal_pair(double f_below, double f_above) {
  std::vector<SwitchingFunction> sw{{"a", [](const State& x) { return x[0]; }, {}}};
  std::vector<FlowField> flows{
      [f_below](const State&) { return vec({f_below}); },
      [f_above](const State&) { return vec({f_above}); }};
  return HybridModel(1, std::move(sw), std::move(flows));
}

// p=2 model with constant flows; entry k of flows[i] is the normal velocity
// of flow i relative to manifold k (gamma_j = x_j).
HybridModel planar_four(const Eigen::MatrixXd& F) {
  std::vector<SwitchingFunction> sw{
      {"a", [](const State& x) { return x[0]; }, {}},
      {"b", [](const State& x) { return x[1]; }, {}}};
  std::vector<FlowField> flows;
  for (int i = 0; i < 4; ++i) {
    Eigen::Vector2d f = F.row(i);
    flows.push_back([f](const State&) { return Vector(f); });
  }
  return HybridModel(2, std::move(sw), std::move(flows));
}

}  // namespace

TEST_CASE("alpha fixed point, symmetric 1-manifold case") {
  auto model = normal_pair(+1.0, -1.0);
  auto regime = make_regime(model, {0}, {0}, 0.0);
  auto w = solve_alpha(model, vec({0.0}), regime);
  CHECK(w.alphas[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w.weights[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w.weights[1] == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("alpha fixed point, asymmetric 1-manifold case") {
  auto model = normal_pair(+3.0, -1.0);
  auto regime = make_regime(model, {0}, {0}, 0.0);
  auto w = solve_alpha(model, vec({0.0}), regime);
  CHECK(w.alphas[0] == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(w.weights[0] == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(w.weights[1] == doctest::Approx(0.75).epsilon(1e-12));
  // tangency: (1-a)*3 + a*(-1) = 0
  CHECK(tangency_residual(model, vec({0.0}), regime, w.weights) <= 1e-12);
}

TEST_CASE("kappa agrees with alpha on 1-manifold regimes") {
  for (double f_below : {0.5, 1.0, 3.0, 7.25}) {
    for (double f_above : {-0.25, -1.0, -2.0}) {
      auto model = normal_pair(f_below, f_above);
      auto regime = make_regime(model, {0}, {0}, 0.0);
      auto wa = solve_alpha(model, vec({0.0}), regime);
      auto wk = solve_kappa(model, vec({0.0}), regime);
      for (int c = 0; c < 2; ++c)
        CHECK(wk.weights[c] == doctest::Approx(wa.weights[c]).epsilon(1e-8));
    }
  }
}

TEST_CASE("weights sum to one over random attractive 2-manifold configs") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> mag(0.1, 5.0);
  auto psi = build_sign_matrix(2);
  for (int trial = 0; trial < 500; ++trial) {
    Eigen::MatrixXd F(4, 2);
    for (int c = 0; c < 4; ++c)
      for (int b = 0; b < 2; ++b) F(c, b) = -psi(b, c) * mag(rng);
    auto model = planar_four(F);
    auto regime = make_regime(model, {0, 1}, {0, 0}, 0.0);
    auto w = solve_weights(model, vec({0.0, 0.0}), regime);
    double sum = w.weights.sum();
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    for (int c = 0; c < 4; ++c) {
      CHECK(w.weights[c] >= 0.0);
      CHECK(w.weights[c] <= 1.0);
    }
    CHECK(tangency_residual(model, vec({0.0, 0.0}), regime, w.weights) <= 1e-11);
  }
}

TEST_CASE("alpha and kappa weights on intersections: recorded, not asserted") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> mag(0.1, 5.0);
  auto psi = build_sign_matrix(2);
  double max_diff = 0.0;
  int solved = 0;
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd F(4, 2);
    for (int c = 0; c < 4; ++c)
      for (int b = 0; b < 2; ++b) F(c, b) = -psi(b, c) * mag(rng);
    auto model = planar_four(F);
    auto regime = make_regime(model, {0, 1}, {0, 0}, 0.0);
    try {
      auto wa = solve_alpha(model, vec({0.0, 0.0}), regime);
      auto wk = solve_kappa(model, vec({0.0, 0.0}), regime);
      max_diff = std::max(max_diff, (wa.weights - wk.weights).cwiseAbs().maxCoeff());
      ++solved;
    } catch (const numeric_error&) {
    }
  }
  CHECK(solved > 0);
  MESSAGE("2-manifold alpha/kappa max weight divergence over ", solved,
          " solved configs: ", max_diff);
}

TEST_CASE("stick-slip sliding field on the full intersection") {
  // Fc1 = Fc2 = 0.05 makes the intersection attractive for |A| < 0.05.
  StickSlip2Params p;
  p.k = 1.0;
  p.Fc1 = 0.05;
  p.Fc2 = 0.05;
  p.A_amp = 0.0;
  auto model = make_case_study_1(p);
  for (double A : {0.0, 0.01, -0.03, 0.049}) {
    State x(7);
    x << -A, 0.5, 0.3, 0.5, 0.1, 0.5, 0.0;  // all velocities equal
    auto regime = make_regime(model, {0, 1}, {0, 0}, 0.0);
    regime.weights = solve_weights(model, x, regime);
    Vector fs = sliding_vector_field(model, x, regime);
    auto oracle = oracle_sliding_cs1(p, StickSlipRegime::Delta, x);
    for (int i = 0; i < 6; ++i)
      CHECK(fs[i] == doctest::Approx(oracle[i]).epsilon(1e-10).scale(1.0));
    // common acceleration (u - k x_m)/3 on all three masses
    CHECK(fs[1] == doctest::Approx(A / 3.0).scale(1.0).epsilon(1e-10));
    CHECK(fs[3] == doctest::Approx(A / 3.0).scale(1.0).epsilon(1e-10));
    CHECK(fs[5] == doctest::Approx(A / 3.0).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("stick-slip sliding field on single manifolds matches closed forms") {
  StickSlip2Params p;
  p.k = 1.0;
  p.Fc1 = 0.02;
  p.Fc2 = 0.06;
  p.A_amp = 0.0;
  auto model = make_case_study_1(p);
  // regime a1: chatter q1/q2 (gamma_b > 0), attractive for |A - Fc2| < 0.04
  {
    double A = 0.05;
    State x(7);
    x << -A, 0.5, 0.3, 0.5, 0.1, 0.2, 0.0;
    auto regime = make_regime(model, {0}, {0, +1}, 0.0);
    regime.weights = solve_weights(model, x, regime);
    Vector fs = sliding_vector_field(model, x, regime);
    auto oracle = oracle_sliding_cs1(p, StickSlipRegime::A1, x);
    for (int i = 0; i < 6; ++i)
      CHECK(fs[i] == doctest::Approx(oracle[i]).epsilon(1e-10).scale(1.0));
    CHECK(fs[1] == doctest::Approx((A - p.Fc2) / 2.0).scale(1.0).epsilon(1e-10));
    CHECK(fs[5] == doctest::Approx(p.Fc2).scale(1.0).epsilon(1e-10));
  }
  // regime b2: chatter q2/q3 (gamma_a < 0), v_M1 drifts at -Fc1/M1
  {
    double A = -0.01;  // |A + Fc1| = 0.01 < 2*Fc2
    State x(7);
    x << -A, 0.5, 0.3, 0.8, 0.1, 0.5, 0.0;
    auto regime = make_regime(model, {1}, {-1, 0}, 0.0);
    regime.weights = solve_weights(model, x, regime);
    Vector fs = sliding_vector_field(model, x, regime);
    auto oracle = oracle_sliding_cs1(p, StickSlipRegime::B2, x);
    for (int i = 0; i < 6; ++i)
      CHECK(fs[i] == doctest::Approx(oracle[i]).epsilon(1e-10).scale(1.0));
    CHECK(fs[3] == doctest::Approx(-p.Fc1).scale(1.0).epsilon(1e-10));
  }
}

TEST_CASE("exit monitor keeps attractive regimes") {
  auto model = normal_pair(+1.0, -1.0);
  auto regime = make_regime(model, {0}, {0}, 0.0);
  regime.weights = solve_weights(model, vec({0.0}), regime);
  auto d = exit_monitor(model, vec({0.0}), regime);
  CHECK(d.action == ExitDecision::Action::Continue);
}

TEST_CASE("exit monitor releases when one flow dominates") {
  // flow above the manifold points away; attractivity fails and the released
  // flow is consistent -> exit into region 1
  auto model = normal_pair(+1.0, +0.5);
  auto regime = make_regime(model, {0}, {0}, 0.0);
  regime.weights.weights = vec({0.5, 0.5});
  auto d = exit_monitor(model, vec({0.0}), regime);
  CHECK(d.action == ExitDecision::Action::Exit);
  CHECK(d.region == 1);
}

TEST_CASE("exit monitor reduces to an attractive sub-intersection") {
  // On the intersection: manifold a attractivity fails (both flows on the
  // released side push +a), manifold b stays attractive.
  Eigen::MatrixXd F(4, 2);
  // columns: normal to a, normal to b; rows in region order (-,-),(+,-),(-,+),(+,+)
  F << +1.0, +1.0,   // (-,-): pushes +a (toward), +b (toward)
       +0.5, +1.0,   // (+,-): pushes +a (away!), +b (toward)
       +1.0, -1.0,   // (-,+): toward a, toward b
       +0.5, -1.0;   // (+,+): away from a, toward b
  auto model = planar_four(F);
  auto regime = make_regime(model, {0, 1}, {0, 0}, 0.0);
  regime.weights.weights = vec({0.25, 0.25, 0.25, 0.25});
  auto d = exit_monitor(model, vec({0.0, 0.0}), regime);
  CHECK(d.action == ExitDecision::Action::Reduce);
  CHECK(d.subset == std::vector<int>{1});
  REQUIRE(d.signs.size() == 2);
  CHECK(d.signs[0] == +1);  // released toward +a where the flows point
}

TEST_CASE("solve_alpha reports a vanishing denominator") {
  // W1 == W2 makes the update singular; the solver must throw, not divide.
  auto model = normal_pair(+1.0, +1.0);
  auto regime = make_regime(model, {0}, {0}, 0.0);
  CHECK_THROWS_AS(solve_alpha(model, vec({0.0}), regime), numeric_error);
}
