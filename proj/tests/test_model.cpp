#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "filsim/model.hpp"
#include "filsim/models.hpp"

#include <random>
#include <set>

using namespace filsim;

namespace {

State vec(std::initializer_list<double> v) {
  State x(static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

// p=1 planar rotation-like model: gamma = x2, flow region0 = (x2, -x1),
// flow region1 = (x2, 0). Used for the Lie-derivative hand cases.
HybridModel rotation_model() {
  std::vector<SwitchingFunction> sw{{"m", [](const State& x) { return x[1]; }, {}}};
  std::vector<FlowField> flows{
      [](const State& x) { return vec({x[1], -x[0]}); },
      [](const State& x) { return vec({x[1], 0.0}); },
  };
  return HybridModel(2, std::move(sw), std::move(flows));
}

}  // namespace

TEST_CASE("sign matrix small cases") {
  auto m1 = build_sign_matrix(1);
  CHECK(m1.rows() == 1);
  CHECK(m1.cols() == 2);
  CHECK(m1(0, 0) == -1);
  CHECK(m1(0, 1) == +1);

  auto m2 = build_sign_matrix(2);
  int expect[2][4] = {{-1, +1, -1, +1}, {-1, -1, +1, +1}};
  for (int j = 0; j < 2; ++j)
    for (int i = 0; i < 4; ++i) CHECK(m2(j, i) == expect[j][i]);

  auto m3 = build_sign_matrix(3);
  for (int i = 0; i < 8; ++i) CHECK(m3(2, i) == (i < 4 ? -1 : +1));
}

TEST_CASE("sign matrix columns enumerate every pattern for p = 1..6") {
  for (int p = 1; p <= 6; ++p) {
    auto m = build_sign_matrix(p);
    REQUIRE(m.cols() == (1 << p));
    std::set<std::vector<int>> seen;
    for (int i = 0; i < m.cols(); ++i) {
      std::vector<int> col(p);
      for (int j = 0; j < p; ++j) {
        col[j] = m(j, i);
        CHECK((col[j] == 1 || col[j] == -1));
      }
      seen.insert(col);
    }
    CHECK(seen.size() == static_cast<std::size_t>(m.cols()));
  }
}

TEST_CASE("sign matrix rejects out-of-range p") {
  CHECK_THROWS_AS(build_sign_matrix(0), std::invalid_argument);
  CHECK_THROWS_AS(build_sign_matrix(kMaxManifolds + 1), std::invalid_argument);
}

TEST_CASE("region lookup") {
  std::vector<SwitchingFunction> sw{
      {"a", [](const State& x) { return x[0]; }, {}},
      {"b", [](const State& x) { return x[1]; }, {}},
  };
  std::vector<FlowField> flows(4, [](const State& x) { return 0.0 * x; });
  HybridModel model(2, std::move(sw), std::move(flows));

  auto r = region_index(model, vec({0.3, -0.2}));
  CHECK_FALSE(r.on_manifold());
  CHECK(r.region == 1);  // signs (+,-) = column 1

  auto on = region_index(model, vec({0.0, -0.2}));
  REQUIRE(on.on_manifold());
  CHECK(on.on_manifolds == std::vector<int>{0});

  // 1-manifold version of the same lookup
  std::vector<SwitchingFunction> sw1{{"a", [](const State& x) { return x[0]; }, {}}};
  std::vector<FlowField> flows1(2, [](const State& x) { return 0.0 * x; });
  HybridModel m1(1, std::move(sw1), std::move(flows1));
  CHECK(region_index(m1, vec({-0.4})).region == 0);

  CHECK(region_from_signs({+1, -1}) == 1);
  CHECK(region_from_signs({-1, -1}) == 0);
  CHECK(region_from_signs({+1, +1}) == 3);
}

TEST_CASE("lie derivative hand cases") {
  auto model = rotation_model();
  // grad gamma = (0,1), f_0(1,2) = (2,-1) -> first derivative -1
  CHECK(lie_derivative(model, 0, 0, vec({1.0, 2.0}), 1) == doctest::Approx(-1.0).epsilon(1e-9));
  // order 0 is gamma itself
  CHECK(lie_derivative(model, 0, 0, vec({1.0, 2.0}), 0) == doctest::Approx(2.0));
  // second derivative of gamma = x2 along (x2,-x1): d/dt(-x1) = -x2.
  // Nested differencing is a diagnostic; expect ~1e-4 relative noise.
  CHECK(lie_derivative(model, 0, 0, vec({1.0, 2.0}), 2) == doctest::Approx(-2.0).epsilon(1e-3));
}

TEST_CASE("relative degree") {
  auto model = rotation_model();
  // off the manifold: gamma != 0 -> degree 0
  CHECK(relative_degree(model, 0, 0, vec({1.0, 2.0}), 3) == 0);
  // on the manifold with nonzero first derivative -> degree 1
  CHECK(relative_degree(model, 0, 0, vec({1.0, 0.0}), 3) == 1);
  // flow (x2, 0): all derivatives of x2 vanish on the manifold -> sentinel
  CHECK_FALSE(relative_degree(model, 1, 0, vec({1.0, 0.0}), 2).has_value());
}

TEST_CASE("normal projection matrix, 1-manifold direct case") {
  std::vector<SwitchingFunction> sw{{"a", [](const State& x) { return x[0]; }, {}}};
  std::vector<FlowField> flows{
      [](const State&) { return vec({+1.0}); },
      [](const State&) { return vec({-1.0}); },
  };
  HybridModel model(1, std::move(sw), std::move(flows));
  auto F = normal_projection_matrix(model, vec({0.0}));
  CHECK(F(0, 0) == doctest::Approx(+1.0).epsilon(1e-9));
  CHECK(F(1, 0) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("normal projection matrix matches stick-slip closed forms") {
  // A = u - k*x_m = 0.05 via amp=0, k=1, x_m=-0.05
  StickSlip2Params p;
  p.k = 1.0;
  p.Fc1 = 0.02;
  p.Fc2 = 0.06;
  p.A_amp = 0.0;
  auto model = make_case_study_1(p);
  State x = vec({-0.05, 0.6, 0.1, 0.5, 0.2, 0.4, 0.0});
  auto F = normal_projection_matrix(model, x);
  // column of manifold a for flows q1..q4 (region order 3,2,0,1)
  double expect_a[4] = {-0.05, +0.03, +0.15, +0.07};
  for (int q = 0; q < 4; ++q)
    CHECK(F(kStickSlip2ModeRegion[q], 0) == doctest::Approx(expect_a[q]).epsilon(1e-10));
}

TEST_CASE("first Lie derivative agrees with finite differences along the flow") {
  StickSlip2Params p;
  auto model = make_case_study_1(p);
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    State x(7);
    for (int i = 0; i < 7; ++i) x[i] = dist(rng);
    for (int flow = 0; flow < 4; ++flow)
      for (int j = 0; j < 2; ++j) {
        const double h = 1e-6;
        Vector f = model.flow(flow, x);
        double fd = (model.gamma(j, x + h * f) - model.gamma(j, x - h * f)) / (2 * h);
        double lie = lie_derivative(model, flow, j, x, 1);
        CHECK(lie == doctest::Approx(fd).epsilon(1e-5));
      }
  }
}

TEST_CASE("normal projection matrix entries equal lie_derivative") {
  Belt3Params p;
  auto model = make_case_study_2(p);
  State x = initial_state(p);
  auto F = normal_projection_matrix(model, x);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(F(i, j) == lie_derivative(model, i, j, x, 1));
}

TEST_CASE("model construction validates counts") {
  std::vector<SwitchingFunction> sw{{"a", [](const State& x) { return x[0]; }, {}}};
  std::vector<FlowField> one_flow{[](const State& x) { return 0.0 * x; }};
  CHECK_THROWS_AS(HybridModel(1, sw, one_flow), std::invalid_argument);
}
