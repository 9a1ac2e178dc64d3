#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "filsim/events.hpp"
#include "filsim/models.hpp"

using namespace filsim;

namespace {

State vec(std::initializer_list<double> v) {
  State x(static_cast<int>(v.size()));
  int i = 0;
  for (double e : v) x[i++] = e;
  return x;
}

HybridModel coordinate_model(int p) {
  std::vector<SwitchingFunction> sw;
  for (int j = 0; j < p; ++j)
    sw.push_back({std::string(1, static_cast<char>('a' + j)),
                  [j](const State& x) { return x[j]; },
                  {}});
  std::vector<FlowField> flows(std::size_t(1) << p,
                               [](const State& x) { return 0.0 * x; });
  return HybridModel(p, std::move(sw), std::move(flows));
}

}  // namespace

TEST_CASE("sign change detection") {
  CHECK(detect_sign_changes(vec({0.2, -0.1}), vec({0.1, -0.2})).empty());

  auto one = detect_sign_changes(vec({0.2, -0.1}), vec({-0.05, -0.2}));
  CHECK(one.crossed == std::vector<int>{0});
  CHECK(one.touching.empty());

  auto both = detect_sign_changes(vec({0.2, 0.1}), vec({-0.05, -0.02}));
  CHECK(both.crossed == std::vector<int>{0, 1});

  // ending inside the band without a strict sign change is a touch
  auto touch = detect_sign_changes(vec({0.2}), vec({1e-12}));
  CHECK(touch.crossed.empty());
  CHECK(touch.touching == std::vector<int>{0});

  // a manifold we start on is disarmed for this step
  auto armed = detect_sign_changes(vec({1e-12}), vec({-0.3}));
  CHECK(armed.empty());
}

TEST_CASE("secant locates a linear root exactly") {
  auto model = coordinate_model(1);
  DenseStep step{vec({-0.3}), vec({0.7}), 0.0, 1.0};
  auto rec = locate_switch_point(model, step, {0});
  CHECK(rec.sigma == doctest::Approx(0.3).epsilon(1e-14));
  CHECK(rec.manifolds == std::vector<int>{0});
  CHECK(std::abs(model.gamma(0, rec.x)) <= 1e-12);
}

TEST_CASE("secant locates a quadratic root") {
  // state interpolates x1 from 0 to 1; gamma = x1^2 - 0.25 has root sigma=0.5
  std::vector<SwitchingFunction> sw{
      {"a", [](const State& x) { return x[0] * x[0] - 0.25; }, {}}};
  std::vector<FlowField> flows(2, [](const State& x) { return 0.0 * x; });
  HybridModel model(1, std::move(sw), std::move(flows));
  DenseStep step{vec({0.0}), vec({1.0}), 0.0, 1.0};
  auto rec = locate_switch_point(model, step, {0});
  CHECK(rec.sigma == doctest::Approx(0.5).epsilon(1e-10));
}

TEST_CASE("earliest event wins") {
  // gamma_a root at 0.3, gamma_b root at 0.7 over the same step
  std::vector<SwitchingFunction> sw{
      {"a", [](const State& x) { return x[0] - 0.3; }, {}},
      {"b", [](const State& x) { return x[0] - 0.7; }, {}}};
  std::vector<FlowField> flows(4, [](const State& x) { return 0.0 * x; });
  HybridModel model(2, std::move(sw), std::move(flows));
  DenseStep step{vec({0.0}), vec({1.0}), 0.0, 1.0};
  auto rec = locate_switch_point(model, step, {0, 1});
  CHECK(rec.sigma == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(rec.manifolds == std::vector<int>{0});
}

TEST_CASE("simultaneous roots merge into one record") {
  std::vector<SwitchingFunction> sw{
      {"a", [](const State& x) { return x[0] - 0.4; }, {}},
      {"b", [](const State& x) { return 2.0 * (x[0] - 0.4); }, {}}};
  std::vector<FlowField> flows(4, [](const State& x) { return 0.0 * x; });
  HybridModel model(2, std::move(sw), std::move(flows));
  DenseStep step{vec({0.0}), vec({1.0}), 0.0, 1.0};
  auto rec = locate_switch_point(model, step, {0, 1});
  CHECK(rec.manifolds == std::vector<int>{0, 1});
  CHECK(rec.sigma == doctest::Approx(0.4).epsilon(1e-10));
}

TEST_CASE("adjacent regions of a reduced intersection") {
  auto model = coordinate_model(2);
  // active manifold a, inactive b fixed negative: regions (-,-)=0, (+,-)=1
  auto adj = adjacent_regions(model, {0}, {0, -1});
  CHECK(adj == std::vector<int>{0, 1});
  // inactive b positive: regions (-,+)=2, (+,+)=3
  CHECK(adjacent_regions(model, {0}, {0, +1}) == std::vector<int>{2, 3});
  // full intersection: all four in reduced column order
  CHECK(adjacent_regions(model, {0, 1}, {0, 0}) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("attractivity on the reduced projection matrix") {
  Eigen::MatrixXi psi = build_sign_matrix(1);
  Eigen::MatrixXd f(2, 1);
  f << +1.0, -1.0;  // flows point toward the manifold from both sides
  CHECK(is_attractive(f, psi));
  f << +1.0, +1.0;
  CHECK_FALSE(is_attractive(f, psi));
  f << 0.0, -1.0;
  CHECK_FALSE(is_attractive(f, psi));  // zero normal component is not strict
}

TEST_CASE("classification of 1-manifold encounters") {
  std::vector<SwitchingFunction> sw{{"a", [](const State& x) { return x[0]; }, {}}};

  {
    std::vector<FlowField> flows{
        [](const State&) { return vec({+1.0}); },
        [](const State&) { return vec({-1.0}); }};
    HybridModel model(1, std::move(sw), std::move(flows));
    auto c = classify_switch_point(model, vec({0.0}), {0}, 0);
    CHECK(c.kind == SwitchClassification::Kind::AttractiveSliding);
    CHECK(c.active == std::vector<int>{0});
  }
  {
    std::vector<SwitchingFunction> sw2{{"a", [](const State& x) { return x[0]; }, {}}};
    std::vector<FlowField> flows{
        [](const State&) { return vec({+1.0}); },
        [](const State&) { return vec({+1.0}); }};
    HybridModel model(1, std::move(sw2), std::move(flows));
    auto c = classify_switch_point(model, vec({0.0}), {0}, 0);
    CHECK(c.kind == SwitchClassification::Kind::Transversal);
    CHECK(c.target_region == 1);
  }
}

TEST_CASE("stick-slip classification cases on manifold a") {
  // A = u - k*x_m controlled via amp=0, k=1, x_m = -A; chatter band on the
  // q3/q4 side of a is |A + Fc2| < ((m+M1)/M1) Fc1 = 0.04
  auto classify_at = [](double A) {
    StickSlip2Params p;
    p.k = 1.0;
    p.Fc1 = 0.02;
    p.Fc2 = 0.06;
    p.A_amp = 0.0;
    auto model = make_case_study_1(p);
    // on gamma_a (v_m = v_M1), below gamma_b (v_m < v_M2): incoming q4 = region 1
    State x(7);
    x << -A, 0.5, 0.0, 0.5, 0.0, 0.9, 0.0;
    return classify_switch_point(model, x, {0}, 1);
  };

  CHECK(classify_at(0.05).kind == SwitchClassification::Kind::Transversal);
  CHECK(classify_at(0.01).kind == SwitchClassification::Kind::Transversal);
  auto sl = classify_at(-0.05);
  CHECK(sl.kind == SwitchClassification::Kind::AttractiveSliding);
  CHECK(sl.active == std::vector<int>{0});
}

TEST_CASE("grazing reported when a normal component vanishes") {
  std::vector<SwitchingFunction> sw{{"a", [](const State& x) { return x[0]; }, {}}};
  std::vector<FlowField> flows{
      [](const State&) { return vec({0.0}); },
      [](const State&) { return vec({-1.0}); }};
  HybridModel model(1, std::move(sw), std::move(flows));
  auto c = classify_switch_point(model, vec({0.0}), {0}, 0);
  CHECK(c.kind == SwitchClassification::Kind::Grazing);
  CHECK(c.grazing_manifold == 0);
}
