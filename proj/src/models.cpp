#include "filsim/models.hpp"

#include <cmath>

namespace filsim {

namespace {

Vector unit_diff_gradient(int plus, int minus) {
  Vector g = Vector::Zero(7);
  g[plus] = 1.0;
  g[minus] = -1.0;
  return g;
}

void validate(const StickSlip2Params& p) {
  if (!(p.m > 0 && p.M1 > 0 && p.M2 > 0))
    throw std::invalid_argument("stickslip2: masses must be positive");
  if (p.Fc1 < 0 || p.Fc2 < 0)
    throw std::invalid_argument("stickslip2: friction levels must be >= 0");
  if (p.k < 0) throw std::invalid_argument("stickslip2: stiffness must be >= 0");
}

void validate(const Belt3Params& p) {
  if (!(p.m1 > 0 && p.m2 > 0 && p.m3 > 0))
    throw std::invalid_argument("belt3: masses must be positive");
  if (p.Fc1 < 0 || p.Fc2 < 0 || p.Fc3 < 0)
    throw std::invalid_argument("belt3: friction levels must be >= 0");
  if (!std::isfinite(p.v_d)) throw std::invalid_argument("belt3: belt speed not finite");
}

}  // namespace

double forcing_cs1(const StickSlip2Params& p, const State& x) {
  return p.A_amp * std::sin(p.omega * x[6] + p.phi);
}

HybridModel make_case_study_1(const StickSlip2Params& p) {
  validate(p);
  std::vector<SwitchingFunction> switching = {
      {"a", [](const State& x) { return x[1] - x[3]; },
       [](const State&) { return unit_diff_gradient(1, 3); }},
      {"b", [](const State& x) { return x[1] - x[5]; },
       [](const State&) { return unit_diff_gradient(1, 5); }},
  };
  std::vector<FlowField> flows;
  for (int i = 0; i < 4; ++i) {
    const double sa = (i & 1) ? 1.0 : -1.0;
    const double sb = (i & 2) ? 1.0 : -1.0;
    flows.push_back([p, sa, sb](const State& x) {
      const double u = forcing_cs1(p, x);
      Vector dx(7);
      dx[0] = x[1];
      dx[1] = (u - p.k * x[0] - sa * p.Fc1 - sb * p.Fc2) / p.m;
      dx[2] = x[3];
      dx[3] = sa * p.Fc1 / p.M1;
      dx[4] = x[5];
      dx[5] = sb * p.Fc2 / p.M2;
      dx[6] = 1.0;
      return dx;
    });
  }
  return HybridModel(7, std::move(switching), std::move(flows),
                     {"x_m", "v_m", "x_M1", "v_M1", "x_M2", "v_M2", "clock"});
}

HybridModel make_case_study_2(const Belt3Params& p) {
  validate(p);
  std::vector<SwitchingFunction> switching = {
      {"a", [vd = p.v_d](const State& x) { return x[1] - vd; },
       [](const State&) {
         Vector g = Vector::Zero(7);
         g[1] = 1.0;
         return g;
       }},
      {"b", [vd = p.v_d](const State& x) { return x[3] - vd; },
       [](const State&) {
         Vector g = Vector::Zero(7);
         g[3] = 1.0;
         return g;
       }},
      {"c", [vd = p.v_d](const State& x) { return x[5] - vd; },
       [](const State&) {
         Vector g = Vector::Zero(7);
         g[5] = 1.0;
         return g;
       }},
  };
  std::vector<FlowField> flows;
  for (int i = 0; i < 8; ++i) {
    const double s1 = (i & 1) ? 1.0 : -1.0;
    const double s2 = (i & 2) ? 1.0 : -1.0;
    const double s3 = (i & 4) ? 1.0 : -1.0;
    flows.push_back([p, s1, s2, s3](const State& x) {
      const double u1 = p.k12 * (x[2] - x[0]) + p.k13 * (x[4] - x[0]) +
                        p.amp * std::sin(p.omega * x[6]);
      const double u2 = p.k12 * (x[0] - x[2]) + p.k23 * (x[4] - x[2]);
      const double u3 = p.k13 * (x[0] - x[4]) + p.k23 * (x[2] - x[4]);
      Vector dx(7);
      dx[0] = x[1];
      dx[1] = (u1 - p.k1 * x[0] - s1 * p.Fc1) / p.m1;
      dx[2] = x[3];
      dx[3] = (u2 - p.k2 * x[2] - s2 * p.Fc2) / p.m2;
      dx[4] = x[5];
      dx[5] = (u3 - p.k3 * x[4] - s3 * p.Fc3) / p.m3;
      dx[6] = 1.0;
      return dx;
    });
  }
  return HybridModel(7, std::move(switching), std::move(flows),
                     {"x_m1", "v_m1", "x_m2", "v_m2", "x_m3", "v_m3", "clock"});
}

State initial_state(const StickSlip2Params& p) {
  State x(7);
  for (int i = 0; i < 6; ++i) x[i] = p.x0[i];
  x[6] = 0.0;
  return x;
}

State initial_state(const Belt3Params& p) {
  State x(7);
  for (int i = 0; i < 6; ++i) x[i] = p.x0[i];
  x[6] = 0.0;
  return x;
}

Eigen::MatrixXd oracle_lie_cs1(const StickSlip2Params& p, const State& x) {
  const double A = forcing_cs1(p, x) - p.k * x[0];
  const double r1 = (p.m + p.M1) / p.M1;
  const double r2 = (p.m + p.M2) / p.M2;
  Eigen::MatrixXd L(4, 2);
  // Rows in mode order q1..q4; q maps to +-signs (s_a, s_b) of the region.
  const double sa[4] = {+1, -1, -1, +1};
  const double sb[4] = {+1, +1, -1, -1};
  for (int q = 0; q < 4; ++q) {
    L(q, 0) = (A - sa[q] * r1 * p.Fc1 - sb[q] * p.Fc2) / p.m;
    L(q, 1) = (A - sa[q] * p.Fc1 - sb[q] * r2 * p.Fc2) / p.m;
  }
  return L;
}

Eigen::VectorXd oracle_sliding_cs1(const StickSlip2Params& p,
                                   StickSlipRegime regime, const State& x) {
  const double a = forcing_cs1(p, x) - p.k * x[0];
  Eigen::VectorXd f(6);
  f[0] = x[1];
  f[2] = x[3];
  f[4] = x[5];
  switch (regime) {
    case StickSlipRegime::A1:
      f[1] = f[3] = (a - p.Fc2) / (p.m + p.M1);
      f[5] = p.Fc2 / p.M2;
      break;
    case StickSlipRegime::A2:
      f[1] = f[3] = (a + p.Fc2) / (p.m + p.M1);
      f[5] = -p.Fc2 / p.M2;
      break;
    case StickSlipRegime::B1:
      f[1] = f[5] = (a - p.Fc1) / (p.m + p.M2);
      f[3] = p.Fc1 / p.M1;
      break;
    case StickSlipRegime::B2:
      f[1] = f[5] = (a + p.Fc1) / (p.m + p.M2);
      f[3] = -p.Fc1 / p.M1;
      break;
    case StickSlipRegime::Delta:
      f[1] = f[3] = f[5] = a / (p.m + p.M1 + p.M2);
      break;
  }
  return f;
}

bool oracle_attractive_cs1(const StickSlip2Params& p, StickSlipRegime regime,
                           const State& x) {
  const double a = forcing_cs1(p, x) - p.k * x[0];
  const double r1 = (p.m + p.M1) / p.M1 * p.Fc1;
  const double r2 = (p.m + p.M2) / p.M2 * p.Fc2;
  switch (regime) {
    case StickSlipRegime::A1: return std::abs(a - p.Fc2) < r1;
    case StickSlipRegime::A2: return std::abs(a + p.Fc2) < r1;
    case StickSlipRegime::B1: return std::abs(a - p.Fc1) < r2;
    case StickSlipRegime::B2: return std::abs(a + p.Fc1) < r2;
    case StickSlipRegime::Delta:
      return std::abs(a - p.Fc2) < r1 && std::abs(a + p.Fc2) < r1 &&
             std::abs(a - p.Fc1) < r2 && std::abs(a + p.Fc1) < r2;
  }
  return false;
}

}  // namespace filsim
