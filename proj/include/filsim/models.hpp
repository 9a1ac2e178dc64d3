#pragma once

#include "filsim/model.hpp"

#include <array>

namespace filsim {

// Both built-in models adjoin time as a trailing clock state with unit
// derivative, so the flow maps stay autonomous. State layout:
//   stickslip2: [x_m, v_m, x_M1, v_M1, x_M2, v_M2, t]
//   belt3:      [x_m1, v_m1, x_m2, v_m2, x_m3, v_m3, t]

/// Two-interface stick-slip oscillator: a forced mass m rubbing against two
/// free inertial masses M1, M2 through Coulomb friction. Switching functions
/// are the relative velocities gamma_a = v_m - v_M1, gamma_b = v_m - v_M2.
struct StickSlip2Params {
  double m = 1.0, M1 = 1.0, M2 = 1.0;   // kg
  double k = 0.88;                      // N/m, spring on m
  double Fc1 = 0.01996, Fc2 = 0.062;    // N, Coulomb levels
  double A_amp = 1.0;                   // N, forcing amplitude
  double omega = 0.073;                 // rad/s
  double phi = 0.0;                     // rad
  std::array<double, 6> x0 = {0.8295, 0.8491, 0.3725, 0.5932, 0.8726, 0.9335};
};

/// Three blocks on a belt moving at constant speed v_d, coupled by springs
/// and each anchored to ground; Coulomb friction against the belt. Switching
/// functions gamma_j = v_mj - v_d for j = 1..3.
struct Belt3Params {
  double m1 = 1.0, m2 = 1.0, m3 = 1.0;      // kg
  double k1 = 0.01, k2 = 0.01, k3 = 0.01;   // N/m, ground springs
  double k12 = 0.01, k13 = 0.01, k23 = 0.01;  // N/m, coupling springs
  double Fc1 = 0.14, Fc2 = 0.13, Fc3 = 0.12;  // N
  double v_d = 0.5;                         // m/s
  double amp = 1.0;                         // N, sinusoidal forcing on m1
  double omega = 0.24;                      // rad/s
  std::array<double, 6> x0 = {4.7799, 0.2797, 4.0038, 1.7144, 1.2922, 4.1263};
};

HybridModel make_case_study_1(const StickSlip2Params& params);
HybridModel make_case_study_2(const Belt3Params& params);

/// Initial state including the clock entry.
State initial_state(const StickSlip2Params& params);
State initial_state(const Belt3Params& params);

/// Mode labels q1..q4 of the stick-slip model mapped to sign-matrix region
/// indices: q1 = (+,+), q2 = (-,+), q3 = (-,-), q4 = (+,-).
inline constexpr std::array<int, 4> kStickSlip2ModeRegion = {3, 2, 0, 1};

/// Closed-form first Lie derivatives of (gamma_a, gamma_b) along f_1..f_4,
/// rows in mode order q1..q4, with A = u - k*x_m evaluated at x.
Eigen::MatrixXd oracle_lie_cs1(const StickSlip2Params& params, const State& x);

enum class StickSlipRegime { A1, A2, B1, B2, Delta };

/// Closed-form sliding vector field of the named regime (without the clock
/// component).
Eigen::VectorXd oracle_sliding_cs1(const StickSlip2Params& params,
                                   StickSlipRegime regime, const State& x);

/// The chattering inequality of the given regime at x: true when the regime
/// is attractive there. For Delta all four single-manifold conditions must
/// hold.
bool oracle_attractive_cs1(const StickSlip2Params& params,
                           StickSlipRegime regime, const State& x);

/// Forcing u = A_amp*sin(omega*t + phi) at the clock entry of x.
double forcing_cs1(const StickSlip2Params& params, const State& x);

}  // namespace filsim
