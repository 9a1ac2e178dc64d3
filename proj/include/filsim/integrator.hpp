#pragma once

#include "filsim/events.hpp"
#include "filsim/model.hpp"
#include "filsim/sliding.hpp"

#include <string>

namespace filsim {

struct SimConfig {
  double t_end = 10.0;
  double dt_init = 1e-3;
  double dt_min = 1e-12;
  double dt_max = 0.1;
  double atol = 1e-8;
  double rtol = 1e-8;
  double eps_root = 1e-12;   // |gamma| at located events and after projection
  double eps_slide = 1e-12;  // tangency residual of the weight solves
  double eps_exit = 1e-6;    // kappa threshold for smooth exits
  double eps_gamma = 1e-9;   // on-manifold band
  double eps_lie = 1e-9;     // "zero" Lie derivative (grazing)
  double eps_den = 1e-14;    // smallest tolerated solver denominator
  int max_newton = 50;       // projection Newton cap
  int max_fixed_point = 25;  // implicit stage fixed-point cap before Newton
  int max_grazing_retries = 8;

  bool operator==(const SimConfig&) const = default;

  void validate() const;
  SlidingOptions sliding_options() const {
    return {eps_slide, eps_den, eps_exit, 200};
  }
};

struct TraceEvent {
  enum class Kind { Crossing, SlidingEntry, SlidingExit, RegimeChange, Grazing };
  double t = 0.0;
  Kind kind = Kind::Crossing;
  std::vector<int> manifolds;
  std::string from;
  std::string to;
  State x;
};

std::string to_string(TraceEvent::Kind kind);

/// Descriptor of the regime a sample belongs to: a region index off the
/// discontinuity set, or the active manifold set while sliding.
struct RegimeDescriptor {
  bool sliding = false;
  int region = -1;
  std::vector<int> active;
  std::string label(const HybridModel& model) const;
};

struct SimTrace {
  struct Sample {
    double t;
    State x;
    RegimeDescriptor regime;
  };
  std::vector<Sample> samples;
  std::vector<TraceEvent> events;
  bool aborted = false;        // true when a numeric failure cut the run short
  std::string diagnostic;      // failure description when aborted

  int count_events(TraceEvent::Kind kind) const;
  /// Discrete transitions: sliding entries/exits plus transversal regime
  /// changes.
  int mode_switches() const;
  /// Crossings of inactive manifolds recorded while sliding.
  int tangential_crossings() const;
};

/// One explicit midpoint (second-order Runge-Kutta) step of flow i.
/// Returns the endpoint and the (linear) dense output of the step.
std::pair<State, DenseStep> rk2_step(const HybridModel& model, int flow,
                                     const State& x, double t, double dt);

/// Closest point to x_star on the intersection of the manifolds in
/// `active`: Newton iteration on the Lagrange stationarity system.
struct ProjectionResult {
  State x;
  Eigen::VectorXd lambda;
  int iterations = 0;
};
ProjectionResult project_to_manifold(const HybridModel& model,
                                     const State& x_star,
                                     const std::vector<int>& active,
                                     double eps_root = 1e-12,
                                     int max_newton = 50);

/// One step of the projected implicit midpoint Bathe scheme along the
/// regime's sliding field: implicit half stage, projection, implicit full
/// stage, projection. The result lies on every active manifold.
State bathe_sliding_step(const HybridModel& model, const SlidingRegime& regime,
                         const State& x, double t, double dt,
                         const SimConfig& config);

/// Advance from t = 0 to config.t_end: explicit steps off the discontinuity
/// set with step-doubling error control, event location and classification
/// on sign changes, and projected implicit sliding with exit monitoring on
/// attractive manifold sets. On an unrecoverable numeric failure the
/// partial trace is returned with `aborted` set.
SimTrace simulate(const HybridModel& model, const State& x0,
                  const SimConfig& config);

}  // namespace filsim
