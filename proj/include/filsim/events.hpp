#pragma once

#include "filsim/model.hpp"

namespace filsim {

/// Sign-change scan over one integration step. `crossed` holds manifolds
/// whose switching value changed sign strictly; `touching` those that ended
/// inside the on-manifold band without a strict sign change.
struct SignChanges {
  std::vector<int> crossed;
  std::vector<int> touching;
  bool empty() const { return crossed.empty() && touching.empty(); }
};

SignChanges detect_sign_changes(const Vector& gamma_prev,
                                const Vector& gamma_next,
                                double band = 1e-9);

/// Dense output of one explicit step: linear interpolation between the
/// endpoints, consistent with a second-order scheme.
struct DenseStep {
  State x0;
  State x1;
  double t0 = 0.0;
  double dt = 0.0;
  State at(double sigma) const {
    const double s = sigma / dt;
    return (1.0 - s) * x0 + s * x1;
  }
};

struct CrossingRecord {
  std::vector<int> manifolds;  // manifolds whose root lies at sigma (merged)
  double sigma = 0.0;          // root parameter in (0, dt)
  State x;                     // interpolated state at the root
  double t = 0.0;              // absolute time of the event
};

struct EventLocatorOptions {
  double eps_root = 1e-12;      // |gamma| at the located root
  int max_secant = 50;
  double merge_rtol = 1e-10;    // simultaneity tolerance, relative to dt
};

/// Earliest root of the sign-changing switching functions over the step.
/// Secant iteration with bisection fallback (the endpoints bracket the
/// root). Roots of different manifolds within merge_rtol*dt of each other
/// are merged into a single record.
CrossingRecord locate_switch_point(const HybridModel& model,
                                   const DenseStep& step,
                                   const std::vector<int>& candidates,
                                   const EventLocatorOptions& opts = {});

/// The 2^|J| region indices bordering the intersection of the manifolds in
/// `active`, given fixed signs for the inactive manifolds. Ordered by the
/// reduced sign-matrix column convention: entry c has sign pattern
/// build_sign_matrix(|J|).col(c) on the active manifolds.
std::vector<int> adjacent_regions(const HybridModel& model,
                                  const std::vector<int>& active,
                                  const std::vector<int>& inactive_signs);

/// Lemma-1 attractivity on the reduced normal-projection matrix
/// F_red (2^|J| x |J|): every adjacent flow must point toward the
/// intersection, sgn(F_red(c,b)) == -sgn(reduced Psi(b,c)).
bool is_attractive(const Eigen::MatrixXd& f_reduced,
                   const Eigen::MatrixXi& reduced_signs);

/// F restricted to the flows adjacent to the active set: entry (c,b) is the
/// first Lie derivative of gamma_{active[b]} along the flow of region
/// adjacent[c].
Eigen::MatrixXd reduced_projection_matrix(const HybridModel& model,
                                          const State& x,
                                          const std::vector<int>& active,
                                          const std::vector<int>& adjacent);

struct SwitchClassification {
  enum class Kind { Transversal, AttractiveSliding, Grazing };
  Kind kind = Kind::Transversal;
  int target_region = -1;       // Transversal
  std::vector<int> active;      // AttractiveSliding
  int grazing_manifold = -1;    // Grazing
};

/// Classify an encounter with the intersection of the manifolds in J at
/// x_m (assumed on all of them). `incoming_region` is the region the
/// trajectory arrived from; it fixes the signs of the inactive manifolds
/// and selects the transversal target. Grazing is reported when a normal
/// component needed for the decision is within eps_l of zero.
SwitchClassification classify_switch_point(const HybridModel& model,
                                           const State& x_m,
                                           const std::vector<int>& active,
                                           int incoming_region,
                                           double eps_l = 1e-9);

}  // namespace filsim
