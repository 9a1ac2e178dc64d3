#pragma once

#include <Eigen/Dense>

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace filsim {

using State = Eigen::VectorXd;
using Vector = Eigen::VectorXd;

/// Thrown when an iterative numeric procedure fails (non-convergence,
/// vanishing denominator, non-finite intermediate). Carries the location
/// of the failure in its message.
class numeric_error : public std::runtime_error {
 public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

/// One switching function gamma_j. The gradient is optional; when absent
/// it is approximated by central finite differences with a per-coordinate
/// step h = max(1e-7, 1e-7*|x_k|).
struct SwitchingFunction {
  std::string name;
  std::function<double(const State&)> value;
  std::function<Vector(const State&)> gradient;  // may be empty
};

using FlowField = std::function<Vector(const State&)>;

/// Piecewise-smooth model: p switching functions partition the state space
/// into 2^p open regions, each with its own flow field. Flows are registered
/// in sign-matrix column order: flow i corresponds to column i of the sign
/// matrix, i.e. region i carries sign pattern sign_matrix.col(i).
/// Immutable after construction; evaluation is pure and re-entrant.
class HybridModel {
 public:
  HybridModel(int dim, std::vector<SwitchingFunction> switching,
              std::vector<FlowField> flows,
              std::vector<std::string> state_names = {});

  int dim() const { return dim_; }
  int num_manifolds() const { return static_cast<int>(switching_.size()); }
  int num_regions() const { return static_cast<int>(flows_.size()); }

  const SwitchingFunction& switching(int j) const { return switching_.at(j); }
  const Eigen::MatrixXi& sign_matrix() const { return sign_matrix_; }
  const std::vector<std::string>& state_names() const { return state_names_; }

  double gamma(int j, const State& x) const { return switching_.at(j).value(x); }
  Vector gamma_all(const State& x) const;
  Vector gradient(int j, const State& x) const;
  Vector flow(int i, const State& x) const { return flows_.at(i)(x); }

 private:
  int dim_;
  std::vector<SwitchingFunction> switching_;
  std::vector<FlowField> flows_;
  Eigen::MatrixXi sign_matrix_;
  std::vector<std::string> state_names_;
};

/// The p x 2^p matrix of region sign patterns. Row 0 alternates -1,+1 with
/// period 2; row j has 2^(p-j-1) blocks of 2^j copies of -1 followed by
/// 2^j copies of +1 (0-based rows). Equivalently, entry (j,i) is the sign
/// of bit j of the column index i.
Eigen::MatrixXi build_sign_matrix(int p);

inline constexpr int kMaxManifolds = 8;

/// Result of a region lookup: either a unique region index, or the list of
/// manifolds on which the state lies (|gamma_j| <= band).
struct RegionLookup {
  int region = -1;                  // valid only when on_manifolds is empty
  std::vector<int> on_manifolds;    // nonempty means "on manifold"
  bool on_manifold() const { return !on_manifolds.empty(); }
};

RegionLookup region_index(const HybridModel& model, const State& x,
                          double band = 1e-9);

/// Region index for an explicit sign pattern (signs[j] in {-1,+1}).
int region_from_signs(const std::vector<int>& signs);

/// k-th Lie derivative of gamma_j along flow i at x. k=0 is gamma_j(x),
/// k=1 is grad(gamma_j).f_i, higher orders by nested central differencing
/// of the (k-1)-th derivative along the flow direction.
double lie_derivative(const HybridModel& model, int flow, int manifold,
                      const State& x, int order);

/// Smallest k <= k_max with all lower-order Lie derivatives below eps and
/// the k-th above; nullopt when every tested order vanishes.
std::optional<int> relative_degree(const HybridModel& model, int flow,
                                   int manifold, const State& x, int k_max,
                                   double eps = 1e-9);

/// The 2^p x p matrix F with F(i,j) = lie_derivative(model, i, j, x, 1):
/// the normal velocity of flow i relative to manifold j.
Eigen::MatrixXd normal_projection_matrix(const HybridModel& model,
                                         const State& x);

}  // namespace filsim
