#pragma once

#include "filsim/events.hpp"
#include "filsim/model.hpp"

namespace filsim {

/// Convex weights over the flows adjacent to an active manifold set,
/// ordered by the reduced sign-matrix column convention.
struct ConvexWeights {
  enum class Method { Alpha, Kappa };
  Method method = Method::Alpha;
  Eigen::VectorXd weights;  // 2^|J|, in [0,1], sums to 1
  Eigen::VectorXd alphas;   // |J|, set when method == Alpha
  Eigen::VectorXd kappas;   // 2^|J|, set when method == Kappa
};

/// The state of a sliding motion: active manifold set, the frozen signs of
/// the inactive manifolds (re-checked every step by the integrator), the
/// adjacent flow regions, and the most recent weight solve.
struct SlidingRegime {
  std::vector<int> active;         // sorted manifold indices
  std::vector<int> inactive_signs; // length p; entries for active j unused
  std::vector<int> adjacent;       // 2^|J| region indices, reduced column order
  Eigen::MatrixXi reduced_signs;   // build_sign_matrix(|J|)
  ConvexWeights weights;
  double entered_at = 0.0;
};

SlidingRegime make_regime(const HybridModel& model, std::vector<int> active,
                          std::vector<int> inactive_signs, double entered_at);

struct SlidingOptions {
  double eps_slide = 1e-12;  // residual on the tangency conditions
  double eps_den = 1e-14;    // smallest tolerated |W1 - W2|
  double eps_exit = 1e-6;    // kappa threshold for a smooth exit
  int max_sweeps = 200;      // Gauss-Seidel sweep cap
};

/// Convex weights from the simultaneous tangency conditions, solved by
/// Gauss-Seidel sweeps of alpha_j <- W1/(W1 - W2) starting at alpha = 1/2.
/// Requires the regime to be attractive at x (W1 > 0, W2 < 0). Throws
/// numeric_error on non-convergence or a vanishing denominator.
ConvexWeights solve_alpha(const HybridModel& model, const State& x,
                          const SlidingRegime& regime,
                          const SlidingOptions& opts = {});

/// Convex weights from the rational-coefficient formulation. Each Omega_c
/// is a signed combination of the normal projections of the adjacent flow c,
/// positive for the first adjacent flow and negative otherwise; kappa_c is
/// formed from the (2^|J|-1)-th root of the product of the other Omegas
/// (signed magnitude root for odd/even exponents alike).
ConvexWeights solve_kappa(const HybridModel& model, const State& x,
                          const SlidingRegime& regime,
                          const SlidingOptions& opts = {});

/// Weight solve used during integration: alpha fixed point, kappa fallback,
/// then a damped Newton on the tangency residual.
ConvexWeights solve_weights(const HybridModel& model, const State& x,
                            const SlidingRegime& regime,
                            const SlidingOptions& opts = {});

/// Tangency residual max_b |sum_c w_c F(c,b)| of a weight vector at x.
double tangency_residual(const HybridModel& model, const State& x,
                         const SlidingRegime& regime,
                         const Eigen::VectorXd& weights);

/// Convex combination sum_c w_c f_{adjacent[c]}(x) with the regime's
/// current weights.
Vector sliding_vector_field(const HybridModel& model, const State& x,
                            const SlidingRegime& regime);

/// As above but re-solving the weights at x (used by the implicit stages).
Vector sliding_field_at(const HybridModel& model, const State& x,
                        const SlidingRegime& regime,
                        const SlidingOptions& opts = {});

struct ExitDecision {
  enum class Action { Continue, Exit, Reduce };
  Action action = Action::Continue;
  int region = -1;           // Exit target
  std::vector<int> subset;   // Reduce target (nonempty, strict subset)
  std::vector<int> signs;    // Reduce: inactive-sign vector of the new regime
};

/// Decide whether to keep sliding, leave into an adjacent region, or drop
/// to a lower-dimensional intersection. Exit requires the dominant kappa to
/// approach 1 with the released flow pointing away from every active
/// manifold; reduction keeps the largest attractive sub-intersection.
ExitDecision exit_monitor(const HybridModel& model, const State& x,
                          const SlidingRegime& regime,
                          const SlidingOptions& opts = {});

}  // namespace filsim
