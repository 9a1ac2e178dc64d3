#include "filsim/sliding.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace filsim {

namespace {

// Weight of adjacent flow c for a given alpha vector: the product over the
// active manifolds of (1 - alpha_b) on the negative side and alpha_b on the
// positive side.
Eigen::VectorXd weights_from_alphas(const Eigen::MatrixXi& psi,
                                    const Eigen::VectorXd& alphas) {
  const int m = static_cast<int>(psi.rows());
  const int n = static_cast<int>(psi.cols());
  Eigen::VectorXd w(n);
  for (int c = 0; c < n; ++c) {
    double prod = 1.0;
    for (int b = 0; b < m; ++b)
      prod *= psi(b, c) > 0 ? alphas[b] : 1.0 - alphas[b];
    w[c] = prod;
  }
  return w;
}

Eigen::VectorXd residual_of(const Eigen::MatrixXd& F,
                            const Eigen::MatrixXi& psi,
                            const Eigen::VectorXd& alphas) {
  const Eigen::VectorXd w = weights_from_alphas(psi, alphas);
  return F.transpose() * w;
}

double signed_root(double v, double inv_exponent) {
  if (v == 0.0) return 0.0;
  return std::copysign(std::pow(std::abs(v), inv_exponent), v);
}

ConvexWeights alpha_result(const Eigen::MatrixXi& psi,
                           const Eigen::VectorXd& alphas) {
  ConvexWeights out;
  out.method = ConvexWeights::Method::Alpha;
  out.alphas = alphas;
  out.weights = weights_from_alphas(psi, alphas);
  return out;
}

}  // namespace

SlidingRegime make_regime(const HybridModel& model, std::vector<int> active,
                          std::vector<int> inactive_signs, double entered_at) {
  std::sort(active.begin(), active.end());
  SlidingRegime r;
  r.adjacent = adjacent_regions(model, active, inactive_signs);
  r.reduced_signs = build_sign_matrix(static_cast<int>(active.size()));
  r.active = std::move(active);
  r.inactive_signs = std::move(inactive_signs);
  r.entered_at = entered_at;
  return r;
}

ConvexWeights solve_alpha(const HybridModel& model, const State& x,
                          const SlidingRegime& regime,
                          const SlidingOptions& opts) {
  const Eigen::MatrixXd F =
      reduced_projection_matrix(model, x, regime.active, regime.adjacent);
  const Eigen::MatrixXi& psi = regime.reduced_signs;
  const int m = static_cast<int>(regime.active.size());
  const int n = static_cast<int>(regime.adjacent.size());

  Eigen::VectorXd alphas = Eigen::VectorXd::Constant(m, 0.5);
  for (int sweep = 0; sweep < opts.max_sweeps; ++sweep) {
    for (int b = 0; b < m; ++b) {
      double w1 = 0.0, w2 = 0.0;
      for (int c = 0; c < n; ++c) {
        double prod = 1.0;
        for (int k = 0; k < m; ++k) {
          if (k == b) continue;
          prod *= psi(k, c) > 0 ? alphas[k] : 1.0 - alphas[k];
        }
        (psi(b, c) < 0 ? w1 : w2) += prod * F(c, b);
      }
      const double den = w1 - w2;
      if (std::abs(den) < opts.eps_den)
        throw numeric_error("solve_alpha: vanishing denominator W1 - W2");
      alphas[b] = w1 / den;
    }
    if (residual_of(F, psi, alphas).cwiseAbs().maxCoeff() <= opts.eps_slide) {
      for (int b = 0; b < m; ++b) {
        if (alphas[b] < -1e-9 || alphas[b] > 1.0 + 1e-9)
          throw numeric_error("solve_alpha: alpha outside [0,1]");
        alphas[b] = std::clamp(alphas[b], 0.0, 1.0);
      }
      return alpha_result(psi, alphas);
    }
  }
  throw numeric_error("solve_alpha: no convergence after " +
                      std::to_string(opts.max_sweeps) + " sweeps, residual " +
                      std::to_string(
                          residual_of(F, psi, alphas).cwiseAbs().maxCoeff()));
}

ConvexWeights solve_kappa(const HybridModel& model, const State& x,
                          const SlidingRegime& regime,
                          const SlidingOptions& opts) {
  const Eigen::MatrixXd F =
      reduced_projection_matrix(model, x, regime.active, regime.adjacent);
  const int n = static_cast<int>(regime.adjacent.size());

  // Omega_c carries the sign convention making the first adjacent flow
  // positive and every other one negative.
  Eigen::VectorXd omega(n);
  for (int c = 0; c < n; ++c) {
    const double mag = F.row(c).cwiseAbs().sum();
    omega[c] = c == 0 ? mag : -mag;
  }
  if (omega[0] <= 0.0)
    throw numeric_error("solve_kappa: degenerate normal projections (Omega_1 <= 0)");

  const double inv_exp = 1.0 / static_cast<double>(n - 1);
  Eigen::VectorXd kappa(n);
  for (int c = 0; c < n; ++c) {
    double prod = 1.0;
    for (int l = 0; l < n; ++l)
      if (l != c) prod *= omega[l];
    const double root = signed_root(prod, inv_exp);
    const double den = root - omega[c];
    if (std::abs(den) < opts.eps_den)
      throw numeric_error("solve_kappa: vanishing denominator");
    kappa[c] = root / den;
  }
  const double total = kappa.sum();
  if (!(total > 0.0) || !kappa.allFinite())
    throw numeric_error("solve_kappa: invalid coefficients");

  ConvexWeights out;
  out.method = ConvexWeights::Method::Kappa;
  out.kappas = kappa;
  out.weights = kappa / total;
  return out;
}

namespace {

// Damped Newton on the tangency residual over the alpha vector, with a
// finite-difference Jacobian.
ConvexWeights solve_alpha_newton(const Eigen::MatrixXd& F,
                                 const Eigen::MatrixXi& psi,
                                 const SlidingOptions& opts) {
  const int m = static_cast<int>(psi.rows());
  Eigen::VectorXd alphas = Eigen::VectorXd::Constant(m, 0.5);
  Eigen::VectorXd r = residual_of(F, psi, alphas);
  for (int it = 0; it < 100; ++it) {
    if (r.cwiseAbs().maxCoeff() <= opts.eps_slide) {
      for (int b = 0; b < m; ++b) alphas[b] = std::clamp(alphas[b], 0.0, 1.0);
      return alpha_result(psi, alphas);
    }
    Eigen::MatrixXd J(m, m);
    const double h = 1e-7;
    for (int b = 0; b < m; ++b) {
      Eigen::VectorXd ap = alphas, am = alphas;
      ap[b] += h;
      am[b] -= h;
      J.col(b) = (residual_of(F, psi, ap) - residual_of(F, psi, am)) / (2 * h);
    }
    Eigen::VectorXd step = J.fullPivLu().solve(-r);
    double damp = 1.0;
    const double r0 = r.norm();
    for (int k = 0; k < 30; ++k, damp *= 0.5) {
      Eigen::VectorXd trial = alphas + damp * step;
      Eigen::VectorXd rt = residual_of(F, psi, trial);
      if (rt.norm() < r0) {
        alphas = trial;
        r = rt;
        break;
      }
      if (k == 29)
        throw numeric_error("sliding weight solve: damped Newton stalled");
    }
  }
  throw numeric_error("sliding weight solve: damped Newton did not converge");
}

}  // namespace

ConvexWeights solve_weights(const HybridModel& model, const State& x,
                            const SlidingRegime& regime,
                            const SlidingOptions& opts) {
  try {
    return solve_alpha(model, x, regime, opts);
  } catch (const numeric_error&) {
  }
  try {
    ConvexWeights kw = solve_kappa(model, x, regime, opts);
    if (tangency_residual(model, x, regime, kw.weights) <= opts.eps_slide)
      return kw;
  } catch (const numeric_error&) {
  }
  const Eigen::MatrixXd F =
      reduced_projection_matrix(model, x, regime.active, regime.adjacent);
  return solve_alpha_newton(F, regime.reduced_signs, opts);
}

double tangency_residual(const HybridModel& model, const State& x,
                         const SlidingRegime& regime,
                         const Eigen::VectorXd& weights) {
  const Eigen::MatrixXd F =
      reduced_projection_matrix(model, x, regime.active, regime.adjacent);
  return (F.transpose() * weights).cwiseAbs().maxCoeff();
}

Vector sliding_vector_field(const HybridModel& model, const State& x,
                            const SlidingRegime& regime) {
  const Eigen::VectorXd& w = regime.weights.weights;
  if (w.size() != static_cast<Eigen::Index>(regime.adjacent.size()))
    throw std::invalid_argument("sliding_vector_field: regime has no weights");
  Vector f = Vector::Zero(model.dim());
  for (std::size_t c = 0; c < regime.adjacent.size(); ++c)
    f += w[static_cast<Eigen::Index>(c)] * model.flow(regime.adjacent[c], x);
  return f;
}

Vector sliding_field_at(const HybridModel& model, const State& x,
                        const SlidingRegime& regime,
                        const SlidingOptions& opts) {
  SlidingRegime local = regime;
  local.weights = solve_weights(model, x, regime, opts);
  return sliding_vector_field(model, x, local);
}

ExitDecision exit_monitor(const HybridModel& model, const State& x,
                          const SlidingRegime& regime,
                          const SlidingOptions& opts) {
  const Eigen::MatrixXd F =
      reduced_projection_matrix(model, x, regime.active, regime.adjacent);
  const Eigen::MatrixXi& psi = regime.reduced_signs;
  const int m = static_cast<int>(regime.active.size());
  const int n = static_cast<int>(regime.adjacent.size());

  // A flow "points away" when each of its normal components is directed
  // into its own region side.
  auto points_away = [&](int c) {
    for (int b = 0; b < m; ++b)
      if ((F(c, b) > 0.0) != (psi(b, c) > 0)) return false;
    return true;
  };

  Eigen::VectorXd kappa = Eigen::VectorXd::Zero(n);
  int c_max = 0;
  try {
    kappa = solve_kappa(model, x, regime, opts).weights;
    kappa.maxCoeff(&c_max);
  } catch (const numeric_error&) {
    // Degenerate projections: fall through to the sign tests below.
  }

  ExitDecision out;
  if (is_attractive(F, psi)) {
    if (kappa[c_max] >= 1.0 - opts.eps_exit && points_away(c_max)) {
      out.action = ExitDecision::Action::Exit;
      out.region = regime.adjacent[c_max];
    }
    return out;
  }

  // Attractivity lost: the dominant flow's column fixes the side of any
  // manifold being released.
  auto released_sign = [&](int b) { return psi(b, c_max); };

  for (int size = m - 1; size >= 1; --size) {
    for (int mask = (1 << m) - 1; mask >= 0; --mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != size) continue;
      std::vector<int> subset;
      std::vector<int> signs = regime.inactive_signs;
      for (int b = 0; b < m; ++b) {
        if (mask & (1 << b))
          subset.push_back(regime.active[b]);
        else
          signs[regime.active[b]] = released_sign(b);
      }
      const auto adj = adjacent_regions(model, subset, signs);
      const Eigen::MatrixXd Fs =
          reduced_projection_matrix(model, x, subset, adj);
      if (is_attractive(Fs, build_sign_matrix(size))) {
        out.action = ExitDecision::Action::Reduce;
        out.subset = subset;
        out.signs = signs;
        return out;
      }
    }
  }

  // No sub-intersection holds: release into the best consistent region,
  // preferring flows whose normals all point away.
  int best = -1;
  for (int c = 0; c < n; ++c)
    if (points_away(c) && (best < 0 || kappa[c] > kappa[best])) best = c;
  out.action = ExitDecision::Action::Exit;
  out.region = regime.adjacent[best >= 0 ? best : c_max];
  return out;
}

}  // namespace filsim
