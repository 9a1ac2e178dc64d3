#include "filsim/model.hpp"

#include <cmath>

namespace filsim {

namespace {

double fd_step(double xk) { return std::max(1e-7, 1e-7 * std::abs(xk)); }

}  // namespace

HybridModel::HybridModel(int dim, std::vector<SwitchingFunction> switching,
                         std::vector<FlowField> flows,
                         std::vector<std::string> state_names)
    : dim_(dim),
      switching_(std::move(switching)),
      flows_(std::move(flows)),
      state_names_(std::move(state_names)) {
  const int p = static_cast<int>(switching_.size());
  if (dim_ < 1) throw std::invalid_argument("model dimension must be >= 1");
  if (p < 1 || p > kMaxManifolds)
    throw std::invalid_argument("number of switching functions out of range");
  if (static_cast<int>(flows_.size()) != (1 << p))
    throw std::invalid_argument("expected 2^p flow maps in sign-matrix column order");
  for (const auto& s : switching_)
    if (!s.value) throw std::invalid_argument("switching function has no evaluator");
  for (const auto& f : flows_)
    if (!f) throw std::invalid_argument("flow map has no evaluator");
  if (state_names_.empty()) {
    for (int k = 0; k < dim_; ++k) state_names_.push_back("x" + std::to_string(k));
  }
  if (static_cast<int>(state_names_.size()) != dim_)
    throw std::invalid_argument("state_names length must equal model dimension");
  sign_matrix_ = build_sign_matrix(p);
}

Vector HybridModel::gamma_all(const State& x) const {
  Vector g(num_manifolds());
  for (int j = 0; j < num_manifolds(); ++j) g[j] = switching_[j].value(x);
  return g;
}

Vector HybridModel::gradient(int j, const State& x) const {
  const auto& s = switching_.at(j);
  if (s.gradient) {
    Vector g = s.gradient(x);
    if (g.size() != dim_)
      throw numeric_error("gradient of '" + s.name + "' has wrong dimension");
    return g;
  }
  Vector g(dim_);
  State xp = x, xm = x;
  for (int k = 0; k < dim_; ++k) {
    const double h = fd_step(x[k]);
    xp[k] = x[k] + h;
    xm[k] = x[k] - h;
    g[k] = (s.value(xp) - s.value(xm)) / (2.0 * h);
    xp[k] = x[k];
    xm[k] = x[k];
  }
  if (!g.allFinite())
    throw numeric_error("finite-difference gradient of '" + s.name +
                        "' is not finite");
  return g;
}

Eigen::MatrixXi build_sign_matrix(int p) {
  if (p < 1 || p > kMaxManifolds)
    throw std::invalid_argument("build_sign_matrix: p out of [1," +
                                std::to_string(kMaxManifolds) + "]");
  const int cols = 1 << p;
  Eigen::MatrixXi psi(p, cols);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < cols; ++i) psi(j, i) = ((i >> j) & 1) ? 1 : -1;
  return psi;
}

int region_from_signs(const std::vector<int>& signs) {
  int i = 0;
  for (std::size_t j = 0; j < signs.size(); ++j)
    if (signs[j] > 0) i |= (1 << j);
  return i;
}

RegionLookup region_index(const HybridModel& model, const State& x,
                          double band) {
  RegionLookup out;
  int region = 0;
  for (int j = 0; j < model.num_manifolds(); ++j) {
    const double g = model.gamma(j, x);
    if (std::abs(g) <= band) out.on_manifolds.push_back(j);
    if (g > 0) region |= (1 << j);
  }
  if (!out.on_manifold()) out.region = region;
  return out;
}

double lie_derivative(const HybridModel& model, int flow, int manifold,
                      const State& x, int order) {
  if (order < 0) throw std::invalid_argument("lie_derivative: order must be >= 0");
  if (order == 0) return model.gamma(manifold, x);
  if (order == 1) {
    const Vector g = model.gradient(manifold, x);
    return g.dot(model.flow(flow, x));
  }
  // Directional central difference of the lower-order derivative along the
  // flow direction; step scaled to the local state magnitude.
  const Vector f = model.flow(flow, x);
  const double fn = f.norm();
  if (fn == 0.0) return 0.0;
  const double h = std::max(1e-7, 1e-7 * x.norm()) / fn;
  const double lp = lie_derivative(model, flow, manifold, x + h * f, order - 1);
  const double lm = lie_derivative(model, flow, manifold, x - h * f, order - 1);
  const double d = (lp - lm) / (2.0 * h);
  if (!std::isfinite(d))
    throw numeric_error("lie_derivative: non-finite value at order " +
                        std::to_string(order));
  return d;
}

std::optional<int> relative_degree(const HybridModel& model, int flow,
                                   int manifold, const State& x, int k_max,
                                   double eps) {
  if (k_max < 1) throw std::invalid_argument("relative_degree: k_max must be >= 1");
  for (int k = 0; k <= k_max; ++k) {
    if (std::abs(lie_derivative(model, flow, manifold, x, k)) > eps) return k;
  }
  return std::nullopt;
}

Eigen::MatrixXd normal_projection_matrix(const HybridModel& model,
                                         const State& x) {
  Eigen::MatrixXd F(model.num_regions(), model.num_manifolds());
  for (int i = 0; i < model.num_regions(); ++i)
    for (int j = 0; j < model.num_manifolds(); ++j)
      F(i, j) = lie_derivative(model, i, j, x, 1);
  return F;
}

}  // namespace filsim
