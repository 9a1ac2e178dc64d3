#include "filsim/events.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace filsim {

SignChanges detect_sign_changes(const Vector& gamma_prev,
                                const Vector& gamma_next, double band) {
  SignChanges out;
  for (int j = 0; j < gamma_prev.size(); ++j) {
    const double a = gamma_prev[j];
    const double b = gamma_next[j];
    if (std::abs(a) <= band) continue;  // departing from the manifold
    if (a * b < 0.0)
      out.crossed.push_back(j);
    else if (std::abs(b) <= band)
      out.touching.push_back(j);
  }
  return out;
}

namespace {

// Root of gamma_j along the dense output, bracketed by [0, dt].
double root_on_step(const HybridModel& model, const DenseStep& step, int j,
                    const EventLocatorOptions& opts) {
  double a = 0.0, b = step.dt;
  double ga = model.gamma(j, step.x0);
  double gb = model.gamma(j, step.x1);
  if (std::abs(gb) <= opts.eps_root) return b;
  if (ga * gb > 0.0) return b;  // touching candidate: event at the endpoint

  double s = b, gs = gb;
  double prev = a, gprev = ga;
  for (int it = 0; it < opts.max_secant && std::abs(gs) > opts.eps_root; ++it) {
    double next;
    const double denom = gs - gprev;
    if (denom != 0.0) {
      next = s - gs * (s - prev) / denom;
    } else {
      next = 0.5 * (a + b);
    }
    if (!(next > a && next < b)) next = 0.5 * (a + b);  // keep the bracket
    prev = s;
    gprev = gs;
    s = next;
    gs = model.gamma(j, step.at(s));
    if (ga * gs <= 0.0) {
      b = s;
      gb = gs;
    } else {
      a = s;
      ga = gs;
    }
  }
  // Bisection fallback down to the floating-point width of the bracket.
  while (std::abs(gs) > opts.eps_root) {
    const double mid = 0.5 * (a + b);
    if (mid <= a || mid >= b)
      throw numeric_error("locate_switch_point: root of manifold " +
                          std::to_string(j) + " not resolved to eps_root");
    const double gm = model.gamma(j, step.at(mid));
    if (ga * gm <= 0.0) {
      b = mid;
      gb = gm;
    } else {
      a = mid;
      ga = gm;
    }
    s = mid;
    gs = gm;
  }
  return s;
}

}  // namespace

CrossingRecord locate_switch_point(const HybridModel& model,
                                   const DenseStep& step,
                                   const std::vector<int>& candidates,
                                   const EventLocatorOptions& opts) {
  if (candidates.empty())
    throw std::invalid_argument("locate_switch_point: no candidate manifolds");
  std::vector<std::pair<int, double>> roots;
  for (int j : candidates) roots.emplace_back(j, root_on_step(model, step, j, opts));

  double sigma = std::numeric_limits<double>::infinity();
  for (const auto& [j, s] : roots) sigma = std::min(sigma, s);

  CrossingRecord rec;
  rec.sigma = sigma;
  const double merge = opts.merge_rtol * step.dt;
  for (const auto& [j, s] : roots)
    if (s - sigma <= merge) rec.manifolds.push_back(j);
  rec.x = step.at(sigma);
  rec.t = step.t0 + sigma;
  return rec;
}

std::vector<int> adjacent_regions(const HybridModel& model,
                                  const std::vector<int>& active,
                                  const std::vector<int>& inactive_signs) {
  const int m = static_cast<int>(active.size());
  const int p = model.num_manifolds();
  std::vector<int> out;
  out.reserve(1 << m);
  for (int c = 0; c < (1 << m); ++c) {
    std::vector<int> signs(p);
    for (int j = 0; j < p; ++j) signs[j] = inactive_signs[j];
    for (int b = 0; b < m; ++b) signs[active[b]] = ((c >> b) & 1) ? 1 : -1;
    out.push_back(region_from_signs(signs));
  }
  return out;
}

bool is_attractive(const Eigen::MatrixXd& f_reduced,
                   const Eigen::MatrixXi& reduced_signs) {
  for (int c = 0; c < f_reduced.rows(); ++c)
    for (int b = 0; b < f_reduced.cols(); ++b) {
      const double f = f_reduced(c, b);
      if (f == 0.0 || (f > 0.0) != (reduced_signs(b, c) < 0)) return false;
    }
  return true;
}

Eigen::MatrixXd reduced_projection_matrix(const HybridModel& model,
                                          const State& x,
                                          const std::vector<int>& active,
                                          const std::vector<int>& adjacent) {
  Eigen::MatrixXd F(adjacent.size(), active.size());
  for (std::size_t c = 0; c < adjacent.size(); ++c)
    for (std::size_t b = 0; b < active.size(); ++b)
      F(c, b) = lie_derivative(model, adjacent[c], active[b], x, 1);
  return F;
}

SwitchClassification classify_switch_point(const HybridModel& model,
                                           const State& x_m,
                                           const std::vector<int>& active,
                                           int incoming_region, double eps_l) {
  const int p = model.num_manifolds();
  std::vector<int> signs(p);
  for (int j = 0; j < p; ++j)
    signs[j] = model.sign_matrix()(j, incoming_region);

  const auto adjacent = adjacent_regions(model, active, signs);
  const Eigen::MatrixXd F = reduced_projection_matrix(model, x_m, active, adjacent);

  SwitchClassification out;
  for (int c = 0; c < F.rows(); ++c)
    for (int b = 0; b < F.cols(); ++b)
      if (std::abs(F(c, b)) <= eps_l) {
        out.kind = SwitchClassification::Kind::Grazing;
        out.grazing_manifold = active[b];
        return out;
      }

  const int m = static_cast<int>(active.size());
  Eigen::MatrixXi reduced = build_sign_matrix(m);
  if (is_attractive(F, reduced)) {
    out.kind = SwitchClassification::Kind::AttractiveSliding;
    out.active = active;
    return out;
  }

  // Transversal: the incoming flow's normal components give the crossing
  // direction; the target region carries those signs on the active
  // manifolds and the incoming signs elsewhere.
  int c_in = 0;
  for (std::size_t c = 0; c < adjacent.size(); ++c)
    if (adjacent[c] == incoming_region) c_in = static_cast<int>(c);
  for (int b = 0; b < m; ++b)
    signs[active[b]] = F(c_in, b) > 0.0 ? 1 : -1;
  out.kind = SwitchClassification::Kind::Transversal;
  out.target_region = region_from_signs(signs);
  return out;
}

}  // namespace filsim
