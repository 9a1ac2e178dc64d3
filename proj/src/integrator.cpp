#include "filsim/integrator.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <optional>

namespace filsim {

void SimConfig::validate() const {
  if (!(dt_min > 0 && dt_min <= dt_init && dt_init <= dt_max))
    throw std::invalid_argument("SimConfig: need 0 < dt_min <= dt_init <= dt_max");
  if (t_end < 0) throw std::invalid_argument("SimConfig: t_end must be >= 0");
  for (double tol : {atol, rtol, eps_root, eps_slide, eps_exit, eps_gamma,
                     eps_lie, eps_den})
    if (!(tol > 0)) throw std::invalid_argument("SimConfig: tolerances must be > 0");
}

std::string to_string(TraceEvent::Kind kind) {
  switch (kind) {
    case TraceEvent::Kind::Crossing: return "crossing";
    case TraceEvent::Kind::SlidingEntry: return "sliding-entry";
    case TraceEvent::Kind::SlidingExit: return "sliding-exit";
    case TraceEvent::Kind::RegimeChange: return "regime-change";
    case TraceEvent::Kind::Grazing: return "grazing";
  }
  return "?";
}

std::string RegimeDescriptor::label(const HybridModel& model) const {
  if (!sliding) return "q" + std::to_string(region + 1);
  std::string s = "slide{";
  for (std::size_t i = 0; i < active.size(); ++i) {
    if (i) s += ",";
    s += model.switching(active[i]).name;
  }
  return s + "}";
}

int SimTrace::count_events(TraceEvent::Kind kind) const {
  int n = 0;
  for (const auto& e : events)
    if (e.kind == kind) ++n;
  return n;
}

int SimTrace::mode_switches() const {
  int n = 0;
  for (const auto& e : events)
    if (e.kind != TraceEvent::Kind::Grazing && e.from != e.to) ++n;
  return n;
}

int SimTrace::tangential_crossings() const {
  int n = 0;
  for (const auto& e : events)
    if (e.kind == TraceEvent::Kind::Crossing && e.from == e.to) ++n;
  return n;
}

std::pair<State, DenseStep> rk2_step(const HybridModel& model, int flow,
                                     const State& x, double t, double dt) {
  const Vector k1 = model.flow(flow, x);
  const Vector k2 = model.flow(flow, x + (0.5 * dt) * k1);
  State x1 = x + dt * k2;
  if (!x1.allFinite())
    throw numeric_error("rk2_step: non-finite state at t=" + std::to_string(t));
  return {x1, DenseStep{x, x1, t, dt}};
}

ProjectionResult project_to_manifold(const HybridModel& model,
                                     const State& x_star,
                                     const std::vector<int>& active,
                                     double eps_root, int max_newton) {
  const int n = model.dim();
  const int m = static_cast<int>(active.size());
  ProjectionResult res;
  res.x = x_star;
  res.lambda = Eigen::VectorXd::Zero(m);

  auto stationarity = [&](const State& x, const Eigen::VectorXd& lam) {
    Eigen::VectorXd g(n + m);
    Vector gx = x - x_star;
    for (int b = 0; b < m; ++b) gx += lam[b] * model.gradient(active[b], x);
    g.head(n) = gx;
    for (int b = 0; b < m; ++b) g[n + b] = model.gamma(active[b], x);
    return g;
  };

  Eigen::VectorXd g = stationarity(res.x, res.lambda);
  for (; res.iterations < max_newton; ++res.iterations) {
    if (g.cwiseAbs().maxCoeff() <= eps_root) return res;
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n + m, n + m);
    J.topLeftCorner(n, n) = Eigen::MatrixXd::Identity(n, n);
    for (int b = 0; b < m; ++b) {
      // Constraint curvature by finite differences of the gradient.
      if (res.lambda[b] != 0.0) {
        for (int c = 0; c < n; ++c) {
          State xp = res.x, xm = res.x;
          const double h = std::max(1e-7, 1e-7 * std::abs(res.x[c]));
          xp[c] += h;
          xm[c] -= h;
          J.block(0, c, n, 1) +=
              res.lambda[b] / (2.0 * h) *
              (model.gradient(active[b], xp) - model.gradient(active[b], xm));
        }
      }
      const Vector grad = model.gradient(active[b], res.x);
      J.block(0, n + b, n, 1) = grad;
      J.block(n + b, 0, 1, n) = grad.transpose();
    }
    Eigen::VectorXd delta = J.fullPivLu().solve(-g);
    if (!delta.allFinite())
      throw numeric_error("project_to_manifold: singular Newton system");
    res.x += delta.head(n);
    res.lambda += delta.tail(m);
    g = stationarity(res.x, res.lambda);
  }
  if (g.cwiseAbs().maxCoeff() <= eps_root) return res;
  throw numeric_error("project_to_manifold: Newton cap reached, residual " +
                      std::to_string(g.cwiseAbs().maxCoeff()));
}

namespace {

// Implicit stage y = proj(base + coef * f_s(y)): fixed-point iteration with
// an explicit predictor, switching to a finite-difference Newton solve when
// the iteration stalls.
State solve_stage(const HybridModel& model, const SlidingRegime& regime,
                  const State& base, const State& predictor_ref, double coef,
                  const SimConfig& cfg) {
  const SlidingOptions sopts = cfg.sliding_options();
  auto apply = [&](const State& y) {
    const Vector f = sliding_field_at(model, y, regime, sopts);
    return project_to_manifold(model, base + coef * f, regime.active,
                               cfg.eps_root, cfg.max_newton)
        .x;
  };
  State y = apply(predictor_ref);
  const double tol = 1e-13 * (1.0 + y.cwiseAbs().maxCoeff());
  for (int it = 0; it < cfg.max_fixed_point; ++it) {
    State y_next = apply(y);
    const double diff = (y_next - y).cwiseAbs().maxCoeff();
    y = std::move(y_next);
    if (diff <= tol) return y;
  }
  // Newton on r(y) = y - apply(y).
  const int n = model.dim();
  Eigen::VectorXd r = y - apply(y);
  for (int it = 0; it < cfg.max_newton; ++it) {
    if (r.cwiseAbs().maxCoeff() <= tol) return y;
    Eigen::MatrixXd J(n, n);
    for (int c = 0; c < n; ++c) {
      const double h = std::max(1e-7, 1e-7 * std::abs(y[c]));
      State yp = y, ym = y;
      yp[c] += h;
      ym[c] -= h;
      J.col(c) = ((yp - apply(yp)) - (ym - apply(ym))) / (2.0 * h);
    }
    Eigen::VectorXd delta = J.fullPivLu().solve(-r);
    if (!delta.allFinite())
      throw numeric_error("bathe stage: singular Newton system");
    y += delta;
    r = y - apply(y);
  }
  throw numeric_error("bathe stage: implicit solve did not converge");
}

}  // namespace

State bathe_sliding_step(const HybridModel& model, const SlidingRegime& regime,
                         const State& x, double t, double dt,
                         const SimConfig& config) {
  const SlidingOptions sopts = config.sliding_options();
  const Vector f0 = sliding_field_at(model, x, regime, sopts);
  const State half =
      solve_stage(model, regime, x + (dt / 4.0) * f0, x, dt / 4.0, config);
  const State base = (-1.0 / 3.0) * x + (4.0 / 3.0) * half;
  State full = solve_stage(model, regime, base, half, dt / 3.0, config);
  if (!full.allFinite())
    throw numeric_error("bathe_sliding_step: non-finite state at t=" +
                        std::to_string(t));
  return full;
}

namespace {

struct Mode {
  bool sliding = false;
  int region = -1;
  SlidingRegime regime;

  RegimeDescriptor descriptor() const {
    RegimeDescriptor d;
    d.sliding = sliding;
    d.region = region;
    if (sliding) d.active = regime.active;
    return d;
  }
};

struct AttractiveSet {
  std::vector<int> active;
  std::vector<int> inactive_signs;
};

// Largest attractive subset of `candidates` at x, given the post-event sign
// hint for every manifold. Ties resolve to the first subset scanned.
std::optional<AttractiveSet> largest_attractive_subset(
    const HybridModel& model, const State& x,
    const std::vector<int>& candidates, const std::vector<int>& sign_hint) {
  const int m = static_cast<int>(candidates.size());
  for (int size = m; size >= 1; --size) {
    for (int mask = (1 << m) - 1; mask >= 0; --mask) {
      if (std::popcount(static_cast<unsigned>(mask)) != size) continue;
      AttractiveSet set;
      set.inactive_signs = sign_hint;
      for (int b = 0; b < m; ++b)
        if (mask & (1 << b)) set.active.push_back(candidates[b]);
      const auto adj = adjacent_regions(model, set.active, set.inactive_signs);
      const Eigen::MatrixXd F =
          reduced_projection_matrix(model, x, set.active, adj);
      if (is_attractive(F, build_sign_matrix(size))) return set;
    }
  }
  return std::nullopt;
}

class Simulator {
 public:
  Simulator(const HybridModel& model, const State& x0, const SimConfig& cfg)
      : model_(model), cfg_(cfg), x_(x0) {
    cfg_.validate();
    if (!x0.allFinite())
      throw std::invalid_argument("simulate: initial state not finite");
    if (x0.size() != model.dim())
      throw std::invalid_argument("simulate: initial state has wrong dimension");
  }

  SimTrace run() {
    try {
      init_mode();
      trace_.samples.push_back({t_, x_, mode_.descriptor()});
      dt_ = cfg_.dt_init;
      long steps = 0;
      while (t_ < cfg_.t_end - 1e-14 * std::max(1.0, cfg_.t_end)) {
        if (++steps > 50'000'000)
          throw numeric_error("simulate: step cap exceeded at t=" +
                              std::to_string(t_));
        if (mode_.sliding)
          sliding_step();
        else
          free_step();
      }
    } catch (const numeric_error& err) {
      trace_.aborted = true;
      trace_.diagnostic = err.what();
    }
    return trace_;
  }

 private:
  void init_mode() {
    const RegionLookup lookup = region_index(model_, x_, cfg_.eps_gamma);
    if (!lookup.on_manifold()) {
      mode_.region = lookup.region;
      return;
    }
    std::vector<int> sign_hint = current_signs();
    if (auto set = largest_attractive_subset(model_, x_, lookup.on_manifolds,
                                             sign_hint)) {
      enter_sliding(*set, x_, 0.0);
      return;
    }
    mode_.region = region_from_signs(sign_hint);
  }

  std::vector<int> current_signs() const {
    std::vector<int> signs(model_.num_manifolds());
    for (int j = 0; j < model_.num_manifolds(); ++j)
      signs[j] = model_.gamma(j, x_) >= 0 ? 1 : -1;
    return signs;
  }

  double clip_dt(double dt) const {
    dt = std::min(dt, cfg_.dt_max);
    dt = std::max(dt, cfg_.dt_min);
    return std::min(dt, cfg_.t_end - t_);
  }

  double error_ratio(const State& coarse, const State& fine) const {
    double err = 0.0;
    for (int i = 0; i < coarse.size(); ++i) {
      const double scale =
          cfg_.atol + cfg_.rtol * std::max(std::abs(coarse[i]), std::abs(fine[i]));
      err = std::max(err, std::abs(coarse[i] - fine[i]) / scale);
    }
    return err / 3.0;  // Richardson factor for a second-order pair
  }

  void grow_dt(double err) {
    const double factor =
        err > 0.0 ? std::clamp(0.9 * std::pow(err, -1.0 / 3.0), 0.2, 5.0) : 5.0;
    dt_ = std::max(cfg_.dt_min, dt_ * factor);
  }

  void commit(double t_new, State x_new) {
    t_ = t_new;
    x_ = std::move(x_new);
    trace_.samples.push_back({t_, x_, mode_.descriptor()});
  }

  void record(TraceEvent::Kind kind, double t, const State& x,
              std::vector<int> manifolds, std::string from, std::string to) {
    trace_.events.push_back(
        {t, kind, std::move(manifolds), std::move(from), std::move(to), x});
  }

  void enter_sliding(const AttractiveSet& set, const State& x_on, double t) {
    mode_.sliding = true;
    mode_.regime = make_regime(model_, set.active, set.inactive_signs, t);
    mode_.regime.weights =
        solve_weights(model_, x_on, mode_.regime, cfg_.sliding_options());
  }

  // ---- free flow ----

  void free_step() {
    double dt = clip_dt(dt_);
    int grazing_retries = 0;
    for (;;) {
      auto [x_full, dense_full] = rk2_step(model_, mode_.region, x_, t_, dt);
      auto [x_mid, d0] = rk2_step(model_, mode_.region, x_, t_, dt / 2.0);
      auto [x_fine, d1] = rk2_step(model_, mode_.region, x_mid, t_ + dt / 2.0,
                                   dt / 2.0);
      const double err = error_ratio(x_full, x_fine);
      if (err > 1.0 && dt > cfg_.dt_min) {
        dt = std::max(cfg_.dt_min,
                      dt * std::clamp(0.9 * std::pow(err, -1.0 / 3.0), 0.2, 0.9));
        continue;
      }

      const DenseStep dense{x_, x_fine, t_, dt};
      const SignChanges changes =
          detect_sign_changes(model_.gamma_all(x_), model_.gamma_all(x_fine),
                              cfg_.eps_gamma);
      if (changes.empty()) {
        commit(t_ + dt, x_fine);
        grow_dt(err);
        return;
      }

      std::vector<int> candidates = changes.crossed;
      candidates.insert(candidates.end(), changes.touching.begin(),
                        changes.touching.end());
      std::sort(candidates.begin(), candidates.end());
      const CrossingRecord rec = locate_switch_point(
          model_, dense, candidates,
          {cfg_.eps_root, 50, 1e-10});
      const State x_m =
          project_to_manifold(model_, rec.x, rec.manifolds, cfg_.eps_root,
                              cfg_.max_newton)
              .x;

      // Post-event side of each manifold; crossed ones flip, others keep
      // the sign they had at the step start.
      std::vector<int> sign_hint = current_signs();
      for (int j : rec.manifolds)
        if (std::binary_search(changes.crossed.begin(), changes.crossed.end(),
                               j))
          sign_hint[j] = -sign_hint[j];

      if (is_grazing(x_m, rec.manifolds, sign_hint)) {
        if (grazing_retries++ < cfg_.max_grazing_retries && dt / 2 >= cfg_.dt_min) {
          dt /= 2.0;
          continue;
        }
        const std::string label = mode_.descriptor().label(model_);
        record(TraceEvent::Kind::Grazing, rec.t, x_m, rec.manifolds, label,
               label);
        commit(rec.t, x_m);
        return;
      }

      handle_switch(rec, x_m, sign_hint);
      return;
    }
  }

  bool is_grazing(const State& x_m, const std::vector<int>& hit,
                  const std::vector<int>& sign_hint) const {
    const auto adj = adjacent_regions(model_, hit, sign_hint);
    const Eigen::MatrixXd F = reduced_projection_matrix(model_, x_m, hit, adj);
    return F.cwiseAbs().minCoeff() <= cfg_.eps_lie;
  }

  void handle_switch(const CrossingRecord& rec, const State& x_m,
                     const std::vector<int>& sign_hint) {
    const std::string from = mode_.descriptor().label(model_);

    // Candidate active set: the located manifolds plus anything else inside
    // the on-manifold band at x_m.
    std::vector<int> candidates = rec.manifolds;
    for (int j = 0; j < model_.num_manifolds(); ++j)
      if (std::abs(model_.gamma(j, x_m)) <= cfg_.eps_gamma &&
          std::find(candidates.begin(), candidates.end(), j) == candidates.end())
        candidates.push_back(j);
    std::sort(candidates.begin(), candidates.end());

    if (auto set = largest_attractive_subset(model_, x_m, candidates, sign_hint)) {
      const State x_on =
          project_to_manifold(model_, x_m, set->active, cfg_.eps_root,
                              cfg_.max_newton)
              .x;
      enter_sliding(*set, x_on, rec.t);
      record(TraceEvent::Kind::SlidingEntry, rec.t, x_on, set->active, from,
             mode_.descriptor().label(model_));
      commit(rec.t, x_on);
      return;
    }

    const SwitchClassification cls = classify_switch_point(
        model_, x_m, rec.manifolds, mode_.region, cfg_.eps_lie);
    if (cls.kind == SwitchClassification::Kind::Transversal) {
      mode_.region = cls.target_region;
    }
    record(TraceEvent::Kind::Crossing, rec.t, x_m, rec.manifolds, from,
           mode_.descriptor().label(model_));
    commit(rec.t, x_m);
  }

  // ---- sliding ----

  State bathe_with_halving(double& dt, double& err_out) {
    for (;;) {
      try {
        const State coarse = bathe_sliding_step(model_, mode_.regime, x_, t_, dt, cfg_);
        const State mid =
            bathe_sliding_step(model_, mode_.regime, x_, t_, dt / 2.0, cfg_);
        const State fine = bathe_sliding_step(model_, mode_.regime, mid,
                                              t_ + dt / 2.0, dt / 2.0, cfg_);
        const double err = error_ratio(coarse, fine);
        if (err > 1.0 && dt > cfg_.dt_min) {
          dt = std::max(cfg_.dt_min, dt * std::clamp(0.9 * std::pow(err, -1.0 / 3.0),
                                                     0.2, 0.9));
          continue;
        }
        err_out = err;
        return fine;
      } catch (const numeric_error&) {
        if (dt / 2.0 < cfg_.dt_min) throw;
        dt /= 2.0;
      }
    }
  }

  // Smallest attractivity margin over the adjacent flows: positive while
  // Lemma-1 attractivity holds, zero at an exit or reduction boundary.
  double attractivity_margin(const State& x) const {
    const Eigen::MatrixXd F = reduced_projection_matrix(
        model_, x, mode_.regime.active, mode_.regime.adjacent);
    double margin = std::numeric_limits<double>::infinity();
    for (int c = 0; c < F.rows(); ++c)
      for (int b = 0; b < F.cols(); ++b)
        margin = std::min(margin,
                          -double(mode_.regime.reduced_signs(b, c)) * F(c, b));
    return margin;
  }

  // A grazing touch can leave the committed state back on its original side
  // after the located root flipped the stored sign. The adjacent flow family
  // must follow the actual side of every inactive manifold.
  void refresh_inactive_signs() {
    bool changed = false;
    for (int j = 0; j < model_.num_manifolds(); ++j) {
      if (std::find(mode_.regime.active.begin(), mode_.regime.active.end(),
                    j) != mode_.regime.active.end())
        continue;
      const double g = model_.gamma(j, x_);
      if (std::abs(g) <= cfg_.eps_gamma) continue;
      const int side = g > 0.0 ? +1 : -1;
      if (side != mode_.regime.inactive_signs[j]) {
        mode_.regime.inactive_signs[j] = side;
        changed = true;
      }
    }
    if (changed) {
      mode_.regime = make_regime(model_, mode_.regime.active,
                                 mode_.regime.inactive_signs,
                                 mode_.regime.entered_at);
      mode_.regime.weights =
          solve_weights(model_, x_, mode_.regime, cfg_.sliding_options());
    }
  }

  void sliding_step() {
    refresh_inactive_signs();
    if (attractivity_margin(x_) <= 0.0) {
      // The committed state already sits on (or just past) the boundary.
      const std::size_t before = trace_.events.size();
      apply_exit_decision(
          exit_monitor(model_, x_, mode_.regime, cfg_.sliding_options()));
      if (!mode_.sliding || trace_.events.size() != before) return;
    }

    double dt = clip_dt(dt_);
    double err = 0.0;
    const State x_next = bathe_with_halving(dt, err);

    // Crossings of inactive manifolds while sliding (the active ones stay
    // inside the band and are skipped by the detector).
    const SignChanges changes = detect_sign_changes(
        model_.gamma_all(x_), model_.gamma_all(x_next), cfg_.eps_gamma);
    if (!changes.empty()) {
      std::vector<int> candidates = changes.crossed;
      candidates.insert(candidates.end(), changes.touching.begin(),
                        changes.touching.end());
      const DenseStep dense{x_, x_next, t_, dt};
      const CrossingRecord rec =
          locate_switch_point(model_, dense, candidates, {cfg_.eps_root, 50, 1e-10});
      handle_sliding_crossing(rec, changes.crossed);
      return;
    }

    if (attractivity_margin(x_next) <= 0.0) {
      land_on_exit_boundary(dt, x_next);
      return;
    }

    commit(t_ + dt, x_next);
    grow_dt(err);
    apply_exit_decision(exit_monitor(model_, x_, mode_.regime, cfg_.sliding_options()));
    if (mode_.sliding)
      mode_.regime.weights =
          solve_weights(model_, x_, mode_.regime, cfg_.sliding_options());
  }

  // Bisect the attractivity margin along the step's interpolant and commit
  // at the first point on the non-attractive side, where the exit monitor
  // takes the release decision.
  void land_on_exit_boundary(double dt, const State& x_next) {
    const DenseStep dense{x_, x_next, t_, dt};
    double lo = 0.0, hi = dt;
    while (hi - lo > 1e-9 * dt) {
      const double mid = 0.5 * (lo + hi);
      const State xm = project_to_manifold(model_, dense.at(mid),
                                           mode_.regime.active, cfg_.eps_root,
                                           cfg_.max_newton)
                           .x;
      (attractivity_margin(xm) > 0.0 ? lo : hi) = mid;
    }
    const State x_exit =
        project_to_manifold(model_, dense.at(hi), mode_.regime.active,
                            cfg_.eps_root, cfg_.max_newton)
            .x;
    commit(t_ + hi, x_exit);
    apply_exit_decision(
        exit_monitor(model_, x_, mode_.regime, cfg_.sliding_options()));
  }

  void handle_sliding_crossing(const CrossingRecord& rec,
                               const std::vector<int>& crossed) {
    const std::string from = mode_.descriptor().label(model_);
    const State x_land =
        project_to_manifold(model_, rec.x, mode_.regime.active, cfg_.eps_root,
                            cfg_.max_newton)
            .x;

    std::vector<int> sign_hint = current_signs();
    for (int j : mode_.regime.active)
      sign_hint[j] = mode_.regime.inactive_signs[j];  // unused for active
    for (int j : crossed)
      if (std::find(rec.manifolds.begin(), rec.manifolds.end(), j) !=
          rec.manifolds.end())
        sign_hint[j] = -sign_hint[j];

    // The intersection may be attractive as a whole: try growing the active
    // set before treating this as a pass-through.
    std::vector<int> candidates = mode_.regime.active;
    candidates.insert(candidates.end(), rec.manifolds.begin(),
                      rec.manifolds.end());
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()),
                     candidates.end());

    if (auto set = largest_attractive_subset(model_, x_land, candidates,
                                             sign_hint)) {
      if (set->active != mode_.regime.active) {
        const State x_on =
            project_to_manifold(model_, x_land, set->active, cfg_.eps_root,
                                cfg_.max_newton)
                .x;
        enter_sliding(*set, x_on, rec.t);
        record(TraceEvent::Kind::RegimeChange, rec.t, x_on, set->active, from,
               mode_.descriptor().label(model_));
        commit(rec.t, x_on);
        return;
      }
    }

    // Pass through: keep sliding, flip the stored side of the crossed
    // manifolds and rebuild the adjacent flow set.
    for (int j : crossed) mode_.regime.inactive_signs[j] = sign_hint[j];
    mode_.regime = make_regime(model_, mode_.regime.active,
                               mode_.regime.inactive_signs, mode_.regime.entered_at);
    mode_.regime.weights =
        solve_weights(model_, x_land, mode_.regime, cfg_.sliding_options());
    record(TraceEvent::Kind::Crossing, rec.t, x_land, rec.manifolds, from,
           mode_.descriptor().label(model_));
    commit(rec.t, x_land);
  }

  void apply_exit_decision(const ExitDecision& decision) {
    if (decision.action == ExitDecision::Action::Continue) return;
    const std::string from = mode_.descriptor().label(model_);
    const std::vector<int> active = mode_.regime.active;

    if (decision.action == ExitDecision::Action::Exit) {
      mode_.sliding = false;
      mode_.region = decision.region;
      record(TraceEvent::Kind::SlidingExit, t_, x_, active, from,
             mode_.descriptor().label(model_));
      return;
    }

    AttractiveSet set{decision.subset, decision.signs};
    const State x_on =
        project_to_manifold(model_, x_, set.active, cfg_.eps_root, cfg_.max_newton)
            .x;
    enter_sliding(set, x_on, t_);
    x_ = x_on;
    trace_.samples.back().x = x_on;
    trace_.samples.back().regime = mode_.descriptor();
    record(TraceEvent::Kind::RegimeChange, t_, x_on, set.active, from,
           mode_.descriptor().label(model_));
  }

  const HybridModel& model_;
  SimConfig cfg_;
  State x_;
  double t_ = 0.0;
  double dt_ = 0.0;
  Mode mode_;
  SimTrace trace_;
};

}  // namespace

SimTrace simulate(const HybridModel& model, const State& x0,
                  const SimConfig& config) {
  return Simulator(model, x0, config).run();
}

}  // namespace filsim
