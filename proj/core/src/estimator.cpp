// Copyright 2026 The v2xloc Authors
// SPDX-License-Identifier: Apache-2.0

#include "v2xloc/estimator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "v2xloc/error.hpp"
#include "v2xloc/units.hpp"

namespace v2xloc {

namespace {

constexpr int kMaxDim = 5;
using Params = std::array<double, kMaxDim>;

enum Kind : int { kGnss = 0, kCell = 1 };

const Anchor& anchor_by_id(std::span<const Anchor> anchors, int id) {
  const auto idx = static_cast<std::size_t>(id);
  if (idx < anchors.size() && anchors[idx].id == id) return anchors[idx];
  for (const Anchor& a : anchors)
    if (a.id == id) return a;
  throw Error("unknown anchor id " + std::to_string(id));
}

bool selects(SolveMode mode, Kind kind) {
  switch (mode) {
    case SolveMode::kGnssOnly: return kind == kGnss;
    case SolveMode::kTdoaOnly: return kind == kCell;
    case SolveMode::kFused: return true;
  }
  return false;
}

EstimateMethod method_for(SolveMode mode) {
  switch (mode) {
    case SolveMode::kGnssOnly: return EstimateMethod::kGnssOnly;
    case SolveMode::kTdoaOnly: return EstimateMethod::kTdoaOnly;
    case SolveMode::kFused: return EstimateMethod::kFused;
  }
  return EstimateMethod::kFused;
}

double log_add_exp(double a, double b) {
  const double hi = std::max(a, b);
  return hi + std::log1p(std::exp(std::min(a, b) - hi));
}

struct Term {
  Vec3 pos;
  double m;   // measurement, meters
  double mu;  // bias, meters
  int kind;
  int clock;
};

struct KindScale {
  double sigma_m = 1.0;
  double inv_two_var = 0.5;  // 1 / (2 sigma_m^2)
  double log_norm = 0.0;     // -log(sqrt(2 pi) sigma_seconds)
  double log_w = 0.0;
  bool has_w = false;
};

// Selected detected measurements resolved against anchor positions, plus
// the parameter layout [x, y, (z), clock..].
class Problem {
 public:
  Problem(const MeasurementSet& ms, std::span<const Anchor> anchors,
          const AnchorWeightTable& weights, SolveMode mode, const SolverOptions& opts)
      : weights_(weights), opts_(opts) {
    bool has[2] = {false, false};
    auto add = [&](const Measurement& m, Kind kind) {
      if (!m.detected || !selects(mode, kind)) return;
      const Anchor& a = anchor_by_id(anchors, m.anchor_id);
      const double meters = kind == kGnss ? m.value : m.value * kSpeedOfLight;
      const double mu = (kind == kGnss ? weights.mu_gnss : weights.mu_cell) * kSpeedOfLight;
      terms_.push_back({a.position, meters, mu, kind, 0});
      has[kind] = true;
      if (m.anchor_id == ms.serving_anchor_id) serving_ = static_cast<int>(terms_.size()) - 1;
    };
    for (const Measurement& m : ms.gnss) add(m, kGnss);
    for (const Measurement& m : ms.cellular) add(m, kCell);
    if (terms_.empty()) throw Error("no detected measurements selected");

    clocks_ = (opts.separate_gnss_clock && has[kGnss] && has[kCell]) ? 2 : 1;
    if (clocks_ == 2)
      for (Term& t : terms_) t.clock = t.kind == kGnss ? 1 : 0;
    clock_base_ = opts.estimate_z ? 3 : 2;
    dim_ = clock_base_ + clocks_;
    has_gnss_ = has[kGnss];
    has_cell_ = has[kCell];
    set_spreads(weights.sigma_gnss * kSpeedOfLight, weights.sigma_cell * kSpeedOfLight);
  }

  int dim() const { return dim_; }
  int clocks() const { return clocks_; }
  int clock_base() const { return clock_base_; }
  const std::vector<Term>& terms() const { return terms_; }

  double exact_sigma(Kind k) const {
    return (k == kGnss ? weights_.sigma_gnss : weights_.sigma_cell) * kSpeedOfLight;
  }
  double min_used_sigma() const {
    double s = std::numeric_limits<double>::infinity();
    if (has_gnss_) s = std::min(s, exact_sigma(kGnss));
    if (has_cell_) s = std::min(s, exact_sigma(kCell));
    return s;
  }

  void set_spreads(double gnss_m, double cell_m) {
    const double w[2] = {weights_.w_gnss, weights_.w_cell};
    const double sig[2] = {gnss_m, cell_m};
    for (int k = 0; k < 2; ++k) {
      KindScale& ks = scale_[k];
      ks.sigma_m = sig[k];
      ks.inv_two_var = 1.0 / (2.0 * sig[k] * sig[k]);
      ks.log_norm = -std::log(std::sqrt(2.0 * std::numbers::pi) * sig[k] / kSpeedOfLight);
      ks.has_w = w[k] > 0.0;
      ks.log_w = ks.has_w ? std::log(w[k]) : 0.0;
    }
  }

  // Stage spread s applied as max(sigma_kind, s).
  void set_stage(double spread) {
    set_spreads(std::max(exact_sigma(kGnss), spread), std::max(exact_sigma(kCell), spread));
  }
  double stage_min_sigma() const {
    double s = std::numeric_limits<double>::infinity();
    if (has_gnss_) s = std::min(s, scale_[kGnss].sigma_m);
    if (has_cell_) s = std::min(s, scale_[kCell].sigma_m);
    return s;
  }

  Vec3 position(const Params& p) const { return {p[0], p[1], opts_.estimate_z ? p[2] : opts_.z}; }

  double residual(const Term& t, const Params& p, double* dist = nullptr) const {
    const double d = distance(position(p), t.pos);
    if (dist) *dist = d;
    return t.m - d - p[clock_base_ + t.clock] - t.mu;
  }

  double objective(const Params& p) const {
    double total = 0.0;
    for (const Term& t : terms_) {
      double d;
      const double r = residual(t, p, &d);
      const KindScale& ks = scale_[t.kind];
      const double a = ks.log_norm - std::log(d + opts_.eps_stab) - r * r * ks.inv_two_var;
      total += ks.has_w ? log_add_exp(ks.log_w, a) : a;
    }
    return total;
  }

  double weighted_sse(const Params& p) const {
    double total = 0.0;
    for (const Term& t : terms_) {
      const double r = residual(t, p);
      total += r * r * scale_[t.kind].inv_two_var * 2.0;
    }
    return total;
  }

  // Clock start at a candidate position: the serving-cell residual when the
  // serving cell is in the selection, otherwise the median residual per clock.
  void init_clocks(Params& p) const {
    for (int c = 0; c < clocks_; ++c) p[clock_base_ + c] = 0.0;
    std::vector<double> res;
    for (int c = 0; c < clocks_; ++c) {
      const bool use_serving = serving_ >= 0 && terms_[serving_].clock == c;
      if (use_serving) {
        const Term& t = terms_[serving_];
        p[clock_base_ + c] = t.m - distance(position(p), t.pos) - t.mu;
        continue;
      }
      res.clear();
      for (const Term& t : terms_)
        if (t.clock == c) res.push_back(t.m - distance(position(p), t.pos) - t.mu);
      std::sort(res.begin(), res.end());
      const std::size_t n = res.size();
      p[clock_base_ + c] = n % 2 ? res[n / 2] : 0.5 * (res[n / 2 - 1] + res[n / 2]);
    }
  }

  std::vector<Params> grid_starts() const {
    const SearchBox& b = opts_.box;
    const double pitch = opts_.grid_pitch;
    const int nx = std::max(1, static_cast<int>(std::ceil((b.x_max - b.x_min) / pitch)));
    const int ny = std::max(1, static_cast<int>(std::ceil((b.y_max - b.y_min) / pitch)));
    std::vector<Params> starts;
    starts.reserve(static_cast<std::size_t>(nx) * ny);
    for (int i = 0; i < nx; ++i) {
      for (int j = 0; j < ny; ++j) {
        Params p{};
        p[0] = b.x_min + (i + 0.5) * (b.x_max - b.x_min) / nx;
        p[1] = b.y_min + (j + 0.5) * (b.y_max - b.y_min) / ny;
        if (opts_.estimate_z) p[2] = opts_.z;
        init_clocks(p);
        starts.push_back(p);
      }
    }
    return starts;
  }

 private:
  AnchorWeightTable weights_;
  SolverOptions opts_;
  std::vector<Term> terms_;
  std::array<KindScale, 2> scale_{};
  int serving_ = -1;
  int clocks_ = 1;
  int clock_base_ = 2;
  int dim_ = 3;
  bool has_gnss_ = false;
  bool has_cell_ = false;
};

struct SearchResult {
  Params x{};
  double f = -std::numeric_limits<double>::infinity();
  int iterations = 0;
  bool converged = false;
};

// Nelder-Mead maximization with the standard coefficients.
template <typename F>
SearchResult nelder_mead(const F& f, const Params& x0, int n, double step, double tol,
                         int max_iter) {
  std::array<Params, kMaxDim + 1> v{};
  std::array<double, kMaxDim + 1> fv{};
  for (int i = 0; i <= n; ++i) {
    v[i] = x0;
    if (i > 0) v[i][i - 1] += step;
    fv[i] = f(v[i]);
  }
  std::array<int, kMaxDim + 1> order{};
  SearchResult out;
  for (int iter = 0;; ++iter) {
    for (int i = 0; i <= n; ++i) order[i] = i;
    std::sort(order.begin(), order.begin() + n + 1,
              [&](int a, int b) { return fv[a] != fv[b] ? fv[a] > fv[b] : a < b; });
    const int best = order[0];
    const int worst = order[n];
    const int second_worst = order[n - 1];

    double spread = 0.0;
    for (int i = 0; i <= n; ++i)
      for (int k = 0; k < n; ++k) spread = std::max(spread, std::abs(v[i][k] - v[best][k]));
    out.iterations = iter;
    if (spread < tol) {
      out.converged = true;
      break;
    }
    if (iter >= max_iter) break;

    Params centroid{};
    for (int i = 0; i <= n; ++i) {
      if (i == worst) continue;
      for (int k = 0; k < n; ++k) centroid[k] += v[i][k] / n;
    }
    auto along = [&](double t) {
      Params p{};
      for (int k = 0; k < n; ++k) p[k] = centroid[k] + t * (v[worst][k] - centroid[k]);
      return p;
    };
    const Params xr = along(-1.0);
    const double fr = f(xr);
    if (fr > fv[best]) {
      const Params xe = along(-2.0);
      const double fe = f(xe);
      if (fe > fr) {
        v[worst] = xe;
        fv[worst] = fe;
      } else {
        v[worst] = xr;
        fv[worst] = fr;
      }
      continue;
    }
    if (fr > fv[second_worst]) {
      v[worst] = xr;
      fv[worst] = fr;
      continue;
    }
    const bool outside = fr > fv[worst];
    const Params xc = along(outside ? -0.5 : 0.5);
    const double fc = f(xc);
    if (fc > (outside ? fr : fv[worst])) {
      v[worst] = xc;
      fv[worst] = fc;
      continue;
    }
    for (int i = 0; i <= n; ++i) {
      if (i == best) continue;
      for (int k = 0; k < n; ++k) v[i][k] = v[best][k] + 0.5 * (v[i][k] - v[best][k]);
      fv[i] = f(v[i]);
    }
  }
  out.x = v[order[0]];
  out.f = fv[order[0]];
  return out;
}

PositionEstimate to_estimate(const Problem& prob, const Params& p) {
  PositionEstimate est;
  est.position = prob.position(p);
  est.tau = p[prob.clock_base()] / kSpeedOfLight;
  est.tau_gnss = prob.clocks() == 2 ? p[prob.clock_base() + 1] / kSpeedOfLight : est.tau;
  return est;
}

}  // namespace

bool observable(const MeasurementSet& ms, std::span<const Anchor> anchors, SolveMode mode) {
  std::vector<Vec3> positions;
  int satellites = 0;
  auto add = [&](const Measurement& m, Kind kind) {
    if (!m.detected || !selects(mode, kind)) return;
    if (kind == kGnss) ++satellites;
    const Vec3 p = anchor_by_id(anchors, m.anchor_id).position;
    if (std::find(positions.begin(), positions.end(), p) == positions.end()) positions.push_back(p);
  };
  for (const Measurement& m : ms.gnss) add(m, kGnss);
  for (const Measurement& m : ms.cellular) add(m, kCell);
  if (mode == SolveMode::kGnssOnly && satellites < 4) return false;
  return positions.size() >= 4;
}

double map_objective(Vec3 candidate, double tau, const MeasurementSet& ms,
                     std::span<const Anchor> anchors, const AnchorWeightTable& weights,
                     SolveMode mode, double eps_stab) {
  SolverOptions opts;
  opts.eps_stab = eps_stab;
  opts.estimate_z = true;
  const Problem prob(ms, anchors, weights, mode, opts);
  Params p{};
  p[0] = candidate.x;
  p[1] = candidate.y;
  p[2] = candidate.z;
  p[3] = tau * kSpeedOfLight;
  return prob.objective(p);
}

PositionEstimate map_estimate(const MeasurementSet& ms, std::span<const Anchor> anchors,
                              const AnchorWeightTable& weights, SolveMode mode,
                              const SolverOptions& opts) {
  if (!observable(ms, anchors, mode)) throw UnavailableFix("not enough detected anchors");
  Problem prob(ms, anchors, weights, mode, opts);
  const int n = prob.dim();

  std::vector<double> spreads;
  const double floor_sigma = prob.min_used_sigma();
  for (double s = opts.coarse_sigma; s > floor_sigma; s /= 4.0) spreads.push_back(s);
  spreads.push_back(0.0);  // exact sigmas

  prob.set_stage(spreads.front());
  std::vector<Params> starts = prob.grid_starts();
  std::vector<std::pair<double, int>> scored;
  scored.reserve(starts.size());
  for (std::size_t i = 0; i < starts.size(); ++i)
    scored.emplace_back(prob.objective(starts[i]), static_cast<int>(i));
  const int keep = std::min<int>(std::max(1, opts.refine_starts), static_cast<int>(scored.size()));
  std::partial_sort(scored.begin(), scored.begin() + keep, scored.end(),
                    [](const auto& a, const auto& b) {
                      return a.first != b.first ? a.first > b.first : a.second < b.second;
                    });

  auto f = [&prob](const Params& p) { return prob.objective(p); };
  SearchResult best;
  int total_iterations = 0;
  for (int s = 0; s < keep; ++s) {
    Params x = starts[scored[s].second];
    SearchResult r;
    for (std::size_t k = 0; k < spreads.size(); ++k) {
      prob.set_stage(spreads[k]);
      const bool last = k + 1 == spreads.size();
      const double sig = prob.stage_min_sigma();
      const double tol = last ? opts.tolerance : std::max(opts.tolerance, 0.02 * sig);
      r = nelder_mead(f, x, n, sig, tol, opts.max_iterations);
      total_iterations += r.iterations;
      x = r.x;
    }
    if (r.f > best.f) best = r;
  }

  // The least-squares fix as one more start, polished at the exact spreads.
  // Continuation from the grid can settle in a basin pulled toward a
  // co-sited cluster when the anchor set has little redundancy.
  {
    const PositionEstimate ls = least_squares_estimate(ms, anchors, mode, opts, weights);
    Params x{};
    x[0] = ls.position.x;
    x[1] = ls.position.y;
    if (opts.estimate_z) x[2] = ls.position.z;
    x[prob.clock_base()] = ls.tau * kSpeedOfLight;
    if (prob.clocks() == 2) x[prob.clock_base() + 1] = ls.tau_gnss * kSpeedOfLight;
    prob.set_stage(0.0);
    const SearchResult r =
        nelder_mead(f, x, n, prob.stage_min_sigma(), opts.tolerance, opts.max_iterations);
    total_iterations += r.iterations;
    if (r.f > best.f) best = r;
  }

  PositionEstimate est = to_estimate(prob, best.x);
  est.objective_value = best.f;
  est.method = method_for(mode);
  est.converged = best.converged && std::isfinite(best.f);
  est.iterations = total_iterations;
  return est;
}

PositionEstimate least_squares_estimate(const MeasurementSet& ms, std::span<const Anchor> anchors,
                                        SolveMode mode, const SolverOptions& opts,
                                        const AnchorWeightTable& sigmas) {
  if (!observable(ms, anchors, mode)) throw UnavailableFix("not enough detected anchors");
  AnchorWeightTable table = sigmas;
  table.w_gnss = 0.0;
  table.w_cell = 0.0;
  const Problem prob(ms, anchors, table, mode, opts);
  const int n = prob.dim();

  Params x{};
  double best_sse = std::numeric_limits<double>::infinity();
  for (const Params& p : prob.grid_starts()) {
    const double sse = prob.weighted_sse(p);
    if (sse < best_sse) {
      best_sse = sse;
      x = p;
    }
  }

  const auto& terms = prob.terms();
  const double inv_var[2] = {1.0 / std::pow(prob.exact_sigma(kGnss), 2),
                             1.0 / std::pow(prob.exact_sigma(kCell), 2)};
  Eigen::MatrixXd jac(static_cast<Eigen::Index>(terms.size()), n);
  Eigen::VectorXd res(static_cast<Eigen::Index>(terms.size()));
  Eigen::VectorXd sqrt_w(static_cast<Eigen::Index>(terms.size()));

  bool converged = false;
  int iter = 0;
  for (; iter < opts.max_iterations; ++iter) {
    const Vec3 pos = prob.position(x);
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const Term& t = terms[i];
      double d;
      const auto row = static_cast<Eigen::Index>(i);
      res(row) = prob.residual(t, x, &d);
      d = std::max(d, 1e-9);
      jac.row(row).setZero();
      jac(row, 0) = -(pos.x - t.pos.x) / d;
      jac(row, 1) = -(pos.y - t.pos.y) / d;
      if (opts.estimate_z) jac(row, 2) = -(pos.z - t.pos.z) / d;
      jac(row, prob.clock_base() + t.clock) = -1.0;
      sqrt_w(row) = std::sqrt(inv_var[t.kind]);
    }
    const Eigen::MatrixXd wj = sqrt_w.asDiagonal() * jac;
    const Eigen::VectorXd wr = sqrt_w.cwiseProduct(res);
    const Eigen::VectorXd delta = wj.colPivHouseholderQr().solve(-wr);

    // Backtrack on the weighted SSE so a bad linearization cannot diverge.
    const double sse0 = prob.weighted_sse(x);
    double scale = 1.0;
    Params trial = x;
    bool improved = false;
    for (int h = 0; h < 20; ++h, scale *= 0.5) {
      for (int k = 0; k < n; ++k) trial[k] = x[k] + scale * delta(k);
      if (prob.weighted_sse(trial) <= sse0) {
        improved = true;
        break;
      }
    }
    const double step = scale * delta.lpNorm<Eigen::Infinity>();
    if (improved) x = trial;
    if (!improved || step < opts.tolerance) {
      converged = improved || step < opts.tolerance;
      break;
    }
  }

  PositionEstimate est = to_estimate(prob, x);
  est.objective_value = prob.weighted_sse(x);
  est.method = EstimateMethod::kLeastSquares;
  est.converged = converged;
  est.iterations = iter;
  return est;
}

}  // namespace v2xloc
