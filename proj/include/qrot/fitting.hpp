#pragma once

// Branch-line reduction to band levels, least-squares fits of the six
// spectrum models, and the band quality measure
//   sigma = sqrt(2/l_max sum (E_exp - E_th)^2).
//
// The optimizer is deterministic: a fixed logarithmic multi-start grid over
// the nonlinear parameter, Nelder-Mead refinement with restarts, and a
// quadratic-model polish, so a fit is a pure function of (model, dataset).

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qrot/spectra.hpp"

namespace qrot {

enum class Branch { R, P };
enum class Band { v0, v1 };

// One rotational line: branch, lower-state ell, line position in cm^-1.
struct BranchLine {
  Branch branch = Branch::R;
  int ell = 0;
  double wavenumber = 0.0;
};

// Band levels (ell, E) in cm^-1, referenced so the extrapolated ell = 0
// level sits at zero.
struct LevelDataset {
  std::string band;
  std::vector<std::pair<int, double>> levels;
};

struct FitResult {
  ModelKind kind = ModelKind::I;
  ModelParams params;
  double sigma = 0.0;
  std::vector<std::pair<int, double>> residuals;  // (ell, E_exp - E_th)
  int iterations = 0;
  bool converged = false;
};

class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline const char* branch_name(Branch b) { return b == Branch::R ? "R" : "P"; }

inline double lookup_line(const std::vector<BranchLine>& lines, Branch b,
                          int ell, bool& found) {
  found = false;
  double value = 0.0;
  for (const auto& ln : lines) {
    if (ln.branch == b && ln.ell == ell) {
      if (found)
        throw DataError("duplicate " + std::string(branch_name(b)) + "(" +
                        std::to_string(ell) + ") line");
      found = true;
      value = ln.wavenumber;
    }
  }
  return value;
}

}  // namespace detail

// Chain R/P combination differences into absolute level energies with the
// bandhead at zero.  For v = 0 the usable combination is
// R(l) - P(l+2) = E(l+2) - E(l), walked over l = 0, 2, 4, ...; for v = 1 it
// is R(l) - P(l) = E(l+1) - E(l-1), walked over odd l.  The walk stops at
// the first l where both lines of the next difference are absent; a single
// missing line is reported as a gap.
inline LevelDataset reduce_branches(const std::vector<BranchLine>& lines,
                                    Band band) {
  for (const auto& ln : lines) {
    if (!(ln.wavenumber > 0.0))
      throw DataError("line positions must be positive");
    if (ln.ell < 0 || (ln.branch == Branch::P && ln.ell < 1))
      throw DataError("branch line has an invalid ell");
  }
  LevelDataset out;
  out.band = band == Band::v0 ? "v=0" : "v=1";
  double energy = 0.0;
  const int start = band == Band::v0 ? 0 : 1;
  int l = start;
  for (;; l += 2) {
    const int lo_ell = band == Band::v0 ? l + 2 : l;
    bool have_r = false, have_p = false;
    const double r = detail::lookup_line(lines, Branch::R, l, have_r);
    const double p = detail::lookup_line(lines, Branch::P, lo_ell, have_p);
    if (!have_r && !have_p) break;
    if (!have_r)
      throw DataError("missing R(" + std::to_string(l) +
                      ") line needed for the next level");
    if (!have_p)
      throw DataError("missing P(" + std::to_string(lo_ell) +
                      ") line needed for the next level");
    const double spacing = r - p;
    if (!(spacing > 0.0))
      throw DataError("non-positive inferred level spacing at ell = " +
                      std::to_string(l));
    const int new_ell = band == Band::v0 ? l + 2 : l + 1;
    energy += spacing;
    out.levels.emplace_back(new_ell, energy);
  }
  // The walk must consume the band, not stop short of it: usable lines of
  // the right parity beyond the stopping point mean a two-line gap.
  for (const auto& ln : lines) {
    const bool continues =
        (ln.branch == Branch::R && ln.ell >= l &&
         (ln.ell - l) % 2 == 0) ||
        (ln.branch == Branch::P &&
         ln.ell >= (band == Band::v0 ? l + 2 : l) &&
         (ln.ell - l) % 2 == 0);
    if (continues)
      throw DataError("missing R(" + std::to_string(l) + ") line: the " +
                      out.band + " combination chain stops at ell = " +
                      std::to_string(l) + " but lines continue beyond it");
  }
  return out;
}

// sigma = sqrt((2/l_max) sum (E_exp - E_th)^2) over the dataset's levels.
inline double quality_sigma(const LevelDataset& data,
                            const std::vector<double>& model_energies) {
  if (data.levels.empty())
    throw std::domain_error("quality_sigma: empty dataset");
  if (model_energies.size() != data.levels.size())
    throw std::invalid_argument("quality_sigma: length mismatch");
  const int ell_max = data.levels.back().first;
  double ss = 0.0;
  for (std::size_t i = 0; i < data.levels.size(); ++i) {
    const double r = data.levels[i].second - model_energies[i];
    ss += r * r;
  }
  return std::sqrt(2.0 / ell_max * ss);
}

namespace detail {

struct NmOutcome {
  std::array<double, 2> u{};
  double f = 0.0;
  int iterations = 0;
  bool converged = false;
};

// Plain 2-d Nelder-Mead on the unit-scaled parameter vector.
inline NmOutcome nelder_mead(const std::function<double(double, double)>& f,
                             std::array<double, 2> u0, double step,
                             int max_iter) {
  using V = std::array<double, 2>;
  std::array<V, 3> v{V{u0[0], u0[1]},
                     V{u0[0] + step, u0[1]},
                     V{u0[0], u0[1] + step}};
  std::array<double, 3> fv{};
  for (int i = 0; i < 3; ++i) fv[i] = f(v[i][0], v[i][1]);
  int iter = 0;
  bool converged = false;
  auto order = [&] {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(),
              [&](int a, int b) { return fv[a] < fv[b]; });
    std::array<V, 3> vs;
    std::array<double, 3> fs;
    for (int i = 0; i < 3; ++i) {
      vs[i] = v[idx[i]];
      fs[i] = fv[idx[i]];
    }
    v = vs;
    fv = fs;
  };
  for (; iter < max_iter; ++iter) {
    order();
    const double spread =
        std::max(std::max(std::abs(v[1][0] - v[0][0]),
                          std::abs(v[2][0] - v[0][0])),
                 std::max(std::abs(v[1][1] - v[0][1]),
                          std::abs(v[2][1] - v[0][1])));
    const double scale =
        std::max({1e-12, std::abs(v[0][0]), std::abs(v[0][1])});
    if (spread <= 1e-14 * scale) {
      converged = true;
      break;
    }
    const V c{0.5 * (v[0][0] + v[1][0]), 0.5 * (v[0][1] + v[1][1])};
    auto lerp = [&](double t) {
      return V{c[0] + t * (v[2][0] - c[0]), c[1] + t * (v[2][1] - c[1])};
    };
    const V xr = lerp(-1.0);
    const double fr = f(xr[0], xr[1]);
    if (fr < fv[0]) {
      const V xe = lerp(-2.0);
      const double fe = f(xe[0], xe[1]);
      if (fe < fr) {
        v[2] = xe;
        fv[2] = fe;
      } else {
        v[2] = xr;
        fv[2] = fr;
      }
    } else if (fr < fv[1]) {
      v[2] = xr;
      fv[2] = fr;
    } else {
      const V xc = lerp(fr < fv[2] ? -0.5 : 0.5);
      const double fc = f(xc[0], xc[1]);
      if (fc < std::min(fr, fv[2])) {
        v[2] = xc;
        fv[2] = fc;
      } else {
        for (int i = 1; i < 3; ++i) {
          v[i] = V{v[0][0] + 0.5 * (v[i][0] - v[0][0]),
                   v[0][1] + 0.5 * (v[i][1] - v[0][1])};
          fv[i] = f(v[i][0], v[i][1]);
        }
      }
    }
  }
  order();
  return {v[0], fv[0], iter, converged};
}

// Quadratic-model polish.  Fits a local quadratic through a fixed 6-point
// stencil (function values only) and jumps to its minimum.  The stencil
// spacing sits far above the roundoff plateau of a sum-of-squares
// objective, so the step recovers the analytic minimizer to a precision the
// simplex search cannot resolve.
inline void quadratic_polish(const std::function<double(double, double)>& f,
                             NmOutcome& best) {
  for (double h : {1e-4, 1e-5, 1e-6, 1e-6}) {
    const double u0 = best.u[0], u1 = best.u[1];
    const double f0 = f(u0, u1);
    const double fpx = f(u0 + h, u1), fmx = f(u0 - h, u1);
    const double fpy = f(u0, u1 + h), fmy = f(u0, u1 - h);
    const double fxy = f(u0 + h, u1 + h);
    best.iterations += 7;
    if (!std::isfinite(fpx) || !std::isfinite(fmx) || !std::isfinite(fpy) ||
        !std::isfinite(fmy) || !std::isfinite(fxy))
      continue;
    const double gx = (fpx - fmx) / (2 * h);
    const double gy = (fpy - fmy) / (2 * h);
    const double hxx = (fpx - 2 * f0 + fmx) / (h * h);
    const double hyy = (fpy - 2 * f0 + fmy) / (h * h);
    const double hxy = (fxy - fpx - fpy + f0) / (h * h);
    const double det = hxx * hyy - hxy * hxy;
    if (!(det > 0.0) || !(hxx > 0.0)) continue;
    double dx = -(hyy * gx - hxy * gy) / det;
    double dy = -(hxx * gy - hxy * gx) / det;
    const double clip = 100 * h;
    dx = std::clamp(dx, -clip, clip);
    dy = std::clamp(dy, -clip, clip);
    const double fn = f(u0 + dx, u1 + dy);
    best.iterations += 1;
    if (fn <= best.f) {
      best.u = {u0 + dx, u1 + dy};
      best.f = fn;
    }
  }
}

// Refinement: Nelder-Mead restarted at the incumbent over a fixed ladder of
// shrinking simplex steps, then the quadratic polish.
inline NmOutcome refine(const std::function<double(double, double)>& f,
                        std::array<double, 2> u0) {
  NmOutcome best = nelder_mead(f, u0, 0.25, 8000);
  int total = best.iterations;
  bool converged = best.converged;
  for (double step : {1e-2, 1e-4, 1e-6}) {
    NmOutcome next = nelder_mead(f, best.u, step, 8000);
    total += next.iterations;
    if (next.f <= best.f) {
      converged = next.converged;
      best = next;
    }
  }
  best.iterations = total;
  best.converged = converged;
  quadratic_polish(f, best);
  return best;
}

inline ModelParams make_params(ModelKind kind, double p0, double p1) {
  if (is_deformed(kind)) return DeformedParams{p0, p1};
  if (kind == ModelKind::III) return RotorExpansionParams{p0, p1, 0.0, 0.0};
  return HolmbergLipasParams{p0, p1};
}

}  // namespace detail

// Least-squares fit of a two-parameter model.  Deterministic: tau (or b) is
// seeded from a fixed 25-point logarithmic grid over [1e-4, 2e-1] with the
// scale parameter seeded from the lowest level, then refined.
inline FitResult fit(ModelKind kind, const LevelDataset& data) {
  if (data.levels.size() < 3)
    throw std::domain_error("fit: need at least 3 levels for 2 parameters");
  const int ell1 = data.levels.front().first;
  const double e1 = data.levels.front().second;
  if (!(e1 > 0.0) || ell1 < 1)
    throw std::domain_error("fit: lowest level must have ell >= 1 and E > 0");
  const double a_seed = e1 / (static_cast<double>(ell1) * (ell1 + 1));

  // objective in unit-scaled coordinates: params = (s0 u0, s1 u1)
  auto objective = [&](ModelKind k, double s0, double s1) {
    return [&, k, s0, s1](double u0, double u1) {
      const double p0 = s0 * u0;
      const double p1 = s1 * u1;
      if (!(p0 > 0.0)) return std::numeric_limits<double>::infinity();
      if (is_deformed(k) && !(p1 > 0.0))
        return std::numeric_limits<double>::infinity();
      double ss = 0.0;
      const ModelParams mp = detail::make_params(k, p0, p1);
      try {
        for (const auto& [ell, e] : data.levels) {
          const double r = e - energy(k, mp, ell);
          ss += r * r;
        }
      } catch (const std::domain_error&) {
        return std::numeric_limits<double>::infinity();
      }
      return ss;
    };
  };

  constexpr int kGridPoints = 25;
  std::vector<std::array<double, 2>> scales;  // (s0, s1) per start
  if (kind == ModelKind::III) {
    const double x_max = static_cast<double>(data.levels.back().first) *
                         (data.levels.back().first + 1);
    scales.push_back({a_seed, a_seed / x_max});
  } else {
    for (int j = 0; j < kGridPoints; ++j) {
      const double t = 1e-4 * std::pow(2e3, j / double(kGridPoints - 1));
      if (kind == ModelKind::IV)
        scales.push_back({2.0 * a_seed / t, t});
      else
        scales.push_back({a_seed, t});
    }
  }

  detail::NmOutcome best;
  std::array<double, 2> best_scale{};
  best.f = std::numeric_limits<double>::infinity();
  int total_iterations = 0;
  for (const auto& s : scales) {
    auto f = objective(kind, s[0], s[1]);
    // model III starts from B = 0; the others from the grid point itself
    const std::array<double, 2> u0 =
        kind == ModelKind::III ? std::array<double, 2>{1.0, 0.0}
                               : std::array<double, 2>{1.0, 1.0};
    detail::NmOutcome out = detail::refine(f, u0);
    total_iterations += out.iterations;
    if (out.f < best.f) {
      best = out;
      best_scale = s;
    }
  }

  FitResult result;
  result.kind = kind;
  result.params = detail::make_params(kind, best_scale[0] * best.u[0],
                                      best_scale[1] * best.u[1]);
  result.iterations = total_iterations;
  result.converged = best.converged;
  std::vector<double> th;
  th.reserve(data.levels.size());
  for (const auto& [ell, e] : data.levels) {
    const double v = energy(kind, result.params, ell);
    th.push_back(v);
    result.residuals.emplace_back(ell, e - v);
  }
  result.sigma = quality_sigma(data, th);
  return result;
}

}  // namespace qrot
