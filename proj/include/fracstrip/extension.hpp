#pragma once
// Mollification extensions: lift boundary data into the strip as smooth bulk
// functions with prescribed traces.  The flat operator averages the data over
// lateral balls whose radius equals the height above the boundary; the graph
// variant shrinks the radius so the sample stencil stays inside the domain.
// Also here: the cutoff used to localise one-sided extensions, the two-sided
// construction matching both traces of a flat strip, the hypothesis
// functional controlling the two-sided seminorm, and sampled checks of the
// lateral/vertical increment inequalities behind the trace estimates.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fracstrip/catalog.hpp"
#include "fracstrip/core.hpp"
#include "fracstrip/domain.hpp"
#include "fracstrip/params.hpp"
#include "fracstrip/quadrature.hpp"
#include "fracstrip/seminorms.hpp"

namespace fracstrip {

// ---------------------------------------------------------------------------
// Mollifier: fixed midpoint rule for the standard bump exp(-1/(1-|w|^2)) on
// the unit ball of R^d, d in {1,2}.  The rule normalises by its own mass, so
// the average of a constant is that constant exactly: discrete traces at the
// boundary reproduce the data to rounding rather than to quadrature error.
// ---------------------------------------------------------------------------
struct Mollifier {
  int dim = 1;                      // boundary dimension N-1
  int points_per_axis = 31;
  std::vector<Vec> nodes;           // rule nodes strictly inside the ball
  std::vector<double> weights;      // cell volume * bump(node)
  double mass = 0.0;                // sum of weights

  static Mollifier standard(int dim, int points_per_axis = 31) {
    if (dim != 1 && dim != 2)
      throw std::invalid_argument("Mollifier: dim must be 1 or 2");
    if (points_per_axis < 5)
      throw std::invalid_argument("Mollifier: points_per_axis >= 5");
    Mollifier m;
    m.dim = dim;
    m.points_per_axis = points_per_axis;
    const int n = points_per_axis;
    const double h = 2.0 / n;
    const double cell = (dim == 1) ? h : h * h;
    const int n2 = (dim == 1) ? 1 : n;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n2; ++j) {
        Vec w{0.0, 0.0, 0.0};
        w[0] = -1.0 + (i + 0.5) * h;
        if (dim == 2) w[1] = -1.0 + (j + 0.5) * h;
        const double r2 = w[0] * w[0] + w[1] * w[1];
        if (r2 >= 1.0) continue;
        const double phi = std::exp(-1.0 / (1.0 - r2));
        m.nodes.push_back(w);
        m.weights.push_back(cell * phi);
        m.mass += cell * phi;
      }
    }
    return m;
  }

  // Self-normalised average of g over the ball of the given radius about
  // center (only the first `dim` coordinates of center are shifted).
  double average(const std::function<double(const Vec&)>& g, const Vec& center,
                 double radius) const {
    if (radius <= 0.0) return g(center);
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      Vec y = center;
      y[0] += radius * nodes[i][0];
      if (dim == 2) y[1] += radius * nodes[i][1];
      acc += weights[i] * g(y);
    }
    return acc / mass;
  }

  // Relative gap between this rule's mass and a finer rule of the same
  // family; a proxy for the accuracy of the discrete averages.
  double normalization_error(int reference_points = 301) const {
    const Mollifier ref = standard(dim, reference_points);
    return std::abs(mass / ref.mass - 1.0);
  }
};

// ---------------------------------------------------------------------------
// Cutoff: decreasing quintic smoothstep.  psi(0) = 1, psi(t >= 1) = 0,
// monotone non-increasing with |psi'| <= 1.875, and flat to second order at
// both ends so it does not degrade the trace approximation order.
// ---------------------------------------------------------------------------
struct Cutoff {
  double operator()(double t) const {
    if (t <= 0.0) return 1.0;
    if (t >= 1.0) return 0.0;
    const double q = 1.0 - t;
    return q * q * q * (10.0 + q * (6.0 * q - 15.0));
  }
  static constexpr double slope_bound() { return 1.875; }
};

// ---------------------------------------------------------------------------
// one-sided extensions
// ---------------------------------------------------------------------------

// Flat strip: u(x', x_N) = average of g over the lateral ball of radius x_N.
// The trace at x_N = 0 is exact; interior values are smooth in both
// variables.  Boundary data backed by grids continues by its edge values
// outside the grid box (the interpolant clamps), which matters only when the
// lateral box of the domain exceeds the data window.
inline BulkFunction extend_flat(const BoundaryFunction& g, const StripDomain& dom,
                                const Mollifier& phi, const SeminormParams& params) {
  params.require_trace_regime();
  if (dom.shape != StripDomain::Shape::flat)
    throw std::invalid_argument("extend_flat needs a flat domain");
  if (g.dim != dom.boundary_dim() || phi.dim != g.dim)
    throw std::invalid_argument("extend_flat: dimension mismatch");
  BulkFunction u;
  u.name = g.name + "|extended";
  u.domain = dom;
  const int N = dom.space_dim;
  u.eval = [g, phi, N](const Vec& x) {
    const double xn = x[N - 1];
    return phi.average(g.eval, x, std::max(xn, 0.0));
  };
  return u;
}

// Graph strip {0 < x_N < eta(x')}: same averaging with sampling radius
// x_N / 8.  With Lip(eta) <= 1 the stencil stays well inside the strip for
// points below the graph.  The trace at the flat side x_N = 0 is exact.
inline BulkFunction extend_general(const BoundaryFunction& g, const StripDomain& dom,
                                   const Mollifier& phi, const SeminormParams& params) {
  params.require_trace_regime();
  if (dom.shape != StripDomain::Shape::graph)
    throw std::invalid_argument("extend_general needs a graph domain");
  if (g.dim != dom.boundary_dim() || phi.dim != g.dim)
    throw std::invalid_argument("extend_general: dimension mismatch");
  if (dom.profile.lip_bound() > 1.0)
    throw std::invalid_argument("extend_general: profile Lipschitz bound must be <= 1");
  BulkFunction u;
  u.name = g.name + "|extended";
  u.domain = dom;
  const int N = dom.space_dim;
  u.eval = [g, phi, N](const Vec& x) {
    const double xn = x[N - 1];
    return phi.average(g.eval, x, std::max(xn, 0.0) / 8.0);
  };
  return u;
}

// ---------------------------------------------------------------------------
// cutoff localisation: u = psi(x_N / eta(x')) * u0 vanishes at the graph and
// keeps the bottom trace of u0.  The seminorm estimate for the product needs
// the weighted integrability of the boundary data, reported alongside.  With
// `cap` set, the screen becomes min(cap, eta): the cutoff then also vanishes
// past the fixed height cap (the nonhomogeneous variant).
// ---------------------------------------------------------------------------
struct CutoffExtension {
  BulkFunction u;
  double hypothesis_value = 0.0;  // integral of |g|^p eta^{1-sp} over the box
  bool capped = false;
};

inline CutoffExtension cutoff_one_side(const BulkFunction& u0, const BoundaryFunction& g,
                                       const StripDomain& dom, const Cutoff& psi,
                                       const SeminormParams& params,
                                       std::optional<double> cap = std::nullopt,
                                       int hypothesis_cells = 4096) {
  params.require_trace_regime();
  if (dom.shape != StripDomain::Shape::graph)
    throw std::invalid_argument("cutoff_one_side needs a graph domain");
  if (cap && !(*cap > 0.0))
    throw std::invalid_argument("cutoff_one_side: cap must be positive");
  const int N = dom.space_dim;
  CutoffExtension out;
  out.capped = cap.has_value();
  out.u.name = u0.name + "|cut";
  out.u.domain = dom;
  const LipschitzProfile eta = dom.profile;
  const double capv = cap.value_or(0.0);
  const bool has_cap = cap.has_value();
  out.u.eval = [u0, psi, eta, capv, has_cap, N](const Vec& x) {
    double sc = eta(x);
    if (has_cap) sc = std::min(capv, sc);
    const double t = x[N - 1] / sc;
    if (t >= 1.0) return 0.0;
    return psi(t) * u0.eval(x);
  };

  // hypothesis: midpoint rule over the lateral box with the data kinks
  // inserted as cell edges
  const Box lat = dom.lateral;
  const double p = params.p, sp = params.sp();
  const auto edges = detail::uniform_edges(lat.lo[0], lat.hi[0], hypothesis_cells,
                                           g.breakpoints);
  out.hypothesis_value = detail::midpoint_cells(edges, [&](double x) {
    const Vec xv = vec1(x);
    return std::pow(std::abs(g(xv)), p) * std::pow(eta(xv), 1.0 - sp);
  });
  return out;
}

// ---------------------------------------------------------------------------
// two-sided flat extension.  Build u- from the bottom data, measure the
// mismatch h = f+ - u-(., b) at the top, extend h downward from the top with
// a cutoff that kills it at the bottom, and add the pieces:
//   u(x) = psi((b - x_N)/b) * u_h(x', b - x_N) + u-(x).
// At x_N = b the cutoff equals one and u_h has zero offset, so the trace is
// u-(., b) + h = f+ exactly; at x_N = 0 the cutoff vanishes and the trace is
// f-.  The map (f+, f-) -> u is linear because every stage is.
// ---------------------------------------------------------------------------
inline BulkFunction extend_two_sided_flat(const BoundaryFunction& fplus,
                                          const BoundaryFunction& fminus,
                                          const StripDomain& dom, const Mollifier& phi,
                                          const Cutoff& psi, const SeminormParams& params) {
  params.require_trace_regime();
  if (dom.shape != StripDomain::Shape::flat)
    throw std::invalid_argument("extend_two_sided_flat needs a flat domain");
  if (fplus.dim != dom.boundary_dim() || fminus.dim != dom.boundary_dim())
    throw std::invalid_argument("extend_two_sided_flat: dimension mismatch");
  const BulkFunction uminus = extend_flat(fminus, dom, phi, params);
  const double b = dom.height;
  const int N = dom.space_dim;

  BoundaryFunction h;
  h.name = fplus.name + "-" + fminus.name + "|mismatch";
  h.dim = fplus.dim;
  h.breakpoints = fplus.breakpoints;
  h.breakpoints.insert(h.breakpoints.end(), fminus.breakpoints.begin(),
                       fminus.breakpoints.end());
  h.eval = [fplus, uminus, b, N](const Vec& xp) {
    Vec x = xp;
    x[N - 1] = b;
    return fplus.eval(xp) - uminus.eval(x);
  };
  const BulkFunction uh = extend_flat(h, dom, phi, params);

  BulkFunction u;
  u.name = fplus.name + "/" + fminus.name + "|two-sided";
  u.domain = dom;
  u.eval = [uh, uminus, psi, b, N](const Vec& x) {
    const double xn = x[N - 1];
    Vec flip = x;
    flip[N - 1] = b - xn;
    return psi((b - xn) / b) * uh.eval(flip) + uminus.eval(x);
  };
  return u;
}

// ---------------------------------------------------------------------------
// hypothesis functional for the two-sided bound: the L^p distance between the
// traces plus the close (order s-1/p) and far (order s+1/p) seminorms of both
// data at screen b.  All five pieces are computed over the same lateral box
// (inner range clipped to it) so the sum is a coherent finite functional for
// any catalog data.  seminorm_sum() is the unpowered right-hand side the bulk
// seminorm of the extension is compared against.
// ---------------------------------------------------------------------------
struct ExtensionHypothesis {
  double lp_difference_p = 0.0;  // integral of |f+ - f-|^p
  double close_plus_p = 0.0;
  double close_minus_p = 0.0;
  double far_plus_p = 0.0;
  double far_minus_p = 0.0;

  double seminorm_sum(double p) const {
    const auto root = [p](double v) { return std::pow(std::max(v, 0.0), 1.0 / p); };
    return root(lp_difference_p) + root(close_plus_p) + root(close_minus_p) +
           root(far_plus_p) + root(far_minus_p);
  }
};

inline ExtensionHypothesis extension_hypothesis_flat(const CatalogEntry& fplus,
                                                     const CatalogEntry& fminus,
                                                     const SeminormParams& params,
                                                     const StripDomain& dom,
                                                     SeminormOptions opt = {}) {
  params.require_trace_regime();
  if (dom.shape != StripDomain::Shape::flat)
    throw std::invalid_argument("extension_hypothesis_flat needs a flat domain");
  if (dom.boundary_dim() != 1)
    throw std::invalid_argument("extension_hypothesis_flat implemented for N=2");
  if (opt.inner == InnerExtent::automatic) opt.inner = InnerExtent::domain_box;
  const Box lat = dom.lateral;
  const Screen screen = Screen::constant(dom.height);
  const double p = params.p;

  ExtensionHypothesis out;
  std::vector<double> bp = fplus.fn.breakpoints;
  bp.insert(bp.end(), fminus.fn.breakpoints.begin(), fminus.fn.breakpoints.end());
  const auto edges = detail::uniform_edges(lat.lo[0], lat.hi[0], 4096, bp);
  out.lp_difference_p = detail::midpoint_cells(edges, [&](double x) {
    const Vec xv = vec1(x);
    return std::pow(std::abs(fplus.fn(xv) - fminus.fn(xv)), p);
  });
  out.close_plus_p = close_screened(fplus, screen, params, lat, opt).value_p;
  out.close_minus_p = close_screened(fminus, screen, params, lat, opt).value_p;
  out.far_plus_p = far_screened(fplus, screen, params, lat, opt).value_p;
  out.far_minus_p = far_screened(fminus, screen, params, lat, opt).value_p;
  return out;
}

// ---------------------------------------------------------------------------
// trace accuracy: sup over a lateral sample grid of |u(., delta) - f| (or the
// mirrored height for the top side), at delta and delta/2.  order is the
// observed log2 decay rate; the averaging rule is even, so smooth data gives
// order close to 2.
// ---------------------------------------------------------------------------
enum class TraceSide { bottom, top };

struct TraceOrderReport {
  double err_coarse = 0.0;
  double err_fine = 0.0;
  double order = 0.0;
};

inline TraceOrderReport trace_order(const BulkFunction& u, const BoundaryFunction& f,
                                    const StripDomain& dom, TraceSide side, double delta,
                                    int samples = 513) {
  if (dom.boundary_dim() != 1)
    throw std::invalid_argument("trace_order implemented for N=2");
  if (side == TraceSide::top && dom.shape != StripDomain::Shape::flat)
    throw std::invalid_argument("trace_order: top side needs a flat domain");
  if (!(delta > 0.0)) throw std::invalid_argument("trace_order: delta must be positive");
  const Box lat = dom.lateral;
  const auto sup_err = [&](double d) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
      const double x = lat.lo[0] + lat.extent(0) * i / (samples - 1);
      const double xn = (side == TraceSide::bottom) ? d : dom.height - d;
      worst = std::max(worst, std::abs(u(x, xn) - f(x)));
    }
    return worst;
  };
  TraceOrderReport r;
  r.err_coarse = sup_err(delta);
  r.err_fine = sup_err(delta / 2.0);
  if (r.err_fine <= 1e-14 && r.err_coarse <= 1e-14)
    r.order = std::numeric_limits<double>::infinity();
  else
    r.order = std::log2(std::max(r.err_coarse, 1e-300) / std::max(r.err_fine, 1e-300));
  return r;
}

// ---------------------------------------------------------------------------
// lateral increment inequality.  For the flat extension u of g and any
// lateral shift h at height x_N,
//   |u(x',x_N) - u(x'+h,x_N)|^p
//     <= C (|h|^{p-1} / x_N^{p+N-1}) *
//        int_0^{|h|} int_{B(x'+r e_h, x_N)} |g(y) - g(x'+r e_h)|^p dy dr
// with e_h the direction of h.  The check evaluates both sides on a sample
// set and records the worst ratio; samples whose right side is below floor
// must have left side below floor as well.
// ---------------------------------------------------------------------------
struct LateralSample {
  double xp = 0.0;
  double h = 0.0;
  double xn = 0.0;
};

inline std::vector<LateralSample> lateral_samples(std::uint64_t seed, int count,
                                                  const Box& lateral, double height) {
  if (lateral.dim != 1) throw std::invalid_argument("lateral_samples: 1-D boundary only");
  DetRng rng(seed);
  std::vector<LateralSample> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    LateralSample s;
    s.xp = lateral.lo[0] + lateral.extent(0) * rng.uniform();
    s.h = (2.0 * rng.uniform() - 1.0);
    s.xn = height * (0.05 + 0.95 * rng.uniform());
    if (std::abs(s.h) < 0.05) continue;  // keep the shift bounded away from zero
    out.push_back(s);
  }
  return out;
}

struct BoundCheckReport {
  int samples = 0;
  int degenerate = 0;     // right side below floor on both sides
  double max_ratio = 0.0;
  int violations = 0;     // ratios above the supplied budget
};

inline BoundCheckReport lateral_bound_check(const BulkFunction& u, const BoundaryFunction& g,
                                            const std::vector<LateralSample>& samples,
                                            const SeminormParams& params,
                                            std::optional<double> budget = std::nullopt,
                                            int grid_cells = 96) {
  params.require_trace_regime();
  if (g.dim != 1) throw std::invalid_argument("lateral_bound_check implemented for N=2");
  const double p = params.p;
  const double floor = 1e-13;
  BoundCheckReport rep;
  rep.samples = static_cast<int>(samples.size());
  for (const auto& s : samples) {
    const double lhs = std::pow(std::abs(u(s.xp, s.xn) - u(s.xp + s.h, s.xn)), p);
    const double ah = std::abs(s.h);
    const double dir = (s.h >= 0.0) ? 1.0 : -1.0;
    // midpoint rule in (r, y); the integrand is smooth for smooth data
    double inner = 0.0;
    for (int i = 0; i < grid_cells; ++i) {
      const double r = ah * (i + 0.5) / grid_cells;
      const double c = s.xp + dir * r;
      const double gc = g(c);
      double along = 0.0;
      for (int j = 0; j < grid_cells; ++j) {
        const double y = c - s.xn + 2.0 * s.xn * (j + 0.5) / grid_cells;
        along += std::pow(std::abs(g(y) - gc), p);
      }
      inner += along * (2.0 * s.xn / grid_cells);
    }
    inner *= ah / grid_cells;
    const double rhs = std::pow(ah, p - 1.0) / std::pow(s.xn, p + 1.0) * inner;
    if (rhs < floor) {
      ++rep.degenerate;
      if (lhs > floor) ++rep.violations;
      continue;
    }
    const double ratio = lhs / rhs;
    rep.max_ratio = std::max(rep.max_ratio, ratio);
    if (budget && ratio > *budget) ++rep.violations;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// vertical increment inequality for a function of the height alone:
//   int_0^b int_0^b |u(x+t) - u(x)|^p t^{-1-sp} dt dx
//     <= C int_0^{2b} y^{p-sp} |u'(y)|^p dy.
// The left side needs u on (0, 2b).  The t-integral is graded toward zero;
// the integrand there behaves like t^{p-1-sp} and is integrable in the trace
// regime.
// ---------------------------------------------------------------------------
struct VerticalBoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;  // lhs / rhs
};

inline VerticalBoundReport vertical_bound_check(const std::function<double(double)>& u,
                                                const std::function<double(double)>& du,
                                                double b, const SeminormParams& params,
                                                int outer_cells = 256) {
  params.require_trace_regime();
  if (!(b > 0.0)) throw std::invalid_argument("vertical_bound_check: b must be positive");
  const double p = params.p, sp = params.sp();
  const auto tedges = detail::graded_edges(0.0, b, 16, 48, true, {});
  VerticalBoundReport rep;
  rep.lhs = deterministic_sum(
      static_cast<std::size_t>(outer_cells),
      [&](std::size_t i) {
        const double x = b * (static_cast<double>(i) + 0.5) / outer_cells;
        const double ux = u(x);
        double acc = 0.0;
        for (std::size_t k = 0; k + 1 < tedges.size(); ++k) {
          const double t = 0.5 * (tedges[k] + tedges[k + 1]);
          acc += std::pow(std::abs(u(x + t) - ux), p) * std::pow(t, -1.0 - sp) *
                 (tedges[k + 1] - tedges[k]);
        }
        return acc * (b / outer_cells);
      },
      resolve_threads(), 4);

  const int rhs_cells = 4096;
  rep.rhs = deterministic_sum(
      static_cast<std::size_t>(rhs_cells),
      [&](std::size_t i) {
        const double y = 2.0 * b * (static_cast<double>(i) + 0.5) / rhs_cells;
        return std::pow(y, p - sp) * std::pow(std::abs(du(y)), p) * (2.0 * b / rhs_cells);
      },
      resolve_threads(), 256);
  rep.ratio = (rep.rhs > 0.0) ? rep.lhs / rep.rhs
                              : (rep.lhs > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
  return rep;
}

// convenience overload: derivative by central differences
inline VerticalBoundReport vertical_bound_check(const std::function<double(double)>& u,
                                                double b, const SeminormParams& params,
                                                int outer_cells = 256) {
  const double eps = 1e-6 * b;
  auto du = [u, eps](double y) { return (u(y + eps) - u(y - eps)) / (2.0 * eps); };
  return vertical_bound_check(u, du, b, params, outer_cells);
}

}  // namespace fracstrip
