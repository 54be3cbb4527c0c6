#pragma once
// Seminorms and trace-side functionals on strip-like domains.
//
// Exponent bookkeeping (the main hazard: three related orders s, s-1/p,
// s+1/p appear side by side):
//   bulk Gagliardo            kernel ||x-y||^-(N+sp)      over Omega x Omega
//   boundary Gagliardo        kernel ||.||^-(N-1+sigma p) on R^{N-1}, order sigma
//   close screened (s-1/p)    kernel ||.||^-(N-2+sp), region ||x'-y'|| < screen(x')
//   far screened   (s+1/p)    kernel ||.||^-(N+sp), region >= screen(x'),
//                             weight screen(x')*screen(y')
// Every function takes the exponent explicitly overridable via options; the
// named wrappers pin the defaults above.
//
// Truncation: outer integrals run over the given box. Inner integrals are
// unbounded by default for far/gagliardo on R^{N-1} (catalog decay metadata
// supplies analytic tails) and can be restricted to the box to get the honest
// bounded-domain seminorm (InnerExtent::domain_box).

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracstrip/catalog.hpp"
#include "fracstrip/core.hpp"
#include "fracstrip/domain.hpp"
#include "fracstrip/params.hpp"
#include "fracstrip/quadrature.hpp"
#include "fracstrip/report.hpp"

namespace fracstrip {

// ---------------------------------------------------------------------------
// Screen: a positive screening radius, constant b or a Lipschitz profile
// (optionally divided, e.g. eta/2 in the general slice functionals).
// ---------------------------------------------------------------------------
struct Screen {
  std::function<double(const Vec&)> fn;
  bool is_constant = true;
  double value = 0.0;  // constant case
  double lip = 0.0;    // Lipschitz bound of the screen itself

  static Screen constant(double b) {
    if (!(b > 0.0)) throw std::domain_error("Screen: must be positive");
    Screen s;
    s.is_constant = true;
    s.value = b;
    s.fn = [b](const Vec&) { return b; };
    return s;
  }
  static Screen profile(const LipschitzProfile& eta, double divisor = 1.0) {
    if (!eta.valid() || !eta.positive())
      throw std::domain_error("Screen: profile must be certified positive");
    if (!(divisor > 0.0)) throw std::domain_error("Screen: divisor must be positive");
    Screen s;
    s.is_constant = false;
    s.lip = eta.lip_bound() / divisor;
    s.fn = [eta, divisor](const Vec& x) { return eta(x) / divisor; };
    return s;
  }
  double operator()(const Vec& x) const { return fn(x); }
};

enum class InnerExtent { automatic, domain_box, unbounded };

struct SeminormOptions {
  QuadratureConfig quad{};
  std::optional<double> exponent;  // kernel exponent override (generic order)
  InnerExtent inner = InnerExtent::automatic;
  std::optional<double> truncation_radius;  // graded symmetric outer box [-R,R]^{N-1}
  int heights_cells = 32;                   // slice functionals: cells across (0,b)
};

inline double bulk_gagliardo_exponent(const SeminormParams& P) { return P.space_dim + P.sp(); }
inline double boundary_gagliardo_exponent(const SeminormParams& P) {
  return P.space_dim - 1 + P.sp();  // order P.s on R^{N-1}
}
inline double close_exponent(const SeminormParams& P) { return P.space_dim - 2 + P.sp(); }
inline double far_exponent(const SeminormParams& P) { return P.space_dim + P.sp(); }

namespace detail {

enum class BoundaryKind { gagliardo, close, far };

// tail models from catalog decay metadata; weight is the far screen pair
// (null for unweighted kernels)
inline std::vector<TailModel> boundary_tail_models(const CatalogEntry& g, double p, int d,
                                                   const std::optional<Screen>& wscreen) {
  auto weight = [wscreen](const Vec& x, const Vec& y) -> double {
    if (!wscreen) return 1.0;
    return (*wscreen)(x) * (*wscreen)(y);
  };
  std::vector<TailModel> out;
  const auto eval = g.fn.eval;
  if (d == 1) {
    for (int sgn : {+1, -1}) {
      const TailBehavior tb = sgn > 0 ? g.tail_pos : g.tail_neg;
      TailModel m;
      if (tb.grows) {
        // |g(x) - g(x + sgn r)|^p ~ r^{a p} with unit coefficient
        m.exponent = tb.growth_exp * p;
        m.coef = [weight, sgn](const Vec& x, double rcap) {
          return weight(x, Vec{x[0] + sgn * rcap, 0, 0});
        };
      } else {
        m.exponent = 0.0;
        const double lim = tb.limit;
        m.coef = [weight, sgn, eval, lim, p](const Vec& x, double rcap) {
          return weight(x, Vec{x[0] + sgn * rcap, 0, 0}) *
                 std::pow(std::abs(eval(x) - lim), p);
        };
      }
      out.push_back(std::move(m));
    }
  } else {
    // d = 2 catalog entries all decay to a single finite limit; the ring value
    // carries the polar Jacobian, hence exponent 1 and the 2*pi factor.
    if (g.tail_pos.grows || g.tail_neg.grows)
      throw std::invalid_argument("2-D boundary tails support finite limits only");
    const double lim = g.tail_pos.limit;
    TailModel m;
    m.exponent = 1.0;
    m.coef = [weight, eval, lim, p](const Vec& x, double rcap) {
      return 2.0 * M_PI * weight(x, Vec{x[0] + rcap, x[1], 0}) *
             std::pow(std::abs(eval(x) - lim), p);
    };
    out.push_back(std::move(m));
  }
  return out;
}

inline double box_reach(const Box& box, const Vec& x) {
  double r2 = 0.0;
  for (int i = 0; i < box.dim; ++i) {
    const double m = std::max(box.hi[i] - x[i], x[i] - box.lo[i]);
    r2 += m * m;
  }
  return std::sqrt(r2);
}

inline bool in_box(const Box& box, const Vec& x) {
  for (int i = 0; i < box.dim; ++i)
    if (x[i] < box.lo[i] || x[i] > box.hi[i]) return false;
  return true;
}

inline SeminormReport boundary_seminorm(BoundaryKind kind, const CatalogEntry& g,
                                        const std::optional<Screen>& screen,
                                        const SeminormParams& params, Box outer,
                                        const SeminormOptions& opt) {
  params.validate();
  const int d = params.space_dim - 1;
  if (g.fn.dim != d)
    throw std::invalid_argument("boundary function dim does not match params.space_dim-1");
  if ((kind == BoundaryKind::close || kind == BoundaryKind::far) && !screen)
    throw std::domain_error("screened seminorm needs a positive screen");

  RadialSpec spec;
  spec.dim = d;
  switch (kind) {
    case BoundaryKind::gagliardo:
      spec.lambda = opt.exponent.value_or(boundary_gagliardo_exponent(params));
      break;
    case BoundaryKind::close:
      spec.lambda = opt.exponent.value_or(close_exponent(params));
      break;
    case BoundaryKind::far:
      spec.lambda = opt.exponent.value_or(far_exponent(params));
      break;
  }
  if (opt.truncation_radius) {
    const double R = *opt.truncation_radius;
    if (!(R > 0.0)) throw std::domain_error("truncation_radius must be positive");
    outer.dim = d;
    for (int i = 0; i < d; ++i) {
      outer.lo[i] = -R;
      outer.hi[i] = R;
    }
    spec.outer_graded = true;
  }
  if (outer.dim != d) throw std::invalid_argument("outer box dim must be N-1");
  spec.outer = outer;
  spec.breakpoints = g.fn.breakpoints;

  InnerExtent inner = opt.inner;
  if (inner == InnerExtent::automatic)
    inner = (kind == BoundaryKind::gagliardo && !opt.truncation_radius)
                ? InnerExtent::domain_box
                : InnerExtent::unbounded;

  // range and weight per kind
  if (kind == BoundaryKind::close) {
    spec.r_max = [sc = *screen](const Vec& x) { return sc(x); };
  } else if (kind == BoundaryKind::far) {
    spec.r_min = [sc = *screen](const Vec& x) { return sc(x); };
  }

  const double p = params.p;
  auto geval = g.fn.eval;
  std::function<double(const Vec&, const Vec&)> pair;
  if (kind == BoundaryKind::far) {
    pair = [geval, p, sc = *screen](const Vec& x, const Vec& y) {
      return sc(x) * sc(y) * std::pow(std::abs(geval(x) - geval(y)), p);
    };
  } else {
    pair = [geval, p](const Vec& x, const Vec& y) {
      return std::pow(std::abs(geval(x) - geval(y)), p);
    };
  }

  if (inner == InnerExtent::domain_box && kind != BoundaryKind::close) {
    spec.r_max = [outer](const Vec& x) { return box_reach(outer, x); };
  }
  if (inner == InnerExtent::domain_box) {
    spec.pair = [pair, outer](const Vec& x, const Vec& y) {
      return in_box(outer, y) ? pair(x, y) : 0.0;
    };
    if (d == 1) {
      spec.breakpoints.push_back(outer.lo[0]);
      spec.breakpoints.push_back(outer.hi[0]);
    }
  } else {
    spec.pair = pair;
    spec.tails = boundary_tail_models(
        g, p, d,
        kind == BoundaryKind::far ? screen : std::optional<Screen>());
  }

  const IntegralEstimate est = radial_pair_integral(spec, opt.quad);
  SeminormKind rk = kind == BoundaryKind::gagliardo ? SeminormKind::gagliardo
                    : kind == BoundaryKind::close   ? SeminormKind::close_screened
                                                    : SeminormKind::far_screened;
  std::string desc = "boundary box [" + std::to_string(outer.lo[0]) + "," +
                     std::to_string(outer.hi[0]) + "]" + (d == 2 ? "^2" : "") + ", g=" +
                     g.fn.name;
  return make_report(rk, est.value, est.refinement_delta, est.tail_bound, est.converged,
                     params, std::move(desc));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// boundary seminorms
// ---------------------------------------------------------------------------
inline SeminormReport gagliardo_boundary(const CatalogEntry& g, const SeminormParams& params,
                                         const Box& outer, const SeminormOptions& opt = {}) {
  return detail::boundary_seminorm(detail::BoundaryKind::gagliardo, g, std::nullopt, params,
                                   outer, opt);
}

inline SeminormReport close_screened(const CatalogEntry& g, const Screen& screen,
                                     const SeminormParams& params, const Box& outer,
                                     const SeminormOptions& opt = {}) {
  return detail::boundary_seminorm(detail::BoundaryKind::close, g, screen, params, outer, opt);
}

inline SeminormReport far_screened(const CatalogEntry& g, const Screen& screen,
                                   const SeminormParams& params, const Box& outer,
                                   const SeminormOptions& opt = {}) {
  return detail::boundary_seminorm(detail::BoundaryKind::far, g, screen, params, outer, opt);
}

// wrap an ad-hoc boundary function (trace restrictions, band-limited samples);
// decay metadata defaults to compactly-supported-to-zero
inline CatalogEntry wrap_boundary(BoundaryFunction fn, DecayClass decay = DecayClass::compact) {
  CatalogEntry e;
  e.fn = std::move(fn);
  e.decay = decay;
  return e;
}

// ---------------------------------------------------------------------------
// bulk Gagliardo seminorm (cell-pair engine; graph domains via inside mask)
// ---------------------------------------------------------------------------
inline SeminormReport gagliardo_bulk(const BulkFunction& u, const SeminormParams& params,
                                     const StripDomain& dom, const SeminormOptions& opt = {}) {
  params.validate();
  const int N = params.space_dim;
  if (dom.space_dim != N) throw std::invalid_argument("domain dim does not match params");
  Box box;
  box.dim = N;
  for (int i = 0; i < N - 1; ++i) {
    box.lo[i] = dom.lateral.lo[i];
    box.hi[i] = dom.lateral.hi[i];
  }
  box.lo[N - 1] = 0.0;
  box.hi[N - 1] = dom.max_height();

  PairPredicates pred;
  if (dom.shape == StripDomain::Shape::graph)
    pred.inside = [dom, N](const Vec& x) { return x[N - 1] < dom.top(x); };

  const double p = params.p;
  auto eval = u.eval;
  auto F = [eval, p](const Vec& x, const Vec& y) {
    return std::pow(std::abs(eval(x) - eval(y)), p);
  };
  QuadratureConfig cfg = opt.quad;
  cfg.local_holder_p = p;
  const double lambda = opt.exponent.value_or(bulk_gagliardo_exponent(params));
  const IntegralEstimate est = double_integral_singular(box, F, lambda, cfg, pred);
  return make_report(SeminormKind::gagliardo, est.value, est.refinement_delta, est.tail_bound,
                     est.converged, params, dom.describe() + ", u=" + u.name);
}

// restricted bulk Gagliardo over the general reverse-bound proof region:
// x_N < eta(x')/8, y_N < eta(y')/8, ||x'-y'|| < eta(x')/2
inline SeminormReport gagliardo_restricted(const BulkFunction& u, const SeminormParams& params,
                                           const StripDomain& dom,
                                           const SeminormOptions& opt = {}) {
  params.validate();
  const int N = params.space_dim;
  if (dom.space_dim != N) throw std::invalid_argument("domain dim does not match params");
  Box box;
  box.dim = N;
  for (int i = 0; i < N - 1; ++i) {
    box.lo[i] = dom.lateral.lo[i];
    box.hi[i] = dom.lateral.hi[i];
  }
  box.lo[N - 1] = 0.0;
  box.hi[N - 1] = dom.max_height() / 8.0;

  PairPredicates pred;
  pred.inside = [dom, N](const Vec& x) { return x[N - 1] < dom.top(x) / 8.0; };
  pred.region = [dom, N](const Vec& x, const Vec& y) {
    double r2 = 0.0;
    for (int i = 0; i < N - 1; ++i) r2 += (x[i] - y[i]) * (x[i] - y[i]);
    const double half = dom.top(x) / 2.0;
    return r2 < half * half;
  };

  const double p = params.p;
  auto eval = u.eval;
  auto F = [eval, p](const Vec& x, const Vec& y) {
    return std::pow(std::abs(eval(x) - eval(y)), p);
  };
  QuadratureConfig cfg = opt.quad;
  cfg.local_holder_p = p;
  const IntegralEstimate est =
      double_integral_singular(box, F, bulk_gagliardo_exponent(params), cfg, pred);
  return make_report(SeminormKind::gagliardo, est.value, est.refinement_delta, est.tail_bound,
                     est.converged, params, dom.describe() + " (restricted), u=" + u.name);
}

// ---------------------------------------------------------------------------
// slice functionals (N = 2). Outer integrals over the lateral box via
// deterministic_sum; inner vertical Gagliardo via the 1-D cell-pair engine,
// inner horizontal kernels via graded radial grids. Both sides of every
// equivalence are truncated to the same box, so ratios stay comparable.
// ---------------------------------------------------------------------------
namespace detail {

inline void require_slice_domain(const SeminormParams& params, const StripDomain& dom) {
  if (params.space_dim != 2 || dom.space_dim != 2)
    throw std::invalid_argument("slice functionals are implemented for N=2");
}

// two-level refinement driver shared by the slice functionals
template <class LevelFn>
SeminormReport slice_report(SeminormKind kind, const SeminormParams& params,
                            const StripDomain& dom, const SeminormOptions& opt,
                            LevelFn&& level_value) {
  double prev = 0.0, delta = 0.0;
  const int levels = std::max(1, opt.quad.refinement_levels);
  for (int level = 0; level < levels; ++level) {
    const double v = level_value(level);
    if (level > 0) delta = std::abs(v - prev);
    prev = v;
  }
  const bool conv =
      levels < 2 || delta / std::max(std::abs(prev), 1e-3) < opt.quad.rel_tol;
  return make_report(kind, prev, delta, 0.0, conv, params, dom.describe());
}

}  // namespace detail

// integral over x' of the 1-D vertical Gagliardo seminorm on (0, top(x'))
inline SeminormReport slice_vertical(const BulkFunction& u, const SeminormParams& params,
                                     const StripDomain& dom, const SeminormOptions& opt = {}) {
  params.validate();
  detail::require_slice_domain(params, dom);
  const double p = params.p;
  const double sp = params.sp();
  auto eval = u.eval;
  const int threads = resolve_threads(opt.quad.threads);

  auto level_value = [&](int level) {
    const int outer_n = opt.quad.outer_cells << level;
    const auto xedges =
        detail::uniform_edges(dom.lateral.lo[0], dom.lateral.hi[0], outer_n, {});
    QuadratureConfig inner_cfg = opt.quad;
    inner_cfg.cells_per_axis = opt.quad.cells_per_axis << level;
    inner_cfg.refinement_levels = 1;
    inner_cfg.threads = 1;
    inner_cfg.local_holder_p = p;

    auto term = [&](std::size_t i) -> double {
      const double wx = xedges[i + 1] - xedges[i];
      const double x = 0.5 * (xedges[i] + xedges[i + 1]);
      const double top = dom.top(vec1(x));
      if (!(top > 0.0)) return 0.0;
      auto F = [&](const Vec& a, const Vec& b) {
        return std::pow(std::abs(eval(vec2(x, a[0])) - eval(vec2(x, b[0]))), p);
      };
      const auto est = double_integral_singular(interval(0.0, top), F, 1.0 + sp, inner_cfg);
      return wx * est.value;
    };
    return deterministic_sum(xedges.size() - 1, term, threads, 4);
  };
  return detail::slice_report(SeminormKind::slice_vertical, params, dom, opt, level_value);
}

// integral over heights of the close-screened seminorm of horizontal slices
// (flat: heights (0,b), screen b; graph: heights (0, eta(x')/2), screen eta(x')/2)
inline SeminormReport slice_horizontal_near(const BulkFunction& u, const SeminormParams& params,
                                            const StripDomain& dom,
                                            const SeminormOptions& opt = {}) {
  params.validate();
  detail::require_slice_domain(params, dom);
  const double p = params.p;
  const double lambda = opt.exponent.value_or(close_exponent(params) + 1.0);  // N-1+sp
  auto eval = u.eval;
  const bool flat = dom.shape == StripDomain::Shape::flat;
  const int threads = resolve_threads(opt.quad.threads);
  const Box lat = dom.lateral;

  auto level_value = [&](int level) {
    const int outer_n = opt.quad.outer_cells << level;
    const int heights_n = opt.heights_cells << level;
    const int per_oct = opt.quad.radial_per_octave << level;
    const auto xedges = detail::uniform_edges(lat.lo[0], lat.hi[0], outer_n, {});

    auto term = [&](std::size_t i) -> double {
      const double wx = xedges[i + 1] - xedges[i];
      const double x = 0.5 * (xedges[i] + xedges[i + 1]);
      const double screen = flat ? dom.height : dom.top(vec1(x)) / 2.0;
      const double hmax = flat ? dom.height : dom.top(vec1(x)) / 2.0;
      if (!(screen > 0.0) || !(hmax > 0.0)) return 0.0;
      // breakpoint radii toward the box ends (pair vanishes beyond them)
      const std::vector<double> bp = {lat.hi[0] - x, x - lat.lo[0]};
      double acc = 0.0;
      for (int h = 0; h < heights_n; ++h) {
        const double t = hmax * (h + 0.5) / heights_n;
        auto ring = [&](double r) {
          double s = 0.0;
          const double xr = x + r, xl = x - r;
          const double ux = eval(vec2(x, t));
          if (xr <= lat.hi[0]) s += std::pow(std::abs(ux - eval(vec2(xr, t))), p);
          if (xl >= lat.lo[0]) s += std::pow(std::abs(ux - eval(vec2(xl, t))), p);
          return s;
        };
        const double rcap = std::min(screen, detail::box_reach(lat, vec1(x)));
        const auto redges = detail::radial_edges(0.0, rcap, std::max(1.0, rcap), per_oct,
                                                 opt.quad.radial_octaves_down, bp);
        acc += detail::midpoint_cells(
            redges, [&](double r) { return std::pow(r, -lambda) * ring(r); });
      }
      return wx * (hmax / heights_n) * acc;
    };
    return deterministic_sum(xedges.size() - 1, term, threads, 4);
  };
  return detail::slice_report(SeminormKind::slice_horizontal_near, params, dom, opt,
                              level_value);
}

// integral over heights of the unweighted far-kernel seminorm (flat only):
// exponent N+sp, region ||x'-y'|| >= b, truncated laterally to the box
inline SeminormReport slice_horizontal_far(const BulkFunction& u, const SeminormParams& params,
                                           const StripDomain& dom,
                                           const SeminormOptions& opt = {}) {
  params.validate();
  detail::require_slice_domain(params, dom);
  if (dom.shape != StripDomain::Shape::flat)
    throw std::invalid_argument("slice_horizontal_far applies to flat domains");
  const double p = params.p;
  const double lambda = opt.exponent.value_or(far_exponent(params));
  auto eval = u.eval;
  const double b = dom.height;
  const int threads = resolve_threads(opt.quad.threads);
  const Box lat = dom.lateral;

  auto level_value = [&](int level) {
    const int outer_n = opt.quad.outer_cells << level;
    const int heights_n = opt.heights_cells << level;
    const int per_oct = opt.quad.radial_per_octave << level;
    const auto xedges = detail::uniform_edges(lat.lo[0], lat.hi[0], outer_n, {});

    auto term = [&](std::size_t i) -> double {
      const double wx = xedges[i + 1] - xedges[i];
      const double x = 0.5 * (xedges[i] + xedges[i + 1]);
      const double rcap = detail::box_reach(lat, vec1(x));
      if (!(rcap > b)) return 0.0;
      const std::vector<double> bp = {lat.hi[0] - x, x - lat.lo[0]};
      const auto redges = detail::radial_edges(b, rcap, 1.0, per_oct, 0, bp);
      double acc = 0.0;
      for (int h = 0; h < heights_n; ++h) {
        const double t = b * (h + 0.5) / heights_n;
        acc += detail::midpoint_cells(redges, [&](double r) {
          double s = 0.0;
          const double xr = x + r, xl = x - r;
          const double ux = eval(vec2(x, t));
          if (xr <= lat.hi[0]) s += std::pow(std::abs(ux - eval(vec2(xr, t))), p);
          if (xl >= lat.lo[0]) s += std::pow(std::abs(ux - eval(vec2(xl, t))), p);
          return std::pow(r, -lambda) * s;
        });
      }
      return wx * (b / heights_n) * acc;
    };
    return deterministic_sum(xedges.size() - 1, term, threads, 4);
  };
  return detail::slice_report(SeminormKind::slice_horizontal_far, params, dom, opt,
                              level_value);
}

// ---------------------------------------------------------------------------
// trace-side functionals
// ---------------------------------------------------------------------------
// flat: int |f+ - f-|^p dx';  graph: int |f+ - f-|^p eta(x')^{1-sp} dx'
inline SeminormReport difference_trace(const BoundaryFunction& fplus,
                                       const BoundaryFunction& fminus,
                                       const SeminormParams& params, const StripDomain& dom,
                                       const SeminormOptions& opt = {}) {
  params.validate();
  params.require_trace_regime();
  const int d = dom.boundary_dim();
  if (d != 1) throw std::invalid_argument("difference_trace implemented for N=2");
  const double p = params.p;
  const double sp = params.sp();
  const bool flat = dom.shape == StripDomain::Shape::flat;
  const int threads = resolve_threads(opt.quad.threads);
  std::vector<double> bp = fplus.breakpoints;
  bp.insert(bp.end(), fminus.breakpoints.begin(), fminus.breakpoints.end());

  auto level_value = [&](int level) {
    const int n = opt.quad.outer_cells << level;
    const auto xedges = detail::uniform_edges(dom.lateral.lo[0], dom.lateral.hi[0], n, bp);
    auto term = [&](std::size_t i) -> double {
      const double w = xedges[i + 1] - xedges[i];
      const Vec x = vec1(0.5 * (xedges[i] + xedges[i + 1]));
      const double diff = std::pow(std::abs(fplus(x) - fminus(x)), p);
      const double weight = flat ? 1.0 : std::pow(dom.top(x), 1.0 - sp);
      return w * diff * weight;
    };
    return deterministic_sum(xedges.size() - 1, term, threads, 64);
  };
  return detail::slice_report(SeminormKind::difference_trace, params, dom, opt, level_value);
}

// convenience: traces of a bulk function (catalog functions are continuous up
// to both boundary layers, so pointwise evaluation is the trace)
inline SeminormReport difference_trace(const BulkFunction& u, const SeminormParams& params,
                                       const StripDomain& dom, const SeminormOptions& opt = {}) {
  BoundaryFunction fp, fm;
  fp.name = u.name + "|top";
  fm.name = u.name + "|bottom";
  fp.dim = fm.dim = dom.boundary_dim();
  auto eval = u.eval;
  fp.eval = [eval, dom](const Vec& xp) { return eval(vec2(xp[0], dom.top(xp))); };
  fm.eval = [eval](const Vec& xp) { return eval(vec2(xp[0], 0.0)); };
  return difference_trace(fp, fm, params, dom, opt);
}

// int |f|^p min(r, eta(x')) dx' over the box
inline SeminormReport weighted_lp_trace(const BoundaryFunction& f, double r,
                                        const Screen& eta, const SeminormParams& params,
                                        const Box& outer, const SeminormOptions& opt = {}) {
  params.validate();
  if (!(r > 0.0)) throw std::domain_error("weighted_lp_trace: r must be positive");
  if (outer.dim != 1) throw std::invalid_argument("weighted_lp_trace implemented for N=2");
  const double p = params.p;
  const int threads = resolve_threads(opt.quad.threads);

  auto level_value = [&](int level) {
    const int n = opt.quad.outer_cells << level;
    const auto xedges = detail::uniform_edges(outer.lo[0], outer.hi[0], n, f.breakpoints);
    auto term = [&](std::size_t i) -> double {
      const double w = xedges[i + 1] - xedges[i];
      const Vec x = vec1(0.5 * (xedges[i] + xedges[i + 1]));
      return w * std::pow(std::abs(f(x)), p) * std::min(r, eta(x));
    };
    return deterministic_sum(xedges.size() - 1, term, threads, 64);
  };

  double prev = 0.0, delta = 0.0;
  const int levels = std::max(1, opt.quad.refinement_levels);
  for (int level = 0; level < levels; ++level) {
    const double v = level_value(level);
    if (level > 0) delta = std::abs(v - prev);
    prev = v;
  }
  const bool conv = levels < 2 || delta / std::max(std::abs(prev), 1e-3) < opt.quad.rel_tol;
  std::string desc = "boundary box [" + std::to_string(outer.lo[0]) + "," +
                     std::to_string(outer.hi[0]) + "], f=" + f.name;
  return make_report(SeminormKind::weighted_lp_trace, prev, delta, 0.0, conv, params,
                     std::move(desc));
}

// ---------------------------------------------------------------------------
// equivalence checks: slice functionals against the bulk Gagliardo seminorm
// ---------------------------------------------------------------------------
struct EquivalenceReport {
  double slice_vertical = 0.0;
  double slice_horizontal_near = 0.0;
  double slice_horizontal_far = 0.0;  // flat only
  double slice_total = 0.0;           // V + Hnear + b*Hfar (flat), V + Hnear (graph)
  double gagliardo = 0.0;             // full bulk seminorm (p-th power)
  double gagliardo_restricted = 0.0;  // graph reverse-bound region (graph only)
  double ratio_slice_over_g = 0.0;    // forward direction
  double ratio_g_over_slice = 0.0;    // reverse direction
  bool converged = true;
};

namespace detail {
inline void check_equivalence_degeneracy(double S, double G) {
  constexpr double zero_tol = 1e-12, nonzero_tol = 1e-6;
  if ((S <= zero_tol && G > nonzero_tol) || (G <= zero_tol && S > nonzero_tol))
    throw std::runtime_error("equivalence violation: one side vanishes, the other does not");
}
}  // namespace detail

inline EquivalenceReport equivalence_check_flat(const BulkFunction& u,
                                                const SeminormParams& params,
                                                const StripDomain& dom,
                                                const SeminormOptions& opt = {}) {
  if (dom.shape != StripDomain::Shape::flat)
    throw std::invalid_argument("equivalence_check_flat needs a flat domain");
  const auto V = slice_vertical(u, params, dom, opt);
  const auto Hn = slice_horizontal_near(u, params, dom, opt);
  const auto Hf = slice_horizontal_far(u, params, dom, opt);
  const auto G = gagliardo_bulk(u, params, dom, opt);

  EquivalenceReport r;
  r.slice_vertical = V.value_p;
  r.slice_horizontal_near = Hn.value_p;
  r.slice_horizontal_far = Hf.value_p;
  r.slice_total = V.value_p + Hn.value_p + dom.height * Hf.value_p;
  r.gagliardo = G.value_p;
  r.converged = V.converged && Hn.converged && Hf.converged && G.converged;
  detail::check_equivalence_degeneracy(r.slice_total, r.gagliardo);
  if (r.slice_total > 0.0 && r.gagliardo > 0.0) {
    r.ratio_slice_over_g = r.slice_total / r.gagliardo;
    r.ratio_g_over_slice = r.gagliardo / r.slice_total;
  }
  return r;
}

inline EquivalenceReport equivalence_check_general(const BulkFunction& u,
                                                   const SeminormParams& params,
                                                   const StripDomain& dom,
                                                   const SeminormOptions& opt = {}) {
  if (dom.shape != StripDomain::Shape::graph)
    throw std::invalid_argument("equivalence_check_general needs a graph domain");
  if (dom.profile.lip_bound() > 1.0)
    throw std::domain_error("general equivalence needs L <= 1 (dilate first)");
  const auto V = slice_vertical(u, params, dom, opt);
  const auto Hn = slice_horizontal_near(u, params, dom, opt);
  const auto G = gagliardo_bulk(u, params, dom, opt);
  const auto Gr = gagliardo_restricted(u, params, dom, opt);

  EquivalenceReport r;
  r.slice_vertical = V.value_p;
  r.slice_horizontal_near = Hn.value_p;
  r.slice_total = V.value_p + Hn.value_p;
  r.gagliardo = G.value_p;
  r.gagliardo_restricted = Gr.value_p;
  r.converged = V.converged && Hn.converged && G.converged && Gr.converged;
  detail::check_equivalence_degeneracy(r.slice_total, r.gagliardo);
  if (r.slice_total > 0.0 && r.gagliardo > 0.0) {
    r.ratio_slice_over_g = r.slice_total / r.gagliardo;
    r.ratio_g_over_slice = r.gagliardo_restricted / r.slice_total;
  }
  return r;
}

// ---------------------------------------------------------------------------
// lem:decreaser quantities: for 0 < eta2 <= eta1, eta2 Lipschitz with bound L,
//   far(eta2) <= far(eta1) + (1+L) * close(eta1)  and  close(eta2) <= close(eta1)
// ---------------------------------------------------------------------------
struct RestrictProfileReport {
  double far_eta2 = 0.0;    // |g|^p_{>= eta2}
  double far_bound = 0.0;   // |g|^p_{>= eta1} + (1+L)|g|^p_{<= eta1}
  double close_eta2 = 0.0;  // |g|^p_{<= eta2}
  double far_eta1 = 0.0;
  double close_eta1 = 0.0;
  bool far_inequality = false;
  bool close_inequality = false;
};

inline RestrictProfileReport restrict_profile(const CatalogEntry& g, const Screen& eta1,
                                              const Screen& eta2, const SeminormParams& params,
                                              const Box& outer, const SeminormOptions& opt = {},
                                              int order_check_samples = 257) {
  // precondition: 0 < eta2 <= eta1 on the box (sampled)
  for (int i = 0; i < order_check_samples; ++i) {
    const Vec x = vec1(outer.lo[0] + outer.extent(0) * i / (order_check_samples - 1));
    if (eta2(x) > eta1(x) + 1e-12)
      throw std::domain_error("restrict_profile: eta2 must not exceed eta1");
  }
  RestrictProfileReport r;
  r.far_eta2 = far_screened(g, eta2, params, outer, opt).value_p;
  r.far_eta1 = far_screened(g, eta1, params, outer, opt).value_p;
  r.close_eta1 = close_screened(g, eta1, params, outer, opt).value_p;
  r.close_eta2 = close_screened(g, eta2, params, outer, opt).value_p;
  r.far_bound = r.far_eta1 + (1.0 + eta2.lip) * r.close_eta1;
  // quadrature slack: both sides carry ~rel_tol error
  const double slack = 1e-9 + 2.0 * opt.quad.rel_tol * std::max(r.far_eta2, r.far_bound);
  r.far_inequality = r.far_eta2 <= r.far_bound + slack;
  r.close_inequality =
      r.close_eta2 <= r.close_eta1 + 1e-9 + 2.0 * opt.quad.rel_tol * r.close_eta1;
  return r;
}

}  // namespace fracstrip
