#pragma once
// Quadrature engines underlying every seminorm:
//
//  * double_integral_singular — tensor-product midpoint rule over cell pairs
//    on D x D with the diagonal band excluded (cell closures touching) and,
//    under exclude-and-correct, an analytic band estimate assuming the
//    numerator behaves like sum_i K_i(x)*|x_i-y_i|^p near the diagonal,
//    with the K_i fitted from per-axis probes (direction-resolved, so
//    anisotropic cells on thin domains are priced correctly).
//  * radial_pair_integral — difference-variable rule for boundary seminorms:
//    for each outer x, the inner integral over r = ||x-y|| runs on a
//    geometrically graded grid with data breakpoints inserted exactly.
//    This resolves the kernel's diagonal corner for indicator data, which a
//    uniform cell-pair rule cannot do at tolerance.
//  * slicing_plane_kernel / slicing_finite_kernel — the two slicing lemmas.
//
// All engines sum via deterministic_sum, so values are bit-identical for any
// thread count / parallel_chunk.

#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fracstrip/core.hpp"

namespace fracstrip {

enum class DiagonalPolicy { exclude_only, exclude_and_correct };

struct QuadratureConfig {
  int cells_per_axis = 24;       // first axis; other axes scaled proportionally
  int refinement_levels = 2;     // >= 1; level l uses cells*2^l per axis
  DiagonalPolicy diagonal_policy = DiagonalPolicy::exclude_and_correct;
  std::size_t parallel_chunk = 4096;  // terms claimed per steal (no effect on bits)
  int threads = 0;               // 0 -> FRACSTRIP_THREADS / hardware
  double rel_tol = 1e-2;         // convergence: delta / max(value,1e-3) < rel_tol
  double local_holder_p = 2.0;   // p in the near-diagonal model sum K_i*|x_i-y_i|^p
  // Square cells up to the resolution of the thinnest axis.  The kernel is
  // isotropic, so on elongated domains (strips) proportional meshes leave the
  // long axis so coarse that mid-scale data features fall inside the excluded
  // diagonal band.  Disable only for very expensive integrands that are known
  // to be smooth at the cell scale (the band model then carries more weight).
  bool square_cells = true;

  // radial engine knobs
  int outer_cells = 256;         // outer (x) cells across the core box
  int radial_per_octave = 16;    // midpoint cells per octave of r
  int radial_octaves_down = 48;  // octaves below the grading anchor
  int radial_octaves_up = 30;    // octaves above the anchor (unbounded ranges)
  int angular_points = 32;       // d=2 boundary integrals

  void validate() const {
    if (cells_per_axis < 8) throw std::invalid_argument("QuadratureConfig: cells_per_axis >= 8");
    if (refinement_levels < 1)
      throw std::invalid_argument("QuadratureConfig: refinement_levels >= 1");
  }
};

struct IntegralEstimate {
  double value = 0.0;
  double refinement_delta = 0.0;
  double tail_bound = 0.0;  // estimated mass beyond truncation (reported, not added)
  bool converged = true;
};

namespace detail {

// ---------------------------------------------------------------------------
// Cell-pair weights for the diagonal-band correction.  For a pair of grid
// cells C_0 and C_off (offset measured in cells), substituting t = y - x in
// cell units turns int_{C0} int_{C_off} g(y-x) dx dy into
//   (prod_j h_j) * int g(h.t) prod_j tri(t_j - off_j) dt,
// with the tent weight tri(u) = max(0, 1-|u|).  The integrand is singular
// only at t = 0 and is integrated on Linf shells.
// ---------------------------------------------------------------------------
inline double tri(double u) {
  const double a = 1.0 - std::abs(u);
  return a > 0.0 ? a : 0.0;
}

// Direction-resolved band weights for (possibly anisotropic) cells of size h:
//   W_i(off; h) = (prod_j h_j)^2 * h_i^p *
//                 int prod_j tri(t_j - off_j) |t_i|^p (sum_j h_j^2 t_j^2)^{-lambda/2} dt
// = the exact integral over the cell pair (C_0, C_off) of the separable local
// model K_i |x_i - y_i|^p against the kernel, in difference variables.  An
// isotropic model K ||x-y||^p misprices thin-domain cells by an O(1) factor
// (observed +45% on the bulk Gagliardo of u = x_N over a 16:1 strip); the
// separable model with per-axis probes is exact at leading order for smooth
// data, and for p = 2 the dropped cross terms integrate to zero over the
// symmetric band.  Quadrature: per-axis Gauss-Legendre panels on edges graded
// geometrically toward t = 0 (and split at the tent kinks), so both the
// singularity (integrable while p - lambda > -d) and the anisotropic kernel
// ridge |t_i| ~ (h_min/h_i)|t| are resolved without any isotropy assumption.
inline std::array<double, kMaxDim> band_pair_weight(int d, const std::array<int, kMaxDim>& off,
                                                    const std::array<double, kMaxDim>& h,
                                                    double p, double lambda) {
  static constexpr double gx[4] = {-0.8611363115940526, -0.3399810435848563,
                                   0.3399810435848563, 0.8611363115940526};
  static constexpr double gw[4] = {0.3478548451374538, 0.6521451548625461,
                                   0.6521451548625461, 0.3478548451374538};
  const int octaves = d == 3 ? 28 : 44;
  // per-axis nodes/weights: Gauss-4 panels between graded edges
  std::array<std::vector<double>, kMaxDim> node, wt;
  for (int i = 0; i < d; ++i) {
    const double lo = off[i] - 1.0, hi = off[i] + 1.0;
    std::vector<double> edges{lo, hi};
    if (lo < 0.0 && 0.0 < hi) edges.push_back(0.0);
    edges.push_back(static_cast<double>(off[i]));  // tent kink
    for (int k = 0; k <= octaves; ++k) {
      const double r = std::ldexp(1.0, -k);
      if (lo < r && r < hi) edges.push_back(r);
      if (lo < -r && -r < hi) edges.push_back(-r);
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double a = edges[e], b = edges[e + 1];
      if (b - a < 1e-15) continue;
      for (int g = 0; g < 4; ++g) {
        node[i].push_back(0.5 * (a + b) + 0.5 * (b - a) * gx[g]);
        wt[i].push_back(0.5 * (b - a) * gw[g]);
      }
    }
  }
  std::array<double, kMaxDim> acc{0, 0, 0};
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= node[i].size();
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    double w = 1.0, n2 = 0.0;
    Vec t{0, 0, 0};
    for (int i = d - 1; i >= 0; --i) {
      const std::size_t j = rem % node[i].size();
      rem /= node[i].size();
      t[i] = node[i][j];
      w *= wt[i][j] * tri(t[i] - off[i]);
      n2 += h[i] * h[i] * t[i] * t[i];
    }
    if (w == 0.0 || n2 == 0.0) continue;
    const double kern = w * std::pow(n2, -0.5 * lambda);
    for (int i = 0; i < d; ++i) acc[i] += kern * std::pow(std::abs(t[i]), p);
  }
  double cellvol2 = 1.0;
  for (int i = 0; i < d; ++i) cellvol2 *= h[i] * h[i];
  std::array<double, kMaxDim> out{0, 0, 0};
  for (int i = 0; i < d; ++i) out[i] = cellvol2 * std::pow(h[i], p) * acc[i];
  return out;
}

// geometric edges between lo and hi anchored at `anchor_hi` (grading toward
// small values) or at `anchor_lo` (grading toward large values); each octave
// split into `per_octave` uniform cells; extra edges inserted exactly.
inline std::vector<double> graded_edges(double lo, double hi, int per_octave, int octaves,
                                        bool anchor_hi, const std::vector<double>& extra) {
  std::vector<double> edges;
  if (!(hi > lo)) return edges;
  std::vector<double> oct;
  if (anchor_hi) {
    double e = hi;
    oct.push_back(e);
    for (int k = 0; k < octaves; ++k) {
      e *= 0.5;
      if (e <= lo) break;
      oct.push_back(e);
    }
    oct.push_back(std::max(lo, 0.0));
    std::reverse(oct.begin(), oct.end());
  } else {
    double e = lo;
    oct.push_back(e);
    for (int k = 0; k < octaves; ++k) {
      e *= 2.0;
      if (e >= hi) break;
      oct.push_back(e);
    }
    oct.push_back(hi);
  }
  for (std::size_t i = 0; i + 1 < oct.size(); ++i) {
    const double a = oct[i], b = oct[i + 1];
    if (!(b > a)) continue;
    for (int j = 0; j < per_octave; ++j) edges.push_back(a + (b - a) * j / per_octave);
  }
  edges.push_back(oct.back());
  for (double e : extra)
    if (e > lo && e < hi) edges.push_back(e);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-300; }),
              edges.end());
  return edges;
}

// radial grid of a screened/unscreened inner integral: graded toward r=0 below
// the natural scale, geometric octaves above it, breakpoints inserted exactly
inline std::vector<double> radial_edges(double rlo, double rcap, double scale, int per_oct,
                                        int oct_down, const std::vector<double>& bp_r) {
  std::vector<double> redges;
  if (rlo <= 0.0) {
    redges = graded_edges(0.0, std::min(rcap, scale), per_oct, oct_down,
                          /*anchor_hi=*/true, bp_r);
    if (rcap > scale) {
      auto up = graded_edges(scale, rcap, per_oct, 200, /*anchor_hi=*/false, bp_r);
      redges.insert(redges.end(), up.begin() + 1, up.end());
    }
  } else {
    redges = graded_edges(rlo, rcap, per_oct, 200, /*anchor_hi=*/false, bp_r);
  }
  return redges;
}

// uniform edges with extra breakpoints inserted
inline std::vector<double> uniform_edges(double a, double b, int n,
                                         const std::vector<double>& extra) {
  std::vector<double> edges;
  edges.reserve(static_cast<std::size_t>(n) + extra.size() + 1);
  for (int i = 0; i <= n; ++i) edges.push_back(a + (b - a) * i / n);
  for (double e : extra)
    if (e > a && e < b) edges.push_back(e);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-300; }),
              edges.end());
  return edges;
}

// geometric ladders toward each data abscissa: the outer integrand of a
// screened form can blow up like |x - a|^{-gamma} (gamma < 1) at a data
// breakpoint a, which a uniform outer grid integrates with O(w^{1-gamma})
// deficit; halving cells toward a restores full-order accuracy
inline void breakpoint_ladders(std::vector<double>& edges, const std::vector<double>& bps,
                               double lo, double hi, double span) {
  if (edges.empty() || bps.empty() || !(span > 0.0)) return;
  for (const double a : bps) {
    if (!(a > lo && a < hi)) continue;
    for (double d = 0.5 * span; d > 1e-13 * span; d *= 0.5) {
      if (a + d < hi) edges.push_back(a + d);
      if (a - d > lo) edges.push_back(a - d);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-300; }),
              edges.end());
}

// midpoint rule over an edge list
template <class F>
double midpoint_cells(const std::vector<double>& edges, F&& f) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double w = edges[i + 1] - edges[i];
    if (w > 0.0) s += w * f(0.5 * (edges[i] + edges[i + 1]));
  }
  return s;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cell-pair engine. numerator F(x,y) must vanish on the diagonal; kernel is
// ||x-y||^{-lambda}. Optional predicates restrict the domain (inside) and the
// pair region (region). Cells are kept near-square by scaling per-axis counts.
// ---------------------------------------------------------------------------
struct PairPredicates {
  std::function<bool(const Vec&)> inside;             // point in domain
  std::function<bool(const Vec&, const Vec&)> region; // pair admitted
};

template <class F>
IntegralEstimate double_integral_singular(const Box& domain, F&& numerator, double lambda,
                                          const QuadratureConfig& cfg,
                                          const PairPredicates& pred = {}) {
  cfg.validate();
  const int d = domain.dim;
  if (d < 1 || d > kMaxDim) throw std::invalid_argument("double_integral_singular: bad dim");
  const double q = cfg.local_holder_p - lambda;
  if (!(q > -d))
    throw std::invalid_argument("double_integral_singular: kernel too singular (lambda >= dim+p)");
  const int threads = resolve_threads(cfg.threads);

  auto level_value = [&](int level) {
    std::array<int, kMaxDim> m{1, 1, 1};
    std::array<double, kMaxDim> h{0, 0, 0};
    const double e0 = domain.extent(0);
    const int floor_cells = std::max(4, cfg.cells_per_axis / 3);
    for (int i = 0; i < d; ++i)
      m[i] = std::max(floor_cells, static_cast<int>(std::lround(
                                       cfg.cells_per_axis * domain.extent(i) / e0)));
    if (cfg.square_cells) {
      double h0 = domain.extent(0) / m[0];
      for (int i = 1; i < d; ++i) h0 = std::min(h0, domain.extent(i) / m[i]);
      for (int i = 0; i < d; ++i)
        m[i] = std::max(m[i], static_cast<int>(std::lround(domain.extent(i) / h0)));
    }
    std::size_t cells = 1;
    for (int i = 0; i < d; ++i) {
      m[i] <<= level;
      h[i] = domain.extent(i) / m[i];
      cells *= static_cast<std::size_t>(m[i]);
    }
    const double cell_vol = [&] {
      double v = 1.0;
      for (int i = 0; i < d; ++i) v *= h[i];
      return v;
    }();

    auto decode = [&](std::size_t c, std::array<int, kMaxDim>& id) {
      for (int i = d - 1; i >= 0; --i) {
        id[i] = static_cast<int>(c % m[i]);
        c /= m[i];
      }
    };
    auto midpoint = [&](const std::array<int, kMaxDim>& id) {
      Vec x{0, 0, 0};
      for (int i = 0; i < d; ++i) x[i] = domain.lo[i] + h[i] * (id[i] + 0.5);
      return x;
    };

    // the midpoint kernel value of a pair depends only on the per-axis index
    // offsets, so hoist the pow() out of the O(cells^2) loop; zero marks the
    // excluded diagonal band (cell closures touching)
    std::vector<double> ktab(cells, 0.0);
    for (std::size_t c = 0; c < cells; ++c) {
      std::array<int, kMaxDim> dv{0, 0, 0};
      decode(c, dv);
      int cheb = 0;
      for (int i = 0; i < d; ++i) cheb = std::max(cheb, dv[i]);
      if (cheb <= 1) continue;
      double r2 = 0.0;
      for (int i = 0; i < d; ++i) r2 += (h[i] * dv[i]) * (h[i] * dv[i]);
      ktab[c] = std::pow(r2, -0.5 * lambda) * cell_vol * cell_vol;
    }

    const std::size_t pair_count = cells * cells;
    auto term = [&](std::size_t k) -> double {
      const std::size_t c1 = k / cells, c2 = k % cells;
      std::array<int, kMaxDim> i1{0, 0, 0}, i2{0, 0, 0};
      decode(c1, i1);
      decode(c2, i2);
      std::size_t widx = 0;
      for (int i = 0; i < d; ++i)
        widx = widx * static_cast<std::size_t>(m[i]) +
               static_cast<std::size_t>(std::abs(i1[i] - i2[i]));
      const double kmass = ktab[widx];
      if (kmass == 0.0) return 0.0;  // touching: excluded, modeled below
      const Vec x = midpoint(i1), y = midpoint(i2);
      if (pred.inside && (!pred.inside(x) || !pred.inside(y))) return 0.0;
      if (pred.region && !pred.region(x, y)) return 0.0;
      const double fv = numerator(x, y);
      if (fv == 0.0) return 0.0;
      return fv * kmass;
    };
    double value = deterministic_sum(pair_count, term, threads, cfg.parallel_chunk);

    if (cfg.diagonal_policy == DiagonalPolicy::exclude_and_correct) {
      // per diagonal cell: fit the separable model F(x,y) ~ sum_i K_i |x_i-y_i|^p
      // from axis probes at half a cell width, then add the model's exact band
      // mass sum_i K_i W_i.  The weights W_i see the true anisotropic cell
      // shape, so thin cells (strip domains) are priced correctly.
      const int off_count = d == 1 ? 3 : (d == 2 ? 9 : 27);
      std::vector<std::array<double, kMaxDim>> wtab(off_count);
      for (int o = 0; o < off_count; ++o) {
        std::array<int, kMaxDim> off{0, 0, 0};
        int rem = o;
        for (int i = 0; i < d; ++i) {
          off[i] = rem % 3 - 1;
          rem /= 3;
        }
        wtab[o] = detail::band_pair_weight(d, off, h, cfg.local_holder_p, lambda);
      }
      auto corr_term = [&](std::size_t c) -> double {
        std::array<int, kMaxDim> id{0, 0, 0};
        decode(c, id);
        const Vec x = midpoint(id);
        if (pred.inside && !pred.inside(x)) return 0.0;
        std::array<double, kMaxDim> K{0, 0, 0};
        bool any = false;
        for (int i = 0; i < d; ++i) {
          const double delta = 0.5 * h[i];
          double ksum = 0.0;
          int kn = 0;
          for (int sgn = -1; sgn <= 1; sgn += 2) {
            Vec y = x;
            y[i] += sgn * delta;
            if (pred.inside && !pred.inside(y)) continue;
            if (pred.region && !pred.region(x, y)) continue;
            ksum += numerator(x, y) / std::pow(delta, cfg.local_holder_p);
            ++kn;
          }
          if (kn > 0 && ksum > 0.0) {
            K[i] = ksum / kn;
            any = true;
          }
        }
        if (!any) return 0.0;
        double corr = 0.0;
        for (int o = 0; o < off_count; ++o) {
          std::array<int, kMaxDim> off{0, 0, 0};
          int rem = o;
          bool in_grid = true;
          for (int i = 0; i < d; ++i) {
            off[i] = rem % 3 - 1;
            rem /= 3;
            const int j = id[i] + off[i];
            if (j < 0 || j >= m[i]) { in_grid = false; break; }
          }
          if (!in_grid) continue;
          for (int i = 0; i < d; ++i) corr += K[i] * wtab[o][i];
        }
        return corr;
      };
      value += deterministic_sum(cells, corr_term, threads, cfg.parallel_chunk);
    }
    return value;
  };

  IntegralEstimate out;
  double prev = 0.0;
  for (int level = 0; level < cfg.refinement_levels; ++level) {
    const double v = level_value(level);
    if (level > 0) out.refinement_delta = std::abs(v - prev);
    prev = v;
  }
  out.value = prev;
  out.converged = cfg.refinement_levels < 2 ||
                  out.refinement_delta / std::max(std::abs(out.value), 1e-3) < cfg.rel_tol;
  return out;
}

// ---------------------------------------------------------------------------
// Radial difference-variable engine for boundary integrals
//   int_{outer box} int_{r_min(x) <= ||x-y|| <= r_cap} pair(x,y) ||x-y||^-lambda dy dx
// d=1: two directions y = x +- r;  d=2: polar with a fixed angular midpoint rule.
// An optional power-law tail model adds the analytic r > r_cap remainder.
// ---------------------------------------------------------------------------
struct TailModel {
  // ring(r) ~ coef(x, r_cap) * r^exponent as r -> inf, where ring(r) is the
  // direction-summed pair value (d=1: pair(x,x+r)+pair(x,x-r); d=2 it already
  // carries the polar Jacobian r). Added analytically beyond r_cap when the
  // remainder integral converges.
  std::function<double(const Vec&, double)> coef;
  double exponent = 0.0;
};

struct RadialSpec {
  int dim = 1;                 // boundary dimension (1 or 2)
  Box outer;                   // outer truncation box
  double lambda = 2.0;         // kernel exponent
  std::function<double(const Vec&)> r_min;  // 0 for close-type
  std::function<double(const Vec&)> r_max;  // +inf -> graded up + tail models
  std::function<double(const Vec&, const Vec&)> pair;  // weight * numerator
  std::vector<double> breakpoints;  // data abscissae (d=1)
  std::vector<TailModel> tails;     // analytic remainders beyond r_cap
  bool outer_graded = false;        // geometric outer grid (large boxes)
  double outer_core = 4.0;          // half-width of the uniform core when graded
};

inline IntegralEstimate radial_pair_integral(const RadialSpec& spec,
                                             const QuadratureConfig& cfg) {
  const int d = spec.dim;
  if (d != 1 && d != 2) throw std::invalid_argument("radial_pair_integral: dim must be 1 or 2");
  const int threads = resolve_threads(cfg.threads);

  auto level_value = [&](int level, double* tail_out) {
    const int outer_n = cfg.outer_cells << level;
    const int per_oct = cfg.radial_per_octave << level;

    // outer grid along axis 0 (and axis 1 for d=2)
    std::vector<double> xedges;
    if (spec.outer_graded) {
      const double core = std::min(spec.outer_core, spec.outer.hi[0]);
      // uniform core then octaves out to the box edge, mirrored
      std::vector<double> pos = detail::graded_edges(core, spec.outer.hi[0], per_oct, 64,
                                                     /*anchor_hi=*/false, {});
      std::vector<double> corepart = detail::uniform_edges(-core, core, outer_n, spec.breakpoints);
      xedges = corepart;
      for (double e : pos)
        if (e > core) xedges.push_back(e);
      for (double e : pos)
        if (e > core) xedges.push_back(-e);
      for (double e : spec.breakpoints)
        if (e > spec.outer.lo[0] && e < spec.outer.hi[0]) xedges.push_back(e);
      std::sort(xedges.begin(), xedges.end());
      xedges.erase(std::unique(xedges.begin(), xedges.end()), xedges.end());
    } else {
      xedges = detail::uniform_edges(spec.outer.lo[0], spec.outer.hi[0], outer_n,
                                     spec.breakpoints);
    }
    detail::breakpoint_ladders(xedges, spec.breakpoints, spec.outer.lo[0], spec.outer.hi[0],
                               (spec.outer.hi[0] - spec.outer.lo[0]) / outer_n);
    std::vector<double> yedges;  // second lateral axis, d=2
    if (d == 2) yedges = detail::uniform_edges(spec.outer.lo[1], spec.outer.hi[1], outer_n, {});

    const std::size_t ncells =
        (xedges.size() - 1) * (d == 2 ? (yedges.size() - 1) : 1);

    // geometry shared by the value pass and the (deterministic) tail pass
    auto cell_geom = [&](std::size_t ci, Vec& x, double& wcell, double& rlo, double& rcap,
                         bool& unbounded) {
      std::size_t xi = ci, yi = 0;
      if (d == 2) {
        yi = ci % (yedges.size() - 1);
        xi = ci / (yedges.size() - 1);
      }
      x = Vec{0.5 * (xedges[xi] + xedges[xi + 1]), 0, 0};
      wcell = xedges[xi + 1] - xedges[xi];
      if (d == 2) {
        x[1] = 0.5 * (yedges[yi] + yedges[yi + 1]);
        wcell *= yedges[yi + 1] - yedges[yi];
      }
      rlo = spec.r_min ? spec.r_min(x) : 0.0;
      const double rhi = spec.r_max ? spec.r_max(x) : std::numeric_limits<double>::infinity();
      unbounded = !std::isfinite(rhi);
      const double scale = std::max({1.0, std::abs(x[0]), rlo});
      rcap = unbounded ? scale * std::pow(2.0, cfg.radial_octaves_up) : rhi;
    };

    auto tail_remainder = [&](const Vec& x, double rcap) {
      double rem = 0.0;
      for (const auto& t : spec.tails) {
        const double expo = spec.lambda - t.exponent - 1.0;
        if (!(expo > 0.0)) continue;  // remainder integral divergent: leave to truncation
        const double c = t.coef(x, rcap);
        if (c != 0.0) rem += c * std::pow(rcap, -expo) / expo;
      }
      return rem;
    };

    auto cell_term = [&](std::size_t ci) -> double {
      Vec x;
      double wcell, rlo, rcap;
      bool unbounded;
      cell_geom(ci, x, wcell, rlo, rcap, unbounded);
      if (!(rcap > rlo)) return 0.0;
      const double scale = std::max({1.0, std::abs(x[0]), rlo});

      // breakpoint radii: distances from x to data abscissae
      std::vector<double> bp_r;
      for (double a : spec.breakpoints) {
        const double rb = std::abs(a - x[0]);
        if (rb > rlo && rb < rcap) bp_r.push_back(rb);
      }

      const std::vector<double> redges =
          detail::radial_edges(rlo, rcap, scale, per_oct, cfg.radial_octaves_down, bp_r);

      auto ring = [&](double r) -> double {
        if (d == 1) {
          Vec yp{x[0] + r, 0, 0}, ym{x[0] - r, 0, 0};
          return spec.pair(x, yp) + spec.pair(x, ym);
        }
        // d=2: r * 2pi * angular mean
        const int nt = cfg.angular_points;
        double s = 0.0;
        for (int a = 0; a < nt; ++a) {
          const double th = 2.0 * M_PI * (a + 0.5) / nt;
          Vec y{x[0] + r * std::cos(th), x[1] + r * std::sin(th), 0};
          s += spec.pair(x, y);
        }
        return r * 2.0 * M_PI * (s / nt);
      };

      double inner = detail::midpoint_cells(
          redges, [&](double r) { return std::pow(r, -spec.lambda) * ring(r); });
      if (unbounded) inner += tail_remainder(x, rcap);
      return wcell * inner;
    };

    const double v = deterministic_sum(ncells, cell_term, threads, cfg.parallel_chunk);
    if (tail_out && !spec.tails.empty()) {
      auto tail_term = [&](std::size_t ci) -> double {
        Vec x;
        double wcell, rlo, rcap;
        bool unbounded;
        cell_geom(ci, x, wcell, rlo, rcap, unbounded);
        if (!(rcap > rlo) || !unbounded) return 0.0;
        return wcell * tail_remainder(x, rcap);
      };
      *tail_out = deterministic_sum(ncells, tail_term, threads, cfg.parallel_chunk);
    } else if (tail_out) {
      *tail_out = 0.0;
    }
    return v;
  };

  IntegralEstimate out;
  double prev = 0.0, tail = 0.0;
  for (int level = 0; level < cfg.refinement_levels; ++level) {
    const double v = level_value(level, &tail);
    if (level > 0) out.refinement_delta = std::abs(v - prev);
    prev = v;
  }
  out.value = prev;
  out.tail_bound = tail;
  out.converged = cfg.refinement_levels < 2 ||
                  out.refinement_delta / std::max(std::abs(out.value), 1e-3) < cfg.rel_tol;
  return out;
}

// ---------------------------------------------------------------------------
// Slicing kernels.
//   plane:  int_{R^{N-1}} ||x-y||^-lambda dx'  with |x_N-y_N| = gap; equals
//           omega_{N-2} * int_0^inf r^{N-2} (r^2+gap^2)^{-lambda/2} dr, lambda > N-1.
//   finite: int_0^r dx / (rho^lambda + |x-y|^lambda), bounded between
//           C1/rho^{lambda-1} and C2/rho^{lambda-1} for rho <= k r, y in (0,r).
// ---------------------------------------------------------------------------
inline double slicing_plane_kernel(double lambda, int N, double gap,
                                   const QuadratureConfig& cfg = {}) {
  if (N < 2 || N > 3) throw std::invalid_argument("slicing_plane_kernel: N must be 2 or 3");
  if (!(lambda > N - 1))
    throw std::domain_error("slicing_plane_kernel: needs lambda > N-1 for convergence");
  if (!(gap > 0.0)) throw std::domain_error("slicing_plane_kernel: gap must be positive");
  const double omega = N == 2 ? 2.0 : 2.0 * M_PI;  // measure of S^{N-2}
  const int per_oct = cfg.radial_per_octave * 4;
  // graded around the scale `gap`, analytic power tail beyond
  const double rcap = gap * std::pow(2.0, 40);
  auto down = detail::graded_edges(0.0, gap, per_oct, cfg.radial_octaves_down, true, {});
  auto up = detail::graded_edges(gap, rcap, per_oct, 48, false, {});
  down.insert(down.end(), up.begin() + 1, up.end());
  auto f = [&](double r) {
    return std::pow(r, N - 2) * std::pow(r * r + gap * gap, -0.5 * lambda);
  };
  double v = detail::midpoint_cells(down, f);
  const double texp = lambda - (N - 1);
  v += std::pow(rcap, -texp) / texp;  // integrand ~ r^{N-2-lambda} out there
  return omega * v;
}

inline double slicing_finite_kernel(double lambda, double rho, double r, double y,
                                    const QuadratureConfig& cfg = {}) {
  if (!(lambda > 1.0)) throw std::domain_error("slicing_finite_kernel: needs lambda > 1");
  if (!(rho > 0.0) || !(r > 0.0)) throw std::domain_error("slicing_finite_kernel: rho,r > 0");
  if (!(y >= 0.0 && y <= r))
    throw std::domain_error("slicing_finite_kernel: y must lie in [0,r]");
  const int per_oct = cfg.radial_per_octave * 4;
  auto f = [&](double t) { return 1.0 / (std::pow(rho, lambda) + std::pow(std::abs(t), lambda)); };
  // integrate |t| = |x-y| over [0,y] and [0,r-y], graded toward 0 at scale rho
  auto side = [&](double len) {
    if (len <= 0.0) return 0.0;
    auto edges = detail::graded_edges(0.0, len, per_oct, cfg.radial_octaves_down, true, {rho});
    return detail::midpoint_cells(edges, f);
  };
  return side(y) + side(r - y);
}

// companion constants of the finite slicing bound
inline double slicing_finite_c2(double lambda) {
  // 2 * int_0^inf dt / (1 + t^lambda), graded about the crossover t = 1
  auto down = detail::graded_edges(0.0, 1.0, 64, 52, true, {});
  double v = detail::midpoint_cells(down, [&](double t) { return 1.0 / (1.0 + std::pow(t, lambda)); });
  auto up = detail::graded_edges(1.0, std::pow(2.0, 40), 64, 60, false, {});
  v += detail::midpoint_cells(up, [&](double t) { return 1.0 / (1.0 + std::pow(t, lambda)); });
  v += std::pow(std::pow(2.0, 40), 1.0 - lambda) / (lambda - 1.0);
  return 2.0 * v;
}

inline double slicing_finite_c1(double lambda, double k) {
  const double cap = 1.0 / (2.0 * k);
  auto edges = detail::graded_edges(0.0, cap, 64, 52, true, {});
  return detail::midpoint_cells(edges, [&](double t) { return 1.0 / (1.0 + std::pow(t, lambda)); });
}

}  // namespace fracstrip
