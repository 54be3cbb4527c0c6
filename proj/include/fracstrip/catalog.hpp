#pragma once
// Catalog of boundary and bulk test functions. Each boundary entry carries
// decay metadata so the radial engine can pick truncation and tail models,
// breakpoints for exact grid alignment at kinks/jumps, and (where one exists)
// a closed-form seminorm for oracle checks.

#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracstrip/core.hpp"
#include "fracstrip/domain.hpp"
#include "fracstrip/params.hpp"

namespace fracstrip {

// asymptotic behavior of |g(x)-g(y)| for |x-y| large, driving tail handling
enum class DecayClass {
  compact,       // g vanishes outside a known box: truncate exactly
  gaussian,      // differences bounded, super-polynomial decay of g
  power_decay,   // g -> 0 like |x|^-a: differences bounded
  bounded_jump,  // g bounded with distinct limits: |g(x)-g(y)|^p -> const
  power_growth,  // g ~ |x|^a: |g(x)-g(y)|^p ~ |y|^{ap}
};

// per-direction asymptotics of g itself (x -> +inf / -inf)
struct TailBehavior {
  bool grows = false;
  double limit = 0.0;       // finite limit when !grows
  double growth_exp = 0.0;  // g ~ +-|x|^growth_exp when grows
};

struct CatalogEntry {
  BoundaryFunction fn;
  DecayClass decay = DecayClass::compact;
  double support_radius = 0.0;  // compact: |x| beyond which g = 0
  TailBehavior tail_pos, tail_neg;
  std::string note;
};

namespace closed_form {

// 1-D Gagliardo p-th power of u(x)=x on (0,1):
//   int_0^1 int_0^1 |x-y|^{p-1-sp} dxdy = 2 / ((q+1)(q+2)), q = p-1-sp.
inline double affine_unit_interval(double s, double p) {
  const double q = p - 1.0 - s * p;
  if (!(q > -1.0)) throw std::domain_error("affine closed form needs p-1-sp > -1");
  return 2.0 / ((q + 1.0) * (q + 2.0));
}

// dilation law: |u(alpha .)|^p = alpha^{sp-1} |u|^p on the line (exact)
inline double dilation_factor(double s, double p, double alpha) {
  return std::pow(alpha, s * p - 1.0);
}

}  // namespace closed_form

// ---------------------------------------------------------------------------
// boundary entries (dim 1 unless noted)
// ---------------------------------------------------------------------------
inline CatalogEntry catalog_constant(double c = 1.0) {
  CatalogEntry e;
  e.fn.name = "constant";
  e.fn.dim = 1;
  e.fn.eval = [c](const Vec&) { return c; };
  e.decay = DecayClass::compact;  // differences identically zero
  e.tail_pos.limit = e.tail_neg.limit = c;
  e.note = "zero seminorm for every kind";
  return e;
}

inline CatalogEntry catalog_affine() {
  CatalogEntry e;
  e.fn.name = "affine";
  e.fn.dim = 1;
  e.fn.eval = [](const Vec& x) { return x[0]; };
  e.decay = DecayClass::power_growth;
  e.tail_pos = {true, 0.0, 1.0};
  e.tail_neg = {true, 0.0, 1.0};
  e.note = "closed form 2/((q+1)(q+2)) on (0,1)";
  return e;
}

inline CatalogEntry catalog_gaussian(double sigma = 1.0) {
  CatalogEntry e;
  e.fn.name = "gaussian";
  e.fn.dim = 1;
  e.fn.eval = [sigma](const Vec& x) { return std::exp(-M_PI * x[0] * x[0] / (sigma * sigma)); };
  e.decay = DecayClass::gaussian;
  e.note = "exp(-pi x^2 / sigma^2); Fourier transform known in closed form";
  return e;
}

inline CatalogEntry catalog_bump(double radius = 1.0) {
  CatalogEntry e;
  e.fn.name = "bump";
  e.fn.dim = 1;
  e.fn.eval = [radius](const Vec& x) {
    const double t = x[0] / radius;
    const double a = 1.0 - t * t;
    return a > 0.0 ? std::exp(1.0 - 1.0 / a) : 0.0;  // normalized to 1 at the center
  };
  e.decay = DecayClass::compact;
  e.support_radius = radius;
  e.fn.breakpoints = {-radius, radius};
  return e;
}

inline CatalogEntry catalog_heaviside() {
  CatalogEntry e;
  e.fn.name = "heaviside";
  e.fn.dim = 1;
  e.fn.eval = [](const Vec& x) { return x[0] >= 0.0 ? 1.0 : 0.0; };
  e.decay = DecayClass::bounded_jump;
  e.tail_pos.limit = 1.0;
  e.tail_neg.limit = 0.0;
  e.fn.breakpoints = {0.0};
  e.note = "indicator of the right half-line; screened seminorms have closed forms";
  return e;
}

inline CatalogEntry catalog_powerlaw_clamp(double growth) {
  CatalogEntry e;
  e.fn.name = "powerlaw_clamp";
  e.fn.dim = 1;
  e.fn.eval = [growth](const Vec& x) { return x[0] >= 1.0 ? std::pow(x[0], growth) : 1.0; };
  e.decay = DecayClass::power_growth;
  e.tail_pos = {true, 0.0, growth};
  e.tail_neg.limit = 1.0;
  e.fn.breakpoints = {1.0};
  e.note = "x^a clamped to 1 below x=1; drives the divergence-rate demo";
  return e;
}

inline CatalogEntry catalog_sine_packet(double freq = 4.0, double sigma = 1.0) {
  CatalogEntry e;
  e.fn.name = "sine_packet";
  e.fn.dim = 1;
  e.fn.eval = [freq, sigma](const Vec& x) {
    return std::sin(2.0 * M_PI * freq * x[0]) * std::exp(-M_PI * x[0] * x[0] / (sigma * sigma));
  };
  e.decay = DecayClass::gaussian;
  e.note = "oscillation under a Gaussian envelope";
  return e;
}

inline CatalogEntry catalog_bump2(double radius = 1.0) {
  CatalogEntry e;
  e.fn.name = "bump2";
  e.fn.dim = 2;
  e.fn.eval = [radius](const Vec& x) {
    const double t = (x[0] * x[0] + x[1] * x[1]) / (radius * radius);
    const double a = 1.0 - t;
    return a > 0.0 ? std::exp(1.0 - 1.0 / a) : 0.0;
  };
  e.decay = DecayClass::compact;
  e.support_radius = radius;
  return e;
}

inline std::vector<CatalogEntry> boundary_catalog() {
  return {catalog_constant(), catalog_affine(),     catalog_gaussian(),
          catalog_bump(),     catalog_heaviside(),  catalog_powerlaw_clamp(0.5),
          catalog_sine_packet(), catalog_bump2()};
}

inline CatalogEntry boundary_entry(const std::string& name) {
  for (auto& e : boundary_catalog())
    if (e.fn.name == name) return e;
  // parametrized names: constant:<c>, powerlaw_clamp:<a>, gaussian:<sigma>, ...
  const auto colon = name.find(':');
  if (colon != std::string::npos) {
    const std::string base = name.substr(0, colon);
    const double arg = std::stod(name.substr(colon + 1));
    if (base == "constant") return catalog_constant(arg);
    if (base == "powerlaw_clamp") return catalog_powerlaw_clamp(arg);
    if (base == "gaussian") return catalog_gaussian(arg);
    if (base == "bump") return catalog_bump(arg);
    if (base == "sine_packet") return catalog_sine_packet(arg);
  }
  throw std::invalid_argument("unknown boundary function: " + name);
}

// ---------------------------------------------------------------------------
// bulk entries on a strip (dim = N), used by the equivalence checks
// ---------------------------------------------------------------------------
inline std::vector<BulkFunction> bulk_catalog(const StripDomain& dom) {
  const int N = dom.space_dim;
  std::vector<BulkFunction> out;
  auto add = [&](std::string name, std::function<double(const Vec&)> f) {
    BulkFunction b;
    b.name = std::move(name);
    b.domain = dom;
    b.eval = std::move(f);
    out.push_back(std::move(b));
  };
  add("vertical", [N](const Vec& x) { return x[N - 1]; });
  add("lateral_gaussian", [](const Vec& x) { return std::exp(-M_PI * x[0] * x[0]); });
  add("separable", [N](const Vec& x) {
    return x[N - 1] * std::exp(-M_PI * x[0] * x[0]);
  });
  add("smooth_wave", [N](const Vec& x) {
    return std::sin(2.0 * M_PI * x[0]) * std::exp(-x[N - 1]);
  });
  add("bump_bulk", [N](const Vec& x) {
    double r2 = x[0] * x[0] + (x[N - 1] - 0.5) * (x[N - 1] - 0.5);
    if (N == 3) r2 += x[1] * x[1];
    const double a = 1.0 - r2 / 0.2025;  // radius 0.45
    return a > 0.0 ? std::exp(1.0 - 1.0 / a) : 0.0;
  });
  add("tilted", [N](const Vec& x) { return 0.3 * x[0] + x[N - 1]; });
  return out;
}

// seeded band-limited family on [-L/2, L/2]: sum of a few low modes with
// deterministic coefficients; used by the spectral acceptance run.
inline BoundaryFunction band_limited_sample(std::uint64_t seed, double half_width = 4.0,
                                            int max_mode = 6) {
  DetRng rng(seed);
  std::vector<double> ac(max_mode + 1), bc(max_mode + 1);
  for (int k = 0; k <= max_mode; ++k) {
    ac[k] = 2.0 * rng.uniform() - 1.0;
    bc[k] = 2.0 * rng.uniform() - 1.0;
  }
  BoundaryFunction f;
  f.name = "band_limited_" + std::to_string(seed);
  f.dim = 1;
  f.eval = [ac, bc, half_width, max_mode](const Vec& x) {
    // taper to zero at the window ends so periodization artifacts stay small
    const double t = x[0] / half_width;
    if (std::abs(t) >= 1.0) return 0.0;
    const double w = 0.5 * (1.0 + std::cos(M_PI * t));
    double s = 0.0;
    for (int k = 1; k <= max_mode; ++k) {
      const double th = M_PI * k * x[0] / half_width;
      s += ac[k] * std::cos(th) + bc[k] * std::sin(th);
    }
    return w * s;
  };
  return f;
}

}  // namespace fracstrip
