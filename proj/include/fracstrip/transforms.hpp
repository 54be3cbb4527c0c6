#pragma once
// Domain-equivalence transforms: vertical shear onto a zero lower boundary
// and vertical dilation (used to normalize Lipschitz bounds to L <= 1).
// Both act on analytic closures, so compositions are exact.

#include <cmath>
#include <stdexcept>
#include <string>

#include "fracstrip/domain.hpp"
#include "fracstrip/params.hpp"
#include "fracstrip/quadrature.hpp"
#include "fracstrip/seminorms.hpp"

namespace fracstrip {

// Gagliardo p-th power of u over the region eta_minus(x') < x_N < eta_plus(x')
// (the pre-shear domain, which StripDomain cannot carry).
inline SeminormReport gagliardo_between(const std::function<double(const Vec&)>& u,
                                        const LipschitzProfile& eta_minus,
                                        const LipschitzProfile& eta_plus,
                                        const SeminormParams& params, const Box& lateral,
                                        const SeminormOptions& opt = {}) {
  params.validate();
  const int N = params.space_dim;
  if (N != 2) throw std::invalid_argument("gagliardo_between implemented for N=2");
  Box box;
  box.dim = N;
  box.lo[0] = lateral.lo[0];
  box.hi[0] = lateral.hi[0];
  box.lo[N - 1] = eta_minus.min_certified();
  box.hi[N - 1] = eta_plus.max_certified();

  PairPredicates pred;
  pred.inside = [eta_minus, eta_plus, N](const Vec& x) {
    return x[N - 1] > eta_minus(x) && x[N - 1] < eta_plus(x);
  };
  const double p = params.p;
  auto F = [u, p](const Vec& x, const Vec& y) {
    return std::pow(std::abs(u(x) - u(y)), p);
  };
  QuadratureConfig cfg = opt.quad;
  cfg.local_holder_p = p;
  const IntegralEstimate est =
      double_integral_singular(box, F, bulk_gagliardo_exponent(params), cfg, pred);
  return make_report(SeminormKind::gagliardo, est.value, est.refinement_delta, est.tail_bound,
                     est.converged, params, "between-profiles domain");
}

// shear v(x', x_N) = u(x', x_N + eta_minus(x')): moves the lower boundary to 0.
// The comparison constant (2+L)^{N+sp} comes from the shear's bi-Lipschitz
// distortion of ||x - y||, L = Lip(eta_minus).
struct ShearResult {
  BulkFunction v;
  StripDomain domain;       // graph domain with profile eta_plus - eta_minus
  double comparison_bound;  // (2+L)^{N+sp}
};

inline ShearResult flatten_shear(const std::function<double(const Vec&)>& u,
                                 const LipschitzProfile& eta_minus,
                                 const LipschitzProfile& eta_plus,
                                 const SeminormParams& params, const Box& lateral,
                                 const std::string& name = "sheared") {
  params.validate();
  if (params.space_dim != 2)
    throw std::invalid_argument("flatten_shear implemented for N=2");
  // order check on the certification mesh
  const int m = 257;
  for (int i = 0; i < m; ++i) {
    const Vec x = vec1(lateral.lo[0] + lateral.extent(0) * i / (m - 1));
    if (!(eta_plus(x) > eta_minus(x)))
      throw std::domain_error("flatten_shear: profiles out of order (eta- >= eta+)");
  }
  const double gap_lip = eta_minus.lip_bound() + eta_plus.lip_bound();
  LipschitzProfile gap = LipschitzProfile::certify(
      [eta_minus, eta_plus](const Vec& x) { return eta_plus(x) - eta_minus(x); }, 1,
      lateral, gap_lip, /*require_positive=*/true);

  ShearResult out;
  out.domain = StripDomain::graph(2, lateral, std::move(gap));
  out.v.name = name;
  out.v.domain = out.domain;
  out.v.eval = [u, eta_minus](const Vec& x) {
    return u(vec2(x[0], x[1] + eta_minus(vec1(x[0]))));
  };
  const double L = eta_minus.lip_bound();
  out.comparison_bound = std::pow(2.0 + L, params.space_dim + params.sp());
  return out;
}

// vertical dilation v(x', x_N) = u(x', alpha x_N) on the 1/alpha-rescaled domain
struct DilateResult {
  BulkFunction v;
  StripDomain domain;
};

inline DilateResult dilate_vertical(const BulkFunction& u, const StripDomain& dom,
                                    double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("dilate_vertical: alpha must be positive");
  DilateResult out;
  if (dom.shape == StripDomain::Shape::flat) {
    out.domain = StripDomain::flat(dom.space_dim, dom.lateral, dom.height / alpha);
  } else {
    const LipschitzProfile& eta = dom.profile;
    LipschitzProfile scaled = LipschitzProfile::certify(
        [eta, alpha](const Vec& x) { return eta(x) / alpha; }, eta.dim(),
        eta.certification_box(), eta.lip_bound() / alpha, true);
    out.domain = StripDomain::graph(dom.space_dim, dom.lateral, std::move(scaled));
  }
  auto eval = u.eval;
  const int N = dom.space_dim;
  out.v.name = u.name + "|dilated";
  out.v.domain = out.domain;
  out.v.eval = [eval, alpha, N](const Vec& x) {
    Vec y = x;
    y[N - 1] *= alpha;
    return eval(y);
  };
  return out;
}

// 1-D analog used by the dilation-law oracle: g(alpha .), breakpoints rescaled
inline CatalogEntry dilate_boundary(const CatalogEntry& g, double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("dilate_boundary: alpha must be positive");
  CatalogEntry out = g;
  out.fn.name = g.fn.name + "|dilated";
  auto eval = g.fn.eval;
  out.fn.eval = [eval, alpha](const Vec& x) { return eval(vec1(alpha * x[0])); };
  out.fn.breakpoints.clear();
  for (double b : g.fn.breakpoints) out.fn.breakpoints.push_back(b / alpha);
  out.support_radius = g.support_radius / alpha;
  return out;
}

}  // namespace fracstrip
