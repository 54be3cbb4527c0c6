#pragma once
// Strict-containment analysis.  Two demonstrations separate the screened
// trace space from the plain fractional space of matching order:
//   * the half-line indicator has finite close and far screened seminorms but
//     its plain order s-1/p seminorm grows like R^{2-sp} under lateral
//     truncation at R (exactly, with a computable constant);
//   * a clamped growing power x^a keeps the close part finite while the far
//     part grows like R^{ap-sp}.
// The truncation-growth exponents are read off from seminorm values at
// geometric radii via a log-log line fit.

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracstrip/catalog.hpp"
#include "fracstrip/core.hpp"
#include "fracstrip/params.hpp"
#include "fracstrip/seminorms.hpp"

namespace fracstrip {

enum class ScreenedForm { unscreened_truncated, close, far };

// Exact values for the half-line indicator on a one-dimensional boundary,
// screen one.  close and far are the full integrals; unscreened_truncated is
// the order s-1/p seminorm with the outer variable restricted to [-R, R],
// which is a pure power of R.  Valid for 1 < sp < 2.
inline double closed_form_indicator(ScreenedForm form, const SeminormParams& params,
                                    double radius = 0.0) {
  params.validate();
  const double sp = params.sp();
  if (!(sp > 1.0 && sp < 2.0))
    throw std::domain_error("closed_form_indicator: needs 1 < sp < 2");
  switch (form) {
    case ScreenedForm::close:
      return 2.0 / (sp - 1.0) * (1.0 / (2.0 - sp) - 1.0);
    case ScreenedForm::far:
      return 2.0 / (1.0 + sp) * (1.0 + 1.0 / sp);
    case ScreenedForm::unscreened_truncated:
      if (!(radius > 0.0))
        throw std::invalid_argument("closed_form_indicator: radius must be positive");
      return 2.0 / ((sp - 1.0) * (2.0 - sp)) * std::pow(radius, 2.0 - sp);
  }
  throw std::invalid_argument("closed_form_indicator: unknown form");
}

// ---------------------------------------------------------------------------
// truncation-growth exponent: evaluate one screened form at several lateral
// truncation radii and fit log(value) against log(radius).  Divergence shows
// up as a positive slope with a clean fit; finite seminorms plateau.
// ---------------------------------------------------------------------------
struct DivergenceFit {
  std::vector<double> radii;
  std::vector<double> values;  // seminorm power at each radius
  LineFit fit;
  bool divergent = false;
};

namespace detail {
inline constexpr double kDivergentSlope = 0.05;   // below: treated as plateau
inline constexpr double kDivergentResidual = 0.02;  // fit must be this clean
}  // namespace detail

inline DivergenceFit divergence_exponent(const CatalogEntry& g, ScreenedForm form,
                                         const SeminormParams& params,
                                         const std::vector<double>& radii,
                                         SeminormOptions opt = {}) {
  params.validate();
  if (radii.size() < 4)
    throw std::invalid_argument("divergence_exponent: need at least 4 radii");
  for (std::size_t i = 0; i + 1 < radii.size(); ++i)
    if (!(radii[i] > 0.0) || !(radii[i + 1] > radii[i]))
      throw std::invalid_argument("divergence_exponent: radii must increase");

  DivergenceFit out;
  out.radii = radii;
  const Screen one = Screen::constant(1.0);
  for (const double R : radii) {
    opt.truncation_radius = R;
    const Box outer = interval(-R, R);
    SeminormReport rep;
    switch (form) {
      case ScreenedForm::unscreened_truncated: {
        // same kernel order as the close form (s - 1/p) but with no screen:
        // the whole point of the probe is that dropping the screen turns the
        // finite close seminorm into a pure power of R
        SeminormOptions o = opt;
        o.exponent = close_exponent(params);
        rep = gagliardo_boundary(g, params, outer, o);
        break;
      }
      case ScreenedForm::close:
        rep = close_screened(g, one, params, outer, opt);
        break;
      case ScreenedForm::far:
        rep = far_screened(g, one, params, outer, opt);
        break;
    }
    out.values.push_back(rep.value_p);
  }
  // the truncated region grows with R, so the values must not decrease
  for (std::size_t i = 0; i + 1 < out.values.size(); ++i) {
    if (out.values[i + 1] < out.values[i] * (1.0 - 1e-3))
      throw std::runtime_error("divergence_exponent: values decrease across radii");
    if (!(out.values[i] > 0.0))
      throw std::runtime_error("divergence_exponent: non-positive seminorm value");
  }
  std::vector<double> lx, ly;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    lx.push_back(std::log(radii[i]));
    ly.push_back(std::log(out.values[i]));
  }
  out.fit = fit_line(lx, ly);
  out.divergent = out.fit.slope > detail::kDivergentSlope &&
                  out.fit.residual < detail::kDivergentResidual;
  return out;
}

// ---------------------------------------------------------------------------
// the two containment demonstrations
// ---------------------------------------------------------------------------
struct ContainmentVerdict {
  std::string quantity;
  bool divergent = false;
  double slope = 0.0;
  double residual = 0.0;
  double expected_slope = 0.0;  // zero for quantities expected to plateau
};

struct ContainmentConfig {
  SeminormParams indicator_params{0.75, 2.0, 2};  // sp = 1.5
  std::vector<double> indicator_radii{16.0, 32.0, 64.0, 128.0};
  SeminormParams power_params{0.4, 4.0, 2};  // sp = 1.6
  double power_growth = 0.5;
  // the close part converges slowly and the far part diverges slowly, so the
  // two probes need different (and large) radius ranges
  std::vector<double> power_close_radii{64.0, 128.0, 256.0, 512.0};
  std::vector<double> power_far_radii{1024.0, 2048.0, 4096.0, 8192.0};
  SeminormOptions options{};
};

struct ContainmentDemo {
  ContainmentVerdict indicator_unscreened;  // expect divergent, slope 2 - sp
  ContainmentVerdict indicator_close;       // expect plateau
  ContainmentVerdict indicator_far;         // expect plateau
  ContainmentVerdict power_close;           // expect plateau
  ContainmentVerdict power_far;             // expect divergent, slope ap - sp
  bool indicator_separation = false;        // unscreened diverges, screened pair finite
  bool power_separation = false;            // close finite, far diverges
};

inline ContainmentDemo containment_demo(const ContainmentConfig& cfg = {}) {
  const double sp_i = cfg.indicator_params.sp();
  if (!(sp_i > 1.0 && sp_i < 2.0))
    throw std::domain_error("containment_demo: indicator needs 1 < sp < 2");
  const double a = cfg.power_growth;
  const double p = cfg.power_params.p;
  const double sp_p = cfg.power_params.sp();
  cfg.power_params.require_trace_regime();
  if (!(a > 0.0)) throw std::domain_error("containment_demo: power growth must be positive");
  if (!((a - 1.0) * p < -1.0))
    throw std::domain_error("containment_demo: close part of the power would diverge (need a < 1 - 1/p)");
  if (!(a * p - sp_p > 0.0))
    throw std::domain_error("containment_demo: far part of the power would stay finite (need ap > sp)");

  const CatalogEntry indicator = catalog_heaviside();
  const CatalogEntry power = catalog_powerlaw_clamp(a);

  const auto run = [&](const CatalogEntry& g, ScreenedForm form, const SeminormParams& P,
                       const std::vector<double>& radii, double expected,
                       const std::string& label) {
    const DivergenceFit f = divergence_exponent(g, form, P, radii, cfg.options);
    ContainmentVerdict v;
    v.quantity = label;
    v.divergent = f.divergent;
    v.slope = f.fit.slope;
    v.residual = f.fit.residual;
    v.expected_slope = expected;
    return v;
  };

  ContainmentDemo demo;
  demo.indicator_unscreened =
      run(indicator, ScreenedForm::unscreened_truncated, cfg.indicator_params,
          cfg.indicator_radii, 2.0 - sp_i, "indicator|unscreened");
  demo.indicator_close = run(indicator, ScreenedForm::close, cfg.indicator_params,
                             cfg.indicator_radii, 0.0, "indicator|close");
  demo.indicator_far = run(indicator, ScreenedForm::far, cfg.indicator_params,
                           cfg.indicator_radii, 0.0, "indicator|far");
  demo.power_close = run(power, ScreenedForm::close, cfg.power_params,
                         cfg.power_close_radii, 0.0, "power|close");
  demo.power_far = run(power, ScreenedForm::far, cfg.power_params, cfg.power_far_radii,
                       a * p - sp_p, "power|far");
  demo.indicator_separation = demo.indicator_unscreened.divergent &&
                              !demo.indicator_close.divergent &&
                              !demo.indicator_far.divergent;
  demo.power_separation = !demo.power_close.divergent && demo.power_far.divergent;
  return demo;
}

}  // namespace fracstrip
