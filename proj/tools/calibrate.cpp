// Measures the empirical suprema that back the frozen envelopes in
// include/fracstrip/budgets.hpp.  Run manually after any change to the
// quadrature defaults or the catalog; paste twice the printed maxima into the
// budgets header.

#include <cstdio>
#include <vector>

#include "fracstrip/fracstrip.hpp"

namespace fs = fracstrip;

int main() {
  const fs::Box outer = fs::interval(-8.0, 8.0);
  fs::SeminormParams P;
  P.s = 0.6;
  P.p = 2.0;
  P.space_dim = 2;
  const fs::SeminormOptions opt;

  // --- flat equivalence + trace bounds over the bulk catalog -------------
  {
    const fs::StripDomain dom = fs::StripDomain::flat(2, outer, 1.0);
    double worst_fwd = 0.0, worst_rev = 0.0;
    double worst_trace_close = 0.0, worst_trace_far = 0.0;
    for (const auto& u : fs::bulk_catalog(dom)) {
      const auto eq = fs::equivalence_check_flat(u, P, dom, opt);
      worst_fwd = std::max(worst_fwd, eq.ratio_slice_over_g);
      worst_rev = std::max(worst_rev, eq.ratio_g_over_slice);
      std::printf("flat %-16s S/G %.4f G/S %.4f (converged %d)\n", u.name.c_str(),
                  eq.ratio_slice_over_g, eq.ratio_g_over_slice, eq.converged);

      // traces of the restriction at the two boundaries
      fs::SeminormOptions topt = opt;
      topt.inner = fs::InnerExtent::domain_box;
      const fs::Screen sc = fs::Screen::constant(dom.height);
      for (const bool top : {false, true}) {
        fs::BoundaryFunction f;
        f.name = u.name + (top ? "|top" : "|bottom");
        f.dim = 1;
        const double h = top ? dom.height : 0.0;
        f.eval = [u, h](const fs::Vec& x) { return u(x[0], h); };
        const auto e = fs::wrap_boundary(f);
        const double cl = fs::close_screened(e, sc, P, outer, topt).value_p;
        const double fa = fs::far_screened(e, sc, P, outer, topt).value_p;
        if (eq.gagliardo > 1e-12) {
          worst_trace_close = std::max(worst_trace_close, cl / eq.gagliardo);
          worst_trace_far = std::max(worst_trace_far, fa / eq.gagliardo);
        }
      }
    }
    std::printf("== flat_equivalence_ratio supremum: %.4f\n", std::max(worst_fwd, worst_rev));
    std::printf("== trace_close supremum: %.4f\n", worst_trace_close);
    std::printf("== trace_far supremum: %.4f\n", worst_trace_far);
  }

  // --- difference trace across heights ------------------------------------
  {
    double worst = 0.0;
    for (const double b : {0.5, 1.0, 2.0}) {
      const fs::StripDomain dom = fs::StripDomain::flat(2, outer, b);
      for (const auto& u : fs::bulk_catalog(dom)) {
        const auto eq = fs::gagliardo_bulk(u, P, dom, opt);
        if (eq.value_p < 1e-12) continue;
        const auto diff = fs::difference_trace(u, P, dom, opt);
        const double ratio = diff.value_p / (std::pow(b, P.sp() - 1.0) * eq.value_p);
        worst = std::max(worst, ratio);
        std::printf("difference b=%.1f %-16s ratio %.4f\n", b, u.name.c_str(), ratio);
      }
    }
    std::printf("== difference_trace_flat supremum: %.4f\n", worst);
  }

  // --- general equivalence -------------------------------------------------
  {
    double worst = 0.0;
    const auto mkprofile = [&](double base, double amp, double freq) {
      const auto fn = [base, amp, freq](const fs::Vec& x) {
        return base + amp * std::sin(2.0 * M_PI * freq * x[0]);
      };
      const double lip = std::abs(amp) * 2.0 * M_PI * freq;
      return fs::LipschitzProfile::certify(fn, 1, outer, lip * 1.01 + 1e-9);
    };
    for (const auto& [base, amp, freq] :
         std::vector<std::tuple<double, double, double>>{{1.0, 0.15, 0.25}, {1.5, 0.5, 0.2}}) {
      const fs::StripDomain dom = fs::StripDomain::graph(2, outer, mkprofile(base, amp, freq));
      for (const auto& u : fs::bulk_catalog(dom)) {
        if (u.name != "separable" && u.name != "vertical") continue;
        const auto eq = fs::equivalence_check_general(u, P, dom, opt);
        worst = std::max(worst, std::max(eq.ratio_slice_over_g, eq.ratio_g_over_slice));
        std::printf("general base=%.1f %-12s S/G %.4f Gr/S %.4f\n", base, u.name.c_str(),
                    eq.ratio_slice_over_g, eq.ratio_g_over_slice);
      }
    }
    std::printf("== general_equivalence_ratio supremum: %.4f\n", worst);
  }

  // --- two-sided extension bound -------------------------------------------
  // the bulk seminorm of a mollified extension pays ~10^3 boundary samples per
  // point, so it runs on the same reduced pair grid the acceptance suite uses
  {
    fs::SeminormOptions ext_opt;
    ext_opt.quad.cells_per_axis = 12;
    const fs::StripDomain dom = fs::StripDomain::flat(2, outer, 1.0);
    const fs::Mollifier phi = fs::Mollifier::standard(1);
    const fs::Cutoff psi;
    const std::vector<std::pair<std::string, std::string>> pairs = {
        {"gaussian", "constant:0"},
        {"bump", "gaussian"},
        {"sine_packet", "bump"},
        {"gaussian:0.5", "sine_packet"}};
    double worst = 0.0;
    for (const auto& [top, bottom] : pairs) {
      const auto fp = fs::boundary_entry(top);
      const auto fm = fs::boundary_entry(bottom);
      const auto u = fs::extend_two_sided_flat(fp.fn, fm.fn, dom, phi, psi, P);
      const auto G = fs::gagliardo_bulk(u, P, dom, ext_opt);
      const auto hyp = fs::extension_hypothesis_flat(fp, fm, P, dom, opt);
      const double sum = hyp.seminorm_sum(P.p);
      const double ratio = (sum > 0.0) ? G.seminorm / sum : 0.0;
      worst = std::max(worst, ratio);
      std::printf("extension %s/%s |u| %.4f hyp %.4f ratio %.4f\n", top.c_str(),
                  bottom.c_str(), G.seminorm, sum, ratio);
    }
    std::printf("== extension_flat supremum: %.4f\n", worst);
  }

  // --- lateral / vertical increment bounds ----------------------------------
  {
    const fs::StripDomain dom = fs::StripDomain::flat(2, outer, 1.0);
    const fs::Mollifier phi = fs::Mollifier::standard(1);
    double worst = 0.0;
    for (const char* name : {"gaussian", "sine_packet"}) {
      const auto g = fs::boundary_entry(name);
      const auto u = fs::extend_flat(g.fn, dom, phi, P);
      const auto samples = fs::lateral_samples(2026, 100, outer, dom.height);
      const auto rep = fs::lateral_bound_check(u, g.fn, samples, P);
      worst = std::max(worst, rep.max_ratio);
      std::printf("lateral %-12s max ratio %.4f degenerate %d\n", name, rep.max_ratio,
                  rep.degenerate);
    }
    std::printf("== lateral_bound supremum: %.4f\n", worst);

    double worst_v = 0.0;
    const std::vector<std::pair<std::function<double(double)>, std::function<double(double)>>>
        fns = {{[](double y) { return y; }, [](double) { return 1.0; }},
               {[](double y) { return y * y; }, [](double y) { return 2.0 * y; }},
               {[](double y) { return std::sin(y); }, [](double y) { return std::cos(y); }}};
    for (const auto& [u1, du1] : fns) {
      const auto rep = fs::vertical_bound_check(u1, du1, 1.0, P);
      worst_v = std::max(worst_v, rep.ratio);
      std::printf("vertical lhs %.5f rhs %.5f ratio %.4f\n", rep.lhs, rep.rhs, rep.ratio);
    }
    std::printf("== vertical_bound supremum: %.4f\n", worst_v);
  }

  // --- spectral ratios + multiplier regime windows ---------------------------
  {
    fs::SpectralConfig cfg;
    for (const double s : {0.6, 0.75}) {
      double lo = 1e300, hi = 0.0;
      std::vector<fs::CatalogEntry> family = {fs::boundary_entry("gaussian"),
                                              fs::boundary_entry("gaussian:0.5")};
      for (const std::uint64_t seed : {21, 22, 23, 24, 25})
        family.push_back(fs::wrap_boundary(fs::band_limited_sample(seed)));
      for (const auto& g : family) {
        const auto eq = fs::equivalence_check_spectral(g, s, cfg, outer, opt);
        lo = std::min(lo, eq.ratio);
        hi = std::max(hi, eq.ratio);
        std::printf("spectral s=%.2f %-18s ratio %.4f\n", s, g.fn.name.c_str(), eq.ratio);
      }
      std::printf("== spectral ratio range s=%.2f: [%.4f, %.4f]\n", s, lo, hi);
      const auto reg = fs::multiplier_regime(s);
      std::printf("== regime s=%.2f m/xi^2 [%.4f, %.4f]  m/xi^2s [%.4f, %.4f]\n", s,
                  reg.over_square_min, reg.over_square_max, reg.over_power_min,
                  reg.over_power_max);
      const auto slope = fs::multiplier_slope(s);
      std::printf("== slope s=%.2f fitted %.4f target %.4f residual %.5f\n", s, slope.slope,
                  2.0 * s - 1.0, slope.residual);
    }
  }
  return 0;
}
