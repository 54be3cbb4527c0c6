// Batch front end: evaluate seminorms, build extensions, run the verification
// suites, and dump spectral / truncation-rate diagnostics.  Reports go to
// stdout as JSON (with the fully resolved configuration embedded); CSV
// artifacts go under --out when given.
//
// Exit codes: 0 success, 2 convergence warning, 3 verification failure,
// 64 usage error, 1 any other error.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracstrip/fracstrip.hpp"
#include "json.hpp"

namespace fs = fracstrip;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitConvergence = 2;
constexpr int kExitVerifyFail = 3;
constexpr int kExitUsage = 64;

// options shared by every subcommand
struct CommonOpts {
  double s = 0.5;
  double p = 2.0;
  double lo = -8.0;
  double hi = 8.0;
  int cells = 24;
  int levels = 2;
  int outer_cells = 256;
  int per_octave = 16;
  int threads = 0;
  double rel_tol = 1e-2;
  std::string out_dir;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--s", o.s, "fractional order s in (0,1)");
  cmd->add_option("--p", o.p, "integrability exponent p > 1");
  cmd->add_option("--lo", o.lo, "lateral box lower end");
  cmd->add_option("--hi", o.hi, "lateral box upper end");
  cmd->add_option("--cells", o.cells, "cells per axis for the pair engine");
  cmd->add_option("--levels", o.levels, "refinement levels (>= 1)");
  cmd->add_option("--outer-cells", o.outer_cells, "outer cells for boundary kernels");
  cmd->add_option("--per-octave", o.per_octave, "radial cells per octave");
  cmd->add_option("--threads", o.threads, "worker threads (0 = all)");
  cmd->add_option("--rel-tol", o.rel_tol, "convergence threshold for refinement deltas");
  cmd->add_option("--out", o.out_dir, "directory for CSV artifacts");
}

fs::SeminormParams make_params(const CommonOpts& o) {
  fs::SeminormParams P;
  P.s = o.s;
  P.p = o.p;
  P.space_dim = 2;
  return P;
}

fs::SeminormOptions make_options(const CommonOpts& o) {
  fs::SeminormOptions opt;
  opt.quad.cells_per_axis = o.cells;
  opt.quad.refinement_levels = o.levels;
  opt.quad.outer_cells = o.outer_cells;
  opt.quad.radial_per_octave = o.per_octave;
  opt.quad.threads = o.threads;
  opt.quad.rel_tol = o.rel_tol;
  return opt;
}

ordered_json common_json(const CommonOpts& o) {
  return ordered_json{{"s", o.s},
                      {"p", o.p},
                      {"lo", o.lo},
                      {"hi", o.hi},
                      {"cells", o.cells},
                      {"levels", o.levels},
                      {"outer_cells", o.outer_cells},
                      {"per_octave", o.per_octave},
                      {"threads", o.threads},
                      {"rel_tol", o.rel_tol}};
}

ordered_json report_json(const fs::SeminormReport& r) {
  ordered_json j{{"kind", fs::to_string(r.kind)},
                 {"value_p", r.value_p},
                 {"seminorm", r.seminorm},
                 {"refinement_delta", r.refinement_delta},
                 {"tail_bound", r.tail_bound},
                 {"converged", r.converged},
                 {"domain", r.domain_desc}};
  if (r.budget) j["budget"] = *r.budget;
  return j;
}

void emit(const ordered_json& j) { std::cout << j.dump(2) << "\n"; }

std::string artifact_path(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

// boundary data: named catalog entry or grid CSV (grid data is clipped to its
// own box by construction, so the seminorm inner range stays on the box)
struct BoundarySource {
  fs::CatalogEntry entry;
  bool from_grid = false;
};

BoundarySource boundary_source(const std::string& fn, const std::string& grid_file) {
  BoundarySource src;
  if (!grid_file.empty()) {
    fs::GridFunction g = fs::GridFunction::read_csv_file(grid_file);
    if (g.dim != 1) throw std::invalid_argument("grid boundary data must be 1-D");
    fs::BoundaryFunction bf;
    bf.name = std::filesystem::path(grid_file).stem().string();
    bf.dim = 1;
    bf.eval = [g](const fs::Vec& x) { return g.interpolate(x); };
    src.entry = fs::wrap_boundary(std::move(bf), fs::DecayClass::bounded_jump);
    // edge-clamped continuation: treat the edge values as the two limits
    const double left = g.interpolate(g.node({0, 0, 0}));
    std::array<int, fs::kMaxDim> last{g.dims[0] - 1, 0, 0};
    const double right = g.interpolate(g.node(last));
    src.entry.tail_neg.limit = left;
    src.entry.tail_pos.limit = right;
    src.from_grid = true;
    return src;
  }
  src.entry = fs::boundary_entry(fn);
  return src;
}

const fs::BulkFunction& find_bulk(const std::vector<fs::BulkFunction>& cat,
                                  const std::string& name) {
  for (const auto& u : cat)
    if (u.name == name) return u;
  throw std::invalid_argument("unknown bulk function: " + name);
}

// one row of a verification table
struct CheckRow {
  std::string name;
  double lhs = 0.0;
  double rhs = 0.0;
  double budget = 0.0;
  bool pass = false;
  std::string note;
};

ordered_json row_json(const CheckRow& r) {
  ordered_json j{{"name", r.name}, {"lhs", r.lhs}, {"rhs", r.rhs},
                 {"budget", r.budget}, {"pass", r.pass}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

// ---------------------------------------------------------------------------
// seminorm
// ---------------------------------------------------------------------------
struct SeminormArgs {
  CommonOpts common;
  std::string kind = "gagliardo";
  std::string fn = "gaussian";
  std::string grid_file;
  std::string fn_plus, fn_minus;
  std::string bulk;
  double screen = 0.0;
  double b = 1.0;
  double r = 1.0;
  std::optional<double> truncate;
};

int run_seminorm(const SeminormArgs& a, bool& convergence_warn) {
  const fs::SeminormParams params = make_params(a.common);
  fs::SeminormOptions opt = make_options(a.common);
  if (a.truncate) opt.truncation_radius = a.truncate;
  const fs::Box outer = fs::interval(a.common.lo, a.common.hi);
  const fs::SeminormKind kind = fs::seminorm_kind_from_string(a.kind);

  fs::SeminormReport rep;
  switch (kind) {
    case fs::SeminormKind::gagliardo: {
      const BoundarySource src = boundary_source(a.fn, a.grid_file);
      if (src.from_grid) opt.inner = fs::InnerExtent::domain_box;
      rep = fs::gagliardo_boundary(src.entry, params, outer, opt);
      break;
    }
    case fs::SeminormKind::close_screened:
    case fs::SeminormKind::far_screened: {
      if (!(a.screen > 0.0))
        throw CLI::ValidationError("--screen must be positive for screened kinds");
      const BoundarySource src = boundary_source(a.fn, a.grid_file);
      if (src.from_grid) opt.inner = fs::InnerExtent::domain_box;
      const fs::Screen sc = fs::Screen::constant(a.screen);
      rep = (kind == fs::SeminormKind::close_screened)
                ? fs::close_screened(src.entry, sc, params, outer, opt)
                : fs::far_screened(src.entry, sc, params, outer, opt);
      break;
    }
    case fs::SeminormKind::slice_vertical:
    case fs::SeminormKind::slice_horizontal_near:
    case fs::SeminormKind::slice_horizontal_far: {
      if (a.bulk.empty()) throw CLI::ValidationError("slice kinds need --bulk");
      const fs::StripDomain dom = fs::StripDomain::flat(2, outer, a.b);
      const auto cat = fs::bulk_catalog(dom);
      const fs::BulkFunction& u = find_bulk(cat, a.bulk);
      if (kind == fs::SeminormKind::slice_vertical)
        rep = fs::slice_vertical(u, params, dom, opt);
      else if (kind == fs::SeminormKind::slice_horizontal_near)
        rep = fs::slice_horizontal_near(u, params, dom, opt);
      else
        rep = fs::slice_horizontal_far(u, params, dom, opt);
      break;
    }
    case fs::SeminormKind::difference_trace: {
      if (a.fn_plus.empty() || a.fn_minus.empty())
        throw CLI::ValidationError("difference-trace needs --fn-plus and --fn-minus");
      const fs::StripDomain dom = fs::StripDomain::flat(2, outer, a.b);
      rep = fs::difference_trace(fs::boundary_entry(a.fn_plus).fn,
                                 fs::boundary_entry(a.fn_minus).fn, params, dom, opt);
      break;
    }
    case fs::SeminormKind::weighted_lp_trace: {
      if (!(a.screen > 0.0))
        throw CLI::ValidationError("--screen must be positive for weighted-lp");
      rep = fs::weighted_lp_trace(fs::boundary_entry(a.fn).fn, a.r,
                                  fs::Screen::constant(a.screen), params, outer, opt);
      break;
    }
  }

  ordered_json config = common_json(a.common);
  config["kind"] = a.kind;
  config["fn"] = a.fn;
  if (!a.grid_file.empty()) config["grid"] = a.grid_file;
  if (!a.bulk.empty()) config["bulk"] = a.bulk;
  if (!a.fn_plus.empty()) config["fn_plus"] = a.fn_plus;
  if (!a.fn_minus.empty()) config["fn_minus"] = a.fn_minus;
  if (a.screen > 0.0) config["screen"] = a.screen;
  config["b"] = a.b;
  if (a.truncate) config["truncate"] = *a.truncate;

  emit(ordered_json{{"command", "seminorm"}, {"config", config},
                    {"result", report_json(rep)}});
  if (!rep.converged) convergence_warn = true;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// extend
// ---------------------------------------------------------------------------
struct ExtendArgs {
  CommonOpts common;
  std::string fn_minus = "gaussian";
  std::string fn_plus;
  std::optional<double> b;
  double eta_base = 0.0;  // > 0 selects the graph-domain variant
  double eta_amp = 0.0;
  double eta_freq = 0.25;
  double delta = 0.0;  // trace probe height; default b/50
  int nx = 65, nz = 33;
  bool bound_check = false;
};

int run_extend(const ExtendArgs& a, bool& convergence_warn) {
  const fs::SeminormParams params = make_params(a.common);
  const fs::SeminormOptions opt = make_options(a.common);
  const fs::Box outer = fs::interval(a.common.lo, a.common.hi);
  const fs::Mollifier phi = fs::Mollifier::standard(1);
  const fs::Cutoff psi;

  ordered_json config = common_json(a.common);
  config["fn_minus"] = a.fn_minus;
  if (!a.fn_plus.empty()) config["fn_plus"] = a.fn_plus;

  ordered_json result;
  fs::BulkFunction u;
  fs::StripDomain dom;

  if (a.eta_base > 0.0) {
    // graph strip under eta(x) = base + amp sin(2 pi freq x)
    const double base = a.eta_base, amp = a.eta_amp, freq = a.eta_freq;
    if (!(base > std::abs(amp)))
      throw CLI::ValidationError("--eta-base must exceed |--eta-amp|");
    const auto eta_fn = [base, amp, freq](const fs::Vec& x) {
      return base + amp * std::sin(2.0 * M_PI * freq * x[0]);
    };
    const double lip = std::abs(amp) * 2.0 * M_PI * freq;
    const fs::LipschitzProfile eta =
        fs::LipschitzProfile::certify(eta_fn, 1, outer, lip * 1.01 + 1e-9);
    dom = fs::StripDomain::graph(2, outer, eta);
    const fs::CatalogEntry fm = fs::boundary_entry(a.fn_minus);
    u = fs::extend_general(fm.fn, dom, phi, params);
    const double delta = (a.delta > 0.0) ? a.delta : base / 50.0;
    const auto order = fs::trace_order(u, fm.fn, dom, fs::TraceSide::bottom, delta);
    config["eta_base"] = base;
    config["eta_amp"] = amp;
    config["eta_freq"] = freq;
    config["delta"] = delta;
    result["variant"] = "general";
    result["trace_bottom"] = ordered_json{{"err_coarse", order.err_coarse},
                                          {"err_fine", order.err_fine},
                                          {"order", order.order}};
  } else {
    if (!a.b) throw CLI::ValidationError("flat extension needs --b");
    dom = fs::StripDomain::flat(2, outer, *a.b);
    const fs::CatalogEntry fm = fs::boundary_entry(a.fn_minus);
    const double delta = (a.delta > 0.0) ? a.delta : *a.b / 50.0;
    config["b"] = *a.b;
    config["delta"] = delta;
    if (a.fn_plus.empty()) {
      u = fs::extend_flat(fm.fn, dom, phi, params);
      result["variant"] = "flat one-sided";
      const auto order = fs::trace_order(u, fm.fn, dom, fs::TraceSide::bottom, delta);
      result["trace_bottom"] = ordered_json{{"err_coarse", order.err_coarse},
                                            {"err_fine", order.err_fine},
                                            {"order", order.order}};
    } else {
      const fs::CatalogEntry fp = fs::boundary_entry(a.fn_plus);
      u = fs::extend_two_sided_flat(fp.fn, fm.fn, dom, phi, psi, params);
      result["variant"] = "flat two-sided";
      const auto bottom = fs::trace_order(u, fm.fn, dom, fs::TraceSide::bottom, delta);
      const auto top = fs::trace_order(u, fp.fn, dom, fs::TraceSide::top, delta);
      result["trace_bottom"] = ordered_json{{"err_coarse", bottom.err_coarse},
                                            {"err_fine", bottom.err_fine},
                                            {"order", bottom.order}};
      result["trace_top"] = ordered_json{{"err_coarse", top.err_coarse},
                                         {"err_fine", top.err_fine},
                                         {"order", top.order}};
      if (a.bound_check) {
        const auto hyp = fs::extension_hypothesis_flat(fp, fm, params, dom, opt);
        const auto G = fs::gagliardo_bulk(u, params, dom, opt);
        if (!G.converged) convergence_warn = true;
        const double sum = hyp.seminorm_sum(params.p);
        result["bound_check"] = ordered_json{
            {"bulk_seminorm", G.seminorm},
            {"hypothesis_sum", sum},
            {"ratio", sum > 0.0 ? G.seminorm / sum : 0.0},
            {"budget", fs::budgets::extension_flat}};
      }
    }
  }

  if (!a.common.out_dir.empty()) {
    const double height = dom.max_height();
    const fs::Vec origin{a.common.lo, 0.0, 0.0};
    const fs::Vec spacing{(a.common.hi - a.common.lo) / (a.nx - 1),
                          height / (a.nz - 1), 1.0};
    const auto inside = [&dom](const fs::Vec& x) { return dom.contains(x); };
    const fs::GridFunction grid = fs::GridFunction::sample(
        2, {a.nx, a.nz, 1}, origin, spacing, u.eval, inside);
    const std::string path = artifact_path(a.common.out_dir, "extension.csv");
    grid.write_csv_file(path);
    result["grid_csv"] = path;
  }

  emit(ordered_json{{"command", "extend"}, {"config", config}, {"result", result}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------
struct VerifyArgs {
  CommonOpts common;
  std::string suite = "flat";
  double b = 1.0;
};

void verify_flat(const VerifyArgs& a, std::vector<CheckRow>& rows, bool& warn) {
  const fs::SeminormParams params = make_params(a.common);
  fs::SeminormOptions opt = make_options(a.common);
  const fs::Box outer = fs::interval(a.common.lo, a.common.hi);
  const fs::StripDomain dom = fs::StripDomain::flat(2, outer, a.b);
  const double sp = params.sp();

  for (const auto& u : fs::bulk_catalog(dom)) {
    const auto eq = fs::equivalence_check_flat(u, params, dom, opt);
    if (!eq.converged) warn = true;
    rows.push_back({u.name + "|slice/bulk", eq.ratio_slice_over_g,
                    fs::budgets::flat_equivalence_ratio,
                    fs::budgets::flat_equivalence_ratio,
                    eq.ratio_slice_over_g <= fs::budgets::flat_equivalence_ratio, ""});
    rows.push_back({u.name + "|bulk/slice", eq.ratio_g_over_slice,
                    fs::budgets::flat_equivalence_ratio,
                    fs::budgets::flat_equivalence_ratio,
                    eq.ratio_g_over_slice <= fs::budgets::flat_equivalence_ratio, ""});

    const auto diff = fs::difference_trace(u, params, dom, opt);
    const double bound =
        fs::budgets::difference_trace_flat * std::pow(a.b, sp - 1.0) * eq.gagliardo;
    rows.push_back({u.name + "|difference-trace", diff.value_p, bound,
                    fs::budgets::difference_trace_flat, diff.value_p <= bound, ""});
  }
}

void verify_general(const VerifyArgs& a, std::vector<CheckRow>& rows, bool& warn) {
  const fs::SeminormParams params = make_params(a.common);
  fs::SeminormOptions opt = make_options(a.common);
  const fs::Box outer = fs::interval(a.common.lo, a.common.hi);

  const auto profile = [&](double base, double amp, double freq) {
    const auto fn = [base, amp, freq](const fs::Vec& x) {
      return base + amp * std::sin(2.0 * M_PI * freq * x[0]);
    };
    const double lip = std::abs(amp) * 2.0 * M_PI * freq;
    return fs::LipschitzProfile::certify(fn, 1, outer, lip * 1.01 + 1e-9);
  };

  const std::vector<std::pair<std::string, fs::LipschitzProfile>> profiles = {
      {"wave-shallow", profile(1.0, 0.15, 0.25)},
      {"wave-steep", profile(1.5, 0.5, 0.2)}};
  for (const auto& [pname, eta] : profiles) {
    const fs::StripDomain dom = fs::StripDomain::graph(2, outer, eta);
    for (const auto& u : fs::bulk_catalog(dom)) {
      if (u.name != "separable" && u.name != "vertical") continue;
      const auto eq = fs::equivalence_check_general(u, params, dom, opt);
      if (!eq.converged) warn = true;
      rows.push_back({pname + "/" + u.name + "|slice/bulk", eq.ratio_slice_over_g,
                      fs::budgets::general_equivalence_ratio,
                      fs::budgets::general_equivalence_ratio,
                      eq.ratio_slice_over_g <= fs::budgets::general_equivalence_ratio, ""});
      rows.push_back({pname + "/" + u.name + "|restricted/slice", eq.ratio_g_over_slice,
                      fs::budgets::general_equivalence_ratio,
                      fs::budgets::general_equivalence_ratio,
                      eq.ratio_g_over_slice <= fs::budgets::general_equivalence_ratio, ""});
    }
  }

  // screen-restriction inequalities for a decaying catalog function
  const fs::CatalogEntry g = fs::boundary_entry("gaussian");
  const fs::Screen eta1 = fs::Screen::constant(1.0);
  const fs::Screen eta2 = fs::Screen::profile(profiles[0].second, 2.0);
  const auto rp = fs::restrict_profile(g, eta1, eta2, params, outer, opt);
  rows.push_back({"restrict|far", rp.far_eta2, rp.far_bound, 1.0, rp.far_inequality, ""});
  rows.push_back(
      {"restrict|close", rp.close_eta2, rp.close_eta1, 1.0, rp.close_inequality, ""});
}

void verify_spectral(const VerifyArgs& a, std::vector<CheckRow>& rows, bool& warn) {
  (void)warn;
  fs::SpectralConfig cfg;
  const fs::SeminormOptions opt = make_options(a.common);
  const double s = a.common.s;
  if (!(s > 0.5 && s < 1.0))
    throw CLI::ValidationError("verify spectral needs --s in (1/2, 1)");
  std::vector<fs::CatalogEntry> family = {fs::boundary_entry("gaussian"),
                                          fs::boundary_entry("gaussian:0.5")};
  for (std::uint64_t seed : {11u, 12u, 13u})
    family.push_back(fs::wrap_boundary(fs::band_limited_sample(seed)));
  for (const auto& g : family) {
    const auto eq = fs::equivalence_check_spectral(g, s, cfg,
                                                   fs::interval(a.common.lo, a.common.hi), opt);
    const double B = fs::budgets::spectral_ratio;
    const bool pass = eq.ratio >= 1.0 / B && eq.ratio <= B;
    rows.push_back({g.fn.name + "|direct/fourier", eq.ratio, B, B, pass, ""});
  }
  const auto slope = fs::multiplier_slope(0.75);
  rows.push_back({"multiplier-slope|s=0.75", slope.slope, 2.0 * 0.75 - 1.0, 0.05,
                  std::abs(slope.slope - 0.5) <= 0.05, ""});
  const auto regime = fs::multiplier_regime(s);
  const bool is60 = std::abs(s - 0.6) < 1e-9;
  const double sq_lo = is60 ? fs::budgets::regime_s060_over_square_lo
                            : fs::budgets::regime_s075_over_square_lo;
  const double sq_hi = is60 ? fs::budgets::regime_s060_over_square_hi
                            : fs::budgets::regime_s075_over_square_hi;
  const double pw_lo = is60 ? fs::budgets::regime_s060_over_power_lo
                            : fs::budgets::regime_s075_over_power_lo;
  const double pw_hi = is60 ? fs::budgets::regime_s060_over_power_hi
                            : fs::budgets::regime_s075_over_power_hi;
  rows.push_back({"regime|m-over-square", regime.over_square_min, sq_lo, sq_hi,
                  regime.over_square_min >= sq_lo && regime.over_square_max <= sq_hi, ""});
  rows.push_back({"regime|m-over-power", regime.over_power_min, pw_lo, pw_hi,
                  regime.over_power_min >= pw_lo && regime.over_power_max <= pw_hi, ""});
}

void verify_containment(const VerifyArgs& a, std::vector<CheckRow>& rows, bool& warn) {
  (void)warn;
  // the containment chain is a fixed demonstration at its own pinned
  // parameters (indicator at sp = 3/2, power law at sp = 8/5); only the mesh
  // options follow the command line
  fs::ContainmentConfig cfg;
  cfg.options = make_options(a.common);
  const auto demo = fs::containment_demo(cfg);
  const auto verdict = [&rows](const fs::ContainmentVerdict& v, bool want_divergent) {
    const bool slope_ok =
        !want_divergent || std::abs(v.slope - v.expected_slope) <= 0.1;
    rows.push_back({v.quantity, v.slope, v.expected_slope, 0.1,
                    v.divergent == want_divergent && slope_ok,
                    want_divergent ? "expect divergent" : "expect finite"});
  };
  verdict(demo.indicator_unscreened, true);
  verdict(demo.indicator_close, false);
  verdict(demo.indicator_far, false);
  verdict(demo.power_close, false);
  verdict(demo.power_far, true);
}

int run_verify(const VerifyArgs& a, bool& convergence_warn) {
  std::vector<CheckRow> rows;
  bool warn = false;
  if (a.suite == "flat")
    verify_flat(a, rows, warn);
  else if (a.suite == "general")
    verify_general(a, rows, warn);
  else if (a.suite == "spectral")
    verify_spectral(a, rows, warn);
  else if (a.suite == "containment")
    verify_containment(a, rows, warn);
  else if (a.suite == "all") {
    verify_flat(a, rows, warn);
    verify_general(a, rows, warn);
    verify_spectral(a, rows, warn);
    verify_containment(a, rows, warn);
  } else {
    throw CLI::ValidationError("unknown suite: " + a.suite +
                               " (expected flat|general|spectral|containment|all)");
  }

  ordered_json config = common_json(a.common);
  config["suite"] = a.suite;
  config["b"] = a.b;
  ordered_json checks = ordered_json::array();
  bool all_pass = true;
  for (const auto& r : rows) {
    checks.push_back(row_json(r));
    all_pass = all_pass && r.pass;
  }
  emit(ordered_json{{"command", "verify"},
                    {"config", config},
                    {"checks", checks},
                    {"all_pass", all_pass}});
  if (!all_pass) return kExitVerifyFail;
  if (warn) convergence_warn = true;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// spectral
// ---------------------------------------------------------------------------
struct SpectralArgs {
  CommonOpts common;
  std::string fn = "gaussian";
  std::size_t samples = 4096;
  double spacing = 1.0 / 64.0;
  bool window = false;
  bool profile = false;
  double xi_lo = 0.01, xi_hi = 64.0;
  int xi_count = 49;
};

int run_spectral(const SpectralArgs& a, bool& convergence_warn) {
  (void)convergence_warn;
  const double s = a.common.s;
  fs::SpectralConfig cfg;
  cfg.sample_count = a.samples;
  cfg.spacing = a.spacing;
  cfg.window = a.window;

  const fs::CatalogEntry g = fs::boundary_entry(a.fn);
  const auto eq = fs::equivalence_check_spectral(
      g, s, cfg, fs::interval(a.common.lo, a.common.hi), make_options(a.common));

  ordered_json config = common_json(a.common);
  config["fn"] = a.fn;
  config["samples"] = a.samples;
  config["spacing"] = a.spacing;
  config["window"] = a.window;

  ordered_json result{{"fourier_value", eq.fourier_p},
                      {"direct_value", eq.direct_p},
                      {"ratio", eq.ratio},
                      {"edge_fraction", eq.fourier.edge_fraction},
                      {"nyquist_fraction", eq.fourier.nyquist_fraction},
                      {"window_warning", eq.fourier.window_warning},
                      {"close", report_json(eq.close)},
                      {"far", report_json(eq.far)}};

  if (a.profile) {
    const auto xs = fs::log_spaced(a.xi_lo, a.xi_hi, a.xi_count);
    const auto prof = fs::multiplier_profile(s, xs);
    if (!a.common.out_dir.empty()) {
      const std::string path = artifact_path(a.common.out_dir, "multiplier.csv");
      std::ofstream out(path);
      out << "xi,m\n";
      out.precision(17);
      for (std::size_t i = 0; i < prof.xi.size(); ++i)
        out << prof.xi[i] << "," << prof.m[i] << "\n";
      result["multiplier_csv"] = path;
    }
    const auto slope = fs::multiplier_slope(s);
    result["multiplier_slope"] = ordered_json{{"slope", slope.slope},
                                              {"intercept", slope.intercept},
                                              {"residual", slope.residual},
                                              {"asymptote", 2.0 * s - 1.0}};
  }

  emit(ordered_json{{"command", "spectral"}, {"config", config}, {"result", result}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// rates
// ---------------------------------------------------------------------------
struct RatesArgs {
  CommonOpts common;
  std::string fn = "heaviside";
  std::string form = "unscreened";
  std::vector<double> radii = {16.0, 32.0, 64.0, 128.0};
};

int run_rates(const RatesArgs& a, bool& convergence_warn) {
  (void)convergence_warn;
  const fs::SeminormParams params = make_params(a.common);
  const fs::SeminormOptions opt = make_options(a.common);
  fs::ScreenedForm form;
  if (a.form == "unscreened")
    form = fs::ScreenedForm::unscreened_truncated;
  else if (a.form == "close")
    form = fs::ScreenedForm::close;
  else if (a.form == "far")
    form = fs::ScreenedForm::far;
  else
    throw CLI::ValidationError("unknown form: " + a.form + " (unscreened|close|far)");

  const auto fit =
      fs::divergence_exponent(fs::boundary_entry(a.fn), form, params, a.radii, opt);

  ordered_json config = common_json(a.common);
  config["fn"] = a.fn;
  config["form"] = a.form;
  config["radii"] = a.radii;

  ordered_json result{{"radii", fit.radii},
                      {"values", fit.values},
                      {"slope", fit.fit.slope},
                      {"residual", fit.fit.residual},
                      {"divergent", fit.divergent}};
  if (!a.common.out_dir.empty()) {
    const std::string path = artifact_path(a.common.out_dir, "rates.csv");
    std::ofstream out(path);
    out << "radius,value_p\n";
    out.precision(17);
    for (std::size_t i = 0; i < fit.radii.size(); ++i)
      out << fit.radii[i] << "," << fit.values[i] << "\n";
    result["rates_csv"] = path;
  }
  emit(ordered_json{{"command", "rates"}, {"config", config}, {"result", result}});
  return kExitOk;
}

// ---------------------------------------------------------------------------
// catalog
// ---------------------------------------------------------------------------
int run_catalog() {
  ordered_json boundary = ordered_json::array();
  for (const auto& e : fs::boundary_catalog()) {
    ordered_json j{{"name", e.fn.name},
                   {"dim", e.fn.dim},
                   {"support_radius", e.support_radius},
                   {"breakpoints", e.fn.breakpoints}};
    boundary.push_back(j);
  }
  const fs::StripDomain dom = fs::StripDomain::flat(2, fs::interval(-1.0, 1.0), 1.0);
  ordered_json bulk = ordered_json::array();
  for (const auto& u : fs::bulk_catalog(dom)) bulk.push_back(u.name);
  emit(ordered_json{{"command", "catalog"},
                    {"boundary", boundary},
                    {"bulk", bulk},
                    {"parametrized", "constant:c gaussian:sigma bump:r powerlaw_clamp:a sine_packet:freq"}});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"screened fractional Sobolev seminorms on strip-like domains"};
  app.require_subcommand(1);
  app.set_config("--config", "", "flat key=value config file; one [section] per subcommand");

  SeminormArgs sa;
  CLI::App* cmd_seminorm = app.add_subcommand("seminorm", "evaluate one seminorm");
  add_common(cmd_seminorm, sa.common);
  cmd_seminorm->add_option("--kind", sa.kind,
                           "gagliardo|close|far|slice-vertical|slice-horizontal-near|"
                           "slice-horizontal-far|difference-trace|weighted-lp");
  cmd_seminorm->add_option("--fn", sa.fn, "catalog boundary function (name or name:arg)");
  cmd_seminorm->add_option("--grid", sa.grid_file, "boundary data from a grid CSV");
  cmd_seminorm->add_option("--fn-plus", sa.fn_plus, "top data for difference-trace");
  cmd_seminorm->add_option("--fn-minus", sa.fn_minus, "bottom data for difference-trace");
  cmd_seminorm->add_option("--bulk", sa.bulk, "catalog bulk function for slice kinds");
  cmd_seminorm->add_option("--screen", sa.screen, "constant screen height");
  cmd_seminorm->add_option("--b", sa.b, "strip height for slice/difference kinds");
  cmd_seminorm->add_option("--r", sa.r, "cap for weighted-lp");
  double trunc = 0.0;
  cmd_seminorm->add_option("--truncate", trunc, "lateral truncation radius");

  ExtendArgs ea;
  CLI::App* cmd_extend = app.add_subcommand("extend", "build a mollified extension");
  add_common(cmd_extend, ea.common);
  cmd_extend->add_option("--fn-minus", ea.fn_minus, "bottom boundary data");
  cmd_extend->add_option("--fn-plus", ea.fn_plus, "top boundary data (two-sided)");
  double bflag = 0.0;
  cmd_extend->add_option("--b", bflag, "flat strip height");
  cmd_extend->add_option("--eta-base", ea.eta_base, "graph profile base height");
  cmd_extend->add_option("--eta-amp", ea.eta_amp, "graph profile wave amplitude");
  cmd_extend->add_option("--eta-freq", ea.eta_freq, "graph profile wave frequency");
  cmd_extend->add_option("--delta", ea.delta, "trace probe height");
  cmd_extend->add_option("--nx", ea.nx, "artifact grid: lateral nodes");
  cmd_extend->add_option("--nz", ea.nz, "artifact grid: vertical nodes");
  cmd_extend->add_flag("--bound-check", ea.bound_check,
                       "compare the bulk seminorm against the hypothesis sum");

  VerifyArgs va;
  CLI::App* cmd_verify = app.add_subcommand("verify", "run a verification suite");
  add_common(cmd_verify, va.common);
  cmd_verify->add_option("suite", va.suite, "flat|general|spectral|containment|all");
  cmd_verify->add_option("--b", va.b, "strip height for the flat suite");

  SpectralArgs pa;
  CLI::App* cmd_spectral = app.add_subcommand("spectral", "fourier-side diagnostics");
  add_common(cmd_spectral, pa.common);
  cmd_spectral->add_option("--fn", pa.fn, "catalog boundary function");
  cmd_spectral->add_option("--samples", pa.samples, "sample count (power of two)");
  cmd_spectral->add_option("--spacing", pa.spacing, "sample spacing");
  cmd_spectral->add_flag("--window", pa.window, "apply a raised-cosine taper");
  cmd_spectral->add_flag("--profile", pa.profile, "also fit the multiplier profile");
  cmd_spectral->add_option("--xi-lo", pa.xi_lo, "profile grid start");
  cmd_spectral->add_option("--xi-hi", pa.xi_hi, "profile grid end");
  cmd_spectral->add_option("--xi-count", pa.xi_count, "profile grid size");

  RatesArgs ra;
  CLI::App* cmd_rates = app.add_subcommand("rates", "truncation growth exponents");
  add_common(cmd_rates, ra.common);
  cmd_rates->add_option("--fn", ra.fn, "catalog boundary function");
  cmd_rates->add_option("--form", ra.form, "unscreened|close|far");
  cmd_rates->add_option("--radii", ra.radii, "geometric truncation radii")->delimiter(',');

  CLI::App* cmd_catalog = app.add_subcommand("catalog", "list catalog functions");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  bool convergence_warn = false;
  try {
    int rc = kExitOk;
    if (cmd_seminorm->parsed()) {
      SeminormArgs args = sa;
      if (cmd_seminorm->count("--truncate") > 0) args.truncate = trunc;
      rc = run_seminorm(args, convergence_warn);
    } else if (cmd_extend->parsed()) {
      ExtendArgs args = ea;
      if (cmd_extend->count("--b") > 0) args.b = bflag;
      rc = run_extend(args, convergence_warn);
    } else if (cmd_verify->parsed()) {
      rc = run_verify(va, convergence_warn);
    } else if (cmd_spectral->parsed()) {
      rc = run_spectral(pa, convergence_warn);
    } else if (cmd_rates->parsed()) {
      rc = run_rates(ra, convergence_warn);
    } else if (cmd_catalog->parsed()) {
      rc = run_catalog();
    }
    if (rc != kExitOk) return rc;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitError;
  }
  return convergence_warn ? kExitConvergence : kExitOk;
}
