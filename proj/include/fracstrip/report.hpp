#pragma once
// Report types shared by the seminorm layer and the CLI.

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

#include "fracstrip/params.hpp"

namespace fracstrip {

enum class SeminormKind {
  gagliardo,
  close_screened,
  far_screened,
  slice_vertical,
  slice_horizontal_near,
  slice_horizontal_far,
  difference_trace,
  weighted_lp_trace,
};

inline const char* to_string(SeminormKind k) {
  switch (k) {
    case SeminormKind::gagliardo: return "gagliardo";
    case SeminormKind::close_screened: return "close_screened";
    case SeminormKind::far_screened: return "far_screened";
    case SeminormKind::slice_vertical: return "slice_vertical";
    case SeminormKind::slice_horizontal_near: return "slice_horizontal_near";
    case SeminormKind::slice_horizontal_far: return "slice_horizontal_far";
    case SeminormKind::difference_trace: return "difference_trace";
    case SeminormKind::weighted_lp_trace: return "weighted_lp_trace";
  }
  return "unknown";
}

inline SeminormKind seminorm_kind_from_string(std::string name) {
  std::replace(name.begin(), name.end(), '-', '_');
  // short command-line aliases
  if (name == "close") return SeminormKind::close_screened;
  if (name == "far") return SeminormKind::far_screened;
  if (name == "weighted_lp") return SeminormKind::weighted_lp_trace;
  for (SeminormKind k : {SeminormKind::gagliardo, SeminormKind::close_screened,
                         SeminormKind::far_screened, SeminormKind::slice_vertical,
                         SeminormKind::slice_horizontal_near, SeminormKind::slice_horizontal_far,
                         SeminormKind::difference_trace, SeminormKind::weighted_lp_trace}) {
    if (name == to_string(k)) return k;
  }
  throw std::invalid_argument("unknown seminorm kind: " + name);
}

struct SeminormReport {
  SeminormKind kind = SeminormKind::gagliardo;
  double value_p = 0.0;    // the p-th-power value (the integral itself)
  double seminorm = 0.0;   // value_p^(1/p)
  double refinement_delta = 0.0;
  double tail_bound = 0.0;
  bool converged = true;
  SeminormParams params;
  std::string domain_desc;
  std::optional<double> budget;  // set when the report feeds a budgeted check
};

inline SeminormReport make_report(SeminormKind kind, double value_p, double delta,
                                  double tail, bool converged, const SeminormParams& params,
                                  std::string domain_desc) {
  SeminormReport r;
  r.kind = kind;
  r.value_p = value_p;
  r.seminorm = value_p > 0.0 ? std::pow(value_p, 1.0 / params.p) : 0.0;
  r.refinement_delta = delta;
  r.tail_bound = tail;
  r.converged = converged;
  r.params = params;
  r.domain_desc = std::move(domain_desc);
  return r;
}

}  // namespace fracstrip
