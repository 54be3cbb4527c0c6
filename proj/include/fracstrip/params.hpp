#pragma once
// Seminorm parameter bundle. The trace theory needs sp > 1 (below that the
// strip has no continuous trace); ops that build traces/extensions assert
// trace_regime(), plain seminorms only need 0<s<1, 1<=p<inf.

#include <stdexcept>
#include <string>

namespace fracstrip {

struct SeminormParams {
  double s = 0.5;   // smoothness order, 0 < s < 1
  double p = 2.0;   // integrability, 1 <= p < inf
  int space_dim = 2;  // N: strip lives in R^N, boundary data on R^{N-1}

  double sp() const { return s * p; }
  bool trace_regime() const { return sp() > 1.0; }

  void validate() const {
    if (!(s > 0.0 && s < 1.0))
      throw std::invalid_argument("SeminormParams: need 0 < s < 1, got s=" + std::to_string(s));
    if (!(p >= 1.0))
      throw std::invalid_argument("SeminormParams: need p >= 1, got p=" + std::to_string(p));
    if (space_dim < 2 || space_dim > 3)
      throw std::invalid_argument("SeminormParams: N must be 2 or 3");
  }

  void require_trace_regime() const {
    validate();
    if (!trace_regime())
      throw std::domain_error("SeminormParams: trace/extension ops need sp > 1, got sp=" +
                              std::to_string(sp()));
  }
};

}  // namespace fracstrip
