#pragma once
// Frozen comparison-constant envelopes.  The theory guarantees each of these
// ratios is bounded by a constant depending only on (N, s, p); the exact
// constants are not tracked through the proofs, so the library pins empirical
// envelopes instead: each value is twice the supremum observed over the
// catalog sweep at the default resolutions (see tools/calibrate.cpp).  Checks
// compare fresh runs against these fixed numbers, so a regression that
// inflates any ratio by more than the safety factor trips the acceptance
// suite.

namespace fracstrip::budgets {

// flat strip: slice functional vs bulk Gagliardo, both directions
// (calibrated supremum 2.41, G/S of the pure-vertical profile)
inline constexpr double flat_equivalence_ratio = 5.0;

// graph strip: slice sum vs full Gagliardo one way, restricted Gagliardo back
// (calibrated supremum 0.48)
inline constexpr double general_equivalence_ratio = 1.0;

// trace difference: D <= budget * b^{sp-1} * |u|^p across heights
// (calibrated supremum 0.36 at b = 2)
inline constexpr double difference_trace_flat = 0.75;

// close / far screened seminorms of boundary restrictions vs bulk seminorm
// (calibrated suprema 0.41 close, 0.27 far)
inline constexpr double trace_close = 1.0;
inline constexpr double trace_far = 0.6;

// two-sided flat extension: |u| vs the hypothesis seminorm sum
// (calibrated supremum 0.83)
inline constexpr double extension_flat = 2.0;

// lateral increment inequality: worst sampled left/right ratio
// (calibrated supremum 1.50)
inline constexpr double lateral_bound = 3.0;

// vertical increment inequality: left/right ratio
// (calibrated supremum 1.50, u(y) = sin y)
inline constexpr double vertical_bound = 3.0;

// spectral comparison at p = 2: direct/fourier ratio lies in [1/B, B]
// (calibrated range [17.8, 42.1]; the ratio tracks m(xi)/W(xi), cf. the
// regime windows below)
inline constexpr double spectral_ratio = 96.0;

// multiplier regime windows over |xi| in [0.01, 0.5] (half/double the
// measured extremes at the two calibrated orders)
inline constexpr double regime_s060_over_square_lo = 19.0;
inline constexpr double regime_s060_over_square_hi = 500.0;
inline constexpr double regime_s060_over_power_lo = 3.0;
inline constexpr double regime_s060_over_power_hi = 54.0;
inline constexpr double regime_s075_over_square_lo = 23.0;
inline constexpr double regime_s075_over_square_hi = 370.0;
inline constexpr double regime_s075_over_power_lo = 9.0;
inline constexpr double regime_s075_over_power_hi = 86.0;

}  // namespace fracstrip::budgets
