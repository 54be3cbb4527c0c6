#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "fracstrip/budgets.hpp"
#include "fracstrip/catalog.hpp"
#include "fracstrip/spectral.hpp"

namespace fs = fracstrip;

namespace {

// independent quadrature oracles for the multiplier
//   m(xi) = int_R min(1,h^2) (2 - 2cos(2 pi xi h)) |h|^{-2-2s} dh
struct MultiplierOracle {
    double s, xi, value;
};
const MultiplierOracle kMultiplierOracles[] = {
    {0.60, 0.1, 1.3764196569}, {0.60, 1.0, 13.6793607291}, {0.60, 8.0, 30.2912982983},
    {0.75, 0.1, 1.2786785090}, {0.75, 1.0, 18.6222602512}, {0.75, 8.0, 64.6830058414},
};

// weighted spectral energy of exp(-pi x^2): weight xi^2 inside |xi| <= 1/2,
// |xi|^{2s-1} outside, against |g^|^2 = exp(-2 pi xi^2)
const double kGaussianFourier060 = 0.084271953657;
const double kGaussianFourier075 = 0.077556000997;

// direct combined kernel (close + weighted far, screen one) for the gaussian
const double kGaussianDirect060 = 2.9846517412;
const double kGaussianDirect075 = 3.2638770792;

}  // namespace

TEST_CASE("fft round trip and Parseval hold to rounding") {
    fs::DetRng rng(99);
    std::vector<double> samples(4096);
    for (auto& v : samples) v = rng.uniform(-1.0, 1.0);
    const auto d = fs::fft_diagnostics(samples);
    REQUIRE(d.roundtrip_error < 1e-12);
    REQUIRE(d.parseval_gap < 1e-12);

    std::vector<std::complex<double>> bad(1000);
    REQUIRE_THROWS_AS(fs::detail::fft_radix2(bad, false), std::invalid_argument);
}

TEST_CASE("weighted spectral energy of the gaussian matches the continuous value") {
    const auto g = [](double x) { return std::exp(-M_PI * x * x); };

    const auto r060 = fs::fourier_seminorm(g, 0.60);
    REQUIRE(r060.value_p == Catch::Approx(kGaussianFourier060).epsilon(0.01));
    REQUIRE_FALSE(r060.window_warning);
    REQUIRE(r060.nyquist_fraction < 1e-6);
    REQUIRE(r060.seminorm == Catch::Approx(std::sqrt(r060.value_p)));

    const auto r075 = fs::fourier_seminorm(g, 0.75);
    REQUIRE(r075.value_p == Catch::Approx(kGaussianFourier075).epsilon(0.01));

    SECTION("doubling the sample count moves the value by less than a percent") {
        fs::SpectralConfig fine;
        fine.sample_count = 8192;
        const auto r2 = fs::fourier_seminorm(g, 0.75, fine);
        REQUIRE(r2.value_p == Catch::Approx(r075.value_p).epsilon(0.01));
    }

    SECTION("guards") {
        REQUIRE_THROWS_AS(fs::fourier_seminorm(g, 0.4), std::domain_error);
        fs::SpectralConfig bad;
        bad.sample_count = 1000;
        REQUIRE_THROWS_AS(fs::fourier_seminorm(g, 0.75, bad), std::invalid_argument);
    }

    SECTION("data that fills the window trips the edge warning") {
        const auto r = fs::fourier_seminorm([](double) { return 1.0; }, 0.75);
        REQUIRE(r.edge_fraction == Catch::Approx(1.0));
        REQUIRE(r.window_warning);
    }
}

TEST_CASE("spectral multiplier matches independent quadrature values") {
    for (const auto& o : kMultiplierOracles) {
        INFO("s=" << o.s << " xi=" << o.xi);
        REQUIRE(fs::spectral_multiplier(o.s, o.xi) == Catch::Approx(o.value).epsilon(0.01));
    }
    REQUIRE(fs::spectral_multiplier(0.75, 0.0) == 0.0);
    REQUIRE(fs::spectral_multiplier(0.75, -2.0) == fs::spectral_multiplier(0.75, 2.0));
    REQUIRE_THROWS_AS(fs::spectral_multiplier(0.5, 1.0), std::domain_error);
}

TEST_CASE("multiplier high-frequency slope") {
    // the asymptotic exponent is 2s-1; at s=3/4 it is reached on [2,64]
    const auto fit075 = fs::multiplier_slope(0.75);
    REQUIRE(fit075.slope == Catch::Approx(0.5).margin(0.05));
    REQUIRE(fit075.residual < 0.05);

    // at s=0.6 the window is still pre-asymptotic; pin the measured band so a
    // regression in the quadrature shows up even though the limit 0.2 is far
    const auto fit060 = fs::multiplier_slope(0.60);
    REQUIRE(fit060.slope > 0.25);
    REQUIRE(fit060.slope < 0.40);
}

TEST_CASE("multiplier low-frequency regime windows") {
    const auto r060 = fs::multiplier_regime(0.60);
    REQUIRE(r060.over_square_min >= fs::budgets::regime_s060_over_square_lo);
    REQUIRE(r060.over_square_max <= fs::budgets::regime_s060_over_square_hi);
    REQUIRE(r060.over_power_min >= fs::budgets::regime_s060_over_power_lo);
    REQUIRE(r060.over_power_max <= fs::budgets::regime_s060_over_power_hi);

    const auto r075 = fs::multiplier_regime(0.75);
    REQUIRE(r075.over_square_min >= fs::budgets::regime_s075_over_square_lo);
    REQUIRE(r075.over_square_max <= fs::budgets::regime_s075_over_square_hi);
    REQUIRE(r075.over_power_min >= fs::budgets::regime_s075_over_power_lo);
    REQUIRE(r075.over_power_max <= fs::budgets::regime_s075_over_power_hi);
}

TEST_CASE("direct kernel vs spectral energy for the gaussian") {
    const auto g = fs::boundary_entry("gaussian");

    const auto eq060 = fs::equivalence_check_spectral(g, 0.60);
    REQUIRE(eq060.direct_p == Catch::Approx(kGaussianDirect060).epsilon(0.02));
    REQUIRE(eq060.ratio == Catch::Approx(kGaussianDirect060 / kGaussianFourier060).epsilon(0.1));
    REQUIRE(eq060.ratio > 1.0 / fs::budgets::spectral_ratio);
    REQUIRE(eq060.ratio < fs::budgets::spectral_ratio);

    const auto eq075 = fs::equivalence_check_spectral(g, 0.75);
    REQUIRE(eq075.direct_p == Catch::Approx(kGaussianDirect075).epsilon(0.02));
    REQUIRE(eq075.ratio == Catch::Approx(kGaussianDirect075 / kGaussianFourier075).epsilon(0.1));
}

TEST_CASE("log-spaced grids") {
    const auto xs = fs::log_spaced(1.0, 16.0, 5);
    REQUIRE(xs.size() == 5);
    REQUIRE(xs.front() == Catch::Approx(1.0));
    REQUIRE(xs.back() == Catch::Approx(16.0));
    REQUIRE(xs[1] == Catch::Approx(2.0));
    REQUIRE_THROWS_AS(fs::log_spaced(2.0, 1.0, 5), std::invalid_argument);
}
