#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fracstrip/catalog.hpp"
#include "fracstrip/seminorms.hpp"

namespace fs = fracstrip;

namespace {

fs::SeminormParams trace_params() { return fs::SeminormParams{0.75, 2.0, 2}; }

fs::SeminormOptions light_options() {
    fs::SeminormOptions opt;
    opt.quad.outer_cells = 128;
    opt.quad.refinement_levels = 2;
    return opt;
}

}  // namespace

TEST_CASE("heaviside screened seminorms match their closed forms (sp = 3/2)") {
    // close: (2/(sp-1)) (1/(2-sp) - 1) = 4;  far: (2/(1+sp)) (1 + 1/sp) = 4/3
    const auto g = fs::boundary_entry("heaviside");
    const auto P = trace_params();
    const auto screen = fs::Screen::constant(1.0);
    auto opt = light_options();

    SECTION("close-screened") {
        const auto rep = fs::close_screened(g, screen, P, fs::interval(-2.0, 2.0), opt);
        REQUIRE(rep.value_p == Catch::Approx(4.0).epsilon(0.02));
        REQUIRE(rep.converged);
    }

    SECTION("far-screened with graded outer truncation") {
        opt.truncation_radius = 32.0;
        const auto rep = fs::far_screened(g, screen, P, fs::interval(-2.0, 2.0), opt);
        REQUIRE(rep.value_p == Catch::Approx(4.0 / 3.0).epsilon(0.02));
        REQUIRE(rep.converged);
    }
}

TEST_CASE("boundary Gagliardo of the affine function matches the closed form") {
    const auto g = fs::boundary_entry("affine");
    auto opt = light_options();

    SECTION("s=0.5, p=2 on (0,1): value 1") {
        const fs::SeminormParams P{0.5, 2.0, 2};
        const auto rep = fs::gagliardo_boundary(g, P, fs::interval(0.0, 1.0), opt);
        REQUIRE(rep.value_p == Catch::Approx(1.0).epsilon(0.01));
    }

    SECTION("s=0.25, p=2 on (0,1): value 8/15") {
        const fs::SeminormParams P{0.25, 2.0, 2};
        const auto rep = fs::gagliardo_boundary(g, P, fs::interval(0.0, 1.0), opt);
        REQUIRE(rep.value_p == Catch::Approx(8.0 / 15.0).epsilon(0.01));
    }
}

TEST_CASE("constants have vanishing seminorms of every kind") {
    const auto g = fs::boundary_entry("constant:3");
    const auto P = trace_params();
    const auto screen = fs::Screen::constant(1.0);
    auto opt = light_options();
    const fs::Box box = fs::interval(-2.0, 2.0);

    REQUIRE(fs::gagliardo_boundary(g, P, box, opt).value_p == 0.0);
    REQUIRE(fs::close_screened(g, screen, P, box, opt).value_p == 0.0);
    REQUIRE(fs::far_screened(g, screen, P, box, opt).value_p == 0.0);
}

TEST_CASE("seminorms are p-homogeneous") {
    const auto g = fs::boundary_entry("bump");
    auto scaled = g;
    const double c = -2.5;
    auto base_eval = g.fn.eval;
    scaled.fn.eval = [base_eval, c](const fs::Vec& x) { return c * base_eval(x); };

    const auto P = trace_params();
    auto opt = light_options();
    const fs::Box box = fs::interval(-2.0, 2.0);
    const auto screen = fs::Screen::constant(1.0);

    const double g_close = fs::close_screened(g, screen, P, box, opt).value_p;
    const double s_close = fs::close_screened(scaled, screen, P, box, opt).value_p;
    REQUIRE(s_close == Catch::Approx(std::pow(std::abs(c), P.p) * g_close).epsilon(1e-9));

    const double g_far = fs::far_screened(g, screen, P, box, opt).value_p;
    const double s_far = fs::far_screened(scaled, screen, P, box, opt).value_p;
    REQUIRE(s_far == Catch::Approx(std::pow(std::abs(c), P.p) * g_far).epsilon(1e-9));
}

TEST_CASE("seminorms are translation invariant up to quadrature tolerance") {
    const auto g = fs::boundary_entry("bump");
    const double tau = 0.5;
    auto shifted = g;
    auto base_eval = g.fn.eval;
    shifted.fn.eval = [base_eval, tau](const fs::Vec& x) {
        return base_eval(fs::vec1(x[0] - tau));
    };
    shifted.fn.breakpoints = {-1.0 + tau, 1.0 + tau};

    const auto P = trace_params();
    auto opt = light_options();
    const auto screen = fs::Screen::constant(1.0);

    const double v0 =
        fs::close_screened(g, screen, P, fs::interval(-2.0, 2.0), opt).value_p;
    const double v1 =
        fs::close_screened(shifted, screen, P, fs::interval(-2.0 + tau, 2.0 + tau), opt).value_p;
    REQUIRE(v1 == Catch::Approx(v0).epsilon(0.01));
}

TEST_CASE("close-screened seminorm grows with the screen") {
    const auto g = fs::boundary_entry("gaussian");
    const auto P = trace_params();
    auto opt = light_options();
    const fs::Box box = fs::interval(-4.0, 4.0);

    const double v_half = fs::close_screened(g, fs::Screen::constant(0.5), P, box, opt).value_p;
    const double v_one = fs::close_screened(g, fs::Screen::constant(1.0), P, box, opt).value_p;
    const double v_two = fs::close_screened(g, fs::Screen::constant(2.0), P, box, opt).value_p;
    REQUIRE(v_half < v_one);
    REQUIRE(v_one < v_two);
}

TEST_CASE("slice functionals on the vertical coordinate function") {
    // u = x_N on the flat strip of height 1: every vertical slice is the affine
    // closed form (value 1 at s=0.5, p=2), horizontal slices are constant.
    const fs::SeminormParams P{0.5, 2.0, 2};
    const auto dom = fs::StripDomain::flat(2, fs::interval(-2.0, 2.0), 1.0);
    fs::BulkFunction u{"vertical", dom, [](const fs::Vec& x) { return x[1]; }};

    fs::SeminormOptions opt;
    opt.quad.outer_cells = 64;
    opt.quad.cells_per_axis = 24;
    opt.quad.refinement_levels = 2;
    opt.heights_cells = 16;

    const auto V = fs::slice_vertical(u, P, dom, opt);
    REQUIRE(V.value_p == Catch::Approx(4.0).epsilon(0.01));

    const auto Hn = fs::slice_horizontal_near(u, P, dom, opt);
    REQUIRE(Hn.value_p == 0.0);

    const auto Hf = fs::slice_horizontal_far(u, P, dom, opt);
    REQUIRE(Hf.value_p == 0.0);
}

TEST_CASE("slice functionals reject N=3 parameters") {
    const fs::SeminormParams P{0.5, 2.0, 3};
    const auto dom = fs::StripDomain::flat(2, fs::interval(-2.0, 2.0), 1.0);
    fs::BulkFunction u{"vertical", dom, [](const fs::Vec& x) { return x[1]; }};
    REQUIRE_THROWS_AS(fs::slice_vertical(u, P, dom, {}), std::invalid_argument);
}

TEST_CASE("difference trace") {
    const auto P = trace_params();
    const auto dom = fs::StripDomain::flat(2, fs::interval(-2.0, 2.0), 1.0);
    auto opt = light_options();

    SECTION("of the vertical coordinate: int |b - 0|^2 = 4 b^2 here") {
        fs::BulkFunction u{"vertical", dom, [](const fs::Vec& x) { return x[1]; }};
        const auto rep = fs::difference_trace(u, P, dom, opt);
        REQUIRE(rep.value_p == Catch::Approx(4.0).epsilon(1e-9));
    }

    SECTION("general form carries the eta^{1-sp} weight") {
        auto eta = fs::LipschitzProfile::certify(
            [](const fs::Vec&) { return 2.0; }, 1, fs::interval(-2.0, 2.0), 0.1);
        const auto gdom = fs::StripDomain::graph(2, fs::interval(-2.0, 2.0), eta);
        fs::BoundaryFunction one{"one", 1, [](const fs::Vec&) { return 1.0; }, {}};
        fs::BoundaryFunction zero{"zero", 1, [](const fs::Vec&) { return 0.0; }, {}};
        // int 1 * eta^{1-sp} = 4 * 2^{-1/2}
        const auto rep = fs::difference_trace(one, zero, P, gdom, opt);
        REQUIRE(rep.value_p == Catch::Approx(4.0 * std::pow(2.0, -0.5)).epsilon(1e-9));
    }

    SECTION("rejects parameters below the trace regime") {
        fs::BulkFunction u{"vertical", dom, [](const fs::Vec& x) { return x[1]; }};
        REQUIRE_THROWS_AS(fs::difference_trace(u, fs::SeminormParams{0.4, 2.0, 2}, dom, opt),
                          std::domain_error);
    }
}

TEST_CASE("weighted Lp trace on constants") {
    const auto P = trace_params();
    auto opt = light_options();
    fs::BoundaryFunction f{"two", 1, [](const fs::Vec&) { return 2.0; }, {}};
    const auto rep = fs::weighted_lp_trace(f, 0.5, fs::Screen::constant(1.0), P,
                                           fs::interval(-2.0, 2.0), opt);
    REQUIRE(rep.value_p == Catch::Approx(4.0 * 0.5 * 4.0).epsilon(1e-9));
    REQUIRE_THROWS_AS(fs::weighted_lp_trace(f, -1.0, fs::Screen::constant(1.0), P,
                                            fs::interval(-2.0, 2.0), opt),
                      std::domain_error);
}

TEST_CASE("flat equivalence check runs and is non-degenerate on a reference field") {
    const fs::SeminormParams P{0.75, 2.0, 2};
    const auto dom = fs::StripDomain::flat(2, fs::interval(-2.0, 2.0), 1.0);
    fs::BulkFunction u{"separable", dom,
                       [](const fs::Vec& x) { return x[1] * std::exp(-M_PI * x[0] * x[0]); }};

    fs::SeminormOptions opt;
    opt.quad.outer_cells = 48;
    opt.quad.cells_per_axis = 16;
    opt.quad.refinement_levels = 2;
    opt.quad.radial_per_octave = 8;
    opt.heights_cells = 12;

    const auto rep = fs::equivalence_check_flat(u, P, dom, opt);
    REQUIRE(rep.slice_total > 0.0);
    REQUIRE(rep.gagliardo > 0.0);
    REQUIRE(rep.ratio_slice_over_g > 0.0);
    REQUIRE(rep.ratio_g_over_slice > 0.0);
    // the two directions are reciprocal by construction
    REQUIRE(rep.ratio_slice_over_g * rep.ratio_g_over_slice == Catch::Approx(1.0));
}

TEST_CASE("flat equivalence check tolerates jointly vanishing sides") {
    const fs::SeminormParams P{0.75, 2.0, 2};
    const auto dom = fs::StripDomain::flat(2, fs::interval(-2.0, 2.0), 1.0);
    fs::BulkFunction u{"constant", dom, [](const fs::Vec&) { return 7.0; }};

    fs::SeminormOptions opt;
    opt.quad.outer_cells = 32;
    opt.quad.cells_per_axis = 16;
    opt.quad.refinement_levels = 1;
    opt.quad.radial_per_octave = 8;
    opt.heights_cells = 8;

    const auto rep = fs::equivalence_check_flat(u, P, dom, opt);
    REQUIRE(rep.slice_total == 0.0);
    REQUIRE(rep.gagliardo == 0.0);
    REQUIRE(rep.ratio_slice_over_g == 0.0);
}

TEST_CASE("screen restriction inequalities hold for ordered screens") {
    const auto g = fs::boundary_entry("gaussian");
    const auto P = trace_params();
    auto opt = light_options();
    const auto rep = fs::restrict_profile(g, fs::Screen::constant(1.0),
                                          fs::Screen::constant(0.5), P,
                                          fs::interval(-4.0, 4.0), opt);
    REQUIRE(rep.close_inequality);
    REQUIRE(rep.far_inequality);
    REQUIRE(rep.close_eta2 <= rep.close_eta1 * (1.0 + 1e-9));

    // out-of-order screens are rejected
    REQUIRE_THROWS_AS(fs::restrict_profile(g, fs::Screen::constant(0.5),
                                           fs::Screen::constant(1.0), P,
                                           fs::interval(-4.0, 4.0), opt),
                      std::domain_error);
}
