#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fracstrip/catalog.hpp"
#include "fracstrip/seminorms.hpp"
#include "fracstrip/transforms.hpp"

namespace fs = fracstrip;

TEST_CASE("boundary dilation law g -> g(alpha .) scales by alpha^{sp-1}") {
    const auto g = fs::boundary_entry("bump");
    fs::SeminormOptions opt;
    opt.quad.outer_cells = 192;
    opt.quad.refinement_levels = 2;

    for (const auto& sp : {std::pair<double, double>{0.5, 2.0}, {0.75, 2.0}}) {
        const fs::SeminormParams P{sp.first, sp.second, 2};
        for (double alpha : {0.5, 2.0}) {
            const auto dilated = fs::dilate_boundary(g, alpha);
            const double base =
                fs::gagliardo_boundary(g, P, fs::interval(-2.0, 2.0), opt).value_p;
            const double scaled =
                fs::gagliardo_boundary(dilated, P, fs::interval(-2.0 / alpha, 2.0 / alpha), opt)
                    .value_p;
            const double expected = fs::closed_form::dilation_factor(P.s, P.p, alpha);
            INFO("s=" << P.s << " p=" << P.p << " alpha=" << alpha);
            REQUIRE(scaled / base == Catch::Approx(expected).epsilon(0.01));
        }
    }
}

TEST_CASE("dilate_boundary rescales breakpoints and support") {
    const auto g = fs::boundary_entry("bump");
    const auto d = fs::dilate_boundary(g, 2.0);
    REQUIRE(d.support_radius == Catch::Approx(0.5));
    REQUIRE(d.fn.breakpoints == std::vector<double>{-0.5, 0.5});
    REQUIRE(d.fn(0.25) == Catch::Approx(g.fn(0.5)));
    REQUIRE_THROWS_AS(fs::dilate_boundary(g, 0.0), std::invalid_argument);
}

TEST_CASE("vertical dilation rescales the domain and composes to identity") {
    const auto dom = fs::StripDomain::flat(2, fs::interval(-2.0, 2.0), 1.0);
    fs::BulkFunction u{"vertical", dom, [](const fs::Vec& x) { return x[1]; }};

    const auto half = fs::dilate_vertical(u, dom, 0.5);
    REQUIRE(half.domain.height == Catch::Approx(2.0));
    REQUIRE(half.v(0.3, 2.0) == Catch::Approx(u(0.3, 1.0)));

    const auto back = fs::dilate_vertical(half.v, half.domain, 2.0);
    REQUIRE(back.domain.height == Catch::Approx(1.0));
    REQUIRE(back.v(0.3, 0.7) == Catch::Approx(u(0.3, 0.7)));

    auto eta = fs::LipschitzProfile::certify(
        [](const fs::Vec& x) { return 1.0 + 0.25 * std::sin(x[0]); }, 1,
        fs::interval(-2.0, 2.0), 0.26);
    const auto gdom = fs::StripDomain::graph(2, fs::interval(-2.0, 2.0), eta);
    const auto gd = fs::dilate_vertical(u, gdom, 2.0);
    REQUIRE(gd.domain.profile.lip_bound() == Catch::Approx(0.13));
    REQUIRE(gd.domain.top(fs::vec1(0.0)) == Catch::Approx(0.5));
}

TEST_CASE("shear onto a zero lower boundary preserves the Gagliardo energy up to the stated bound") {
    const fs::SeminormParams P{0.75, 2.0, 2};
    const fs::Box lateral = fs::interval(-2.0, 2.0);
    auto eta_minus = fs::LipschitzProfile::certify(
        [](const fs::Vec& x) { return 0.3 + 0.1 * std::sin(x[0]); }, 1, lateral, 0.11);
    auto eta_plus = fs::LipschitzProfile::certify(
        [](const fs::Vec& x) { return 1.3 + 0.1 * std::sin(x[0]); }, 1, lateral, 0.11);

    auto u = [](const fs::Vec& x) { return x[1] + 0.2 * std::sin(x[0]); };

    fs::SeminormOptions opt;
    opt.quad.cells_per_axis = 16;
    opt.quad.refinement_levels = 2;

    const auto sheared = fs::flatten_shear(u, eta_minus, eta_plus, P, lateral);
    // the bound is stated in terms of the certified Lipschitz constant
    REQUIRE(sheared.comparison_bound ==
            Catch::Approx(std::pow(2.0 + eta_minus.lip_bound(), 2.0 + P.sp())));
    REQUIRE(sheared.domain.shape == fs::StripDomain::Shape::graph);
    // the gap profile is constant 1 here
    REQUIRE(sheared.domain.top(fs::vec1(0.7)) == Catch::Approx(1.0));
    // shear moves the graph onto the zero boundary: v(x',0) = u(x', eta_minus)
    REQUIRE(sheared.v(0.4, 0.0) == Catch::Approx(u(fs::vec2(0.4, eta_minus(fs::vec1(0.4))))));

    const double before =
        fs::gagliardo_between(u, eta_minus, eta_plus, P, lateral, opt).value_p;
    const double after = fs::gagliardo_bulk(sheared.v, P, sheared.domain, opt).value_p;
    REQUIRE(before > 0.0);
    REQUIRE(after > 0.0);
    REQUIRE(before <= sheared.comparison_bound * after * 1.0001);
    REQUIRE(after <= sheared.comparison_bound * before * 1.0001);

    REQUIRE_THROWS_AS(fs::flatten_shear(u, eta_plus, eta_minus, P, lateral),
                      std::domain_error);
}
