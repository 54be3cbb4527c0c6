#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fracstrip/catalog.hpp"

namespace fs = fracstrip;

TEST_CASE("boundary catalog entries evaluate as documented") {
    SECTION("constant") {
        const auto e = fs::boundary_entry("constant");
        REQUIRE(e.fn(0.0) == 1.0);
        REQUIRE(e.fn(123.0) == 1.0);
        const auto e2 = fs::boundary_entry("constant:2.5");
        REQUIRE(e2.fn(-7.0) == 2.5);
    }

    SECTION("affine grows linearly in both directions") {
        const auto e = fs::boundary_entry("affine");
        REQUIRE(e.fn(3.0) == Catch::Approx(3.0));
        REQUIRE(e.tail_pos.grows);
        REQUIRE(e.tail_pos.growth_exp == Catch::Approx(1.0));
        REQUIRE(e.tail_neg.grows);
    }

    SECTION("gaussian") {
        const auto e = fs::boundary_entry("gaussian");
        REQUIRE(e.fn(0.0) == Catch::Approx(1.0));
        REQUIRE(e.fn(1.0) == Catch::Approx(std::exp(-M_PI)));
        const auto half = fs::boundary_entry("gaussian:0.5");
        REQUIRE(half.fn(0.5) == Catch::Approx(std::exp(-M_PI)));
        REQUIRE(e.decay == fs::DecayClass::gaussian);
    }

    SECTION("bump is compactly supported with unit peak") {
        const auto e = fs::boundary_entry("bump");
        REQUIRE(e.fn(0.0) == Catch::Approx(1.0));
        REQUIRE(e.fn(1.0) == 0.0);
        REQUIRE(e.fn(1.5) == 0.0);
        REQUIRE(e.support_radius == Catch::Approx(1.0));
        REQUIRE(e.fn.breakpoints == std::vector<double>{-1.0, 1.0});
        const auto wide = fs::boundary_entry("bump:2");
        REQUIRE(wide.fn(1.5) > 0.0);
        REQUIRE(wide.fn(2.1) == 0.0);
    }

    SECTION("heaviside") {
        const auto e = fs::boundary_entry("heaviside");
        REQUIRE(e.fn(0.0) == 1.0);
        REQUIRE(e.fn(-1e-9) == 0.0);
        REQUIRE(e.fn(5.0) == 1.0);
        REQUIRE(e.decay == fs::DecayClass::bounded_jump);
        REQUIRE(e.tail_pos.limit == 1.0);
        REQUIRE(e.tail_neg.limit == 0.0);
        REQUIRE(e.fn.breakpoints == std::vector<double>{0.0});
    }

    SECTION("powerlaw clamp") {
        const auto e = fs::boundary_entry("powerlaw_clamp");
        REQUIRE(e.fn(4.0) == Catch::Approx(2.0));  // default growth 0.5
        REQUIRE(e.fn(0.5) == 1.0);
        REQUIRE(e.fn(-3.0) == 1.0);
        REQUIRE(e.tail_pos.grows);
        REQUIRE(e.tail_pos.growth_exp == Catch::Approx(0.5));
        REQUIRE_FALSE(e.tail_neg.grows);
        const auto a = fs::boundary_entry("powerlaw_clamp:0.25");
        REQUIRE(a.fn(16.0) == Catch::Approx(2.0));
    }

    SECTION("sine packet vanishes at the origin") {
        const auto e = fs::boundary_entry("sine_packet");
        REQUIRE(e.fn(0.0) == Catch::Approx(0.0).margin(1e-15));
        REQUIRE(std::abs(e.fn(0.0625)) > 0.0);
    }

    SECTION("bump2 is the planar analogue") {
        const auto e = fs::boundary_entry("bump2");
        REQUIRE(e.fn.dim == 2);
        REQUIRE(e.fn(fs::vec2(0.0, 0.0)) == Catch::Approx(1.0));
        REQUIRE(e.fn(fs::vec2(0.8, 0.8)) == 0.0);
    }

    SECTION("unknown names are rejected") {
        REQUIRE_THROWS_AS(fs::boundary_entry("nope"), std::invalid_argument);
    }

    SECTION("catalog is complete") {
        const auto all = fs::boundary_catalog();
        REQUIRE(all.size() == 8);
    }
}

TEST_CASE("closed forms") {
    REQUIRE(fs::closed_form::affine_unit_interval(0.5, 2.0) == Catch::Approx(1.0));
    REQUIRE(fs::closed_form::affine_unit_interval(0.25, 2.0) == Catch::Approx(8.0 / 15.0));
    REQUIRE_THROWS_AS(fs::closed_form::affine_unit_interval(1.0, 2.0), std::domain_error);

    REQUIRE(fs::closed_form::dilation_factor(0.5, 2.0, 2.0) == Catch::Approx(1.0));
    REQUIRE(fs::closed_form::dilation_factor(0.75, 2.0, 2.0) == Catch::Approx(std::sqrt(2.0)));
    REQUIRE(fs::closed_form::dilation_factor(0.75, 2.0, 0.5) ==
            Catch::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("bulk catalog provides the six reference fields") {
    const auto dom = fs::StripDomain::flat(2, fs::interval(-2.0, 2.0), 1.0);
    const auto fields = fs::bulk_catalog(dom);
    REQUIRE(fields.size() == 6);
    REQUIRE(fields[0].name == "vertical");
    REQUIRE(fields[0](0.3, 0.7) == Catch::Approx(0.7));
    bool found_tilted = false;
    for (const auto& f : fields)
        if (f.name == "tilted") {
            found_tilted = true;
            REQUIRE(f(1.0, 0.5) == Catch::Approx(0.8));
        }
    REQUIRE(found_tilted);
}

TEST_CASE("band-limited samples are deterministic and compactly supported") {
    const auto f1 = fs::band_limited_sample(17);
    const auto f2 = fs::band_limited_sample(17);
    const auto f3 = fs::band_limited_sample(18);

    bool any_nonzero = false;
    bool differs = false;
    for (int i = 0; i <= 64; ++i) {
        const double x = -4.0 + 8.0 * i / 64.0;
        REQUIRE(f1(x) == f2(x));
        if (f1(x) != 0.0) any_nonzero = true;
        if (f1(x) != f3(x)) differs = true;
    }
    REQUIRE(any_nonzero);
    REQUIRE(differs);

    REQUIRE(f1(4.0) == 0.0);
    REQUIRE(f1(-4.5) == 0.0);
    REQUIRE(std::abs(f1(3.999)) < 0.05);  // cosine taper pins the window ends near zero
}
